# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Experiment Driver

`ergolab` command line: one subcommand per experiment family. Parameters
resolve as built-in defaults, then the configuration file's `commands`
section, then flags. Every report header echoes the resolved parameters,
the tool version and the seed.
"""

import argparse
import csv
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from ergolab import __version__
from ergolab.acceptance import CALIBRATIONS, FixtureStore, verify_all
from ergolab.core.arith_seq import (
    WeightSequence,
    automatic_sequence,
    liouville_sieve,
    mobius_sieve,
    random_multiplicative,
    unit_weight,
)
from ergolab.core.averages import TimeScale, decay_profile
from ergolab.core.dynamics import DoublingPoint, DynSystem, Observable, Point, SystemKind, orbit
from ergolab.core.errors import ConfigurationError, ErgolabError
from ergolab.core.gowers import CyclicSequence, gowers_norm_cyclic, gowers_norm_interval
from ergolab.core.kernels import KernelForm, KernelSpec, kernel_profile
from ergolab.core.partition import (
    calibrate_bmz,
    calibrate_entropy,
    calibrate_lambda,
    calibrate_lp,
    partition_of_unity_report,
)
from ergolab.core.pool import configure_threads
from ergolab.core.report import ExperimentReport
from ergolab.core.spectra import power_sum_profile
from ergolab.core.storage import ReportStore
from ergolab.settings import ConfigManager, LabConfig

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

WEIGHTS = (
    "mobius",
    "liouville",
    "unit",
    "thue_morse",
    "rudin_shapiro",
    "random_steinhaus",
    "random_rademacher",
)
SYSTEMS = ("rotation", "doubling", "skew", "cyclic")
LEMMAS = ("lp", "lp-eps", "bmz", "lambda", "entropy", "sigma")

# Built-in defaults per subcommand; the configuration file may override any of them
DEFAULTS: Dict[str, Dict[str, Any]] = {
    "seq": {"kind": "mobius", "n": 1000},
    "expsum": {"weight": "mobius", "k": 1, "n_list": "1024,4096,16384"},
    "kernel": {"form": "fejer", "n": 16, "p": 0, "gamma": None, "grid": 256},
    "gowers": {"input": None, "d": 2, "mode": "cyclic"},
    "orbit": {"system": "rotation", "alpha": None, "modulus": 64, "x0_seed": 0, "len": 1000},
    "bilinear": {
        "weight": "mobius",
        "system": "rotation",
        "a": 1,
        "b": -1,
        "rho": None,
        "n0": 1,
        "nmax": 4096,
        "x_samples": None,
        "frequency": 1,
        "modulus": 4096,
    },
    "lemma": {"which": "lp", "trials": None, "fixture": None},
    "verify": {"quick": False, "only": None},
}

LEMMA_TRIALS = {"lp": 200, "lp-eps": 200, "bmz": 100, "lambda": 50, "entropy": 20, "sigma": 1000}


# =============================================================================
# Logging
# =============================================================================


def setup_logging(level: str = "INFO", log_file: Optional[str] = None) -> None:
    """Configure the root logger for one run."""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(level=getattr(logging, level.upper()), format=LOG_FORMAT, handlers=handlers, force=True)


# =============================================================================
# Builders
# =============================================================================


def build_weight(name: str, N: int, seed: int, start: int = 1) -> WeightSequence:
    """Weight sequence by name on start .. start + N - 1 (arithmetic weights start at 1)."""
    if name == "mobius":
        return mobius_sieve(N)
    if name == "liouville":
        return liouville_sieve(N)
    if name == "unit":
        return unit_weight(N)
    if name in ("thue_morse", "rudin_shapiro"):
        return automatic_sequence(name, N, start=start)
    if name.startswith("random_"):
        return random_multiplicative(N, seed, completely=True, family=name[len("random_") :])
    raise ConfigurationError(f"weight must be one of {WEIGHTS}, got {name!r}")


def build_system(name: str, alpha: Optional[float] = None, modulus: int = 64) -> DynSystem:
    if name == "rotation":
        return DynSystem.rotation() if alpha is None else DynSystem.rotation(alpha)
    if name == "skew":
        return DynSystem.skew_product() if alpha is None else DynSystem.skew_product(alpha)
    if name == "doubling":
        return DynSystem.doubling()
    if name == "cyclic":
        return DynSystem.cyclic(modulus)
    raise ConfigurationError(f"system must be one of {SYSTEMS}, got {name!r}")


def sample_points(system: DynSystem, count: int, seed: int) -> List[Point]:
    """Seeded starting points drawn from one generator."""
    rng = np.random.default_rng(seed)
    if system.kind is SystemKind.DOUBLING:
        return [DoublingPoint(seed=int(s)) for s in rng.integers(0, 2**63 - 1, size=count)]
    if system.kind is SystemKind.CYCLIC:
        return [int(x) for x in rng.integers(0, system.modulus, size=count)]
    if system.kind is SystemKind.SKEW_PRODUCT:
        return [(float(x), float(y)) for x, y in rng.random((count, 2))]
    return [float(x) for x in rng.random(count)]


def read_sequence(path: str) -> np.ndarray:
    """
    Complex values from a CSV file.

    '#' lines are skipped. With a header, the 're' column (and 'im' if
    present) is read; without one, 1, 2 or 3 columns mean value, (re, im)
    or (n, re, im).
    """
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            rows = [row for row in csv.reader(line for line in handle if not line.startswith("#")) if row]
    except OSError as e:
        raise ConfigurationError(f"input: cannot read {path}: {e}")
    if not rows:
        raise ConfigurationError(f"input: {path} holds no values")
    try:
        if "re" in rows[0]:
            header, body = rows[0], rows[1:]
            re = np.array([float(r[header.index("re")]) for r in body])
            im = np.array([float(r[header.index("im")]) for r in body]) if "im" in header else np.zeros(re.size)
        else:
            table = np.array([[float(c) for c in r] for r in rows])
            if table.shape[1] == 1:
                re, im = table[:, 0], np.zeros(len(table))
            else:
                re, im = table[:, -2], table[:, -1]
    except (ValueError, IndexError) as e:
        raise ConfigurationError(f"input: malformed CSV {path}: {e}")
    return re + 1j * im


# =============================================================================
# Subcommands
# =============================================================================


def run_seq(p: Dict[str, Any], seed: int, config: LabConfig) -> ExperimentReport:
    start = 0 if p["kind"] in ("thue_morse", "rudin_shapiro") else 1
    w = build_weight(p["kind"], p["n"], seed, start=start)
    report = ExperimentReport("seq", columns=["n", "re", "im"], header={"kind": p["kind"], "seed": w.seed})
    for n, value in zip(range(w.start, w.stop + 1), w.values.tolist()):
        report.add_row(n=n, re=value.real, im=value.imag)
    return report


def _int_list(text: str, field: str) -> List[int]:
    try:
        return [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise ConfigurationError(f"{field} must be a comma-separated list of integers, got {text!r}")


def run_expsum(p: Dict[str, Any], seed: int, config: LabConfig) -> ExperimentReport:
    N_list = _int_list(p["n_list"], "n_list")
    if not N_list:
        raise ConfigurationError("n_list must not be empty")
    w = build_weight(p["weight"], max(N_list), seed)
    return power_sum_profile(w, p["k"], N_list, p["oversample"])


def run_kernel(p: Dict[str, Any], seed: int, config: LabConfig) -> ExperimentReport:
    try:
        form = KernelForm(p["form"])
    except ValueError:
        raise ConfigurationError(f"form must be one of {[f.value for f in KernelForm]}, got {p['form']!r}")
    return kernel_profile(KernelSpec(form, p["n"], p["p"], p["gamma"]), p["grid"])


def run_gowers(p: Dict[str, Any], seed: int, config: LabConfig) -> ExperimentReport:
    if not p["input"]:
        raise ConfigurationError("input: a CSV sequence is required")
    values = read_sequence(p["input"])
    if p["mode"] == "cyclic":
        result = gowers_norm_cyclic(CyclicSequence(values), p["d"])
    elif p["mode"] == "interval":
        result = gowers_norm_interval(values, p["d"])
    else:
        raise ConfigurationError(f"mode must be 'cyclic' or 'interval', got {p['mode']!r}")
    report = ExperimentReport("gowers", columns=["d", "norm", "raw_power", "method"], header={"mode": p["mode"]})
    report.add_row(**result.as_dict())
    return report


def run_orbit(p: Dict[str, Any], seed: int, config: LabConfig) -> ExperimentReport:
    system = build_system(p["system"], p["alpha"], p["modulus"])
    x0 = sample_points(system, 1, p["x0_seed"])[0]
    points = orbit(system, x0, p["len"])
    if system.kind is SystemKind.SKEW_PRODUCT:
        report = ExperimentReport("orbit", columns=["t", "x", "y"])
        for t, (x, y) in enumerate(points.tolist()):
            report.add_row(t=t, x=x, y=y)
    else:
        report = ExperimentReport("orbit", columns=["t", "x"])
        for t, x in enumerate(points.tolist()):
            report.add_row(t=t, x=x)
    report.header.update({"system": system.kind.value, "alpha": system.alpha})
    return report


def run_bilinear(p: Dict[str, Any], seed: int, config: LabConfig) -> ExperimentReport:
    system = build_system(p["system"], modulus=p["modulus"])
    nu = build_weight(p["weight"], p["nmax"], seed)
    rho = p["rho"] if p["rho"] is not None else config.numerics.rho
    samples = p["x_samples"] if p["x_samples"] is not None else config.numerics.x_samples
    points = sample_points(system, samples, seed)
    f = Observable.trig(p["frequency"])
    scale = TimeScale(rho, p["n0"], p["nmax"])
    return decay_profile(nu, system, points, f, f, p["a"], p["b"], scale)


def run_lemma(p: Dict[str, Any], seed: int, config: LabConfig) -> ExperimentReport:
    which = p["which"]
    if which not in LEMMAS:
        raise ConfigurationError(f"which must be one of {LEMMAS}, got {which!r}")
    trials = p["trials"] if p["trials"] is not None else LEMMA_TRIALS[which]
    if which == "sigma":
        return partition_of_unity_report(samples=trials, seed=seed)
    sweeps: Dict[str, Callable[[], float]] = {
        "lp": lambda: calibrate_lp(trials, seed),
        "lp-eps": lambda: calibrate_lp(trials, seed, localized=True),
        "bmz": lambda: calibrate_bmz(trials, seed),
        "lambda": lambda: calibrate_lambda(trials, seed),
        "entropy": lambda: calibrate_entropy(trials, seed),
    }
    value = sweeps[which]()
    lemma = which.replace("-", "_")
    report = ExperimentReport(
        "lemma",
        columns=["lemma", "trials", "empirical_constant"],
        header={"params": CALIBRATIONS[lemma].params},
    )
    report.add_row(lemma=lemma, trials=trials, empirical_constant=value)
    fixtures = _fixture_store(config)
    fixture = fixtures.load(lemma, p["fixture"]) if p["fixture"] else fixtures.load_or_calibrate(lemma, seed)
    report.summary["frozen"] = fixture.empirical_constant
    report.summary["pass"] = fixture.admits(value, config.fixtures.growth_tolerance)
    return report


def _fixture_store(config: LabConfig) -> FixtureStore:
    return FixtureStore(
        directory=config.fixtures.directory,
        store=_report_store(config),
        bootstrap=config.fixtures.bootstrap,
    )


def _report_store(config: LabConfig) -> ReportStore:
    return ReportStore(
        lock_enabled=config.output.lock_enabled,
        lock_timeout=config.output.lock_timeout,
        lock_dir=config.output.lock_dir,
    )


COMMANDS: Dict[str, Callable[[Dict[str, Any], int, LabConfig], ExperimentReport]] = {
    "seq": run_seq,
    "expsum": run_expsum,
    "kernel": run_kernel,
    "gowers": run_gowers,
    "orbit": run_orbit,
    "bilinear": run_bilinear,
    "lemma": run_lemma,
}


# =============================================================================
# Parser
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergolab",
        description="Numerical laboratory for multiplicative weights in ergodic averages.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=Path, help="YAML configuration file")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR or CRITICAL")
    parser.add_argument("--threads", type=int, help="Worker threads (ERGOLAB_THREADS wins)")
    parser.add_argument("--format", choices=["csv", "json"], help="Report format")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Master seed")
    common.add_argument("--out", help="Output file (default: stdout)")

    sub = parser.add_subparsers(dest="command", required=True)

    seq = sub.add_parser("seq", parents=[common], help="Emit a weight sequence")
    seq.add_argument("--kind", choices=WEIGHTS)
    seq.add_argument("--n", type=int)

    expsum = sub.add_parser("expsum", parents=[common], help="Exponential sum suprema")
    expsum.add_argument("--weight", choices=WEIGHTS)
    expsum.add_argument("--k", type=int)
    expsum.add_argument("--n-list", dest="n_list", help="Comma-separated N values")
    expsum.add_argument("--oversample", type=int)

    kernel = sub.add_parser("kernel", parents=[common], help="Kernel values on a grid")
    kernel.add_argument("--form", choices=[f.value for f in KernelForm])
    kernel.add_argument("--n", type=int)
    kernel.add_argument("--p", type=int)
    kernel.add_argument("--gamma", type=float)
    kernel.add_argument("--grid", type=int)

    gowers = sub.add_parser("gowers", parents=[common], help="Gowers norm of a CSV sequence")
    gowers.add_argument("--input")
    gowers.add_argument("--d", type=int)
    gowers.add_argument("--mode", choices=["cyclic", "interval"])

    orbit_p = sub.add_parser("orbit", parents=[common], help="Orbit of a seeded point")
    orbit_p.add_argument("--system", choices=SYSTEMS)
    orbit_p.add_argument("--alpha", type=float)
    orbit_p.add_argument("--modulus", type=int)
    orbit_p.add_argument("--x0-seed", dest="x0_seed", type=int)
    orbit_p.add_argument("--len", type=int)

    bilinear = sub.add_parser("bilinear", parents=[common], help="Weighted bilinear decay profile")
    bilinear.add_argument("--weight", choices=WEIGHTS)
    bilinear.add_argument("--system", choices=SYSTEMS)
    bilinear.add_argument("--a", type=int)
    bilinear.add_argument("--b", type=int)
    bilinear.add_argument("--rho", type=float)
    bilinear.add_argument("--n0", type=int)
    bilinear.add_argument("--nmax", type=int)
    bilinear.add_argument("--x-samples", dest="x_samples", type=int)
    bilinear.add_argument("--frequency", type=int)
    bilinear.add_argument("--modulus", type=int)

    lemma = sub.add_parser("lemma", parents=[common], help="Lemma calibration sweep")
    lemma.add_argument("--which", choices=LEMMAS)
    lemma.add_argument("--trials", type=int)
    lemma.add_argument("--fixture", help="Fixture JSON to compare against")

    verify = sub.add_parser("verify", parents=[common], help="Run the acceptance suite")
    verify.add_argument("--quick", action="store_true", default=None, help="Reduced sizes")
    verify.add_argument("--only", help="Comma-separated criterion names")

    return parser


def resolve_params(command: str, args: argparse.Namespace, config: LabConfig) -> Dict[str, Any]:
    """
    Merge built-in defaults, the configuration file and flags, in that order.

    Raises:
        ConfigurationError: If the configuration names an unknown parameter
    """
    params = dict(DEFAULTS[command])
    if command == "expsum":
        params["oversample"] = config.numerics.oversample
    for key, value in config.command_defaults(command).items():
        if key not in params:
            raise ConfigurationError(f"Unknown field 'commands.{command}.{key}'")
        params[key] = value
    for key in params:
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    return params


# =============================================================================
# Entry Point
# =============================================================================


def _emit(text: str, out: Optional[str], store: ReportStore) -> None:
    if out:
        path = store.write_text(out, text)
        logger.info(f"Wrote {path}")
    else:
        sys.stdout.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse, dispatch and write one report; returns the process exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = ConfigManager(args.config).load()
        if args.log_level:
            config.log_level = args.log_level
        if args.format:
            config.output.format = args.format
        if args.threads is not None:
            config.runtime.threads = args.threads
        config.validate()
    except ConfigurationError as e:
        parser.error(str(e))

    setup_logging(config.log_level, config.log_file)
    configure_threads(config.runtime.threads)
    seed = args.seed if args.seed is not None else config.runtime.seed
    store = _report_store(config)
    out = str(Path(config.output.directory) / args.out) if args.out else None

    try:
        params = resolve_params(args.command, args, config)
        if args.command == "verify":
            only = [name.strip() for name in params["only"].split(",")] if params["only"] else None
            verdict = verify_all(
                seed=seed,
                quick=bool(params["quick"]),
                fixtures=_fixture_store(config),
                only=only,
                tolerance=config.fixtures.growth_tolerance,
            )
            _emit(verdict.to_json(), out, store)
            if not verdict.passed:
                logger.error(f"Acceptance failures: {', '.join(verdict.failures)}")
                return 1
            return 0

        report = COMMANDS[args.command](params, seed, config)
        report.header.update({"tool": "ergolab", "version": __version__, "command": args.command, "seed": seed})
        report.header["config"] = params
        _emit(report.render(config.output.format), out, store)
        if out and config.output.format == "csv" and report.summary:
            summary = json.dumps(
                {"name": report.name, "summary": json.loads(report.to_json())["summary"]}, sort_keys=True, indent=2
            )
            _emit(summary + "\n", f"{out}.summary.json", store)
        return 0
    except ConfigurationError as e:
        logger.error(f"Invalid configuration: {e}")
        return 2
    except ErgolabError as e:
        logger.error(f"{args.command} failed: {type(e).__name__}: {e}")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
