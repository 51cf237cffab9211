"""
Ergolab Numerical Core

Arithmetic weights, trigonometric polynomials, kernels, Gowers norms,
dynamical systems, weighted averages and partition lemmas.
"""

from ergolab.core.arith_seq import WeightSequence, liouville_sieve, mobius_sieve
from ergolab.core.dynamics import DynSystem, Observable
from ergolab.core.report import ExperimentReport
from ergolab.core.spectra import TrigPolynomial

__all__ = [
    "WeightSequence",
    "mobius_sieve",
    "liouville_sieve",
    "TrigPolynomial",
    "DynSystem",
    "Observable",
    "ExperimentReport",
]
