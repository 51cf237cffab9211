#!/usr/bin/env python3
"""
ergolab - Setup Configuration

Numerical laboratory for multiplicative weights in ergodic averages.
"""

from pathlib import Path

from setuptools import find_packages, setup

# Read README for long description
readme_file = Path(__file__).parent / "README.md"
if readme_file.exists():
    long_description = readme_file.read_text(encoding="utf-8")
else:
    long_description = "Numerical laboratory for multiplicative weights in ergodic averages"

setup(
    name="ergolab",
    version="0.1.0",
    author="Contributors to the ergolab project",
    description="Numerical laboratory for multiplicative weights in ergodic averages",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "docs"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Operating System :: OS Independent",
    ],
    keywords="ergodic mobius exponential-sums gowers-norm fejer numerics",
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.24",            # Sieves, grids, vectorized orbits
        "scipy>=1.10",            # Quadrature for kernel tail calibration
        "filelock>=3.12.0",       # Cross-process report and fixture locking
        "PyYAML>=6.0",            # Configuration file support
    ],
    extras_require={
        "dev": [
            "pytest>=7.4",
            "pytest-cov>=4.1",
            "hypothesis>=6.80",
            "black>=23.0",
            "isort>=5.12",
            "mypy>=1.5",
            "ruff>=0.1.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "ergolab=ergolab.cli:main",
        ],
    },
    package_data={
        "ergolab": [
            "py.typed",           # PEP 561 type information
            "fixtures/*.json",    # Frozen empirical constants
        ],
    },
    include_package_data=True,
    zip_safe=False,
    license="MIT",
)
