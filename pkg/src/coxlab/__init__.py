"""Exact computations and identity checks for finite real reflection groups."""

from __future__ import annotations

from coxlab.arrangement import build_lattice
from coxlab.errors import (
    CoxlabError,
    DegreeExtractionError,
    FieldMismatchError,
    GroupTooLarge,
    NonIntegerRoots,
    NonIntegralPolynomial,
    PropertyViolation,
    UnknownTypeError,
)
from coxlab.exactlinalg import IntPolynomial, QMatrix, QScalar
from coxlab.group import coxeter_element, degrees, enumerate_group
from coxlab.identities import run_check, run_suite
from coxlab.ncposet import build_nc, count_maximal_chains, zeta_value
from coxlab.rootsys import RootSystem, build_root_system, parse_type

__version__ = "0.1.0"

__all__ = [
    "CoxlabError",
    "DegreeExtractionError",
    "FieldMismatchError",
    "GroupTooLarge",
    "IntPolynomial",
    "NonIntegerRoots",
    "NonIntegralPolynomial",
    "PropertyViolation",
    "QMatrix",
    "QScalar",
    "RootSystem",
    "UnknownTypeError",
    "build_lattice",
    "build_nc",
    "build_root_system",
    "count_maximal_chains",
    "coxeter_element",
    "degrees",
    "enumerate_group",
    "parse_type",
    "run_check",
    "run_suite",
    "zeta_value",
]
