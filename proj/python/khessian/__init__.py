"""Numerical experiments for k-Hessian exterior problems."""

from ._core import (
    ExteriorField,
    KHessianError,
    ProblemSpec,
    RadialSolution,
    RevolutionBody,
    certify_ball,
    inequality_ledger,
    min_exponent,
    monotonicity_audit,
    newton_maclaurin_gap,
    property_suite,
    sigma,
    sigma_all,
    solve_exterior,
)

__all__ = [
    "ExteriorField",
    "KHessianError",
    "ProblemSpec",
    "RadialSolution",
    "RevolutionBody",
    "certify_ball",
    "inequality_ledger",
    "min_exponent",
    "monotonicity_audit",
    "newton_maclaurin_gap",
    "property_suite",
    "sigma",
    "sigma_all",
    "solve_exterior",
]
