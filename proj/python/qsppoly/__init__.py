"""Polynomials in the families P, Q, P', Q' and constructive approximation."""

from ._qsppoly import (
    CenteredOddPoly,
    Poly,
    QsppolyError,
    approximate,
    approximate_on_subset,
    bernstein_step,
    bernstein_step_at,
    build_ripple_poly,
    check_family,
    default_tolerance,
    equiripple,
    equispaced_zeros,
    gap_report,
    run_cli,
    step_error,
    step_parity_check,
)


def is_member(p, family, tol=None):
    return check_family(p, family, tol)["verdict"] != "NotMember"


__all__ = [
    "CenteredOddPoly",
    "Poly",
    "QsppolyError",
    "approximate",
    "approximate_on_subset",
    "bernstein_step",
    "bernstein_step_at",
    "build_ripple_poly",
    "check_family",
    "default_tolerance",
    "equiripple",
    "equispaced_zeros",
    "gap_report",
    "is_member",
    "run_cli",
    "step_error",
    "step_parity_check",
]
