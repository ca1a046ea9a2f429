"""Generalized Struve, Fox-Wright and Lauricella series with integral identity checks."""

import json

from ._struvint import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    IntegralCase,
    NonIntegrableError,
    PoleError,
    RangeError,
    StruvintError,
    __version__,
    format_value,
    fox_wright,
    gamma,
    integrate_kernel,
    lauricella,
    log_gamma,
    oberhettinger,
    parse_complex,
    pfq,
    pochhammer,
    prefactor,
    rhs_corollary,
    struve_h,
    struve_l,
    struve_w,
    verify_case,
    verify_file_json,
)


def verify_file(path, jobs=1):
    """Run every case in a case file; returns the report as a dict."""
    return json.loads(verify_file_json(str(path), jobs))


__all__ = [name for name in dir() if not name.startswith("_")]
