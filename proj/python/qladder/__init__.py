"""Python bindings for the qladder C++ library."""

from ._core import (
    ConvergenceError,
    DegenerateError,
    DomainError,
    InvalidBracketError,
    ModelParams,
    PoleError,
    alpha,
    bj_survival,
    fano_alpha_sq,
    fano_survival,
    monotonicity_certificate,
    oracle_survival,
    rabi_survival,
    residual_g,
    s1_closed,
    s1_partial,
    s2_trig,
    spectrum,
    survival,
    ww_survival,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
