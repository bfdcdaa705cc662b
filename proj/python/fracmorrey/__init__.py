"""Numerical checks for fractional integrals with rough kernels on local Morrey spaces."""

from fracmorrey._core import (
    ConfigError,
    DomainError,
    Error,
    QuadratureError,
    campanato_profile,
    commutator,
    default_suite_document,
    describe_check,
    fractional_integral,
    fractional_maximal,
    list_catalog,
    list_checks,
    majorant_constant,
    morrey_profile,
    run_check,
    run_suite,
    t_tilde,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Error",
    "QuadratureError",
    "campanato_profile",
    "commutator",
    "default_suite_document",
    "describe_check",
    "fractional_integral",
    "fractional_maximal",
    "list_catalog",
    "list_checks",
    "majorant_constant",
    "morrey_profile",
    "run_check",
    "run_suite",
    "t_tilde",
]
