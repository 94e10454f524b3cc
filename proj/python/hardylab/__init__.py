"""Sharp Hardy constants, test-function quotients and rearrangement checks."""

from hardylab._core import (
    InvalidArgument,
    NumericalError,
    exponent_split,
    family_quotient,
    holder_failure_ratio,
    interpolation_sides,
    lorentz_norm,
    run_suite,
    sharp_constant,
    suite_names,
)

__all__ = [
    "InvalidArgument",
    "NumericalError",
    "exponent_split",
    "family_quotient",
    "holder_failure_ratio",
    "interpolation_sides",
    "lorentz_norm",
    "run_suite",
    "sharp_constant",
    "suite_names",
]
