"""Upper and lower bounds for the sharp Kato constant on the torus."""

from ._core import (
    TailDominatesError,
    c_max,
    g_lower,
    gamma,
    known_optimum_params,
    lower,
    remainder_extrema,
    round_down_sig,
    round_up_sig,
    table,
    upper,
    verify,
)

__all__ = [
    "TailDominatesError",
    "c_max",
    "g_lower",
    "gamma",
    "known_optimum_params",
    "lower",
    "remainder_extrema",
    "round_down_sig",
    "round_up_sig",
    "table",
    "upper",
    "verify",
]
