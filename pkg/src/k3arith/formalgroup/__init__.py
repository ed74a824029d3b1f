from .logarithm import additive_log, multiplicative_log, honda_log, LogExpansion
from .law import (
    FormalGroupLaw,
    FglHom,
    fgl_from_log,
    additive_law,
    multiplicative_law,
    honda_law,
)
from .endo import (
    n_series,
    p_series,
    height,
    a_series,
    reduction_check,
    reduction_commutes,
    LiftWithAction,
    lift_with_action,
)

__all__ = [
    "additive_log",
    "multiplicative_log",
    "honda_log",
    "LogExpansion",
    "FormalGroupLaw",
    "FglHom",
    "fgl_from_log",
    "additive_law",
    "multiplicative_law",
    "honda_law",
    "n_series",
    "p_series",
    "height",
    "a_series",
    "reduction_check",
    "reduction_commutes",
    "LiftWithAction",
    "lift_with_action",
]
