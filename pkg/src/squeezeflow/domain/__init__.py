from .intervals import Interval, iv_add, iv_div, iv_mul, iv_sub, param_form
from .params import FlowParams, FourPointBC, TwoPointBC
from .polynomials import Polynomial

__all__ = [
    "Interval",
    "iv_add",
    "iv_sub",
    "iv_mul",
    "iv_div",
    "param_form",
    "Polynomial",
    "FlowParams",
    "FourPointBC",
    "TwoPointBC",
]
