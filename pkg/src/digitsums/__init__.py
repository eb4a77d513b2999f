"""Exact digit-sum bounds for powers, factorials and lcm(1..n).

Everything that decides a statement works on integers; logarithms enter
only through certified enclosures (see :mod:`digitsums.rigorous`).
"""

from .bigdigits import DigitExpansion, digit_stats, digit_sum, from_base, nonzero_count, to_base
from .bounds import (
    certified_power_bound,
    certify_block_count,
    exponent_ladder,
    sparse_multiple,
    special_value_bound,
    stolarsky_check,
)
from .config import DEFAULT_CAPS, Caps
from .errors import DigitSumsError
from .rigorous import RigorousReal
from .valuations import factorize, nu

__version__ = "0.1.0"

__all__ = [
    "Caps",
    "DEFAULT_CAPS",
    "DigitExpansion",
    "DigitSumsError",
    "RigorousReal",
    "certified_power_bound",
    "certify_block_count",
    "digit_stats",
    "digit_sum",
    "exponent_ladder",
    "factorize",
    "from_base",
    "nonzero_count",
    "nu",
    "sparse_multiple",
    "special_value_bound",
    "stolarsky_check",
    "to_base",
]
