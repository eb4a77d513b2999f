"""Uniform-digit heuristics and the scans behind the scatter plots.

If the digits of a number with L base-b digits were uniform on 0..b-1, its
digit sum would be about (b-1)/2 * L. The surrogates below plug in
L = log(value) / log b for powers, factorials and lcm(1..n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .bigdigits import digit_stats
from .bounds import certified_power_bound, special_value_bound
from .config import DEFAULT_CAPS, Caps
from .errors import PreconditionError, ResourceLimitError
from .rigorous import START_PRECISION, RigorousReal


def heuristic_power(n: int, a: int, b: int, precision: int = START_PRECISION) -> RigorousReal:
    """((b-1)/2) n log a / log b; for a=2, b=10 this is 4.5 n log10(2)."""
    if a < 2 or b < 2:
        raise PreconditionError(f"need a, b >= 2, got a={a}, b={b}")
    half = Fraction(b - 1, 2)
    return half * n * RigorousReal.log(a, precision) / RigorousReal.log(b, precision)


def heuristic_special(kind: str, n: int, b: int, precision: int = START_PRECISION) -> RigorousReal:
    """Expected digit sum of n! or lcm(1..n) under uniform digits.

    The factorial uses the exact sum of log k; lcm(1..n) uses log lcm ~ n.
    """
    if n < 0 or (kind == "lcm" and n < 1):
        raise PreconditionError(f"n out of range for {kind}: {n}")
    half = Fraction(b - 1, 2)
    log_b = RigorousReal.log(b, precision)
    if kind == "factorial":
        total = RigorousReal.exact(0, precision)
        for k in range(2, n + 1):
            total = total + RigorousReal.log(k, precision)
        return half * total / log_b
    if kind == "lcm":
        return half * n / log_b
    raise ValueError(f"kind must be 'factorial' or 'lcm', got {kind!r}")


@dataclass(frozen=True)
class ScanRow:
    n: int
    digit_count: int
    s_b: int
    c_b: int
    bound: int
    heuristic: RigorousReal
    base: int
    bound_kind: str  # "c" bounds the nonzero count, "s" the digit sum

    @property
    def consistent(self) -> bool:
        target = self.c_b if self.bound_kind == "c" else self.s_b
        return self.bound <= target and self.c_b <= self.s_b <= (self.base - 1) * self.c_b


def _power_row(a: int, b: int, n: int, precision: int) -> ScanRow:
    length, s, c = digit_stats(a**n, b)
    bound = certified_power_bound(a, b, n).k
    return ScanRow(n, length, s, c, bound, heuristic_power(n, a, b, precision), b, "c")


def _special_row(kind: str, b: int, n: int, caps: Caps, precision: int) -> ScanRow:
    cap = caps.factorial_n if kind == "factorial" else caps.lcm_n
    sb = special_value_bound(kind, n, b, cap)
    length, s, c = digit_stats(sb.value, b)
    return ScanRow(n, length, s, c, sb.bound, heuristic_special(kind, n, b, precision), b, "s")


def scan(
    kind: str,
    ns: Iterable[int],
    *,
    a: int = 2,
    b: int = 10,
    caps: Caps = DEFAULT_CAPS,
    precision: int = START_PRECISION,
) -> Iterator[ScanRow]:
    """Rows in ascending n. ``a`` is used only by power scans."""
    ordered = sorted(set(ns))
    if ordered and ordered[-1] > caps.scan_n:
        raise ResourceLimitError(f"scan range reaches {ordered[-1]}, above the cap {caps.scan_n}")
    if ordered and ordered[0] < 0:
        raise PreconditionError("scan indices must be non-negative")
    for n in ordered:
        if kind == "power":
            if n > caps.power_exponent:
                raise ResourceLimitError(f"exponent {n} exceeds the cap {caps.power_exponent}")
            row = _power_row(a, b, n, precision)
        elif kind in ("factorial", "lcm"):
            row = _special_row(kind, b, n, caps, precision)
        else:
            raise ValueError(f"unknown scan kind {kind!r}")
        assert row.consistent, f"inconsistent scan row {row}"
        yield row
