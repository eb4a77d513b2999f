"""Exact base-b digit expansions and digit statistics.

Digits are stored little-endian: ``digits[i]`` multiplies ``base**i``.
Zero has the empty expansion, so the top stored digit is always nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import InvalidBaseError, MalformedExpansionError

# Chunks handed to the inner digit loop stay below this bound.
_SMALL_LIMIT = 1 << 60


def _check_base(b: int) -> None:
    if not isinstance(b, int) or b < 2:
        raise InvalidBaseError(f"base must be an integer >= 2, got {b!r}")


def _check_natural(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"expected a non-negative integer, got {n!r}")


@dataclass(frozen=True)
class DigitExpansion:
    base: int
    digits: tuple[int, ...]

    def validate(self) -> None:
        _check_base(self.base)
        for i, d in enumerate(self.digits):
            if not isinstance(d, int) or not 0 <= d < self.base:
                raise MalformedExpansionError(
                    f"digit {d!r} at index {i} is outside 0..{self.base - 1}"
                )
        if self.digits and self.digits[-1] == 0:
            raise MalformedExpansionError("leading (highest-index) digit is zero")

    def __len__(self) -> int:
        return len(self.digits)

    def most_significant_first(self) -> tuple[int, ...]:
        return tuple(reversed(self.digits))


@lru_cache(maxsize=None)
def _chunk_width(b: int) -> int:
    w, p = 1, b
    while p * b < _SMALL_LIMIT:
        p *= b
        w += 1
    return w


def _chunks(n: int, big: int) -> list[int]:
    """Little-endian base-``big`` limbs of ``n`` (may carry high zero limbs)."""
    if n < big:
        return [n]
    powers = [big]
    while powers[-1] * powers[-1] <= n:
        powers.append(powers[-1] * powers[-1])
    out: list[int] = []

    def rec(x: int, j: int) -> None:
        if j < 0:
            out.append(x)
            return
        hi, lo = divmod(x, powers[j])
        rec(lo, j - 1)
        rec(hi, j - 1)

    rec(n, len(powers) - 1)
    return out


def _digit_list(n: int, b: int) -> list[int]:
    # full-width limbs except the top one, which stops at its last nonzero digit
    w = _chunk_width(b)
    limbs = _chunks(n, b**w) if n >= b**w else [n]
    while len(limbs) > 1 and limbs[-1] == 0:
        limbs.pop()
    digits: list[int] = []
    for limb in limbs[:-1]:
        for _ in range(w):
            limb, d = divmod(limb, b)
            digits.append(d)
    limb = limbs[-1]
    while limb:
        limb, d = divmod(limb, b)
        digits.append(d)
    return digits


def to_base(n: int, b: int) -> DigitExpansion:
    """Return the base-``b`` expansion of ``n``.

    >>> to_base(16384, 10).digits
    (4, 8, 3, 6, 1)
    """
    _check_base(b)
    _check_natural(n)
    return DigitExpansion(b, tuple(_digit_list(n, b)))


def from_base(e: DigitExpansion) -> int:
    e.validate()
    b = e.base
    w = _chunk_width(b)
    big = b**w
    limbs = []
    for start in range(0, len(e.digits), w):
        acc = 0
        for d in reversed(e.digits[start:start + w]):
            acc = acc * b + d
        limbs.append(acc)
    # pairwise combination keeps the multiplications balanced
    scale = big
    while len(limbs) > 1:
        merged = [limbs[i] + limbs[i + 1] * scale for i in range(0, len(limbs) - 1, 2)]
        if len(limbs) % 2:
            merged.append(limbs[-1])
        limbs = merged
        scale *= scale
    return limbs[0] if limbs else 0


def digit_sum(n: int, b: int) -> int:
    """s_b(n), the sum of the base-b digits of n."""
    _check_base(b)
    _check_natural(n)
    return sum(_digit_list(n, b))


def nonzero_count(n: int, b: int) -> int:
    """c_b(n), the number of nonzero base-b digits of n."""
    _check_base(b)
    _check_natural(n)
    return sum(1 for d in _digit_list(n, b) if d)


def digit_stats(n: int, b: int) -> tuple[int, int, int]:
    """Return ``(length, s_b, c_b)`` from a single expansion."""
    _check_base(b)
    _check_natural(n)
    digits = _digit_list(n, b)
    return len(digits), sum(digits), sum(1 for d in digits if d)


def block_split(n: int, b: int, width: int) -> list[int]:
    """Split ``n`` into base-``b**width`` blocks, least significant first.

    >>> block_split(123456, 10, 2)
    [56, 34, 12]
    """
    _check_base(b)
    _check_natural(n)
    if not isinstance(width, int) or width < 1:
        raise ValueError(f"block width must be a positive integer, got {width!r}")
    if n == 0:
        return []
    blocks = _chunks(n, b**width)
    while blocks[-1] == 0:
        blocks.pop()
    return blocks


def split_at_cuts(n: int, b: int, cuts: Sequence[int]) -> list[int]:
    """Split ``n`` at the digit positions in ``cuts`` (strictly increasing).

    Block ``j`` holds digits ``cuts[j-1] .. cuts[j]-1``; the last block is
    everything above the final cut. With a ladder's exponents as cuts this
    reproduces the block picture for powers of two.
    """
    _check_base(b)
    _check_natural(n)
    blocks = []
    prev = 0
    for c in cuts:
        if c <= prev:
            raise ValueError(f"cuts must be strictly increasing positive integers: {list(cuts)}")
        n, block = divmod(n, b ** (c - prev))
        blocks.append(block)
        prev = c
    blocks.append(n)
    return blocks


def block_fold(n: int, b: int, r: int) -> int:
    """The block-sum operator: add up the width-``r`` blocks of ``n``."""
    return sum(block_split(n, b, r))


def fold_trace(n: int, b: int, r: int) -> list[int]:
    """Iterate :func:`block_fold` from ``n`` until the value drops below ``b**r``."""
    _check_base(b)
    top = b**r
    trace = [n]
    while n >= top:
        n = block_fold(n, b, r)
        trace.append(n)
    return trace


def format_digits(e: DigitExpansion) -> str:
    """Most-significant-first rendering; bases above 36 use dot-separated decimals."""
    if not e.digits:
        return "0"
    msf = e.most_significant_first()
    if e.base <= 36:
        alphabet = "0123456789abcdefghijklmnopqrstuvwxyz"
        return "".join(alphabet[d] for d in msf)
    return ".".join(str(d) for d in msf)
