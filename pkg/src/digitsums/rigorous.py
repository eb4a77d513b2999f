"""Certified real enclosures built on mpmath's outward-rounded interval kernels.

A :class:`RigorousReal` is a closed interval with dyadic endpoints that is
guaranteed to contain the true value. Endpoints convert to
:class:`fractions.Fraction` exactly, so every comparison against an exact
rational is decided by integer arithmetic; an undecided comparison returns
``None`` instead of a guess.
"""

from __future__ import annotations

from decimal import ROUND_CEILING, ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from typing import Optional, Union

from mpmath import libmp
from mpmath.libmp import libmpi

from .errors import DomainError, IndeterminateError, PrecisionEscalation

Exact = Union[int, Fraction]

DEFAULT_PRECISION = 128


def _to_fraction(x) -> Fraction:
    p, q = libmp.to_rational(x)
    return Fraction(int(p), int(q))


def _exact_interval(x: Exact, prec: int):
    if isinstance(x, int):
        v = libmp.from_int(x)
        return v, v
    x = Fraction(x)
    return (
        libmp.from_rational(x.numerator, x.denominator, prec, libmp.round_floor),
        libmp.from_rational(x.numerator, x.denominator, prec, libmp.round_ceiling),
    )


class RigorousReal:
    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi, prec: int):
        self.lo = lo
        self.hi = hi
        self.prec = prec

    # -- constructors -------------------------------------------------

    @classmethod
    def exact(cls, x: Exact, prec: int = DEFAULT_PRECISION) -> "RigorousReal":
        return cls(*_exact_interval(x, prec), prec)

    @classmethod
    def log(cls, x: Union[Exact, "RigorousReal"], prec: int = DEFAULT_PRECISION) -> "RigorousReal":
        """Natural logarithm of a positive exact value or enclosure."""
        iv = x if isinstance(x, RigorousReal) else cls.exact(x, prec)
        if libmp.mpf_sign(iv.lo) <= 0:
            raise DomainError(f"log of an interval reaching non-positive values: {iv}")
        return cls(*libmpi.mpi_log((iv.lo, iv.hi), prec), prec)

    @classmethod
    def e(cls, prec: int = DEFAULT_PRECISION) -> "RigorousReal":
        return cls(*libmpi.mpi_exp(libmpi.mpi_one, prec), prec)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> Optional["RigorousReal"]:
        if isinstance(other, RigorousReal):
            return other
        if isinstance(other, (int, Fraction)):
            return RigorousReal.exact(other, self.prec)
        return None

    def _binary(self, other, op, swap=False):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prec = max(self.prec, o.prec)
        x, y = ((o, self) if swap else (self, o))
        return RigorousReal(*op((x.lo, x.hi), (y.lo, y.hi), prec), prec)

    def __add__(self, other):
        return self._binary(other, libmpi.mpi_add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, libmpi.mpi_sub)

    def __rsub__(self, other):
        return self._binary(other, libmpi.mpi_sub, swap=True)

    def __mul__(self, other):
        return self._binary(other, libmpi.mpi_mul)

    __rmul__ = __mul__

    def _div(self, num, den):
        if den.sign() is None or den.sign() == 0:
            raise DomainError(f"division by an interval containing zero: {den}")
        prec = max(num.prec, den.prec)
        return RigorousReal(*libmpi.mpi_div((num.lo, num.hi), (den.lo, den.hi), prec), prec)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._div(self, o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._div(o, self)

    def __neg__(self):
        return RigorousReal(libmp.mpf_neg(self.hi), libmp.mpf_neg(self.lo), self.prec)

    def __abs__(self):
        return RigorousReal(*libmpi.mpi_abs((self.lo, self.hi), self.prec), self.prec)

    # -- exact views --------------------------------------------------

    @property
    def lower(self) -> Fraction:
        return _to_fraction(self.lo)

    @property
    def upper(self) -> Fraction:
        return _to_fraction(self.hi)

    @property
    def center(self) -> Fraction:
        return (self.lower + self.upper) / 2

    @property
    def radius(self) -> Fraction:
        return (self.upper - self.lower) / 2

    def contains(self, x: Exact) -> bool:
        return self.lower <= x <= self.upper

    def sign(self) -> Optional[int]:
        """-1, 0 or 1 when certain; None when the interval straddles zero."""
        lo, hi = libmp.mpf_sign(self.lo), libmp.mpf_sign(self.hi)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if lo == 0 and hi == 0:
            return 0
        return None

    def lt(self, x: Exact) -> Optional[bool]:
        """Whether the value is < x; None if the enclosure cannot tell."""
        if self.upper < x:
            return True
        if self.lower >= x:
            return False
        return None

    def gt(self, x: Exact) -> Optional[bool]:
        if self.lower > x:
            return True
        if self.upper <= x:
            return False
        return None

    def le(self, x: Exact) -> Optional[bool]:
        if self.upper <= x:
            return True
        if self.lower > x:
            return False
        return None

    def ge(self, x: Exact) -> Optional[bool]:
        if self.lower >= x:
            return True
        if self.upper < x:
            return False
        return None

    def format(self, digits: int = 6) -> str:
        """Center rounded to ``digits`` significant digits, ties to even."""
        c = self.center
        d = Context(prec=digits + 30).divide(Decimal(c.numerator), Decimal(c.denominator))
        rounded = Context(prec=digits, rounding=ROUND_HALF_EVEN).plus(d)
        if rounded:
            # keep trailing zeros so every value shows exactly ``digits`` digits
            rounded = rounded.quantize(Decimal(1).scaleb(rounded.adjusted() - digits + 1))
        return _plain(rounded)

    def format_radius(self, digits: int = 3) -> str:
        """Radius rounded up, so the printed value never understates it."""
        r = self.radius
        d = Context(prec=digits + 30, rounding=ROUND_CEILING).divide(
            Decimal(r.numerator), Decimal(r.denominator)
        )
        return format(Context(prec=digits, rounding=ROUND_CEILING).plus(d), "e")

    def __float__(self) -> float:
        return float(self.center)

    def __repr__(self) -> str:
        return f"RigorousReal([{float(self.lower)!r}, {float(self.upper)!r}], prec={self.prec})"


def _plain(d: Decimal) -> str:
    if d == 0:
        return "0"
    exp = d.adjusted()
    if -7 < exp < 21:
        return format(d, "f")
    return format(d, "e")


START_PRECISION = 128
MAX_PRECISION = 8192


def escalate(fn, start: int = START_PRECISION, cap: int = MAX_PRECISION):
    """Call ``fn(prec)`` with doubling precision until it stops raising
    :class:`PrecisionEscalation`; past ``cap`` the result is indeterminate."""
    prec = start
    while True:
        try:
            return fn(prec)
        except PrecisionEscalation as exc:
            if prec * 2 > cap:
                raise IndeterminateError(f"{exc.what}: still undecided at the {cap}-bit cap") from exc
            prec *= 2
