"""Gap profiles of the nonzero digits of a**n and the linear forms behind them.

Positions are numbered from the left: the leading digit sits at position 1
and the digit multiplying ``b**j`` sits at position ``m - j``. Every
inequality that can be phrased over the integers is checked over the
integers; :class:`~digitsums.rigorous.RigorousReal` is used only for the
logarithms themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .bigdigits import nonzero_count, to_base
from .bounds import certified_power_bound
from .config import DEFAULT_CAPS
from .errors import DomainError, InvalidParamsError, PrecisionEscalation, PreconditionError, ResourceLimitError
from .rigorous import MAX_PRECISION, START_PRECISION, RigorousReal, escalate
from .valuations import require_independent, select_prime_pair, strip_base_power


@dataclass(frozen=True)
class GapProfile:
    a: int
    b: int
    n: int
    value: int
    m: int
    positions: tuple[int, ...]
    digits: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.positions)

    def sandwich_holds(self) -> bool:
        b, m = self.b, self.m
        return b ** (m - 1) < self.value < b**m


def gap_profile(a: int, b: int, n: int, power_cap: int = DEFAULT_CAPS.power_exponent) -> GapProfile:
    """Left-based positions of the nonzero base-b digits of a**n.

    >>> gap_profile(2, 10, 10).positions
    (1, 3, 4)
    """
    if a < 2 or b < 2 or n < 1:
        raise PreconditionError(f"need a, b >= 2 and n >= 1, got a={a}, b={b}, n={n}")
    if n > power_cap:
        raise ResourceLimitError(f"exponent {n} exceeds the cap {power_cap}")
    require_independent(a, b)
    value = a**n
    digits = to_base(value, b).digits
    m = len(digits)
    positions, nz = [], []
    for j in range(m - 1, -1, -1):
        if digits[j]:
            positions.append(m - j)
            nz.append(digits[j])
    profile = GapProfile(a, b, n, value, m, tuple(positions), tuple(nz))
    assert profile.sandwich_holds()
    return profile


@dataclass(frozen=True)
class TruncationSplit:
    i: int
    q: int
    r: int
    m_i: int
    m_next: int


def split_at(profile: GapProfile, i: int) -> TruncationSplit:
    """Cut a**n = b**(m - m_i) q + r just after the i-th nonzero digit."""
    if profile.k < 2:
        raise PreconditionError(f"{profile.a}^{profile.n} has a single nonzero digit; nothing to split")
    if not 1 <= i <= profile.k - 1:
        raise PreconditionError(f"split index {i} outside 1..{profile.k - 1}")
    m_i, m_next = profile.positions[i - 1], profile.positions[i]
    q, r = divmod(profile.value, profile.b ** (profile.m - m_i))
    return TruncationSplit(i, q, r, m_i, m_next)


@dataclass(frozen=True)
class SplitChecks:
    """Outcome of every exact and rigorous check on one split.

    ``None`` means the check does not apply to this split.
    """

    n: int
    i: int
    bounds: bool
    truncation_chain: bool
    ratio_estimate: Optional[bool]
    lambda_bound: Optional[bool]
    nonvanishing: bool

    @property
    def ok(self) -> bool:
        return all(x is not False for x in (
            self.bounds, self.truncation_chain, self.ratio_estimate, self.lambda_bound, self.nonvanishing,
        ))


def split_bounds_hold(profile: GapProfile, s: TruncationSplit) -> bool:
    """b^(m_i-1) <= q < b^m_i and b^(m-m_{i+1}) <= r < b^(m-m_{i+1}+1).

    The lower bound on q is strict except for q = 1 at m_i = 1, where q
    equals b**0 exactly.
    """
    b, m = profile.b, profile.m
    q_low = b ** (s.m_i - 1)
    q_ok = (q_low < s.q or (s.m_i == 1 and s.q == 1)) and s.q < b**s.m_i
    r_ok = b ** (m - s.m_next) <= s.r < b ** (m - s.m_next + 1)
    return q_ok and r_ok


def truncation_chain_holds(profile: GapProfile, s: TruncationSplit) -> bool:
    """b^(-m_{i+1}) < r / a^n < b^(-m_{i+1}+2), cleared of denominators."""
    b, value = profile.b, profile.value
    return value < b**s.m_next * s.r and s.r * b**s.m_next < value * b * b


@lru_cache(maxsize=256)
def _log_int(x: int, prec: int) -> RigorousReal:
    return RigorousReal.log(x, prec)


def linear_form(profile: GapProfile, s: TruncationSplit, precision: int = START_PRECISION) -> RigorousReal:
    """-n log a + (m - m_i) log b + log q, certified.

    Raises :class:`PrecisionEscalation` when the enclosure cannot exclude
    zero or, for 2r < a**n, cannot show |Lambda| < 2r / a**n.
    """
    if s.q < 1:
        raise PreconditionError("q must be positive")
    lam = (
        -profile.n * _log_int(profile.a, precision)
        + (profile.m - s.m_i) * _log_int(profile.b, precision)
        + _log_int(s.q, precision)
    )
    if lam.sign() in (None, 0):
        raise PrecisionEscalation(f"sign of the linear form for n={profile.n}, i={s.i}", precision)
    if 2 * s.r < profile.value:
        if abs(lam).lt(Fraction(2 * s.r, profile.value)) is not True:
            raise PrecisionEscalation(f"|Lambda| bound for n={profile.n}, i={s.i}", precision)
    return lam


def certified_linear_form(profile, s, start=START_PRECISION, cap=MAX_PRECISION) -> RigorousReal:
    return escalate(lambda prec: linear_form(profile, s, prec), start, cap)


def truncation_error_log(profile: GapProfile, s: TruncationSplit, precision: int) -> RigorousReal:
    """log(1 - r / a**n), the same number as the linear form by a second route."""
    return RigorousReal.log(Fraction(profile.value - s.r, profile.value), precision)


def ratio_estimate(profile: GapProfile, s: TruncationSplit, start=START_PRECISION, cap=MAX_PRECISION) -> Optional[bool]:
    """(1/2) g < -log(r / a^n) / log q < (3/2) g for g = m_{i+1} / m_i.

    Only meaningful for m_i >= 3 and m_{i+1} >= 4; returns None otherwise.
    """
    if s.m_i < 3 or s.m_next < 4:
        return None
    gap = Fraction(s.m_next, s.m_i)

    def run(prec):
        x = (profile.n * _log_int(profile.a, prec) - _log_int(s.r, prec)) / _log_int(s.q, prec)
        lo, hi = x.gt(gap / 2), x.lt(3 * gap / 2)
        if lo is None or hi is None:
            raise PrecisionEscalation(f"ratio estimate for n={profile.n}, i={s.i}", prec)
        return lo and hi

    return escalate(run, start, cap)


def check_split(profile: GapProfile, s: TruncationSplit, start=START_PRECISION, cap=MAX_PRECISION) -> SplitChecks:
    nonvanishing = profile.b ** (profile.m - s.m_i) * s.q != profile.value
    lam_ok = None
    if 2 * s.r < profile.value:
        lam = certified_linear_form(profile, s, start, cap)
        lam_ok = abs(lam).lt(Fraction(2 * s.r, profile.value)) is True
    else:
        certified_linear_form(profile, s, start, cap)
    return SplitChecks(
        profile.n,
        s.i,
        split_bounds_hold(profile, s),
        truncation_chain_holds(profile, s),
        ratio_estimate(profile, s, start, cap),
        lam_ok,
        nonvanishing,
    )


def check_profile(profile: GapProfile, start=START_PRECISION, cap=MAX_PRECISION) -> list[SplitChecks]:
    if profile.k < 2:
        return []
    return [check_split(profile, split_at(profile, i), start, cap) for i in range(1, profile.k)]


def last_digit_identity_holds(profile: GapProfile) -> bool:
    """a^n = b^(m - m_k) t with b^(m_k - 1) < t < b^(m_k), matching strip_base_power."""
    b, m, mk = profile.b, profile.m, profile.positions[-1]
    t, rem = divmod(profile.value, b ** (m - mk))
    dec = strip_base_power(profile.value, b)
    return rem == 0 and b ** (mk - 1) < t < b**mk and dec.m == m - mk and dec.cofactor == t


# -- growth of the cofactor --------------------------------------------------


@dataclass(frozen=True)
class GrowthEnvelope:
    a: int
    n: int
    t: int
    p: int
    c1: Fraction
    lower_ok: bool
    upper_ok: bool

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok

    def logs(self, prec: int = START_PRECISION):
        """``(C n, log t, C' n)`` as enclosures, for reporting."""
        lower = self.c1 * self.n * RigorousReal.log(self.p, prec)
        upper = self.n * RigorousReal.log(self.a, prec)
        return lower, RigorousReal.log(self.t, prec), upper


def growth_envelope(a: int, b: int, n: int) -> GrowthEnvelope:
    """c1 n log p <= log t <= n log a for a**n = b**m t, decided exactly.

    The lower bound is t**den >= p**(num n) with c1 = num/den; the upper
    bound is t <= a**n.
    """
    pair = select_prime_pair(a, b)
    t = strip_base_power(a**n, b).cofactor
    c1 = pair.c1
    lower_ok = t**c1.denominator >= pair.p ** (c1.numerator * n)
    upper_ok = t <= a**n
    return GrowthEnvelope(a, n, t, pair.p, c1, lower_ok, upper_ok)


# -- Baker--Wustholz ---------------------------------------------------------


class _Euler:
    """Stands for the real number e, the floor for heights and B."""

    def __repr__(self):
        return "e"


E = _Euler()
Height = Union[int, Fraction, _Euler]


def _at_least_e(x: Height) -> bool:
    # e is irrational, so a rational x never ties with it
    return x is E or RigorousReal.e(START_PRECISION).lt(Fraction(x)) is True


def _log_height(x: Height, prec: int) -> RigorousReal:
    if x is E:
        return RigorousReal.exact(1, prec)
    return RigorousReal.log(Fraction(x) if not isinstance(x, int) else x, prec)


@dataclass(frozen=True)
class BakerParams:
    heights: tuple[Height, ...]
    B: Height
    d: int = 1

    def __post_init__(self):
        if not self.heights:
            raise InvalidParamsError("need at least one height")
        if self.d < 1:
            raise InvalidParamsError(f"field degree must be >= 1, got {self.d}")
        for A in self.heights:
            if not _at_least_e(A):
                raise InvalidParamsError(f"height {A} is below e; use BakerParams.clamped")
        if not _at_least_e(self.B):
            raise InvalidParamsError(f"B = {self.B} is below e; use BakerParams.clamped")

    @property
    def n(self) -> int:
        return len(self.heights)

    @classmethod
    def clamped(cls, heights: Iterable[Height], B: Height, d: int = 1) -> "BakerParams":
        """Raise every height and B below e up to e."""

        def clamp(x):
            return x if _at_least_e(x) else E

        return cls(tuple(clamp(A) for A in heights), clamp(B), d)


def baker_constant(n: int, d: int = 1) -> int:
    """(16 n d)**(2(n+2)); 48**10 for three rational integers."""
    return (16 * n * d) ** (2 * (n + 2))


def baker_lower_bound(params: BakerParams, precision: int = START_PRECISION) -> RigorousReal:
    """Lower bound on log|Lambda|: -(16nd)^(2(n+2)) log A_1 ... log A_n log B."""
    product = _log_height(params.B, precision)
    for A in params.heights:
        product = product * _log_height(A, precision)
    return -baker_constant(params.n, params.d) * product


def baker_params_for_split(profile: GapProfile, s: TruncationSplit) -> BakerParams:
    """Heights (a, b, q) and coefficient bound max(n, m - m_i, 1), clamped to e."""
    B = max(profile.n, profile.m - s.m_i, 1)
    return BakerParams.clamped((profile.a, profile.b, s.q), B, 1)


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class GapRow:
    n: int
    i: int
    m_i: int
    m_next: int
    ratio: Fraction
    ratio_over_log_n: RigorousReal


@dataclass(frozen=True)
class TelescopeCheck:
    n: int
    m_k: int
    exact: bool
    rigorous: bool


def gap_report(a: int, b: int, ns: Iterable[int], precision: int = START_PRECISION):
    """Rows (n, i, m_i, m_{i+1}, ratio, ratio / log n) and telescoping checks.

    n must be at least 2 so that log n > 0. Profiles with a single nonzero
    digit contribute no rows.
    """
    rows: list[GapRow] = []
    checks: list[TelescopeCheck] = []
    for n in sorted(set(ns)):
        if n < 2:
            raise DomainError(f"gap report needs n >= 2 (log n > 0), got {n}")
        profile = gap_profile(a, b, n)
        if profile.k < 2:
            continue
        log_n = RigorousReal.log(n, precision)
        product = Fraction(1)
        log_sum = RigorousReal.exact(0, precision)
        pos = profile.positions
        for i in range(1, profile.k):
            ratio = Fraction(pos[i], pos[i - 1])
            product *= ratio
            log_sum = log_sum + RigorousReal.log(ratio, precision)
            rows.append(GapRow(n, i, pos[i - 1], pos[i], ratio, ratio / log_n))
        log_mk = RigorousReal.log(pos[-1], precision)
        overlap = log_sum.lower <= log_mk.upper and log_mk.lower <= log_sum.upper
        checks.append(TelescopeCheck(n, pos[-1], product == pos[-1], overlap))
    return rows, checks


def empirical_gap_constant(rows: Sequence[GapRow]) -> Optional[Fraction]:
    """Upper end of max over rows of (m_{i+1}/m_i) / log n."""
    if not rows:
        return None
    return max(row.ratio_over_log_n.upper for row in rows)


def above_stewart_threshold(n: int) -> bool:
    """n > e**e (about 15.154), where log log n > 1."""
    return n >= 16


def stewart_floor(n: int, C: Union[int, Fraction, RigorousReal] = 0, precision: int = START_PRECISION) -> RigorousReal:
    """log n / (log log n + C)."""
    if not isinstance(n, int) or n <= 4:
        raise DomainError(f"need an integer n > 4, got {n!r}")
    log_n = RigorousReal.log(n, precision)
    denom = RigorousReal.log(log_n, precision) + C
    if denom.sign() in (None, 0, -1):
        raise DomainError(f"log log {n} + C is not certifiably positive: {denom}")
    return log_n / denom


@dataclass(frozen=True)
class FloorRow:
    n: int
    nonzero: int
    normalized: RigorousReal
    certified_k: int

    @property
    def ok(self) -> bool:
        return self.nonzero >= self.certified_k


@dataclass(frozen=True)
class FloorReport:
    a: int
    b: int
    rows: tuple[FloorRow, ...]

    @property
    def argmin(self) -> FloorRow:
        return min(self.rows, key=lambda row: (row.normalized.center, row.n))

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows)


def stewart_floor_report(a: int, b: int, n_from: int, n_to: int, precision: int = START_PRECISION) -> FloorReport:
    """c_b(a^n) log log n / log n for each n, with the certified bound beside it."""
    require_independent(a, b)
    if n_from < 3:
        raise DomainError("log log n must be positive; start at n >= 3")
    rows = []
    for n in range(n_from, n_to + 1):
        c = nonzero_count(a**n, b)
        log_n = RigorousReal.log(n, precision)
        normalized = c * RigorousReal.log(log_n, precision) / log_n
        rows.append(FloorRow(n, c, normalized, certified_power_bound(a, b, n).k))
    return FloorReport(a, b, tuple(rows))
