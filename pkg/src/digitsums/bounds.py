"""Certified lower bounds on digit counts and digit sums.

Everything that certifies a statement here runs on exact integers. Real
numbers only appear where a logarithm is genuinely involved (the admissible
constant and the ladder growth estimate), and those go through
:mod:`digitsums.rigorous`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .bigdigits import digit_sum, fold_trace, nonzero_count
from .config import DEFAULT_CAPS
from .errors import HypothesisError, PrecisionEscalation, PreconditionError, ResourceLimitError
from .rigorous import RigorousReal, escalate
from .valuations import (
    DEFAULT_FACTOR_LIMIT,
    coprime_split,
    multiplicative_dependence,
    primes_upto,
    select_prime_pair,
)


# -- exponent ladders ------------------------------------------------------


@dataclass(frozen=True)
class ExponentLadder:
    a: int
    b: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.a < 2 or self.b <= self.a:
            raise PreconditionError(f"ladder needs 2 <= a < b, got a={self.a}, b={self.b}")
        es = self.exponents
        if es and es[0] < 1:
            raise PreconditionError("ladder must start at e_1 >= 1")
        for k in range(1, len(es)):
            if not self.a ** es[k] > self.b ** es[k - 1]:
                raise PreconditionError(
                    f"ladder step fails: {self.a}^{es[k]} <= {self.b}^{es[k - 1]}"
                )

    def __len__(self):
        return len(self.exponents)

    def __getitem__(self, k: int) -> int:
        """One-based access, ``ladder[1]`` is e_1."""
        if not 1 <= k <= len(self.exponents):
            raise IndexError(k)
        return self.exponents[k - 1]


def _require_divides(a: int, b: int) -> None:
    if not (isinstance(a, int) and isinstance(b, int) and 2 <= a < b and b % a == 0):
        raise PreconditionError(f"need integers 2 <= a < b with a | b, got a={a}, b={b}")


def _least_exponent_above(a: int, target: int) -> int:
    """Smallest e with a**e > target."""
    e = max(1, int(math.log(target) / math.log(a)) if target > 1 else 0)
    while a**e > target:
        e -= 1
    while a**e <= target:
        e += 1
    return e


def exponent_ladder(a: int, b: int, length: int) -> ExponentLadder:
    """e_1 = 1 and e_k the least exponent with a**e_k > b**e_{k-1}.

    >>> exponent_ladder(2, 10, 5).exponents
    (1, 4, 14, 47, 157)
    """
    _require_divides(a, b)
    es: list[int] = []
    for k in range(length):
        es.append(1 if k == 0 else _least_exponent_above(a, b ** es[-1]))
    return ExponentLadder(a, b, tuple(es))


def ladder_reaching(a: int, b: int, exponent: int) -> ExponentLadder:
    """Shortest exact ladder whose top rung exceeds ``exponent``."""
    _require_divides(a, b)
    es = [1]
    while es[-1] <= exponent:
        es.append(_least_exponent_above(a, b ** es[-1]))
    return ExponentLadder(a, b, tuple(es))


def corollary_ladder(length: int) -> ExponentLadder:
    """The 2-versus-10 ladder e_k = 4**(k-1)."""
    return ExponentLadder(2, 10, tuple(4 ** (k - 1) for k in range(1, length + 1)))


@dataclass(frozen=True)
class LadderEstimateRow:
    k: int
    e_k: int
    partial_sum: RigorousReal
    geometric: RigorousReal
    below_sum: bool
    below_geometric: bool


def _log_ratio(a: int, b: int, prec: int) -> RigorousReal:
    return RigorousReal.log(b, prec) / RigorousReal.log(a, prec)


def verify_ladder_estimate(ladder: ExponentLadder, start: int = 128, cap: int = 8192) -> list[LadderEstimateRow]:
    """Check e_k <= 1 + r + ... + r^(k-1) < r^k / (r - 1), with r = log b / log a.

    The first inequality is an equality at k = 1, and can be one whenever r
    is rational, so it is checked non-strictly; the second is strict. A
    rational r (a**v == b**u) is handled in exact arithmetic.
    """
    dep = multiplicative_dependence(ladder.a, ladder.b)
    if dep is not None:
        r = Fraction(dep[1], dep[0])
        rows = []
        power, partial = Fraction(1), Fraction(0)
        for k, e in enumerate(ladder.exponents, 1):
            partial += power
            power *= r
            geometric = power / (r - 1)
            rows.append(LadderEstimateRow(
                k, e, RigorousReal.exact(partial, start), RigorousReal.exact(geometric, start),
                e <= partial, e < geometric,
            ))
        return rows

    def run(prec: int):
        r = _log_ratio(ladder.a, ladder.b, prec)
        rows = []
        power = RigorousReal.exact(1, prec)
        partial = RigorousReal.exact(0, prec)
        for k, e in enumerate(ladder.exponents, 1):
            partial = partial + power
            power = power * r
            geometric = power / (r - 1)
            below_sum = partial.ge(e)
            below_geo = geometric.gt(e)
            if below_sum is None or below_geo is None:
                raise PrecisionEscalation(f"ladder estimate at k={k}", prec)
            rows.append(LadderEstimateRow(k, e, partial, geometric, below_sum, below_geo))
        return rows

    return escalate(run, start, cap)


# -- block certificates ----------------------------------------------------


@dataclass(frozen=True)
class BlockCertificate:
    n_value: int
    a: int
    b: int
    exponents: tuple[int, ...]
    k: int
    splits: tuple[tuple[int, int], ...]

    @property
    def blocks(self) -> list[int]:
        """Blocks least-significant first; each one holds a nonzero digit."""
        if not self.splits:
            return [self.n_value]
        return [self.splits[-1][1]] + [q for q, _ in reversed(self.splits)]

    def validate(self) -> None:
        """Replay every division step; raises AssertionError on any defect."""
        a, b = self.a, self.b
        assert self.n_value >= 1 and self.n_value % b != 0
        assert len(self.splits) == self.k - 1
        current = self.n_value
        for j, (q, r) in zip(range(self.k, 1, -1), self.splits):
            unit = b ** self.exponents[j - 2]
            assert current == unit * q + r, f"replay fails at level {j}"
            assert q >= 1 and 0 <= r < unit
            assert r % a ** self.exponents[j - 2] == 0
            assert r % b != 0
            current = r
        assert current >= 1


def certify_block_count(n_value: int, a: int, b: int, ladder: ExponentLadder) -> BlockCertificate:
    """Largest k with a**e_k | N, with the division steps that prove c_b(N) >= k."""
    _require_divides(a, b)
    if ladder.a != a or ladder.b != b:
        raise PreconditionError(f"ladder is for ({ladder.a}, {ladder.b}), not ({a}, {b})")
    if not isinstance(n_value, int) or n_value < 1:
        raise PreconditionError(f"N must be a positive integer, got {n_value!r}")
    if n_value % b == 0:
        raise HypothesisError(f"{b} divides N; strip trailing zeros first")
    k = 1
    for j, e in enumerate(ladder.exponents, 1):
        if n_value % a**e == 0:
            k = j
        else:
            break
    splits = []
    current = n_value
    for j in range(k, 1, -1):
        q, r = divmod(current, b ** ladder[j - 1])
        splits.append((q, r))
        current = r
    cert = BlockCertificate(n_value, a, b, ladder.exponents, k, tuple(splits))
    cert.validate()
    return cert


@dataclass(frozen=True)
class CorollaryCheck:
    a: int
    n: int
    ceil_log4: int
    certificate: BlockCertificate
    nonzero: int

    @property
    def passed(self) -> bool:
        return self.nonzero >= self.certificate.k >= self.ceil_log4


def ceil_log(n: int, base: int) -> int:
    """Smallest k with base**k >= n, for n >= 1."""
    k, p = 0, 1
    while p < n:
        p *= base
        k += 1
    return k


def floor_log(n: int, base: int) -> int:
    """Largest k with base**k <= n, for n >= 1."""
    k, p = 0, base
    while p <= n:
        p *= base
        k += 1
    return k


def corollary_floor(n: int, prec: int = 128) -> tuple[int, RigorousReal]:
    """``(ceil(log_4 n), log_4 n)`` for n > 1."""
    if not isinstance(n, int) or n <= 1:
        raise PreconditionError(f"need n > 1, got {n!r}")
    return ceil_log(n, 4), RigorousReal.log(n, prec) / RigorousReal.log(4, prec)


def certify_corollary(a: int, n: int) -> CorollaryCheck:
    """c_10(a**n) >= log_4 n for even a not divisible by 10."""
    if a % 2 or a % 10 == 0:
        raise HypothesisError(f"a must be even and not divisible by 10, got {a}")
    k_needed, _ = corollary_floor(n)
    cert = certify_block_count(a**n, 2, 10, corollary_ladder(k_needed + 1))
    return CorollaryCheck(a, n, k_needed, cert, nonzero_count(a**n, 10))


def admissible_constant(a: int, b: int, prec: int = 128) -> Fraction:
    """A rational strictly below 1 / log(log b / log a), within 1e-9 of it."""
    _require_divides(a, b)
    bound = 1 / RigorousReal.log(_log_ratio(a, b, prec), prec)
    scale = 10**9
    return Fraction(math.floor(bound.lower * scale) - 1, scale)


@dataclass(frozen=True)
class LogBoundThreshold:
    """Where the certified block count starts to dominate C log n.

    ``threshold`` is the least n0 such that k(a**n) >= C log n for every n in
    n0..n_max; it is observed, not proved to persist beyond n_max.
    """

    a: int
    b: int
    C: Fraction
    n_max: int
    threshold: int
    violations: tuple[int, ...]


def log_bound_threshold(a: int, b: int, n_max: int, C: Fraction,
                        start: int = 128, cap: int = 8192) -> LogBoundThreshold:
    """Scan n = 2..n_max for k >= C log n, with k from the exact a-versus-b ladder.

    Just below each rung k trails log n / log r by a fixed amount, so C must
    sit strictly below the admissible supremum for a threshold to exist.
    """
    _require_divides(a, b)
    if n_max < 2:
        raise PreconditionError(f"need n_max >= 2, got {n_max}")
    C = Fraction(C)
    if C <= 0:
        raise PreconditionError(f"C must be positive, got {C}")
    ladder = ladder_reaching(a, b, n_max)
    violations = []
    for n in range(2, n_max + 1):
        # a**n is divisible by a**e_j exactly when e_j <= n
        k = max(j for j, e in enumerate(ladder.exponents, 1) if e <= n)

        def run(prec, n=n, k=k):
            verdict = (C * RigorousReal.log(n, prec)).le(k)
            if verdict is None:
                raise PrecisionEscalation(f"C log {n} against {k}", prec)
            return verdict

        if not escalate(run, start, cap):
            violations.append(n)
    threshold = violations[-1] + 1 if violations else 2
    return LogBoundThreshold(a, b, C, n_max, threshold, tuple(violations))


@dataclass(frozen=True)
class PowerBound:
    """A certified lower bound on c_b(a**n)."""

    a: int
    b: int
    n: int
    k: int
    method: str
    certificate: Optional[BlockCertificate] = None


def certified_power_bound(a: int, b: int, n: int, factor_limit: int = DEFAULT_FACTOR_LIMIT) -> PowerBound:
    """Certify c_b(a**n) >= k by the coprime-split ladder argument.

    a**n = b**m * s with b not dividing s; s is divisible by p**nu_p(t) for the
    prime p chosen from the reduced divisor d, and the exact p-versus-b ladder
    turns that divisibility into k blocks of s. Falls back to the trivial
    k = 1 (for n >= 0 every positive integer has a nonzero digit) when d = 1
    or log d / log b is rational.
    """
    if n == 0:
        return PowerBound(a, b, n, 1, "trivial")
    split = coprime_split(a, b, n, factor_limit)
    if split.d == 1 or multiplicative_dependence(split.d, b, factor_limit) is not None:
        return PowerBound(a, b, n, 1, "trivial")
    p = select_prime_pair(split.d, b, factor_limit).p
    e = 0
    s = split.s
    while s % p == 0:
        s //= p
        e += 1
    ladder = ladder_reaching(p, b, e)
    cert = certify_block_count(split.s, p, b, ladder)
    return PowerBound(a, b, n, cert.k, "ladder", cert)


# -- block sums, factorials, LCMs -------------------------------------------


@dataclass(frozen=True)
class StolarskyCertificate:
    m: int
    b: int
    r: int
    bound: int
    trace: tuple[int, ...]
    digit_sum: int

    @property
    def holds(self) -> bool:
        return self.bound <= self.digit_sum


def stolarsky_check(m: int, b: int, r: int) -> StolarskyCertificate:
    """s_b(m) >= (b-1) r for a positive multiple m of b**r - 1, with the fold trace."""
    if b < 2 or r < 1 or m < 1:
        raise PreconditionError(f"need m, r >= 1 and b >= 2, got m={m}, b={b}, r={r}")
    modulus = b**r - 1
    if m % modulus:
        raise HypothesisError(f"{modulus} does not divide {m}")
    trace = fold_trace(m, b, r)
    top = b**r
    for prev, nxt in zip(trace, trace[1:]):
        assert prev >= top and nxt < prev, "fold failed to descend"
    for x in trace:
        assert x % modulus == 0, "fold broke the residue"
    assert trace[-1] == modulus, f"fold ended at {trace[-1]}, not {modulus}"
    return StolarskyCertificate(m, b, r, (b - 1) * r, tuple(trace), digit_sum(m, b))


def factorial(n: int, cap: int = DEFAULT_CAPS.factorial_n) -> int:
    if n < 0:
        raise PreconditionError(f"factorial of negative {n}")
    if n > cap:
        raise ResourceLimitError(f"factorial({n}) exceeds the cap {cap}")
    return math.factorial(n)


def lcm_upto(n: int, cap: int = DEFAULT_CAPS.lcm_n) -> int:
    """lcm(1, ..., n) as the product of p**floor(log_p n) over primes p <= n."""
    if n < 1:
        raise PreconditionError(f"lcm_upto needs n >= 1, got {n}")
    if n > cap:
        raise ResourceLimitError(f"lcm_upto({n}) exceeds the cap {cap}")
    out = 1
    for p in primes_upto(n):
        out *= p ** floor_log(n, p)
    return out


@dataclass(frozen=True)
class SpecialBound:
    kind: str
    n: int
    b: int
    r: int
    bound: int
    value: int
    certificate: Optional[StolarskyCertificate]

    @property
    def degenerate(self) -> bool:
        return self.r == 0

    @property
    def holds(self) -> bool:
        return self.certificate is None or self.certificate.holds


def special_value(kind: str, n: int, cap: Optional[int] = None) -> int:
    if kind == "factorial":
        return factorial(n, cap if cap is not None else DEFAULT_CAPS.factorial_n)
    if kind == "lcm":
        return lcm_upto(n, cap if cap is not None else DEFAULT_CAPS.lcm_n)
    raise ValueError(f"kind must be 'factorial' or 'lcm', got {kind!r}")


def special_value_bound(kind: str, n: int, b: int, cap: Optional[int] = None) -> SpecialBound:
    """s_b(value) >= (b-1) floor(log_b(n+1)) for value = n! or lcm(1..n)."""
    if b < 2:
        raise PreconditionError(f"base must be >= 2, got {b}")
    value = special_value(kind, n, cap)
    r = floor_log(n + 1, b)
    if r == 0:
        return SpecialBound(kind, n, b, 0, 0, value, None)
    assert value % (b**r - 1) == 0
    cert = stolarsky_check(value, b, r)
    return SpecialBound(kind, n, b, r, cert.bound, value, cert)


# -- the sparse multiple 10^k + 8 -------------------------------------------


def sparse_multiple(n: int, cap: int = DEFAULT_CAPS.sparse_n) -> int:
    """Least k >= 1 with 3**n dividing 10**k + 8.

    10 = 1 + 9 generates the residues that are 1 mod 9 modulo 3**n, a cyclic
    group of order 3**(n-2), and -8 lies in it. The discrete logarithm is
    lifted one power of three at a time, so the work is linear in n rather
    than in the group order.
    """
    if not isinstance(n, int) or n < 1:
        raise PreconditionError(f"need n >= 1, got {n!r}")
    if n > cap:
        raise ResourceLimitError(f"sparse_multiple({n}) exceeds the cap {cap}")
    if n <= 2:
        return 1
    k = 0
    for j in range(3, n + 1):
        modulus = 3**j
        step = 3 ** (j - 3)
        for t in range(3):
            if pow(10, k + t * step, modulus) == (-8) % modulus:
                k += t * step
                break
        else:
            raise AssertionError(f"no lift of 10^k = -8 to modulus 3^{j}")
    order = 3 ** (n - 2)
    return k if k > 0 else order
