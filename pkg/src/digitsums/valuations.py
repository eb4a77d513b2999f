"""p-adic valuations, desk-scale factorization and multiplicative dependence."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .errors import (
    IncompleteFactorizationError,
    InvalidBaseError,
    InvalidPrimeError,
    RationalityError,
    UndefinedValuationError,
)

DEFAULT_FACTOR_LIMIT = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Miller-Rabin with the bases above is deterministic below this bound.
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981


def is_prime(n: int) -> bool:
    """Deterministic primality test for ``n`` below 3.3e24 (covers all of 64 bits)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_DETERMINISTIC_BOUND:
        raise InvalidPrimeError(f"{n} is too large for the deterministic primality test")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytes(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


def nu(n: int, p: int) -> int:
    """The p-adic valuation of ``n``.

    >>> nu(16384, 2)
    14
    """
    if not isinstance(n, int) or n < 1:
        raise UndefinedValuationError(f"valuation of {n!r} is undefined (need n >= 1)")
    if not is_prime(p):
        raise InvalidPrimeError(f"{p} is not prime")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class Factorization:
    factors: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for p, e in self.factors.items():
            if e < 1 or not is_prime(p):
                raise ValueError(f"invalid factor {p}^{e}")

    def exponent(self, p: int) -> int:
        return self.factors.get(p, 0)

    @property
    def primes(self) -> list[int]:
        return sorted(self.factors)

    def value(self) -> int:
        out = 1
        for p, e in self.factors.items():
            out *= p**e
        return out


def factorize(n: int, limit: int = DEFAULT_FACTOR_LIMIT) -> Factorization:
    """Trial division up to ``limit``; raises if a larger prime factor remains."""
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"factorize expects an integer >= 2, got {n!r}")
    original = n
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n and d <= limit:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if n > limit:
            raise IncompleteFactorizationError(original, n, limit)
        factors[n] = factors.get(n, 0) + 1
    return Factorization(factors)


def multiplicative_dependence(
    a: int, b: int, limit: int = DEFAULT_FACTOR_LIMIT
) -> Optional[tuple[int, int]]:
    """Minimal ``(u, v)`` with ``a**v == b**u``, or None when log a/log b is irrational."""
    fa, fb = factorize(a, limit), factorize(b, limit)
    if set(fa.factors) != set(fb.factors):
        return None
    ratio = None
    for p in fa.primes:
        here = Fraction(fa.exponent(p), fb.exponent(p))
        if ratio is None:
            ratio = here
        elif here != ratio:
            return None
    return ratio.numerator, ratio.denominator


def require_independent(a: int, b: int, limit: int = DEFAULT_FACTOR_LIMIT) -> None:
    dep = multiplicative_dependence(a, b, limit)
    if dep is not None:
        raise RationalityError(a, b, *dep)


@dataclass(frozen=True)
class PrimePairConstant:
    p: int
    q: int
    c1: Fraction


def select_prime_pair(a: int, b: int, limit: int = DEFAULT_FACTOR_LIMIT) -> PrimePairConstant:
    """Pick primes p, q with nu_p(a) nu_q(b) - nu_q(a) nu_p(b) > 0.

    Among valid pairs the constant c1 = det / nu_q(b) is maximised; ties go
    to the smallest p, then the smallest q.
    """
    require_independent(a, b, limit)
    fa, fb = factorize(a, limit), factorize(b, limit)
    best = None
    for p in fa.primes:
        for q in fb.primes:
            det = fa.exponent(p) * fb.exponent(q) - fa.exponent(q) * fb.exponent(p)
            if det <= 0:
                continue
            c1 = Fraction(det, fb.exponent(q))
            key = (-c1, p, q)
            if best is None or key < best[0]:
                best = (key, PrimePairConstant(p, q, c1))
    # independence guarantees a valid pair exists
    assert best is not None
    return best[1]


def reduced_divisor(a: int, b: int, limit: int = DEFAULT_FACTOR_LIMIT) -> int:
    """Smallest factor d of a with gcd(a/d, b) == 1: a's prime powers shared with b."""
    fa, fb = factorize(a, limit), factorize(b, limit)
    d = 1
    for p in fa.primes:
        if fb.exponent(p):
            d *= p ** fa.exponent(p)
    return d


@dataclass(frozen=True)
class PowerDecomposition:
    base: int
    m: int
    cofactor: int

    def value(self) -> int:
        return self.base**self.m * self.cofactor


def strip_base_power(n: int, b: int) -> PowerDecomposition:
    """Write ``n = b**m * t`` with ``b`` not dividing ``t``."""
    if not isinstance(b, int) or b < 2:
        raise InvalidBaseError(f"base must be an integer >= 2, got {b!r}")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"expected n >= 1, got {n!r}")
    m = 0
    # strip large powers first so long runs of trailing zeros cost O(log m) divisions
    step = b
    steps = []
    while n % step == 0:
        steps.append(step)
        n //= step
        m += 1 << (len(steps) - 1)
        step *= step
    for j in range(len(steps) - 1, -1, -1):
        if n % steps[j] == 0:
            n //= steps[j]
            m += 1 << j
    return PowerDecomposition(b, m, n)


@dataclass(frozen=True)
class CoprimeSplit:
    """``a**n = b**m * s`` with ``s = g**n * t`` and ``d**n = b**m * t``."""

    d: int
    g: int
    m: int
    s: int
    t: int


def coprime_split(a: int, b: int, n: int, limit: int = DEFAULT_FACTOR_LIMIT) -> CoprimeSplit:
    d = reduced_divisor(a, b, limit)
    g = a // d
    dec = strip_base_power(a**n, b)
    t, rem = divmod(dec.cofactor, g**n)
    if rem:
        raise AssertionError(f"{g}^{n} does not divide the cofactor of {a}^{n}")
    return CoprimeSplit(d, g, dec.m, dec.cofactor, t)


@dataclass(frozen=True)
class ValuationCertificate:
    n: int
    pair: PrimePairConstant
    m: int
    t: int
    nu_p_t: int

    @property
    def holds(self) -> bool:
        return self.nu_p_t >= self.pair.c1 * self.n


def certify_nu_estimate(a: int, b: int, n: int, limit: int = DEFAULT_FACTOR_LIMIT) -> ValuationCertificate:
    """Check nu_p(t) >= c1 * n for ``a**n = b**m * t`` with m maximal."""
    pair = select_prime_pair(a, b, limit)
    dec = strip_base_power(a**n, b)
    return ValuationCertificate(n, pair, dec.m, dec.cofactor, nu(dec.cofactor, pair.p))
