"""Randomised invariants, 10^4 cases each; run by the acceptance suite."""

from hypothesis import given, settings, strategies as st

from digitsums.bigdigits import DigitExpansion, digit_sum, from_base, nonzero_count, to_base
from digitsums.valuations import nu

from oracles import carries

CASES = 10_000

naturals = st.one_of(
    st.integers(0, 10**6),
    st.integers(0, 2**256),
    st.integers(0, 10**400),
)
bases = st.one_of(st.integers(2, 16), st.sampled_from([10, 100, 2**32, 10**9 + 7]))
positive = st.integers(1, 10**120)
primes = st.sampled_from([2, 3, 5, 7, 11, 13, 97, 101, 65537])


@settings(max_examples=CASES)
@given(naturals, bases)
def test_round_trip(n, b):
    e = to_base(n, b)
    e.validate()
    assert from_base(e) == n


@settings(max_examples=CASES)
@given(st.lists(st.integers(0, 35), max_size=80), st.integers(36, 40))
def test_round_trip_from_digits(digits, b):
    while digits and digits[-1] == 0:
        digits.pop()
    e = DigitExpansion(b, tuple(digits))
    assert to_base(from_base(e), b) == e


@settings(max_examples=CASES)
@given(naturals, bases)
def test_sandwich(n, b):
    s, c = digit_sum(n, b), nonzero_count(n, b)
    assert c <= s <= (b - 1) * c


@settings(max_examples=CASES)
@given(naturals, naturals, st.integers(2, 16))
def test_subadditivity_with_carries(m, n, b):
    deficit = digit_sum(m, b) + digit_sum(n, b) - digit_sum(m + n, b)
    assert deficit >= 0
    assert deficit % (b - 1) == 0
    assert deficit == (b - 1) * carries(m, n, b)
    assert nonzero_count(m + n, b) <= nonzero_count(m, b) + nonzero_count(n, b)


@settings(max_examples=CASES)
@given(positive, positive, primes)
def test_valuation_additivity(m, n, p):
    assert nu(m * n, p) == nu(m, p) + nu(n, p)
