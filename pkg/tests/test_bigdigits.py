import pytest

from digitsums.bigdigits import (
    DigitExpansion,
    block_fold,
    block_split,
    digit_stats,
    digit_sum,
    fold_trace,
    format_digits,
    from_base,
    nonzero_count,
    split_at_cuts,
    to_base,
)
from digitsums.errors import InvalidBaseError, MalformedExpansionError

from oracles import naive_digit_sum, naive_digits


def test_to_base_examples():
    assert to_base(16384, 10).digits == (4, 8, 3, 6, 1)
    assert to_base(0, 7).digits == ()
    e = to_base(2**100, 10)
    assert len(e) == 31 and e.most_significant_first()[0] == 1


def test_from_base_examples():
    assert from_base(DigitExpansion(10, (4, 8, 3, 6, 1))) == 16384
    assert from_base(DigitExpansion(2, ())) == 0
    assert from_base(DigitExpansion(10, (8, 0, 1))) == 108


@pytest.mark.parametrize("digits", [(10,), (3, -1), (1, 0)])
def test_from_base_rejects_malformed(digits):
    with pytest.raises(MalformedExpansionError):
        from_base(DigitExpansion(10, digits))


@pytest.mark.parametrize("b", [1, 0, -10, 2.0])
def test_invalid_base(b):
    with pytest.raises(InvalidBaseError):
        to_base(5, b)
    with pytest.raises(InvalidBaseError):
        digit_sum(5, b)


def test_digit_sum_and_count():
    assert digit_sum(32, 10) == 5
    assert digit_sum(0, 3) == 0
    assert digit_sum(3628800, 10) == 27
    assert nonzero_count(1024, 10) == 3
    assert nonzero_count(0, 5) == 0
    assert nonzero_count(2**14, 10) == 5
    assert digit_stats(16384, 10) == (5, 22, 5)


@pytest.mark.parametrize("b", [2, 3, 7, 10, 16, 60, 1000, 2**61 + 1])
@pytest.mark.parametrize("n", [1, 9, 10**6, 2**59 - 1, 2**60, 3**500, 7**2000 + 12345])
def test_to_base_matches_naive(n, b):
    assert list(to_base(n, b).digits) == naive_digits(n, b)


def test_huge_power_round_trip():
    # large enough to exercise several levels of the divide-and-conquer split
    n = 3**40000
    assert from_base(to_base(n, 10)) == n
    # oracle: digit sums of 50-digit limbs
    assert digit_sum(n, 10) == sum(naive_digit_sum(limb, 10) for limb in naive_digits(n, 10**50))


def test_blocks():
    assert block_split(99, 10, 2) == [99]
    assert block_split(123456, 10, 2) == [56, 34, 12]
    assert block_split(0, 10, 3) == []
    assert block_fold(1188, 10, 2) == 99
    assert fold_trace(99, 10, 2) == [99]
    assert fold_trace(1188, 10, 2) == [1188, 99]
    with pytest.raises(ValueError):
        block_split(10, 10, 0)


def test_split_at_cuts_matches_block_picture():
    blocks = split_at_cuts(2**47, 10, [1, 4, 14, 47])
    assert blocks == [8, 532, 4073748835, 1, 0]
    assert sum(x * 10**c for x, c in zip(blocks, [0, 1, 4, 14, 47])) == 2**47
    with pytest.raises(ValueError):
        split_at_cuts(10, 10, [3, 3])


def test_format_digits():
    assert format_digits(to_base(16384, 10)) == "16384"
    assert format_digits(to_base(255, 16)) == "ff"
    assert format_digits(to_base(0, 10)) == "0"
    assert format_digits(to_base(3 * 100 + 7, 100)) == "3.7"
