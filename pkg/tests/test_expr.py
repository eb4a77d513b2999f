import pytest
from hypothesis import given, strategies as st

from digitsums.config import Caps
from digitsums.errors import ExprSyntaxError, ResourceLimitError
from digitsums.expr import Factorial, Lcm, Literal, Power, Product, evaluate, parse_expr


def test_examples():
    assert parse_expr("2^100") == Power(2, 100)
    node = parse_expr("lcm(10)*3")
    assert node == Product((Lcm(10), Literal(3)))
    assert evaluate(node) == 7560
    assert evaluate(parse_expr(" 10 ! * 2 ^ 3 ")) == 3628800 * 8
    assert parse_expr("5!") == Factorial(5)


@pytest.mark.parametrize(
    "text,offset",
    [("2^^3", 2), ("", 0), ("2*", 2), ("lcm 3", 4), ("2 3", 2), ("é", 0), ("2*é", 2), ("(2)", 0)],
)
def test_syntax_errors_report_byte_offsets(text, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr(text)
    assert info.value.offset == offset


def test_caps_apply_at_evaluation_only():
    node = parse_expr("2^1000000")
    with pytest.raises(ResourceLimitError):
        evaluate(node)
    assert evaluate(parse_expr("2^20"), Caps(power_exponent=20)) == 2**20
    with pytest.raises(ResourceLimitError):
        evaluate(parse_expr("6000!"))


@given(st.lists(st.tuples(st.integers(0, 50), st.integers(0, 20)), min_size=1, max_size=4))
def test_products_of_powers(pairs):
    text = " * ".join(f"{a}^{e}" for a, e in pairs)
    expected = 1
    for a, e in pairs:
        expected *= a**e
    assert evaluate(parse_expr(text)) == expected
