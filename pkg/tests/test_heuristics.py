import math

import pytest

from digitsums.config import Caps
from digitsums.errors import PreconditionError, ResourceLimitError
from digitsums.heuristics import heuristic_power, heuristic_special, scan


def test_heuristic_power():
    assert abs(float(heuristic_power(100, 2, 10).center) - 4.5 * 100 * math.log10(2)) < 1e-9
    assert heuristic_power(0, 2, 10).format() == "0"
    assert heuristic_power(10, 2, 10).format() == "13.5463"


def test_heuristic_special():
    fact = float(heuristic_special("factorial", 10, 10).center)
    assert abs(fact - 4.5 * math.log10(3628800)) < 1e-9
    assert abs(float(heuristic_special("lcm", 10, 10).center) - 45 / math.log(10)) < 1e-9
    assert heuristic_special("factorial", 1, 7).format() == "0"
    with pytest.raises(PreconditionError):
        heuristic_special("lcm", 0, 10)


def test_power_scan_prefix():
    rows = list(scan("power", range(11)))
    assert [r.s_b for r in rows] == [1, 2, 4, 8, 7, 5, 10, 11, 13, 8, 7]
    assert all(r.consistent for r in rows)
    assert list(scan("power", [])) == []


def test_scan_is_sorted_and_capped():
    rows = list(scan("factorial", [30, 10, 20, 10]))
    assert [r.n for r in rows] == [10, 20, 30]
    with pytest.raises(ResourceLimitError):
        list(scan("power", [50], caps=Caps(scan_n=40)))
    with pytest.raises(ValueError):
        list(scan("cube", [1]))


def test_special_scans_respect_bounds():
    for kind in ("factorial", "lcm"):
        for row in scan(kind, range(1, 120), b=10):
            assert row.bound <= row.s_b
