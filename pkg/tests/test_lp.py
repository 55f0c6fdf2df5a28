import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mtra.errors import ShapeError
from mtra.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, LinearProgram, solve_lp


def test_simple_max():
    lp = LinearProgram(2)
    lp.add({0: 1, 1: 1}, "<=", 4)
    lp.add({0: 1, 1: 3}, "<=", 6)
    lp.maximize({0: 3, 1: 2})
    res = solve_lp(lp)
    assert res.status == OPTIMAL
    assert res.value == 12 and res.point == (4, 0)


def test_equality_and_ge():
    lp = LinearProgram(3)
    lp.add({0: 1, 1: 1, 2: 1}, "==", 1)
    lp.add({0: 1}, ">=", Fraction(1, 3))
    lp.maximize({1: 1})
    res = solve_lp(lp)
    assert res.value == Fraction(2, 3)
    assert lp.satisfied_by(res.point)


def test_infeasible():
    lp = LinearProgram(1)
    lp.add({0: 1}, ">=", 2)
    lp.add({0: 1}, "<=", 1)
    assert solve_lp(lp).status == INFEASIBLE


def test_unbounded():
    lp = LinearProgram(2)
    lp.add({0: 1, 1: -1}, "<=", 1)
    lp.maximize({0: 1})
    assert solve_lp(lp).status == UNBOUNDED


def test_negative_rhs_and_bounds():
    lp = LinearProgram(2)
    lp.add({0: -1, 1: -1}, "<=", -3)   # x + y >= 3
    lp.bound(0, 1, 2)
    lp.bound(1, -5, 5)
    lp.maximize({0: -1, 1: -2})
    res = solve_lp(lp)
    assert res.point == (2, 1) and res.value == -4


def test_fixed_variable_and_empty_bound():
    lp = LinearProgram(1)
    lp.bound(0, Fraction(1, 7), Fraction(1, 7))
    lp.maximize({0: 1})
    assert solve_lp(lp).point == (Fraction(1, 7),)
    lp.bound(0, 1, 0)
    assert solve_lp(lp).status == INFEASIBLE


def test_redundant_equalities():
    lp = LinearProgram(2)
    lp.add({0: 1, 1: 1}, "==", 1)
    lp.add({0: 2, 1: 2}, "==", 2)
    lp.maximize({0: 1})
    assert solve_lp(lp).point == (1, 0)


def test_degenerate_does_not_cycle():
    # classic cycling example for the largest-coefficient rule
    lp = LinearProgram(4)
    lp.add({0: Fraction(1, 2), 1: Fraction(-11, 2), 2: Fraction(-5, 2), 3: 9}, "<=", 0)
    lp.add({0: Fraction(1, 2), 1: Fraction(-3, 2), 2: Fraction(-1, 2), 3: 1}, "<=", 0)
    lp.add({0: 1}, "<=", 1)
    lp.maximize({0: 10, 1: -57, 2: -9, 3: -24})
    res = solve_lp(lp)
    assert res.status == OPTIMAL and res.value == 1


def test_bad_input():
    lp = LinearProgram(1)
    with pytest.raises(ShapeError):
        lp.add({3: 1}, "<=", 1)
    with pytest.raises(ShapeError):
        lp.add({0: 1}, "<", 1)
    with pytest.raises(ShapeError):
        lp.maximize({2: 1})


def _vertex_oracle(rows, c):
    """Best objective over pairwise line intersections of a bounded 2-d region."""
    lines = [(a, b, r) for a, b, r in rows]
    best = None
    for (a1, b1, r1), (a2, b2, r2) in itertools.combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        x = (r1 * b2 - r2 * b1) / det
        y = (a1 * r2 - a2 * r1) / det
        if all(a * x + b * y <= r for a, b, r in rows):
            v = c[0] * x + c[1] * y
            best = v if best is None else max(best, v)
    return best


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_matches_vertex_enumeration(seed):
    rng = random.Random(seed)
    rows = [(Fraction(1), Fraction(0), Fraction(5)), (Fraction(-1), Fraction(0), Fraction(5)),
            (Fraction(0), Fraction(1), Fraction(5)), (Fraction(0), Fraction(-1), Fraction(5))]
    for _ in range(rng.randint(0, 4)):
        rows.append((Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-6, 6), rng.randint(1, 3))))
    c = (rng.randint(-3, 3), rng.randint(-3, 3))
    lp = LinearProgram(2)
    lp.bound(0, -5)
    lp.bound(1, -5)
    for a, b, r in rows[4:]:
        lp.add({0: a, 1: b}, "<=", r)
    lp.add({0: 1}, "<=", 5)
    lp.add({1: 1}, "<=", 5)
    lp.maximize({0: c[0], 1: c[1]})
    res = solve_lp(lp)
    expect = _vertex_oracle(rows, c)
    if expect is None:
        assert res.status == INFEASIBLE
    else:
        assert res.status == OPTIMAL
        assert res.value == expect
        assert lp.satisfied_by(res.point)
