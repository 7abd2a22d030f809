import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tridecomp.decomp import pi3_alpha
from tridecomp.fraclp import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    LinearProgram,
    LPError,
    lp_solve_min,
    pi3f,
    pi3f_program,
)
from tridecomp.graph import Graph, complete, enumerate_unlabeled, turan2


def test_single_bound():
    res = lp_solve_min(LinearProgram([1], [[1]], [">="], [3]))
    assert (res.status, res.optimum, res.solution) == (OPTIMAL, 3, [3])


def test_two_line_intersection():
    res = lp_solve_min(LinearProgram([1, 1], [[1, 2], [2, 1]], [">=", ">="], [4, 4]))
    assert res.status == OPTIMAL
    assert res.optimum == Fraction(8, 3)
    assert res.solution == [Fraction(4, 3), Fraction(4, 3)]
    assert res.dual == [Fraction(1, 3), Fraction(1, 3)]


def test_infeasible():
    assert lp_solve_min(LinearProgram([1], [[1]], ["<="], [-1])).status == INFEASIBLE


def test_unbounded():
    assert lp_solve_min(LinearProgram([-1], [[1]], [">="], [0])).status == UNBOUNDED


def test_equality_free_and_upper_bounds():
    # min -x - y, x + y = 3, x <= 2, y free in [-5, inf) but y <= 10
    lp = LinearProgram([-1, -2], [[1, 1]], ["="], [3], lower=[0, -5], upper=[2, 10])
    res = lp_solve_min(lp)
    assert res.status == OPTIMAL
    assert res.solution == [0, 3] and res.optimum == -6
    free = LinearProgram([1], [[1], [1]], [">=", "<="], [-4, 7], lower=[None])
    assert lp_solve_min(free).optimum == -4


def test_degenerate_cycling_example_terminates():
    # Beale's classic cycling example (as a minimization); Bland's rule terminates.
    c = [Fraction(-3, 4), 150, Fraction(-1, 50), 6]
    rows = [
        [Fraction(1, 4), -60, Fraction(-1, 25), 9],
        [Fraction(1, 2), -90, Fraction(-1, 50), 3],
        [0, 0, 1, 0],
    ]
    res = lp_solve_min(LinearProgram(c, rows, ["<=", "<=", "<="], [0, 0, 1]))
    assert res.status == OPTIMAL and res.optimum == Fraction(-1, 20)


def test_dimension_errors():
    with pytest.raises(LPError):
        LinearProgram([1, 1], [[1]], [">="], [1])
    with pytest.raises(LPError):
        LinearProgram([1], [[1]], [">"], [1])


def test_lp_dump_is_readable():
    lp, _, _ = pi3f_program(complete(3))
    text = lp.to_text()
    assert text.startswith("minimize 2 e0_1 + 2 e0_2 + 2 e1_2 + 3 t0_1_2")
    assert "  c0: 1 e0_1 + 1 t0_1_2 >= 1" in text
    assert "  0 <= t0_1_2 <= 1" in text


def test_pi3f_examples():
    value, w = pi3f(turan2(7))
    assert value == 24 and set(w.edge_weight.values()) == {1}
    assert pi3f(complete(4))[0] == 6
    assert pi3f(complete(7))[0] == 21
    assert pi3f(Graph.empty(4))[0] == 0


def test_pi3f_size_guard():
    with pytest.raises(LPError):
        pi3f(complete(13))


def test_sandwich_all_six_vertex_graphs():
    for g in enumerate_unlabeled(6):
        value, w = pi3f(g)
        assert w.is_valid() and w.cost() == value
        assert g.num_edges <= value <= pi3_alpha(g, 3)[0] <= 2 * g.num_edges


def test_strict_gap_k4():
    assert pi3f(complete(4))[0] == 6 < 9 == pi3_alpha(complete(4), 3)[0]


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4),
    st.lists(st.integers(-5, 5), min_size=4, max_size=4),
    st.lists(st.integers(0, 3), min_size=3, max_size=3),
)
def test_random_bounded_lps_certified(rows, rhs, cost):
    # box-bounded, so never unbounded; the solver certifies optimality internally
    lp = LinearProgram(cost, rows, ["<="] * len(rows), rhs[: len(rows)], upper=[4, 4, 4])
    res = lp_solve_min(lp)
    assert res.status in (OPTIMAL, INFEASIBLE)
    if res.status == OPTIMAL:
        assert lp.is_feasible(res.solution) and lp.value(res.solution) == res.optimum
        # the LP optimum is no worse than any feasible integer grid point
        for x in itertools.product(range(5), repeat=3):
            if lp.is_feasible(list(map(Fraction, x))):
                assert res.optimum <= lp.value(list(map(Fraction, x)))
    else:
        assert not any(lp.is_feasible(list(map(Fraction, x))) for x in itertools.product(range(5), repeat=3))
