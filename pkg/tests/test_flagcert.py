import itertools
import random
from fractions import Fraction

import pytest

from tridecomp.flagcert import (
    FLAG_EDGES,
    KERNEL_VECTOR,
    M_NUMERATORS,
    NOT_LISTED,
    SPLITS_PER_GRAPH,
    classify_rooted_flag,
    coefficient_c,
    flag_vector,
    inertia,
    lambda2,
    lambda2_bracket,
    mat_vec,
    matrix_M,
    nullspace,
    psd_check,
    q_coefficient,
    quadratic_density,
    quadratic_form,
    turan2_parts,
    turan_sample_average,
)
from tridecomp.fraclp import pi3f
from tridecomp.graph import Graph, GraphError, canonical_form, complete, turan2

PAIRS4 = list(itertools.combinations(range(4), 2))


def _rooted(edges):
    return Graph.from_edges(4, edges)


def test_matrix_entries():
    m = matrix_M()
    assert m[0][0] == Fraction(3, 20)
    assert m[0][1] == m[1][0] == Fraction(2444365956, 12 * 10**9)
    assert all(m[i][j] == m[j][i] for i in range(7) for j in range(i))


def test_flag_examples():
    assert classify_rooted_flag(Graph.empty(4), 0) == 0
    assert classify_rooted_flag(Graph.empty(4), 3) == 0
    assert classify_rooted_flag(_rooted([(2, 3)]), 0) == 1
    assert classify_rooted_flag(complete(4), 0) is NOT_LISTED
    k4_minus_ra = _rooted([p for p in PAIRS4 if p != (0, 1)])
    assert classify_rooted_flag(k4_minus_ra, 0) == 6


def test_flags_pairwise_distinct_and_self_classified():
    for i, edges in enumerate(FLAG_EDGES):
        assert classify_rooted_flag(_rooted(edges), 0) == i


def test_classification_invariant_under_non_root_permutations():
    for mask in range(64):
        g = _rooted([p for k, p in enumerate(PAIRS4) if mask >> k & 1])
        base = classify_rooted_flag(g, 0)
        for perm in itertools.permutations((1, 2, 3)):
            assert classify_rooted_flag(g.relabel([0, *perm]), 0) == base


def test_classification_with_other_roots():
    # claw centred at vertex 2, rooted there, is F4
    claw = _rooted([(2, 0), (2, 1), (2, 3)])
    assert classify_rooted_flag(claw, 2) == 3
    # rooted at a leaf it is F3
    assert classify_rooted_flag(claw, 0) == 2


def test_classify_order_guard():
    with pytest.raises(GraphError):
        classify_rooted_flag(complete(5), 0)


def test_flag_vector_examples():
    assert flag_vector(complete(7), 0) == [0] * 7
    assert flag_vector(Graph.empty(7), 3) == [1, 0, 0, 0, 0, 0, 0]
    expected = [Fraction(x, 35) for x in (1, 0, 12, 4, 0, 18, 0)]
    for w in range(8):
        assert flag_vector(turan2(8), w) == expected
    with pytest.raises(GraphError):
        flag_vector(complete(3), 0)


def test_flag_vector_limit_is_kernel_direction():
    v = flag_vector(turan2(8), 0)
    m = matrix_M()
    # T2's flag vector approaches the kernel direction; at n = 8 it is already close
    assert quadratic_form(m, v) >= 0
    assert all(x == 0 for x in mat_vec(m, KERNEL_VECTOR))


def test_quadratic_examples():
    empty = Graph.empty(7)
    assert quadratic_density(empty) == Fraction(3, 20)
    assert q_coefficient(empty) == 21 == SPLITS_PER_GRAPH * Fraction(3, 20)
    assert q_coefficient(complete(7)) == 0
    assert q_coefficient(turan2(7)) == -3


def test_coefficient_examples():
    assert coefficient_c(complete(7)) == 21
    assert coefficient_c(Graph.empty(7)) == 21
    assert pi3f(turan2(7))[0] == 24
    assert coefficient_c(turan2(7)) == 21


def test_quadratic_density_within_matrix_range():
    lo = min(min(r) for r in M_NUMERATORS)
    hi = max(max(r) for r in M_NUMERATORS)
    rnd = random.Random(1)
    pairs = list(itertools.combinations(range(7), 2))
    for _ in range(30):
        g = Graph.from_edges(7, [p for p in pairs if rnd.random() < 0.5])
        q = quadratic_density(g) * 12 * 10**9
        assert min(lo, 0) <= q <= max(hi, 0)


def test_q_invariant_under_relabeling():
    rnd = random.Random(4)
    pairs = list(itertools.combinations(range(7), 2))
    for _ in range(10):
        g = Graph.from_edges(7, [p for p in pairs if rnd.random() < 0.4])
        perm = list(range(7))
        rnd.shuffle(perm)
        h = g.relabel(perm)
        assert canonical_form(g) == canonical_form(h)
        assert q_coefficient(g) == q_coefficient(h)


def test_q_order_guard():
    with pytest.raises(GraphError):
        q_coefficient(complete(6))


def test_psd_structure():
    rep = psd_check(matrix_M())
    assert rep.rank == 6 and rep.pivot_signs == [1] * 6 and rep.is_psd
    assert len(rep.kernel_basis) == 1
    k = rep.kernel_basis[0]
    assert [x / k[0] for x in k] == list(KERNEL_VECTOR)


def test_psd_identity_and_errors():
    eye = [[Fraction(int(i == j)) for j in range(7)] for i in range(7)]
    rep = psd_check(eye)
    assert rep.rank == 7 and rep.kernel_basis == []
    with pytest.raises(ValueError):
        psd_check([[1, 2], [0, 1]])


def test_inertia_indefinite_and_zero_diagonal():
    inn = inertia([[0, 1], [1, 0]])
    assert (inn.positive, inn.negative, inn.zero) == (1, 1, 0)
    assert inn.determinant == -1
    inn = inertia([[1, 2, 0], [2, 1, 0], [0, 0, 0]])
    assert (inn.positive, inn.negative, inn.zero) == (1, 1, 1)
    assert not psd_check([[1, 2], [2, 1]]).is_psd


def test_nullspace_rank_deficient():
    basis = nullspace([[1, 2, 3], [2, 4, 6]])
    assert len(basis) == 2
    for v in basis:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0


def test_lambda2_values():
    assert abs(lambda2(matrix_M()) - 0.0005228) < 1e-7
    eye = [[Fraction(int(i == j)) for j in range(7)] for i in range(7)]
    assert abs(lambda2(eye) - 1.0) < 1e-8
    diag = [[Fraction((0, 2, 3, 4, 5, 6, 7)[i]) if i == j else Fraction(0) for j in range(7)] for i in range(7)]
    assert abs(lambda2(diag) - 2.0) < 1e-8


def test_lambda2_bracket_signs():
    b = lambda2_bracket(matrix_M())
    assert b.lo < b.hi and b.hi - b.lo <= Fraction(1, 10**10)
    # rank 6 with one zero eigenvalue: det(M - tI) changes sign across lambda2
    assert b.det_sign_lo == -b.det_sign_hi != 0


def test_lambda2_rejects_indefinite():
    with pytest.raises(ValueError):
        lambda2([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(1)]])


def test_quadratic_form_nonnegative_on_samples():
    m = matrix_M()
    rnd = random.Random(9)
    for n in (7, 8, 9):
        pairs = list(itertools.combinations(range(n), 2))
        for _ in range(4):
            g = Graph.from_edges(n, [p for p in pairs if rnd.random() < rnd.random()])
            for w in range(n):
                assert quadratic_form(m, flag_vector(g, w)) >= 0


def test_turan_parts_and_average():
    assert turan2_parts(3, 4) == turan2(7)
    avg = turan_sample_average(70)
    assert Fraction(41, 2) <= avg <= 21
