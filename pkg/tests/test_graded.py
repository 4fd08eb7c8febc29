from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chowlimit import graded
from chowlimit.graded import AlgebraMorphism, PolyAlgebra, ProductRing, invariants


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_dimensions_are_binomial(n):
    A = PolyAlgebra(3, n)
    for k in range(8):
        assert A.dim(2 * k) == comb(k + n - 1, n - 1) if n else A.dim(2 * k) == (k == 0)
        assert A.dim(2 * k + 1) == 0


def test_monomial_order_is_descending_lex():
    A = PolyAlgebra(2, 2)
    assert A.monomials(4) == ((2, 0), (1, 1), (0, 2))


def test_arithmetic_mod_p():
    A = PolyAlgebra(3, 2)
    x, y = A.gens()
    assert (x + y) ** 3 == x**3 + y**3
    assert 3 * x == A.zero()
    assert (x * y).degree == 4
    assert not (x + x * y).is_homogeneous()
    assert (x + x * y).homogeneous_part(4) == x * y


def test_coords_round_trip():
    A = PolyAlgebra(5, 3)
    x = A.gen(0) ** 2 * A.gen(2) + 4 * A.gen(1) ** 3
    assert A.from_coords(A.coords(x, 6), 6) == x


def test_group_map_pulls_back_through_transpose():
    # E_a = Z/p -> E_b = (Z/p)^2, e -> e1 + 2 e2; then v1 -> v, v2 -> 2v
    phi = AlgebraMorphism.from_group_map(np.array([[1], [2]]), 3)
    A, B = phi.source, phi.target
    assert (A.n, B.n) == (2, 1)
    assert phi(A.gen(0) * A.gen(1)) == 2 * B.gen(0) ** 2
    with pytest.raises(ValueError):
        AlgebraMorphism.from_group_map(np.array([1, 2]), 3)


@given(st.lists(st.integers(0, 2), min_size=4, max_size=4), st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_degree_matrices_compose(a, b):
    A = PolyAlgebra(3, 2)
    f = AlgebraMorphism(A, A, np.array(a).reshape(2, 2))
    g = AlgebraMorphism(A, A, np.array(b).reshape(2, 2))
    for d in (2, 4, 6):
        lhs = g.compose(f).degree_matrix(d)
        rhs = g.degree_matrix(d) @ f.degree_matrix(d) % 3
        assert np.array_equal(lhs, rhs)


def test_symmetric_invariants():
    swap = [np.eye(2, dtype=np.int64), np.array([[0, 1], [1, 0]])]
    inv = invariants(2, swap, 20, 3)
    assert inv.dims()[::2] == [k // 2 + 1 for k in range(11)]


def test_sign_invariants_even_when_p_divides_order():
    # {±1} on F_2[v] acts trivially; on F_3[v] it keeps even powers only
    assert invariants(1, [np.array([[1]])], 8, 2).dims()[::2] == [1] * 5
    assert invariants(1, [np.eye(1), np.array([[2]])], 8, 3).dims()[::2] == [1, 0, 1, 0, 1]


def test_invariants_reject_non_groups():
    with pytest.raises(ValueError):
        invariants(2, [np.array([[1, 1], [0, 1]])], 4, 5)  # not closed
    with pytest.raises(ValueError):
        invariants(1, [np.array([[0]])], 4, 5)


def test_product_ring_and_hilbert():
    R = ProductRing([PolyAlgebra(2, 0), PolyAlgebra(2, 2)])
    assert R.dim(0) == 2 and R.dim(4) == 3
    assert R.offsets(2) == [0, 0, 2]
    ideal = graded.monomial_ideal_basis(PolyAlgebra(2, 1), [(2,)], 8)
    assert graded.hilbert(ideal, 8).as_list() == [0, 0, 0, 0, 1, 0, 1, 0, 1]
    assert graded.hilbert([1, 0, 2], 4).as_list() == [1, 0, 2, 0, 0]
