import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chowlimit import steenrod
from chowlimit.graded import GradedBasis, PolyAlgebra, PolyElement, full_basis, monomial_ideal_basis


def element(p, n, data, k):
    A = PolyAlgebra(p, n)
    mons = A.monomials(2 * k)
    picks = data.draw(st.lists(st.tuples(st.integers(0, len(mons) - 1), st.integers(1, p - 1)), min_size=1, max_size=4))
    terms = {}
    for i, c in picks:
        terms[mons[i]] = (terms.get(mons[i], 0) + c) % p
    return PolyElement(A, terms)


def test_generator_values():
    A = PolyAlgebra(3, 1)
    v = A.gen(0)
    assert steenrod.total_steenrod(v) == {0: v, 1: v**3}
    assert steenrod.apply_P(1, v**2) == 2 * v**4
    assert steenrod.apply_P(2, v**2) == v**6


def test_p2_is_even_squares():
    # Sq^2(v^2) = 2 v^3 = 0 and Sq^4(v^2) = v^4 over F_2
    A = PolyAlgebra(2, 1)
    v = A.gen(0)
    assert not steenrod.apply_P(1, v**2)
    assert steenrod.apply_P(2, v**2) == v**4
    assert steenrod.apply_P(1, v**3) == v**4


@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.integers(0, 6), st.integers(0, 6), st.data())
def test_cartan(p, n, k1, k2, data):
    x, y = element(p, n, data, k1), element(p, n, data, k2)
    for i in range(k1 + k2 + 1):
        expect = x.alg.zero()
        for a in range(i + 1):
            expect = expect + steenrod.apply_P(a, x) * steenrod.apply_P(i - a, y)
        assert steenrod.apply_P(i, x * y) == expect


@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.integers(0, 6), st.data())
def test_instability_and_frobenius(p, n, k, data):
    x = element(p, n, data, k)
    assert all(not steenrod.apply_P(i, x) for i in range(k + 1, k + 4))
    assert steenrod.p0(x) == x**p
    assert steenrod.apply_P(0, x) == x


def test_p0_rejects_inhomogeneous():
    A = PolyAlgebra(2, 1)
    with pytest.raises(ValueError):
        steenrod.p0(A.gen(0) + A.gen(0) ** 2)


def test_matrices_agree_with_elementwise_action():
    A = PolyAlgebra(3, 2)
    for d in (2, 4, 6):
        for i in range(d // 2 + 1):
            M = steenrod.steenrod_matrix(A, i, d)
            for col, mon in enumerate(A.monomials(d)):
                img = steenrod.apply_P(i, A.monomial(mon))
                assert np.array_equal(M[:, col], A.coords(img, d + 4 * i))


def test_polynomial_rings_and_ideals_are_reduced():
    for p in (2, 3):
        assert steenrod.is_reduced(full_basis(PolyAlgebra(p, 2), 12)).reduced
        assert steenrod.is_reduced(monomial_ideal_basis(PolyAlgebra(p, 1), [(2,)], 12)).reduced


def test_quotient_with_nilpotent_is_not_reduced():
    # F_2[v]/(v^2): v is nilpotent
    A = PolyAlgebra(2, 1)
    rel = monomial_ideal_basis(A, [(2,)], 8)
    rep = steenrod.is_reduced(full_basis(A, 8), relations=rel)
    assert not rep.reduced
    assert rep.witness_degree == 2


def test_unchecked_window_is_reported():
    rep = steenrod.is_reduced(full_basis(PolyAlgebra(3, 1), 10))
    assert rep.checked == [0, 2]
    assert rep.unchecked == [4, 6, 8, 10]


def test_phi_dilates_degrees():
    M = full_basis(PolyAlgebra(3, 2), 6)
    ph = steenrod.phi(M)
    assert ph.dims(18) == [1, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 3, 0, 0, 0, 0, 0, 4]
    assert steenrod.phi([1, 0, 1], 2).dims(4) == [1, 0, 0, 0, 1]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_top_operation_on_powers(p):
    v = PolyAlgebra(p, 1).gen(0)
    for k in range(1, 6):
        assert steenrod.apply_P(k, v**k) == v ** (p * k)
