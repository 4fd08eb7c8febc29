import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chowlimit import fp

PRIMES = [2, 3, 5, 7]


def test_primality_and_prime_powers():
    assert [n for n in range(20) if fp.is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert fp.prime_power(49) == (7, 2)
    assert fp.prime_power(8) == (2, 3)
    assert fp.prime_power(12) is None
    assert fp.prime_power(1) is None


@pytest.mark.parametrize("bad", [0, 1, 4, 9, 2**16 + 1])
def test_check_prime_rejects(bad):
    with pytest.raises(ValueError):
        fp.check_prime(bad)


def test_smallest_irreducible_values():
    assert fp.smallest_irreducible(3, 2) == (1, 0, 1)  # x^2 + 1
    assert fp.smallest_irreducible(2, 2) == (1, 1, 1)  # x^2 + x + 1
    assert fp.smallest_irreducible(2, 3) == (1, 0, 1, 1)
    assert fp.smallest_irreducible(5, 1) == (0, 1)


def test_irreducibility():
    assert fp.is_irreducible((1, 0, 1), 3)
    assert not fp.is_irreducible((1, 0, 1), 2)  # (x + 1)^2
    assert not fp.is_irreducible((1, 0, 1), 5)  # 2 is a root


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 25, 27])
def test_field_axioms_exhaustive(q):
    F = fp.make_field(q)
    assert F.q == q
    elts = list(F.elements())
    g = F.primitive
    assert len({F.pow(g, k) for k in range(q - 1)}) == q - 1
    for x in elts[1:]:
        assert F.mul(x, F.inv(x)) == 1
        assert F.pow(g, F.log(x)) == x
    for x in elts:
        assert F.add(x, F.neg(x)) == 0
        assert F.pow(x, q) == x


@given(st.sampled_from([4, 8, 9, 25]), st.data())
def test_field_distributive(q, data):
    F = fp.make_field(q)
    x, y, z = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.mul(x, y) == F.mul(y, x)
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))


def test_roots_of_unity():
    F = fp.make_field(7)
    w = F.root_of_unity(3)
    assert w != 1 and F.pow(w, 3) == 1
    assert fp.has_pth_roots(7, 3)
    assert not fp.has_pth_roots(5, 3)
    with pytest.raises(ValueError):
        fp.has_pth_roots(9, 3)
    with pytest.raises(ValueError):
        fp.has_pth_roots(6, 5)


matrices = st.tuples(st.sampled_from(PRIMES), st.integers(1, 6), st.integers(1, 6)).flatmap(
    lambda t: st.tuples(
        st.just(t[0]),
        st.lists(st.lists(st.integers(0, t[0] - 1), min_size=t[2], max_size=t[2]), min_size=t[1], max_size=t[1]),
    )
)


@given(matrices)
def test_kernel_and_rank(pm):
    p, rows = pm
    m = np.array(rows, dtype=np.int64)
    ker = fp.kernel(m, p)
    assert fp.rank(m, p) + len(ker) == m.shape[1]
    for v in ker:
        assert not np.any(m @ v % p)
    red = fp.rref(m, p)
    assert red.rank == red.reduced.shape[0]
    for i, c in enumerate(red.pivots):
        col = red.reduced[:, c]
        assert col[i] == 1 and np.count_nonzero(col) == 1


@given(matrices, st.data())
def test_solve_left_round_trip(pm, data):
    p, rows = pm
    basis = fp.row_space(np.array(rows), p, len(rows[0]))
    if basis.shape[0] == 0:
        return
    c = np.array([data.draw(st.integers(0, p - 1)) for _ in range(basis.shape[0])])
    vec = c @ basis % p
    assert np.array_equal(fp.solve_left(basis, vec, p)[0], c)
    assert fp.in_row_space(vec, basis, p)


def test_solve_left_outside_span():
    with pytest.raises(ValueError):
        fp.solve_left(np.array([[1, 0, 0]]), np.array([0, 1, 0]), 3)


@given(matrices, matrices)
def test_intersection_is_contained_in_both(a, b):
    p = a[0]
    n = 4
    A = np.array([r[:n] + [0] * (n - len(r[:n])) for r in a[1]]) % p
    B = np.array([r[:n] + [0] * (n - len(r[:n])) for r in b[1]]) % p
    I = fp.intersect(A, B, p, n)
    assert fp.in_row_space(I, A, p) and fp.in_row_space(I, B, p)
    # dim(A ∩ B) = dim A + dim B - dim(A + B)
    assert I.shape[0] == fp.rank(A, p) + fp.rank(B, p) - fp.rank(np.vstack([A, B]), p)


def test_kernel_matrix_of_empty_constraints_is_identity():
    assert np.array_equal(fp.kernel_matrix(np.zeros((0, 3)), 5, 3), np.eye(3, dtype=np.int64))
