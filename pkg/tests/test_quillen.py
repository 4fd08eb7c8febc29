import numpy as np
import pytest

from chowlimit import groups as g
from chowlimit import quillen as q
from chowlimit.graded import PolyAlgebra


def limit(G, p, D):
    return q.limit_ring(q.build_category(G, p), D)


def even(seq):
    return list(seq)[::2]


def test_cyclic_group_gives_polynomial_ring():
    L = limit(g.cyclic_group(5), 5, 10)
    assert L.dims() == [1, 0] * 5 + [1]
    assert L.generator_degrees == [2]


def test_s3_category_and_limit():
    C = q.build_category(g.symmetric_group(3), 3)
    (a,) = C.nontrivial_objects()
    assert sorted(int(F[0, 0]) for F in C.automorphisms(a)) == [1, 2]
    L = q.limit_ring(C, 18)
    assert even(L.dims()) == [1, 0] * 5
    assert L.generator_degrees == [4]


def test_quaternion_centre_is_the_only_object():
    C = q.build_category(g.quaternion_group(), 2)
    assert C.ranks == [0, 1]
    assert [F.tolist() for F in C.automorphisms(1)] == [[[1]]]


def test_abelian_groups_give_full_polynomial_rings():
    # Z/2 x Z/4 acting on 6 points: the maximal elementary abelian has rank 2
    G = g.FiniteGroup(g.PermRep(6), [(1, 0, 2, 3, 4, 5), (0, 1, 3, 4, 5, 2)])
    L = limit(G, 2, 12)
    A = PolyAlgebra(2, 2)
    assert L.dims() == [A.dim(d) for d in range(13)]


def test_abelian_category_has_only_inclusions():
    G = g.FiniteGroup(g.PermRep(4), [(1, 0, 2, 3), (0, 1, 3, 2)])
    C = q.build_category(G, 2)
    for (a, b), mats in C.morphisms.items():
        assert len(mats) == 1


def test_category_identities_and_composition():
    C = q.build_category(g.symmetric_group(4), 2)
    for a, E in enumerate(C.objects):
        assert any(np.array_equal(F, np.eye(E.rank, dtype=np.int64)) for F in C.hom(a, a))
    assert C.is_closed_under_composition()


def test_dropping_morphisms_never_shrinks_the_limit():
    C = q.build_category(g.symmetric_group(4), 2)
    full = q.limit_ring(C, 12).dims()
    for k in range(3):
        sub = C.restricted(lambda a, b, F, k=k: hash((a, b, F.tobytes())) % 3 != k)
        assert all(x >= y for x, y in zip(q.limit_ring(sub, 12).dims(), full))


def test_s4_limit_is_known_ring():
    # F_2[c1, c2, c3]/(c1 c3)
    L = limit(g.symmetric_group(4), 2, 14)
    assert even(L.dims()) == [1, 1, 2, 3, 3, 4, 5, 5]
    assert L.generator_degrees == [2, 4, 6]


def test_products_are_compatible_and_memoized():
    L = limit(g.symmetric_group(4), 2, 8)
    c = L.multiply(2, 0, 4, 1)
    assert c is L.multiply(2, 0, 4, 1)
    assert c.shape == (L.dim(6),)


def test_json_layout():
    d = limit(g.symmetric_group(3), 3, 8).to_dict()
    assert set(d) == {"prime", "cutoff", "objects", "dims", "generator_degrees"}
    assert d["objects"] == [0, 1]


def test_closure_and_reducedness_on_s3():
    L = limit(g.symmetric_group(3), 3, 18)
    assert q.steenrod_closure_check(L).closed
    assert q.reducedness_check(L).reduced


def test_closure_report_flags_a_non_closed_subspace():
    L = limit(g.cyclic_group(3), 3, 12)
    # keep only v^2 in degree 4 but drop v^4 in degree 8: P^1(v^2) = 2 v^4 escapes
    L.basis.bases[8] = np.zeros((0, 1), dtype=np.int64)
    rep = q.steenrod_closure_check(L)
    assert not rep.closed and (4, 0, 1) in rep.failures


def test_swan_matches_limit_for_abelian_sylow():
    for n in (3, 4, 5):
        G = g.symmetric_group(n)
        assert q.swan_invariants(G, 3, 16).dims() == limit(G, 3, 16).dims()
    d = g.classical_group("GL", 2, 7, 3)
    assert q.swan_invariants(d.group, 3, 12).dims() == limit(d.group, 3, 12).dims()


def test_swan_rejects_nonabelian_sylow():
    with pytest.raises(ValueError):
        q.swan_invariants(g.symmetric_group(4), 2, 8)


def test_stable_elements_with_normal_sylow():
    C = g.cyclic_group(3)
    E = g.ElemAbelianSubgroup(C, C.generators, 3)
    st = q.stable_elements(C, 3, q.SylowModel.polynomial(E, 10), 10)
    assert st.dims() == [1, 0] * 5 + [1]
    assert st.conditions == 0


def test_stable_elements_s3():
    S3 = g.symmetric_group(3)
    E = g.ElemAbelianSubgroup(S3, ((1, 2, 0),), 3)
    st = q.stable_elements(S3, 3, q.SylowModel.polynomial(E, 16), 16)
    assert st.dims() == limit(S3, 3, 16).dims()
    assert st.multiplicatively_closed()


def test_stable_elements_require_a_sylow():
    S3 = g.symmetric_group(3)
    E = g.ElemAbelianSubgroup(S3, ((1, 0, 2),), 2)
    with pytest.raises(ValueError):
        q.stable_elements(S3, 3, q.SylowModel.polynomial(E, 4), 4)


def test_non_injective_model_is_rejected():
    C = g.cyclic_group(2)
    E = g.ElemAbelianSubgroup(C, C.generators, 2)
    m = q.SylowModel.polynomial(E, 4)
    m.restrictions[0][4] = np.zeros_like(m.restrictions[0][4])
    with pytest.raises(q.TheoremViolation):
        m.check_injective()
