import numpy as np
import pytest

from chowlimit import groups as g


def test_orders():
    assert g.symmetric_group(5).order == 120
    assert g.cyclic_group(7).order == 7
    assert g.quaternion_group().order == 8
    assert not g.quaternion_group().is_abelian()


def test_cap():
    with pytest.raises(g.GroupTooLarge):
        _ = g.FiniteGroup(g.PermRep(6), g.symmetric_group(6).generators, cap=100).elements
    with pytest.raises(g.GroupTooLarge):
        g.classical_group("GL", 3, 7, 3, cap=1000)


def test_rejects_bad_generators():
    with pytest.raises(ValueError):
        g.FiniteGroup(g.PermRep(3), [(0, 0, 1)])
    with pytest.raises(ValueError):
        g.FiniteGroup(g.MatrixRep(g.fp.make_field(5), 2), [(1, 2, 2, 4)])  # det 0


def test_s4_elementary_abelian_classes():
    reps = g.elementary_abelian_reps(g.symmetric_group(4), 2)
    assert [E.rank for E in reps] == [0, 1, 1, 2, 2]
    # all subgroups, not just classes
    assert len(g.elementary_abelian_subgroups(g.symmetric_group(4), 2)) == 1 + 9 + 4


def test_sylow_and_wreath():
    S4 = g.symmetric_group(4)
    P = g.sylow(S4, 2)
    W = g.wreath("Cp", g.cyclic_group(2), 2)
    assert P.order == W.order == 8
    assert W.element_set <= S4.element_set
    assert g.conjugacy_witness(S4, P, W) is not None
    assert g.sylow(g.symmetric_group(5), 3).order == 3


@pytest.mark.parametrize("p", [2, 3, 5])
def test_wreath_orders_and_index(p):
    C = g.cyclic_group(p)
    W = g.wreath("Cp", C, p)
    assert W.order == p * p**p
    assert W.rep.degree == p * p
    idx = g.wreath_index(C, p)
    assert idx == {2: 1, 3: 2, 5: 24}[p]
    assert idx % p


def test_normalizer_and_centralizer():
    S3 = g.symmetric_group(3)
    C3 = S3.subgroup([(1, 2, 0)])
    assert g.normalizer(S3, C3).order == 6
    assert g.centralizer(S3, C3).order == 3


def test_double_cosets_s3():
    S3 = g.symmetric_group(3)
    K = S3.subgroup([(1, 0, 2)])
    dc = g.double_cosets(S3, K, K)
    assert len(dc) == 2
    assert sorted(dc.sizes) == [2, 4]
    assert sum(dc.sizes) == 6


def test_conjugacy_witness_negative():
    S4 = g.symmetric_group(4)
    a = S4.subgroup([(1, 0, 3, 2), (2, 3, 0, 1)])  # normal Klein four
    b = S4.subgroup([(1, 0, 2, 3), (0, 1, 3, 2)])
    assert g.conjugacy_witness(S4, a, b) is None
    x = g.conjugacy_witness(S4, S4.subgroup([(1, 0, 2, 3)]), S4.subgroup([(0, 1, 3, 2)]))
    assert S4.conj(x, (1, 0, 2, 3)) == (0, 1, 3, 2)


@pytest.mark.parametrize(
    "family,n,q,p,order,rank,weyl",
    [
        ("GL", 2, 7, 3, 2016, 2, 2),
        ("SL", 2, 7, 3, 336, 1, 2),
        ("GL", 2, 5, 2, 480, 2, 2),
        ("Sp", 2, 7, 3, 336, 1, 2),
        ("GL", 2, 4, 3, 180, 2, 2),
        ("Sp", 4, 3, 2, 51840, 2, 2),
    ],
)
def test_classical_groups(family, n, q, p, order, rank, weyl):
    d = g.classical_group(family, n, q, p)
    assert d.group.order == order
    assert d.rank == rank
    assert len(d.weyl_matrices) == weyl
    for t in d.torus_p_basis:
        assert t in d.torus and d.group.element_order(t) == p


def test_sl_weyl_acts_by_inversion():
    d = g.classical_group("SL", 2, 7, 3)
    assert sorted(int(w[0, 0]) for w in d.weyl_matrices) == [1, 2]


def test_toral_witnesses_conjugate_into_torus():
    d = g.classical_group("GL", 2, 7, 3)
    for E in g.elementary_abelian_reps(d.group, 3):
        w = g.toral_witness(d, E)
        assert w is not None
        assert all(d.group.conj(w, x) in d.torus for x in E.gens)


def test_non_toral_subgroup_detected():
    # in defining characteristic a unipotent element is never diagonalizable
    d = g.classical_group("GL", 2, 4, 3)
    u = g.ElemAbelianSubgroup(d.group, ((1, 1, 0, 1),), 2)
    assert g.toral_witness(d, u) is None


def test_classical_rejects_defining_characteristic():
    with pytest.raises(ValueError):
        g.classical_group("GL", 2, 9, 3)
    with pytest.raises(ValueError):
        g.classical_group("Sp", 3, 7, 3)


def test_block_helpers():
    assert g.block_copy((1, 0), 1, 2) == (0, 1, 3, 2)
    assert g.block_rotation(3, 1) == (1, 2, 0)
