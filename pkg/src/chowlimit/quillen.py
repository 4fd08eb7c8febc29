"""Quillen categories of elementary abelian subgroups and their Chow limits.

Objects of C(G) are conjugacy-class representatives E with fixed ordered
bases, so CH*BE = F_p[v_1..v_r] with v_i dual to the i-th basis element.
A morphism E_a -> E_b is stored as the r_b x r_a matrix of the group map
e -> g e g^-1; it acts on Chow rings contravariantly through its transpose.

The limit is computed one even degree at a time as the kernel of the map
(x_E)_E -> (phi^*(x_b) - x_a)_phi over all stored morphisms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import fp
from .graded import AlgebraMorphism, GradedBasis, PolyAlgebra, ProductRing, invariants
from .groups import (
    ElemAbelianSubgroup,
    FiniteGroup,
    double_cosets,
    elementary_abelian_reps,
    elementary_abelian_subgroups,
    canonical_basis,
    normalizer,
    sylow,
)
from .steenrod import ReducedReport, is_reduced, steenrod_matrix


class TheoremViolation(RuntimeError):
    """A computed outcome contradicts a structural theorem the code relies on."""


# ---------------------------------------------------------------------------
# the category


@dataclass
class QuillenCat:
    p: int
    objects: list[ElemAbelianSubgroup]
    morphisms: dict[tuple[int, int], list[np.ndarray]]

    @property
    def ranks(self) -> list[int]:
        return [E.rank for E in self.objects]

    def nontrivial_objects(self) -> list[int]:
        return [i for i, E in enumerate(self.objects) if E.rank > 0]

    def hom(self, a: int, b: int) -> list[np.ndarray]:
        return self.morphisms.get((a, b), [])

    def automorphisms(self, a: int) -> list[np.ndarray]:
        return self.hom(a, a)

    @cached_property
    def algebras(self) -> list[PolyAlgebra]:
        return [PolyAlgebra(self.p, r) for r in self.ranks]

    @cached_property
    def ring(self) -> ProductRing:
        return ProductRing(self.algebras)

    @cached_property
    def pullbacks(self) -> list[tuple[int, int, AlgebraMorphism]]:
        """(a, b, phi^*) for every non-identity morphism a -> b."""
        out = []
        for (a, b), mats in sorted(self.morphisms.items()):
            for F in mats:
                if a == b and np.array_equal(F, np.eye(F.shape[0], dtype=np.int64)):
                    continue
                out.append((a, b, AlgebraMorphism.from_group_map(F, self.p)))
        return out

    def morphism_count(self) -> int:
        return sum(len(v) for v in self.morphisms.values())

    def restricted(self, keep) -> QuillenCat:
        """Same objects, morphisms filtered by ``keep(a, b, F)``."""
        mors = {k: [F for F in v if keep(k[0], k[1], F)] for k, v in self.morphisms.items()}
        return QuillenCat(self.p, self.objects, mors)

    def is_closed_under_composition(self) -> bool:
        p = self.p
        stored = {k: {F.tobytes() for F in v} for k, v in self.morphisms.items()}
        n = len(self.objects)
        for a, b, c in itertools.product(range(n), repeat=3):
            for F in self.hom(a, b):
                for H in self.hom(b, c):
                    comp = (H @ F) % p
                    if comp.tobytes() not in stored.get((a, c), set()):
                        return False
        return True


def _induced_matrix(E_b: ElemAbelianSubgroup, images) -> np.ndarray | None:
    cols = []
    for y in images:
        c = E_b.coords.get(y)
        if c is None:
            return None
        cols.append(c)
    return np.array(cols, dtype=np.int64).reshape(len(images), E_b.rank).T.copy()


def build_category(G: FiniteGroup, p: int) -> QuillenCat:
    """C(G): class representatives plus every conjugation-induced map between them."""
    objects = elementary_abelian_reps(G, p)
    morphisms: dict[tuple[int, int], list[np.ndarray]] = {}
    seen: dict[tuple[int, int], set] = {}
    for a, Ea in enumerate(objects):
        targets = [b for b, Eb in enumerate(objects) if Eb.rank >= Ea.rank]
        conj_cache: set = set()
        for g in G.elements:
            imgs = tuple(G.conj(g, x) for x in Ea.gens)
            if imgs in conj_cache:
                continue
            conj_cache.add(imgs)
            for b in targets:
                F = _induced_matrix(objects[b], imgs)
                if F is None:
                    continue
                key = F.tobytes()
                bucket = seen.setdefault((a, b), set())
                if key not in bucket:
                    bucket.add(key)
                    morphisms.setdefault((a, b), []).append(F)
    for k in morphisms:
        morphisms[k].sort(key=lambda F: tuple(F.flatten()))
    return QuillenCat(p, objects, morphisms)


# ---------------------------------------------------------------------------
# the limit


class LimitRing:
    """lim over C(G) of CH*BE, truncated at degree ``cutoff``."""

    def __init__(self, category: QuillenCat, cutoff: int):
        self._constraints: dict[int, np.ndarray] = {}
        self._products: dict[tuple[int, int, int, int], np.ndarray] = {}
        self.category = category
        self.cutoff = cutoff
        self.p = category.p
        self.ring = category.ring
        bases = {d: self._kernel(d) for d in range(0, cutoff + 1, 2)}
        self.basis = GradedBasis(self.ring, cutoff, bases)

    def constraint_matrix(self, d: int) -> np.ndarray:
        if d not in self._constraints:
            self._constraints[d] = self._build_constraints(d)
        return self._constraints[d]

    def _build_constraints(self, d: int) -> np.ndarray:
        ring, p = self.ring, self.p
        off = ring.offsets(d)
        blocks = []
        for a, b, phi in self.category.pullbacks:
            M = phi.degree_matrix(d)
            if M.size == 0:
                continue
            block = np.zeros((M.shape[0], ring.dim(d)), dtype=np.int64)
            block[:, off[b] : off[b + 1]] += M
            block[:, off[a] : off[a + 1]] -= np.eye(M.shape[0], dtype=np.int64)
            blocks.append(block % p)
        if not blocks:
            return np.zeros((0, ring.dim(d)), dtype=np.int64)
        return np.vstack(blocks)

    def _kernel(self, d: int) -> np.ndarray:
        C = self.constraint_matrix(d)
        N = self.ring.dim(d)
        if C.shape[0] == 0:
            return np.eye(N, dtype=np.int64)
        return fp.kernel_matrix(C, self.p, N)

    def dim(self, d: int) -> int:
        return self.basis.dim(d)

    def dims(self) -> list[int]:
        return self.basis.dims()

    def is_compatible(self, vec, d: int) -> bool:
        C = self.constraint_matrix(d)
        return not np.any(fp.matmul(C, np.asarray(vec, dtype=np.int64), self.p)) if C.size else True

    def element(self, d: int, i: int):
        return self.ring.from_coords(self.basis.bases[d][i], d)

    def multiply(self, d1: int, i: int, d2: int, j: int) -> np.ndarray:
        """Coordinates of (basis_i in degree d1) * (basis_j in degree d2) in the degree d1+d2 basis."""
        key = (d1, i, d2, j)
        if key in self._products:
            return self._products[key]
        d = d1 + d2
        if d > self.cutoff:
            raise ValueError("product degree exceeds the cutoff")
        prod = self.ring.multiply(self.element(d1, i), self.element(d2, j))
        vec = self.ring.coords(prod, d)
        if not self.is_compatible(vec, d):
            raise TheoremViolation("product of compatible families is not compatible")
        coeffs = fp.solve_left(self.basis.bases[d], vec, self.p)[0]
        self._products.setdefault(key, coeffs)
        return self._products[key]

    @cached_property
    def generator_degrees(self) -> list[int]:
        """Degrees where the ring needs new generators beyond products of lower ones."""
        out = []
        p = self.p
        for d in range(2, self.cutoff + 1, 2):
            N = self.dim(d)
            if N == 0:
                continue
            rows = []
            for d1 in range(2, d // 2 + 1, 2):
                d2 = d - d1
                for i in range(self.dim(d1)):
                    for j in range(self.dim(d2)):
                        rows.append(self.multiply(d1, i, d2, j))
            got = fp.rank(np.array(rows), p) if rows else 0
            if got < N:
                out.extend([d] * (N - got))
        return out

    def to_dict(self) -> dict:
        return {
            "prime": self.p,
            "cutoff": self.cutoff,
            "objects": self.category.ranks,
            "dims": self.dims(),
            "generator_degrees": self.generator_degrees,
        }


def limit_ring(C: QuillenCat, D: int) -> LimitRing:
    return LimitRing(C, D)


@dataclass
class ClosureReport:
    closed: bool
    failures: list[tuple[int, int, int]] = field(default_factory=list)
    checked: int = 0
    unchecked: list[tuple[int, int]] = field(default_factory=list)


def steenrod_closure_check(L: LimitRing, D: int | None = None) -> ClosureReport:
    """Apply every P^i componentwise to every basis family and test membership.

    Failures are listed as (degree, basis index, i). Pairs (d, i) whose target
    degree is above the window are only recorded as unchecked.
    """
    D = L.cutoff if D is None else min(D, L.cutoff)
    p = L.p
    report = ClosureReport(True)
    for d in range(0, D + 1, 2):
        B = L.basis.bases[d]
        if B.shape[0] == 0:
            continue
        for i in range(1, d // 2 + 1):
            t = d + 2 * i * (p - 1)
            if t > D:
                report.unchecked.append((d, i))
                continue
            imgs = fp.matmul(B, steenrod_matrix(L.ring, i, d).T, p)
            target = L.basis.bases[t]
            for k, row in enumerate(imgs):
                report.checked += 1
                if not np.any(row):
                    continue
                if not fp.in_row_space(row, target, p):
                    report.closed = False
                    report.failures.append((d, k, i))
    return report


def reducedness_check(L: LimitRing, D: int | None = None) -> ReducedReport:
    return is_reduced(L.basis, D)


# ---------------------------------------------------------------------------
# Sylow models and stable elements


class ModelSpace:
    """Abstract graded vector space with given dimensions (model coordinates)."""

    def __init__(self, p: int, dims):
        self.p = p
        self._dims = list(dims)

    def dim(self, d: int) -> int:
        return self._dims[d] if 0 <= d < len(self._dims) else 0

    def from_coords(self, vec, d: int):
        return np.asarray(vec, dtype=np.int64) % self.p


@dataclass
class SylowModel:
    """A model of CH*B(P) through restriction to elementary abelian subgroups.

    ``restrictions[j][d]`` has shape (dim CH^d M_j, dims[d]): column k is the
    restriction of model basis element k to M_j in monomial coordinates.
    """

    group: FiniteGroup
    p: int
    cutoff: int
    dims: list[int]
    targets: list[ElemAbelianSubgroup]
    restrictions: list[dict[int, np.ndarray]]
    label: str = "model"

    def __post_init__(self):
        self._maps: dict[tuple, tuple[int, np.ndarray]] = {}

    @property
    def space(self) -> ModelSpace:
        return ModelSpace(self.p, self.dims)

    def joint_restriction(self, d: int) -> np.ndarray:
        mats = [r[d] for r in self.restrictions]
        return np.vstack(mats) if mats else np.zeros((0, self.dims[d]), dtype=np.int64)

    def check_injective(self) -> None:
        for d in range(0, self.cutoff + 1, 2):
            if self.dims[d] and fp.rank(self.joint_restriction(d), self.p) != self.dims[d]:
                raise TheoremViolation(f"restriction to elementary abelians is not injective in degree {d}")

    def _locate(self, gens: tuple) -> tuple[int, np.ndarray]:
        """(j, F) with F the matrix of y -> h y h^-1 from <gens> into M_j."""
        if gens in self._maps:
            return self._maps[gens]
        P = self.group
        for h in P.elements:
            imgs = [P.conj(h, y) for y in gens]
            for j, M in enumerate(self.targets):
                F = _induced_matrix(M, imgs)
                if F is not None:
                    self._maps[gens] = (j, F)
                    return j, F
        raise ValueError("subgroup is not conjugate into any target elementary abelian")

    def restriction_matrix(self, gens, d: int) -> np.ndarray:
        """Restriction to the elementary abelian subgroup of P with basis ``gens``."""
        gens = tuple(gens)
        j, F = self._locate(gens)
        phi = AlgebraMorphism.from_group_map(F, self.p)
        return fp.matmul(phi.degree_matrix(d), self.restrictions[j][d], self.p)

    @classmethod
    def polynomial(cls, E: ElemAbelianSubgroup, D: int) -> SylowModel:
        """CH*BE itself, for an elementary abelian Sylow subgroup E."""
        A = PolyAlgebra(E.p, E.rank)
        dims = [A.dim(d) for d in range(D + 1)]
        res = {d: np.eye(A.dim(d), dtype=np.int64) for d in range(D + 1)}
        P = E.group.subgroup_from_elements(E.element_set)
        return cls(P, E.p, D, dims, [E], [res], label="polynomial")


@dataclass
class StableSubring:
    model: SylowModel
    basis: GradedBasis
    conditions: int

    def dims(self) -> list[int]:
        return self.basis.dims()

    def image(self, d: int) -> np.ndarray:
        return fp.matmul(self.basis.bases[d], self.model.joint_restriction(d).T, self.model.p)

    def multiplicatively_closed(self) -> bool:
        """Products computed after restriction to the targets stay in the image."""
        m, p, D = self.model, self.model.p, self.basis.cutoff
        algs = [PolyAlgebra(p, M.rank) for M in m.targets]
        for d1 in range(2, D + 1, 2):
            for d2 in range(d1, D - d1 + 1, 2):
                target = self.image(d1 + d2)
                for x in self.image(d1):
                    for y in self.image(d2):
                        parts = []
                        o1 = o2 = 0
                        for A in algs:
                            n1, n2 = A.dim(d1), A.dim(d2)
                            a = A.from_coords(x[o1 : o1 + n1], d1)
                            b = A.from_coords(y[o2 : o2 + n2], d2)
                            parts.append(A.coords(a * b, d1 + d2))
                            o1 += n1
                            o2 += n2
                        if not fp.in_row_space(np.concatenate(parts), target, p):
                            return False
        return True


def _maximal_sets(sets: list[frozenset]) -> list[frozenset]:
    return [s for s in sets if not any(s < t for t in sets)]


def stable_elements(G: FiniteGroup, p: int, model: SylowModel, D: int) -> StableSubring:
    """Elements of the Sylow model fixed by every double-coset condition.

    For each double coset P g P with g outside P, and each maximal elementary
    abelian E in P ∩ gPg^-1, the restriction of x to E must agree with the
    restriction of x to g^-1 E g transported back along conjugation. All
    restrictions go through the model's (checked) injective restriction data.
    """
    P = model.group
    if not P.element_set <= G.element_set:
        raise ValueError("Sylow model group is not a subgroup of G")
    if (G.order // P.order) % p == 0:
        raise ValueError("model group is not a Sylow subgroup")
    D = min(D, model.cutoff)
    model.check_injective()
    dc = double_cosets(G, P, P)
    pairs = []
    for g, L in zip(dc.reps, dc.intersections):
        if g in P.element_set:
            continue
        Lg = G.subgroup_from_elements(L)
        for Eset in _maximal_sets(elementary_abelian_subgroups(Lg, p)):
            if len(Eset) == 1:
                continue
            gens = canonical_basis(G, Eset, p)
            back = tuple(G.conj(G.inv(g), e) for e in gens)
            pairs.append((gens, back))
    bases = {}
    for d in range(0, D + 1, 2):
        N = model.dims[d]
        rows = [
            (model.restriction_matrix(a, d) - model.restriction_matrix(b, d)) % p for a, b in pairs
        ]
        rows = [r for r in rows if r.size]
        if N == 0:
            bases[d] = np.zeros((0, 0), dtype=np.int64)
        elif rows:
            bases[d] = fp.kernel_matrix(np.vstack(rows), p, N)
        else:
            bases[d] = np.eye(N, dtype=np.int64)
    return StableSubring(model, GradedBasis(model.space, D, bases), len(pairs))


def omega1(P: FiniteGroup, p: int) -> ElemAbelianSubgroup:
    """Elements of order dividing p in an abelian p-group, with canonical basis."""
    if not P.is_abelian():
        raise ValueError("Sylow subgroup is not abelian")
    elts = [x for x in P.elements if P.power(x, p) == P.identity]
    return ElemAbelianSubgroup(P, canonical_basis(P, elts, p), p)


def swan_invariants(G: FiniteGroup, p: int, D: int) -> GradedBasis:
    """(CH*BS')^N with S' = Omega_1 of an abelian Sylow subgroup and N its normalizer."""
    P = sylow(G, p)
    if not P.is_abelian():
        raise ValueError("Sylow subgroup is not abelian")
    S = omega1(P, p)
    S = ElemAbelianSubgroup(G, S.gens, p)
    N = normalizer(G, S)
    mats = {}
    for n in N.elements:
        F = _induced_matrix(S, [G.conj(n, x) for x in S.gens])
        w = F.T.copy() % p
        mats.setdefault(w.tobytes(), w)
    return invariants(S.rank, list(mats.values()), D, p)


def model_image(model: SylowModel, L: LimitRing, d: int) -> np.ndarray:
    """Rows: each model basis element restricted to every object of L's category."""
    parts = [model.restriction_matrix(E.gens, d) for E in L.category.objects]
    if not parts:
        return np.zeros((model.dims[d], 0), dtype=np.int64)
    return np.vstack(parts).T.copy() % model.p


def model_matches_limit(model: SylowModel, L: LimitRing, D: int | None = None) -> bool:
    """The model injects into the limit with image equal to the whole limit."""
    D = min(model.cutoff, L.cutoff) if D is None else D
    p = model.p
    for d in range(0, D + 1, 2):
        img = model_image(model, L, d)
        if model.dims[d] != L.dim(d):
            return False
        if img.shape[0] and fp.rank(img, p) != model.dims[d]:
            return False
        if img.shape[0] and not fp.in_row_space(img, L.basis.bases[d], p):
            return False
    return True
