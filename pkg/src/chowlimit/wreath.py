"""Chow-ring models of wreath products Z/p ≀ G and S_p ≀ G.

The inner module M is a :class:`GradedBasis` inside a polynomial algebra
F_p[x_1..x_n] (the Chow ring of an elementary abelian inner group, or a
graded submodule of it). Its basis elements x_b are indexed globally in
increasing degree.

Model symbols in degree d:

* ``N[t]`` for each free Z/p-orbit of p-tuples t of basis indices with
  total degree d, t being the lexicographically least rotation;
* ``A[i, b]`` of degree p|x_b| + 2i, standing for P x_b when i = 0 and
  for alpha_i x_b when i > 0 (``A[0, unit]`` is the unit).

Restrictions: on the base E^p, N[t] goes to the sum of the rotations of
the tensor, A[0, b] to x_b^{⊗p} and A[i>0, b] to 0. On Z/p × ΔE, with the
variable v dual to the rotation placed first, norms vanish and A[i, b] goes
to v^i St(x_b).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb

import numpy as np

from . import fp
from .graded import AlgebraMorphism, GradedBasis, PolyAlgebra, PolyElement
from .groups import (
    ElemAbelianSubgroup,
    FiniteGroup,
    block_copy,
    block_rotation,
    wreath,
)
from .quillen import SylowModel, TheoremViolation
from .steenrod import apply_P


# ---------------------------------------------------------------------------
# St and R


def _shift(x: PolyElement, B: PolyAlgebra, offset: int = 1) -> PolyElement:
    pad_front = (0,) * offset
    pad_back = (0,) * (B.n - offset - x.alg.n)
    return PolyElement(B, {pad_front + e + pad_back: c for e, c in x.terms.items()})


def st1ev(x: PolyElement) -> PolyElement:
    """sum_{i=0}^k (-1)^i v^{i(p-1)} P^{k-i} x in F_p[v, x_1..x_n] for |x| = 2k."""
    if not x.is_homogeneous():
        raise ValueError("St is only defined on homogeneous elements")
    A, p = x.alg, x.alg.p
    B = PolyAlgebra(p, A.n + 1)
    if not x:
        return B.zero()
    k = x.degree // 2
    out = B.zero()
    v = B.gen(0)
    for i in range(k + 1):
        term = _shift(apply_P(k - i, x), B) * v ** (i * (p - 1))
        out = out + (term if i % 2 == 0 else -term)
    return out


def st1ev_substitution(x: PolyElement) -> PolyElement:
    """Same value computed as x(w_j -> w_j^p - v^{p-1} w_j)."""
    A, p = x.alg, x.alg.p
    B = PolyAlgebra(p, A.n + 1)
    v = B.gen(0)
    subs = [B.gen(j + 1) ** p - v ** (p - 1) * B.gen(j + 1) for j in range(A.n)]
    out = B.zero()
    for e, c in x.terms.items():
        term = B.one() * c
        for j, k in enumerate(e):
            if k:
                term = term * subs[j] ** k
        out = out + term
    return out


def module_elements(M: GradedBasis) -> list[tuple[int, PolyElement]]:
    """(degree, element) for every basis element of M, in increasing degree."""
    out = []
    for d in range(0, M.cutoff + 1, 2):
        out.extend((d, x) for x in M.elements(d))
    return out


@dataclass
class R1evModule:
    p: int
    cutoff: int
    ring: PolyAlgebra
    generators: list[tuple[int, int, PolyElement]]  # (j, b, v^{j(p-1)} St x_b)
    basis: GradedBasis

    def dims(self) -> list[int]:
        return self.basis.dims()


def r1ev(M: GradedBasis, D: int) -> R1evModule:
    """Span of v^{j(p-1)} St(x_b); independence is checked degree by degree."""
    p = M.p
    A = M.ring
    B = PolyAlgebra(p, A.n + 1)
    v = B.gen(0)
    gens = []
    by_degree: dict[int, list[np.ndarray]] = {}
    for b, (dx, x) in enumerate(module_elements(M)):
        if p * dx > D:
            continue
        s = st1ev(x)
        j = 0
        while p * dx + 2 * j * (p - 1) <= D:
            d = p * dx + 2 * j * (p - 1)
            y = s * v ** (j * (p - 1))
            gens.append((j, b, y))
            by_degree.setdefault(d, []).append(B.coords(y, d))
            j += 1
            if p == 1:  # pragma: no cover
                break
    bases = {}
    for d in range(0, D + 1, 2):
        rows = by_degree.get(d, [])
        if not rows:
            continue
        mat = np.array(rows, dtype=np.int64)
        red = fp.rref(mat, p)
        if red.rank != len(rows):
            raise TheoremViolation(f"St generators are dependent in degree {d}")
        bases[d] = red.reduced
    return R1evModule(p, D, B, gens, GradedBasis(B, D, bases))


def r1ev_dimension_formula(M: GradedBasis, D: int) -> list[int]:
    """sum_j dim (Phi M)_{d - 2j(p-1)}."""
    p = M.p
    out = [0] * (D + 1)
    for d in range(0, D + 1, 2):
        j = 0
        while d - 2 * j * (p - 1) >= 0:
            e = d - 2 * j * (p - 1)
            if e % p == 0 and e // p <= M.cutoff:
                out[d] += M.dim(e // p) if (e // p) % 2 == 0 else 0
            j += 1
    return out


def lift_to_P_tensor(M: GradedBasis, D: int) -> GradedBasis:
    """F_p[v] ⊗ M inside F_p[v, x_1..x_n]."""
    p = M.p
    B = PolyAlgebra(p, M.ring.n + 1)
    v = B.gen(0)
    rows: dict[int, list] = {}
    for dx, x in module_elements(M):
        a = 0
        while dx + 2 * a <= D:
            rows.setdefault(dx + 2 * a, []).append(B.coords(_shift(x, B) * v**a, dx + 2 * a))
            a += 1
    return GradedBasis(B, D, {d: fp.row_space(np.array(r), p, B.dim(d)) for d, r in rows.items()})


def frobenius_module(M: GradedBasis, D: int) -> GradedBasis:
    """Phi M realized as {x^p} inside the same polynomial ring."""
    p, A = M.p, M.ring
    rows: dict[int, list] = {}
    for dx, x in module_elements(M):
        if p * dx <= D:
            rows.setdefault(p * dx, []).append(A.coords(x**p, p * dx))
    return GradedBasis(A, D, {d: fp.row_space(np.array(r), p, A.dim(d)) for d, r in rows.items()})


def intersection_property_holds(M: GradedBasis, Msub: GradedBasis, D: int) -> bool:
    """(R M) ∩ (F_p[v] ⊗ M') equals R M' in every degree up to D."""
    p = M.p
    RM, RMs, PM = r1ev(M, D), r1ev(Msub, D), lift_to_P_tensor(Msub, D)
    B = RM.ring
    for d in range(0, D + 1, 2):
        lhs = fp.intersect(RM.basis.bases[d], PM.bases[d], p, B.dim(d))
        rhs = fp.row_space(RMs.basis.bases[d], p, B.dim(d))
        if lhs.shape != rhs.shape or not np.array_equal(lhs, rhs):
            return False
    return True


def frobenius_property_holds(M: GradedBasis, D: int) -> bool:
    """(R Phi M) ∩ (Phi P ⊗ M) lies inside Phi(R M) in every degree up to D."""
    p = M.p
    R_phi = r1ev(frobenius_module(M, D), D)
    B = R_phi.ring
    v = B.gen(0)
    phiP_M: dict[int, list] = {}
    for dx, x in module_elements(M):
        a = 0
        while dx + 2 * p * a <= D:
            d = dx + 2 * p * a
            phiP_M.setdefault(d, []).append(B.coords(_shift(x, B) * v ** (p * a), d))
            a += 1
    RM = r1ev(M, D)
    phi_R: dict[int, list] = {}
    for _, _, y in RM.generators:
        if y and p * y.degree <= D:
            phi_R.setdefault(p * y.degree, []).append(B.coords(y**p, p * y.degree))
    for d in range(0, D + 1, 2):
        n = B.dim(d)
        left = fp.intersect(R_phi.basis.bases[d], np.array(phiP_M.get(d, []), dtype=np.int64).reshape(-1, n), p, n)
        if left.shape[0] == 0:
            continue
        target = np.array(phi_R.get(d, []), dtype=np.int64).reshape(-1, n)
        if not fp.in_row_space(left, target, p):
            return False
    return True


# ---------------------------------------------------------------------------
# tensor powers and transfers


def _index_by_degree(elements) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for b, (d, _) in enumerate(elements):
        out.setdefault(d, []).append(b)
    return out


def tensor_tuples(degrees: list[int], p: int, d: int) -> list[tuple[int, ...]]:
    """All p-tuples of basis indices whose degrees add up to d, in lex order."""
    by_deg: dict[int, list[int]] = {}
    for b, e in enumerate(degrees):
        by_deg.setdefault(e, []).append(b)
    out: list[tuple[int, ...]] = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for e in sorted(by_deg):
            if e > remaining:
                break
            for b in by_deg[e]:
                prefix.append(b)
                rec(prefix, remaining - e, slots - 1)
                prefix.pop()

    rec([], d, p)
    return sorted(out)


def _rotate(t: tuple, k: int) -> tuple:
    return t[k:] + t[:k]


def free_orbits(degrees: list[int], p: int, d: int) -> list[tuple[int, ...]]:
    """Least representatives of the free rotation orbits among degree-d tuples."""
    reps = []
    for t in tensor_tuples(degrees, p, d):
        if len(set(t)) == 1:
            continue
        if t == min(_rotate(t, k) for k in range(p)):
            reps.append(t)
    return reps


def invariant_tensor_dim(degrees: list[int], p: int, d: int) -> int:
    """dim (M^{⊗p})^{Z/p} in degree d by kernels of (rotation - 1).

    The rotation preserves the multiset of indices, so the kernel is computed
    separately on each multiset class.
    """
    classes: dict[tuple, list[tuple]] = {}
    for t in tensor_tuples(degrees, p, d):
        classes.setdefault(tuple(sorted(t)), []).append(t)
    total = 0
    for members in classes.values():
        pos = {t: i for i, t in enumerate(members)}
        n = len(members)
        R = np.zeros((n, n), dtype=np.int64)
        for t, i in pos.items():
            R[pos[_rotate(t, 1)], i] = 1
        total += len(fp.kernel((R - np.eye(n, dtype=np.int64)) % p, p))
    return total


def _w_permute(t: tuple, u: int, p: int) -> tuple:
    """Move tensor position j to position u*j mod p."""
    out = [None] * p
    for j, b in enumerate(t):
        out[(u * j) % p] = b
    return tuple(out)


def _orbit_rep(t: tuple, p: int) -> tuple:
    return min(_rotate(t, k) for k in range(p))


def unit_generator(p: int) -> int:
    """Least generator of the multiplicative group (Z/p)^*."""
    for u in range(1, p):
        if len({pow(u, k, p) for k in range(p - 1)}) == p - 1:
            return u
    raise AssertionError


@dataclass
class TauSubspace:
    p: int
    cutoff: int
    orbits: dict[int, list[tuple[int, ...]]]
    invariant_dims: list[int]
    w_invariant: dict[int, np.ndarray]  # rows in norm coordinates

    def dim(self, d: int) -> int:
        return len(self.orbits.get(d, []))

    def dims(self) -> list[int]:
        return [self.dim(d) for d in range(self.cutoff + 1)]

    def w_dims(self) -> list[int]:
        return [self.w_invariant[d].shape[0] if d in self.w_invariant else 0 for d in range(self.cutoff + 1)]


def w_action_on_norms(orbits: list[tuple], p: int, u: int) -> np.ndarray:
    """Permutation matrix of u in (Z/p)^* on the norm basis (column = source)."""
    pos = {t: i for i, t in enumerate(orbits)}
    n = len(orbits)
    m = np.zeros((n, n), dtype=np.int64)
    for t, i in pos.items():
        m[pos[_orbit_rep(_w_permute(t, u, p), p)], i] = 1
    return m


def tau_subspace(M: GradedBasis, p: int, D: int) -> TauSubspace:
    elements = module_elements(M)
    degrees = [d for d, _ in elements]
    orbits, inv_dims, w_inv = {}, [0] * (D + 1), {}
    u = unit_generator(p)
    for d in range(0, D + 1, 2):
        orbits[d] = free_orbits(degrees, p, d)
        inv_dims[d] = invariant_tensor_dim(degrees, p, d)
        n = len(orbits[d])
        W = w_action_on_norms(orbits[d], p, u)
        w_inv[d] = fp.kernel_matrix((W - np.eye(n, dtype=np.int64)) % p, p, n) if n else np.zeros((0, 0), dtype=np.int64)
    return TauSubspace(p, D, orbits, inv_dims, w_inv)


# ---------------------------------------------------------------------------
# the model


@dataclass(frozen=True)
class Symbol:
    kind: str  # "N" or "A"
    data: tuple  # orbit tuple for N, (i, b) for A

    def __repr__(self):
        if self.kind == "N":
            return "N[" + ",".join(map(str, self.data)) + "]"
        return f"A[{self.data[0]},{self.data[1]}]"


@dataclass
class WreathModel:
    inner: GradedBasis
    p: int
    variant: str
    cutoff: int
    elements: list[tuple[int, PolyElement]]
    symbols: dict[int, list[Symbol]]
    # for the Sp variant: rows expressing each basis vector in Cp symbols
    cp_symbols: dict[int, list[Symbol]] = field(default_factory=dict)
    embedding: dict[int, np.ndarray] = field(default_factory=dict)

    def dim(self, d: int) -> int:
        return len(self.symbols.get(d, []))

    def dims(self) -> list[int]:
        return [self.dim(d) for d in range(self.cutoff + 1)]

    @property
    def degrees(self) -> list[int]:
        return [d for d, _ in self.elements]

    def index(self, d: int) -> dict[Symbol, int]:
        return {s: i for i, s in enumerate(self.symbols.get(d, []))}


def _cp_symbols(elements, p: int, D: int) -> dict[int, list[Symbol]]:
    degrees = [d for d, _ in elements]
    out: dict[int, list[Symbol]] = {}
    for d in range(0, D + 1, 2):
        syms = [Symbol("N", t) for t in free_orbits(degrees, p, d)]
        for b, e in enumerate(degrees):
            rest = d - p * e
            if rest >= 0 and rest % 2 == 0:
                syms.append(Symbol("A", (rest // 2, b)))
        out[d] = syms
    return out


def w_action_matrix(model: WreathModel, d: int, u: int) -> np.ndarray:
    """Action of u in (Z/p)^* on the Cp model in degree d (column = source)."""
    p = model.p
    syms = model.cp_symbols[d] if model.variant == "Sp" else model.symbols[d]
    pos = {s: i for i, s in enumerate(syms)}
    n = len(syms)
    m = np.zeros((n, n), dtype=np.int64)
    for s, i in pos.items():
        if s.kind == "N":
            m[pos[Symbol("N", _orbit_rep(_w_permute(s.data, u, p), p))], i] = 1
        else:
            m[i, i] = pow(u, s.data[0], p)
    return m


def wreath_model(M: GradedBasis, p: int, variant: str = "Cp", D: int | None = None) -> WreathModel:
    """Model of CH* of Z/p ≀ G (Cp) or S_p ≀ G (Sp), G having Chow ring M."""
    if M.p != p:
        raise ValueError("inner module is over a different prime")
    if variant not in ("Cp", "Sp"):
        raise ValueError(f"unknown variant {variant!r}")
    D = M.cutoff if D is None else D
    elements = [(d, x) for d, x in module_elements(M) if d <= D]
    cp = _cp_symbols(elements, p, D)
    if variant == "Cp":
        return WreathModel(M, p, "Cp", D, elements, cp)
    u = unit_generator(p)
    symbols, embedding = {}, {}
    for d, syms in cp.items():
        # orbit sums of W on the norms, then the A symbols with (p-1) | i
        norm_orbits: list[list[tuple]] = []
        seen = set()
        for s in syms:
            if s.kind != "N" or s.data in seen:
                continue
            orb, t = [], s.data
            while t not in orb:
                orb.append(t)
                t = _orbit_rep(_w_permute(t, u, p), p)
            seen.update(orb)
            norm_orbits.append(sorted(orb))
        pos = {s: i for i, s in enumerate(syms)}
        rows, out_syms = [], []
        for orb in norm_orbits:
            row = np.zeros(len(syms), dtype=np.int64)
            for t in orb:
                row[pos[Symbol("N", t)]] = 1
            rows.append(row)
            out_syms.append(Symbol("N", orb[0]))
        for s in syms:
            if s.kind == "A" and s.data[0] % (p - 1) == 0:
                row = np.zeros(len(syms), dtype=np.int64)
                row[pos[s]] = 1
                rows.append(row)
                out_syms.append(s)
        symbols[d] = out_syms
        embedding[d] = np.array(rows, dtype=np.int64).reshape(len(rows), len(syms))
    return WreathModel(M, p, "Sp", D, elements, symbols, cp, embedding)


def w_invariant_dims(model: WreathModel) -> list[int]:
    """Dimensions of the (Z/p)^*-invariants of a Cp model, by kernels."""
    if model.variant != "Cp":
        raise ValueError("expected the Cp variant")
    u = unit_generator(model.p)
    out = []
    for d in range(model.cutoff + 1):
        n = model.dim(d)
        if n == 0:
            out.append(0)
            continue
        W = w_action_matrix(model, d, u)
        out.append(len(fp.kernel((W - np.eye(n, dtype=np.int64)) % model.p, model.p)))
    return out


def expand_P(model: WreathModel, x: PolyElement, i: int = 0) -> np.ndarray:
    """Cp-model coordinates of A[i, x] for an arbitrary homogeneous x in M.

    Writes x = sum c_b x_b. For i > 0 the symbol is linear. For i = 0 the
    p-th tensor power picks up, beyond the diagonal terms c_b P x_b, one norm
    per free orbit with coefficient prod_j c_{t_j}.
    """
    if model.variant != "Cp":
        raise ValueError("expected the Cp variant")
    p = model.p
    M = model.inner
    if not x.is_homogeneous():
        raise ValueError("argument must be homogeneous")
    dx = x.degree if x else 0
    d = p * dx + 2 * i
    idx = model.index(d)
    out = np.zeros(model.dim(d), dtype=np.int64)
    if not x:
        return out
    basis_ids = [b for b, (e, _) in enumerate(model.elements) if e == dx]
    coeffs = fp.solve_left(M.bases[dx], M.ring.coords(x, dx), p)[0] if basis_ids else np.zeros(0)
    # basis rows of M in degree dx are exactly the elements with ids basis_ids, in order
    c = {b: int(coeffs[k]) for k, b in enumerate(basis_ids)}
    for b, cb in c.items():
        if cb:
            out[idx[Symbol("A", (i, b))]] = (out[idx[Symbol("A", (i, b))]] + cb) % p
    if i == 0:
        for s, k in idx.items():
            if s.kind == "N" and all(t in c for t in s.data):
                coef = 1
                for t in s.data:
                    coef = coef * c[t] % p
                out[k] = (out[k] + coef) % p
    return out


# ---------------------------------------------------------------------------
# restrictions


@dataclass
class WreathRestrictions:
    base_ring: PolyAlgebra  # variables: block j, inner variable k -> j*n + k
    diag_ring: PolyAlgebra  # variables: v, then the diagonal inner variables
    base: dict[int, np.ndarray]
    diag: dict[int, np.ndarray]


def _block_embeddings(A: PolyAlgebra, p: int) -> list[AlgebraMorphism]:
    n = A.n
    big = PolyAlgebra(A.p, p * n)
    out = []
    for j in range(p):
        m = np.zeros((p * n, n), dtype=np.int64)
        for k in range(n):
            m[j * n + k, k] = 1
        out.append(AlgebraMorphism(A, big, m))
    return out


def symbol_restrictions(model: WreathModel, sym: Symbol):
    """(base image, diagonal image) of one Cp symbol."""
    A = model.inner.ring
    p = model.p
    if not isinstance(A, PolyAlgebra):
        raise ValueError("restrictions need a polynomial inner ring")
    emb = _block_embeddings(A, p)
    base_ring = emb[0].target
    diag_ring = PolyAlgebra(p, A.n + 1)
    xs = [x for _, x in model.elements]

    def tensor(t):
        out = base_ring.one()
        for j, b in enumerate(t):
            out = out * emb[j](xs[b])
        return out

    if sym.kind == "N":
        t = sym.data
        base = base_ring.zero()
        for k in range(p):
            base = base + tensor(_rotate(t, k))
        return base, diag_ring.zero()
    i, b = sym.data
    base = tensor((b,) * p) if i == 0 else base_ring.zero()
    diag = diag_ring.gen(0) ** i * st1ev(xs[b])
    return base, diag


def wreath_restrictions(model: WreathModel, D: int | None = None) -> WreathRestrictions:
    D = model.cutoff if D is None else min(D, model.cutoff)
    A = model.inner.ring
    p = model.p
    base_ring = PolyAlgebra(p, p * A.n)
    diag_ring = PolyAlgebra(p, A.n + 1)
    base, diag = {}, {}
    for d in range(D + 1):
        syms = model.cp_symbols.get(d, []) if model.variant == "Sp" else model.symbols.get(d, [])
        bcols = np.zeros((base_ring.dim(d), len(syms)), dtype=np.int64)
        dcols = np.zeros((diag_ring.dim(d), len(syms)), dtype=np.int64)
        if d % 2 == 0:
            for k, s in enumerate(syms):
                bx, dx = symbol_restrictions(model, s)
                bcols[:, k] = base_ring.coords(bx, d)
                dcols[:, k] = diag_ring.coords(dx, d)
        if model.variant == "Sp" and syms:
            E = model.embedding[d]
            bcols = fp.matmul(bcols, E.T, p)
            dcols = fp.matmul(dcols, E.T, p)
        base[d] = bcols
        diag[d] = dcols
    return WreathRestrictions(base_ring, diag_ring, base, diag)


def restriction_is_injective(model: WreathModel, D: int | None = None) -> bool:
    R = wreath_restrictions(model, D)
    for d in R.base:
        n = model.dim(d)
        if n and fp.rank(np.vstack([R.base[d], R.diag[d]]), model.p) != n:
            return False
    return True


def wreath_sylow_model(inner: FiniteGroup, inner_basis: tuple, p: int, D: int, variant: str = "Cp") -> SylowModel:
    """Realize the model inside the permutation group Z/p ≀ inner (or S_p ≀ inner).

    ``inner_basis`` is an ordered basis of the elementary abelian inner group.
    The base subgroup gets the block-major basis and the diagonal subgroup
    the basis (rotation, diagonal copies of inner_basis).
    """
    E = ElemAbelianSubgroup(inner, tuple(inner_basis), p)
    if E.element_set != inner.element_set:
        raise ValueError("inner group must be elementary abelian with the given basis")
    n, deg = E.rank, inner.rep.degree
    W = wreath(variant, inner, p)
    A = PolyAlgebra(p, n)
    M = GradedBasis(A, D, {d: np.eye(A.dim(d), dtype=np.int64) for d in range(0, D + 1, 2)})
    model = wreath_model(M, p, variant, D)
    R = wreath_restrictions(model, D)
    base_gens = tuple(block_copy(g, j, p) for j in range(p) for g in E.gens)
    diag_gens = [block_rotation(p, deg)]
    for g in E.gens:
        x = W.identity
        for j in range(p):
            x = W.mul(x, block_copy(g, j, p))
        diag_gens.append(x)
    base = ElemAbelianSubgroup(W, base_gens, p)
    diag = ElemAbelianSubgroup(W, tuple(diag_gens), p)
    return SylowModel(
        W, p, D, model.dims(), [base, diag], [R.base, R.diag], label=f"wreath-{variant}"
    )


def torsion_free_image(generator_degrees, r: int) -> list[int]:
    """Degrees divisible by 2r."""
    if r < 1:
        raise ValueError("extension degree must be positive")
    degs = [int(d) for d in generator_degrees]
    if any(d <= 0 or d % 2 for d in degs):
        raise ValueError("degrees must be even and positive")
    return [d for d in degs if d % (2 * r) == 0]
