"""Steenrod operations on polynomial models of elementary abelian Chow rings.

Every operation is read off the total operation, which is the ring
homomorphism determined on generators by ``v -> v + t * v**p``. At p = 2 the
same formulas give P^i = Sq^{2i}. Bocksteins are absent: everything lives in
even degrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

from . import fp
from .graded import GradedBasis, PolyAlgebra, PolyElement, ProductRing


@lru_cache(maxsize=None)
def _total_monomial(p: int, exps: tuple[int, ...]) -> tuple[tuple[int, tuple[int, ...], int], ...]:
    """Terms (i, exponents, coeff) of the total operation on one monomial."""
    # per-variable: (v + t v^p)^a = sum_k C(a, k) t^k v^(a + k(p-1))
    partial = [(0, (), 1)]
    for a in exps:
        nxt = []
        for k in range(a + 1):
            c = comb(a, k) % p
            if not c:
                continue
            for i, e, cc in partial:
                nxt.append((i + k, e + (a + k * (p - 1),), cc * c % p))
        partial = nxt
    merged: dict = {}
    for i, e, c in partial:
        merged[(i, e)] = (merged.get((i, e), 0) + c) % p
    return tuple((i, e, c) for (i, e), c in merged.items() if c)


def total_steenrod(x: PolyElement) -> dict[int, PolyElement]:
    """The total operation as ``{i: P^i x}`` (only non-zero coefficients)."""
    A, p = x.alg, x.alg.p
    acc: dict[int, dict] = {}
    for e, c in x.terms.items():
        for i, e2, c2 in _total_monomial(p, e):
            slot = acc.setdefault(i, {})
            slot[e2] = (slot.get(e2, 0) + c * c2) % p
    out = {}
    for i in sorted(acc):
        y = PolyElement(A, acc[i])
        if y:
            out[i] = y
    return out


def apply_P(i: int, x: PolyElement) -> PolyElement:
    """P^i x (Sq^{2i} x at p = 2)."""
    if i < 0:
        return x.alg.zero()
    A, p = x.alg, x.alg.p
    out: dict = {}
    for e, c in x.terms.items():
        for j, e2, c2 in _total_monomial(p, e):
            if j == i:
                out[e2] = (out.get(e2, 0) + c * c2) % p
    return PolyElement(A, out)


def p0(x: PolyElement) -> PolyElement:
    """The top operation P^{|x|/2} x, which is the p-th power."""
    if not x.is_homogeneous():
        raise ValueError("P_0 is only defined on homogeneous elements")
    if not x:
        return x
    return apply_P(x.degree // 2, x)


def apply_P_family(i: int, xs):
    return tuple(apply_P(i, x) for x in xs)


def _factor_steenrod_matrix(A: PolyAlgebra, i: int, d: int) -> np.ndarray:
    p = A.p
    tgt = d + 2 * i * (p - 1)
    idx = A.index(tgt)
    src = A.monomials(d)
    out = np.zeros((len(idx), len(src)), dtype=np.int64)
    for col, e in enumerate(src):
        for j, e2, c in _total_monomial(p, e):
            if j == i:
                out[idx[e2], col] = (out[idx[e2], col] + c) % p
    return out


def steenrod_matrix(ring, i: int, d: int) -> np.ndarray:
    """P^i on degree-d coordinates, shape (dim_{d + 2i(p-1)}, dim_d)."""
    factors = ring.factors if isinstance(ring, ProductRing) else (ring,)
    blocks = [_factor_steenrod_matrix(A, i, d) for A in factors]
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def frobenius_matrix(ring, d: int) -> np.ndarray:
    """P_0 on degree-d coordinates, mapping into degree p*d."""
    p = ring.p
    if d % 2:
        raise ValueError("P_0 needs an even degree")
    return steenrod_matrix(ring, d // 2, d)


@dataclass
class ReducedReport:
    reduced: bool
    witness: object = None
    witness_degree: int | None = None
    checked: list[int] = field(default_factory=list)
    unchecked: list[int] = field(default_factory=list)


def is_reduced(family: GradedBasis, D: int | None = None, relations: GradedBasis | None = None) -> ReducedReport:
    """Check that P_0 is injective on ``family`` (modulo ``relations``).

    Only degrees d with p*d <= D can be tested; the others are reported as
    unchecked. With ``relations`` given, the family is read as the quotient
    S/R and a kernel element is anything whose P_0 lands in R.
    """
    ring, p = family.ring, family.p
    D = family.cutoff if D is None else min(D, family.cutoff)
    report = ReducedReport(True)
    for d in range(0, D + 1, 2):
        if p * d > D:
            if family.dim(d):
                report.unchecked.append(d)
            continue
        report.checked.append(d)
        S = family.bases[d]
        if S.shape[0] == 0:
            continue
        images = fp.matmul(S, frobenius_matrix(ring, d).T, p)
        rel_target = relations.bases[p * d] if relations is not None else np.zeros((0, images.shape[1]), dtype=np.int64)
        stacked = np.vstack([images, rel_target]) if rel_target.shape[0] else images
        ker = fp.kernel(stacked.T, p)
        rel_here = relations.bases[d] if relations is not None else np.zeros((0, S.shape[1]), dtype=np.int64)
        for v in ker:
            c = v[: S.shape[0]]
            elt = fp.matmul(c, S, p)
            if not np.any(elt):
                continue
            if rel_here.shape[0] and fp.in_row_space(elt, rel_here, p):
                continue
            report.reduced = False
            report.witness = ring.from_coords(elt, d)
            report.witness_degree = d
            return report
    return report


@dataclass(frozen=True)
class PhiModule:
    """Degree dilation by p: (ΦM)_{p d} = M_d, zero in other degrees."""

    p: int
    source_dims: tuple[int, ...]

    def dim(self, d: int) -> int:
        if d % self.p:
            return 0
        k = d // self.p
        return self.source_dims[k] if k < len(self.source_dims) else 0

    def dims(self, cutoff: int) -> list[int]:
        return [self.dim(d) for d in range(cutoff + 1)]


def phi(M, p: int | None = None) -> PhiModule:
    """Φ of a graded family given as a GradedBasis or a dimension list."""
    if isinstance(M, GradedBasis):
        return PhiModule(M.p, tuple(M.dims()))
    if p is None:
        raise ValueError("prime required for a bare dimension list")
    return PhiModule(p, tuple(int(x) for x in M))
