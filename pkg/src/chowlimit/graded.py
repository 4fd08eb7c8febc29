"""Polynomial algebras F_p[v_1..v_n] with generators in degree 2.

These model the Chow rings of elementary abelian p-groups. Degrees are the
topological ones: a monomial v^a sits in degree ``2 * sum(a)``. Within a
degree, monomials are listed in descending lexicographic order of their
exponent vectors (v_1^k first); every canonical form in the package is taken
with respect to that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import fp


@lru_cache(maxsize=None)
def _compositions(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),) if k == 0 else ()
    if n == 1:
        return ((k,),)
    out = []
    for first in range(k, -1, -1):
        for rest in _compositions(n - 1, k - first):
            out.append((first,) + rest)
    return tuple(out)


@dataclass(frozen=True)
class PolyAlgebra:
    p: int
    n: int
    prefix: str = "v"

    def __post_init__(self):
        fp.check_prime(self.p)
        if self.n < 0:
            raise ValueError("number of generators must be non-negative")

    def monomials(self, d: int) -> tuple[tuple[int, ...], ...]:
        if d < 0 or d % 2:
            return ()
        return _compositions(self.n, d // 2)

    def index(self, d: int) -> dict[tuple[int, ...], int]:
        return _monomial_index(self.n, d)

    def dim(self, d: int) -> int:
        if d < 0 or d % 2:
            return 0
        k = d // 2
        if self.n == 0:
            return 1 if k == 0 else 0
        return comb(self.n - 1 + k, k)

    def zero(self) -> PolyElement:
        return PolyElement(self, {})

    def one(self) -> PolyElement:
        return PolyElement(self, {(0,) * self.n: 1})

    def gen(self, i: int) -> PolyElement:
        e = [0] * self.n
        e[i] = 1
        return PolyElement(self, {tuple(e): 1})

    def gens(self) -> list[PolyElement]:
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> PolyElement:
        if len(exps) != self.n:
            raise ValueError("exponent vector has the wrong length")
        return PolyElement(self, {tuple(exps): coeff})

    def linear(self, coeffs: Sequence[int]) -> PolyElement:
        terms = {}
        for i, c in enumerate(coeffs):
            if c % self.p:
                e = [0] * self.n
                e[i] = 1
                terms[tuple(e)] = c
        return PolyElement(self, terms)

    def coords(self, x: PolyElement, d: int) -> np.ndarray:
        idx = self.index(d)
        v = np.zeros(len(idx), dtype=np.int64)
        for e, c in x.terms.items():
            if 2 * sum(e) != d:
                raise ValueError(f"element has a term outside degree {d}")
            v[idx[e]] = c
        return v

    def from_coords(self, vec, d: int) -> PolyElement:
        mons = self.monomials(d)
        return PolyElement(self, {m: int(c) for m, c in zip(mons, vec) if c % self.p})


@lru_cache(maxsize=None)
def _monomial_index(n: int, d: int) -> dict[tuple[int, ...], int]:
    if d < 0 or d % 2:
        return {}
    return {m: i for i, m in enumerate(_compositions(n, d // 2))}


class PolyElement:
    """A polynomial with F_p coefficients, stored as ``{exponents: coeff}``."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: PolyAlgebra, terms: dict):
        p = alg.p
        self.alg = alg
        self.terms = {}
        for e, c in terms.items():
            c %= p
            if c:
                if len(e) != alg.n:
                    raise ValueError("exponent vector has the wrong length")
                self.terms[tuple(e)] = c

    def _coerce(self, other) -> PolyElement:
        if isinstance(other, PolyElement):
            if other.alg != self.alg:
                raise ValueError("elements live in different algebras")
            return other
        if isinstance(other, (int, np.integer)):
            return PolyElement(self.alg, {(0,) * self.alg.n: int(other)})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return PolyElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyElement(self.alg, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return PolyElement(self.alg, {e: c * int(other) for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.alg.p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return PolyElement(self.alg, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.alg.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.alg, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {2 * sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        """Degree of a homogeneous element; the zero element reports 0."""
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("element is not homogeneous")
        return ds.pop() if ds else 0

    def homogeneous_part(self, d: int) -> PolyElement:
        return PolyElement(self.alg, {e: c for e, c in self.terms.items() if 2 * sum(e) == d})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mon = "*".join(
                f"{self.alg.prefix}{i + 1}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e)
                if k
            )
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts)


def monomial_basis(A: PolyAlgebra, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree ``d`` in graded-lex order (empty if d odd)."""
    return list(A.monomials(d))


class ProductRing:
    """Finite product of polynomial algebras; elements are tuples.

    Coordinates in degree d are the concatenation of the factors' monomial
    coordinates. A compatible family (x_E)_E over a Quillen category is an
    element of such a ring.
    """

    def __init__(self, factors: Sequence[PolyAlgebra]):
        self.factors = tuple(factors)
        ps = {A.p for A in self.factors}
        if len(ps) > 1:
            raise ValueError("factors over different primes")
        self.p = ps.pop() if ps else 2

    def __eq__(self, other):
        return isinstance(other, ProductRing) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def dim(self, d: int) -> int:
        return sum(A.dim(d) for A in self.factors)

    def offsets(self, d: int) -> list[int]:
        out, acc = [], 0
        for A in self.factors:
            out.append(acc)
            acc += A.dim(d)
        out.append(acc)
        return out

    def coords(self, x: Sequence[PolyElement], d: int) -> np.ndarray:
        if len(x) != len(self.factors):
            raise ValueError("family has the wrong number of components")
        parts = [A.coords(xi, d) for A, xi in zip(self.factors, x)]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def from_coords(self, vec, d: int) -> tuple[PolyElement, ...]:
        off = self.offsets(d)
        return tuple(A.from_coords(vec[off[i] : off[i + 1]], d) for i, A in enumerate(self.factors))

    def one(self):
        return tuple(A.one() for A in self.factors)

    def multiply(self, x, y):
        return tuple(a * b for a, b in zip(x, y))


class AlgebraMorphism:
    """Substitution homomorphism ``source -> target``.

    ``matrix`` has shape ``(target.n, source.n)``; column j lists the
    coefficients of the image of source generator j. Every image is a linear
    form, so the map preserves degree.
    """

    def __init__(self, source: PolyAlgebra, target: PolyAlgebra, matrix):
        if source.p != target.p:
            raise ValueError("morphism between algebras over different primes")
        m = np.array(matrix, dtype=np.int64).reshape(target.n, source.n) % source.p
        self.source = source
        self.target = target
        self.matrix = m
        self._cache: dict[int, np.ndarray] = {}

    @classmethod
    def from_group_map(cls, F, p: int) -> AlgebraMorphism:
        """Restriction along a group homomorphism E_a -> E_b.

        ``F`` is the ``r_b x r_a`` matrix whose column i holds the coordinates
        of the image of the i-th basis element of E_a. Degree-2 classes are the
        dual characters, so the induced map CH*BE_b -> CH*BE_a has matrix F^T.
        """
        F = np.array(F, dtype=np.int64)
        if F.ndim != 2:
            raise ValueError("group map must be given as a 2-d matrix")
        rb, ra = F.shape
        return cls(PolyAlgebra(p, rb), PolyAlgebra(p, ra), F.T)

    @property
    def images(self) -> list[PolyElement]:
        return [self.target.linear(self.matrix[:, j]) for j in range(self.source.n)]

    def __call__(self, x: PolyElement) -> PolyElement:
        return pullback(self, x)

    def compose(self, first: AlgebraMorphism) -> AlgebraMorphism:
        """``self ∘ first`` (apply ``first``, then ``self``)."""
        if first.target != self.source:
            raise ValueError("morphisms are not composable")
        return AlgebraMorphism(first.source, self.target, self.matrix @ first.matrix % self.source.p)

    def degree_matrix(self, d: int) -> np.ndarray:
        """Matrix of the map on degree-d coordinates, shape (target, source)."""
        if d in self._cache:
            return self._cache[d]
        src = self.source.monomials(d)
        tgt_idx = self.target.index(d)
        out = np.zeros((len(tgt_idx), len(src)), dtype=np.int64)
        images = self.images
        powers: dict[tuple[int, int], PolyElement] = {}

        def power(j, e):
            key = (j, e)
            if key not in powers:
                powers[key] = images[j] ** e
            return powers[key]

        for col, a in enumerate(src):
            img = self.target.one()
            for j, e in enumerate(a):
                if e:
                    img = img * power(j, e)
            for mon, c in img.terms.items():
                out[tgt_idx[mon], col] = c
        self._cache[d] = out
        return out


def pullback(phi: AlgebraMorphism, x: PolyElement) -> PolyElement:
    """Substitute each source generator by its image and expand."""
    if x.alg.n != phi.source.n or x.alg.p != phi.source.p:
        raise ValueError("element does not live in the morphism's source")
    images = phi.images
    out = phi.target.zero()
    for e, c in x.terms.items():
        term = phi.target.one() * c
        for j, k in enumerate(e):
            if k:
                term = term * images[j] ** k
        out = out + term
    return out


class GradedBasis:
    """Per-degree canonical bases of a graded subspace of a ring.

    ``ring`` is a :class:`PolyAlgebra` or :class:`ProductRing`; ``bases[d]``
    holds RREF rows in the ring's degree-d coordinates.
    """

    def __init__(self, ring, cutoff: int, bases: dict[int, np.ndarray]):
        self.ring = ring
        self.cutoff = cutoff
        self.p = ring.p
        self.bases = {}
        for d in range(cutoff + 1):
            rows = bases.get(d)
            if rows is None:
                rows = np.zeros((0, ring.dim(d)), dtype=np.int64)
            rows = np.asarray(rows, dtype=np.int64)
            n = ring.dim(d)
            k = rows.shape[0] if rows.ndim == 2 else (rows.size // n if n else 0)
            self.bases[d] = rows.reshape(k, n)

    def dim(self, d: int) -> int:
        if d not in self.bases:
            raise KeyError(f"degree {d} is outside the cutoff {self.cutoff}")
        return self.bases[d].shape[0]

    def dims(self) -> list[int]:
        return [self.dim(d) for d in range(self.cutoff + 1)]

    def elements(self, d: int) -> list:
        return [self.ring.from_coords(row, d) for row in self.bases[d]]

    def contains_coords(self, vec, d: int) -> bool:
        return fp.in_row_space(vec, self.bases[d], self.p)

    def contains(self, x, d: int) -> bool:
        return self.contains_coords(self.ring.coords(x, d), d)

    def hilbert(self) -> HilbertSeries:
        return hilbert(self, self.cutoff)


def full_basis(A: PolyAlgebra, D: int) -> GradedBasis:
    return GradedBasis(A, D, {d: np.eye(A.dim(d), dtype=np.int64) for d in range(0, D + 1, 2)})


def monomial_ideal_basis(A: PolyAlgebra, generators: Iterable[Sequence[int]], D: int) -> GradedBasis:
    """Truncation of the ideal spanned by the given monomials."""
    gens = [tuple(g) for g in generators]
    bases = {}
    for d in range(0, D + 1, 2):
        rows = []
        for i, m in enumerate(A.monomials(d)):
            if any(all(a >= b for a, b in zip(m, g)) for g in gens):
                row = np.zeros(A.dim(d), dtype=np.int64)
                row[i] = 1
                rows.append(row)
        bases[d] = np.array(rows, dtype=np.int64).reshape(-1, A.dim(d))
    return GradedBasis(A, D, bases)


def constants_basis(A: PolyAlgebra, D: int) -> GradedBasis:
    return GradedBasis(A, D, {0: np.ones((1, 1), dtype=np.int64)})


def _check_group(W: list[np.ndarray], p: int) -> None:
    seen = {tuple(map(tuple, w)) for w in W}
    for w in W:
        if fp.rank(w, p) != w.shape[0]:
            raise ValueError("matrix is not invertible mod p")
    for a in W:
        for b in W:
            if tuple(map(tuple, a @ b % p)) not in seen:
                raise ValueError("matrices are not closed under multiplication")


def invariants(n: int, W: Sequence, D: int, p: int) -> GradedBasis:
    """Invariant subring of F_p[v_1..v_n] under a finite matrix group.

    Each matrix ``w`` acts by the substitution ``v_j -> sum_i w[i][j] v_i``.
    The degree-d part is computed as the joint kernel of ``w_* - 1`` on
    degree-d monomial coordinates, so no Reynolds operator (and no
    restriction on p dividing |W|) is involved.
    """
    mats = [np.array(w, dtype=np.int64).reshape(n, n) % p for w in W]
    if not mats:
        mats = [np.eye(n, dtype=np.int64)]
    _check_group(mats, p)
    A = PolyAlgebra(p, n)
    actions = [AlgebraMorphism(A, A, w) for w in mats]
    bases = {}
    for d in range(0, D + 1, 2):
        N = A.dim(d)
        blocks = [(phi.degree_matrix(d) - np.eye(N, dtype=np.int64)) % p for phi in actions]
        bases[d] = fp.kernel_matrix(np.vstack(blocks), p, N)
    return GradedBasis(A, D, bases)


@dataclass(frozen=True)
class HilbertSeries:
    cutoff: int
    dims: tuple[int, ...]

    def __getitem__(self, d: int) -> int:
        return self.dims[d]

    def as_list(self) -> list[int]:
        return list(self.dims)


def hilbert(family, D: int) -> HilbertSeries:
    """Graded dimensions 0..D of a basis family.

    Accepts a :class:`GradedBasis`, a mapping ``degree -> basis list or int``,
    or a plain sequence of per-degree dimensions.
    """
    dims = [0] * (D + 1)
    if isinstance(family, GradedBasis):
        for d in range(min(D, family.cutoff) + 1):
            dims[d] = family.dim(d)
    elif isinstance(family, dict):
        for d, v in family.items():
            if 0 <= d <= D:
                dims[d] = v if isinstance(v, int) else len(v)
    else:
        for d, v in enumerate(family):
            if d <= D:
                dims[d] = int(v)
    return HilbertSeries(D, tuple(dims))
