"""Finite permutation and matrix groups by explicit enumeration.

Elements are hashable tuples: a permutation of ``range(d)`` is its image
tuple, an ``n x n`` matrix over F_q is its row-major tuple of encoded field
elements. Tuple comparison gives the fixed total order on elements used for
every canonical choice (generating tuples, scan order of witnesses).

Everything is brute force over the materialized element set, which is fine
for the desk-scale groups this package targets (|G| well below 10^6).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import factorial, prod
from typing import Iterable, Sequence

import numpy as np

from . import fp

DEFAULT_CAP = 10**6


class GroupTooLarge(RuntimeError):
    """Enumeration would exceed the configured element cap."""


class PermRep:
    """Permutations of ``range(degree)``; ``mul(a, b)`` applies b first."""

    kind = "perm"

    def __init__(self, degree: int):
        self.degree = degree

    def __eq__(self, other):
        return isinstance(other, PermRep) and other.degree == self.degree

    def __hash__(self):
        return hash(("perm", self.degree))

    @property
    def identity(self):
        return tuple(range(self.degree))

    def mul(self, a, b):
        return tuple(a[i] for i in b)

    def inv(self, a):
        out = [0] * len(a)
        for i, j in enumerate(a):
            out[j] = i
        return tuple(out)

    def check(self, g):
        g = tuple(int(x) for x in g)
        if sorted(g) != list(range(self.degree)):
            raise ValueError(f"{g} is not a permutation of degree {self.degree}")
        return g


class MatrixRep:
    """Invertible ``n x n`` matrices over an :class:`fp.ExtField`."""

    kind = "matrix"

    def __init__(self, field_: fp.ExtField, n: int):
        self.field = field_
        self.n = n

    def __eq__(self, other):
        return isinstance(other, MatrixRep) and other.n == self.n and other.field.q == self.field.q

    def __hash__(self):
        return hash(("matrix", self.n, self.field.q))

    @property
    def identity(self):
        n = self.n
        return tuple(1 if i == j else 0 for i in range(n) for j in range(n))

    def mul(self, a, b):
        n, F = self.n, self.field
        if F.a == 1:
            q = F.q
            return tuple(
                sum(a[i * n + k] * b[k * n + j] for k in range(n)) % q for i in range(n) for j in range(n)
            )
        out = []
        for i in range(n):
            for j in range(n):
                s = 0
                for k in range(n):
                    s = F.add(s, F.mul(a[i * n + k], b[k * n + j]))
                out.append(s)
        return tuple(out)

    def inv(self, a):
        n, F = self.n, self.field
        m = [list(a[i * n : (i + 1) * n]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                raise ValueError("singular matrix")
            m[c], m[piv] = m[piv], m[c]
            s = F.inv(m[c][c])
            m[c] = [F.mul(s, x) for x in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r], m[c])]
        return tuple(x for row in m for x in row[n:])

    def det(self, a):
        n, F = self.n, self.field
        m = [list(a[i * n : (i + 1) * n]) for i in range(n)]
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = F.neg(d)
            d = F.mul(d, m[c][c])
            s = F.inv(m[c][c])
            for r in range(c + 1, n):
                if m[r][c]:
                    f = F.mul(m[r][c], s)
                    m[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r], m[c])]
        return d

    def check(self, g):
        g = tuple(int(x) for x in g)
        if len(g) != self.n * self.n or any(not 0 <= x < self.field.q for x in g):
            raise ValueError("malformed matrix entries")
        if self.det(g) == 0:
            raise ValueError("matrix is singular")
        return g

    def is_diagonal(self, g) -> bool:
        n = self.n
        return all(g[i * n + j] == 0 for i in range(n) for j in range(n) if i != j)


class FiniteGroup:
    """A finite group given by generators; elements materialize on demand."""

    def __init__(self, rep, generators: Iterable, cap: int = DEFAULT_CAP, elements: Iterable | None = None):
        self.rep = rep
        self.generators = tuple(rep.check(g) for g in generators)
        self.cap = cap
        if elements is not None:
            self.__dict__["elements"] = tuple(sorted(elements))

    # -- basic operations
    @property
    def identity(self):
        return self.rep.identity

    def mul(self, a, b):
        return self.rep.mul(a, b)

    def inv(self, a):
        return self.rep.inv(a)

    def conj(self, g, x):
        """g x g^-1"""
        return self.rep.mul(self.rep.mul(g, x), self.rep.inv(g))

    def power(self, g, k: int):
        out = self.identity
        for _ in range(k):
            out = self.mul(out, g)
        return out

    def element_order(self, g) -> int:
        e, k, x = self.identity, 1, g
        while x != e:
            x = self.mul(x, g)
            k += 1
        return k

    # -- enumeration
    @cached_property
    def elements(self) -> tuple:
        e = self.identity
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for s in self.generators:
                    y = self.rep.mul(x, s)
                    if y not in seen:
                        seen.add(y)
                        if len(seen) > self.cap:
                            raise GroupTooLarge(f"group order exceeds the cap {self.cap}")
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, g):
        return g in self.element_set

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(self.mul(a, b) == self.mul(b, a) for a in gs for b in gs)

    def subgroup(self, gens: Iterable) -> FiniteGroup:
        return FiniteGroup(self.rep, gens, cap=self.cap)

    def subgroup_from_elements(self, elts: Iterable) -> FiniteGroup:
        """Subgroup with a known element set; picks a small generating set."""
        elts = sorted(set(elts))
        gens: list = []
        span = {self.identity}
        for g in elts:
            if g not in span:
                gens.append(g)
                span = set(FiniteGroup(self.rep, gens, cap=self.cap).elements)
        if span != set(elts):
            raise ValueError("element set is not a subgroup")
        return FiniteGroup(self.rep, gens, cap=self.cap, elements=elts)

    def elements_of_order(self, k: int) -> list:
        e = self.identity
        out = []
        for g in self.elements:
            if g == e:
                continue
            if self.power(g, k) == e and (k == 1 or self.element_order(g) == k):
                out.append(g)
        return out

    def __repr__(self):
        return f"FiniteGroup({self.rep.kind}, {len(self.generators)} generators)"


def enumerate_group(G: FiniteGroup) -> frozenset:
    """Exact element set; raises :class:`GroupTooLarge` beyond the cap."""
    return G.element_set


def _gens_and_set(G: FiniteGroup, H) -> tuple[tuple, frozenset]:
    if isinstance(H, ElemAbelianSubgroup):
        return H.gens, H.element_set
    if isinstance(H, FiniteGroup):
        return H.generators, H.element_set
    s = frozenset(H)
    return tuple(sorted(s)), s


# ---------------------------------------------------------------------------
# elementary abelian subgroups


def _ea_coords(G: FiniteGroup, gens: Sequence, p: int) -> dict:
    """Map each element of <gens> to its exponent vector (gens independent)."""
    coords = {G.identity: ()}
    for g in gens:
        nxt = {}
        powers = [G.identity]
        for _ in range(p - 1):
            powers.append(G.mul(powers[-1], g))
        for x, c in coords.items():
            for k, gk in enumerate(powers):
                nxt[G.mul(x, gk)] = c + (k,)
        coords = nxt
    return coords


@dataclass(frozen=True)
class ElemAbelianSubgroup:
    """Elementary abelian p-subgroup with an ordered basis ``gens``."""

    group: FiniteGroup = field(compare=False, repr=False)
    gens: tuple
    p: int

    def __post_init__(self):
        G, p = self.group, self.p
        for g in self.gens:
            if G.element_order(g) != p:
                raise ValueError("basis element does not have order p")
        for a, b in itertools.combinations(self.gens, 2):
            if G.mul(a, b) != G.mul(b, a):
                raise ValueError("basis elements do not commute")
        if len(self.coords) != p ** len(self.gens):
            raise ValueError("basis is not independent")

    @property
    def rank(self) -> int:
        return len(self.gens)

    @cached_property
    def coords(self) -> dict:
        return _ea_coords(self.group, self.gens, self.p)

    @property
    def element_set(self) -> frozenset:
        return frozenset(self.coords)

    def coords_of(self, g) -> tuple:
        return self.coords[g]

    def conjugate(self, g) -> ElemAbelianSubgroup:
        G = self.group
        return ElemAbelianSubgroup(G, tuple(G.conj(g, x) for x in self.gens), self.p)


def canonical_basis(G: FiniteGroup, elements: Iterable, p: int) -> tuple:
    """Lexicographically least generating tuple of an elementary abelian set.

    Greedy choice is optimal: at every step any element outside the current
    span extends to a basis, so taking the smallest one is forced.
    """
    elts = sorted(set(elements))
    gens: list = []
    span = {G.identity}
    for g in elts:
        if g not in span:
            gens.append(g)
            span = set(_ea_coords(G, gens, p))
    return tuple(gens)


def _span_with(G: FiniteGroup, base: frozenset, x, p: int) -> frozenset:
    out = set()
    xk = G.identity
    for _ in range(p):
        for e in base:
            out.add(G.mul(e, xk))
        xk = G.mul(xk, x)
    return frozenset(out)


def elementary_abelian_subgroups(G: FiniteGroup, p: int) -> list[frozenset]:
    """Every elementary abelian p-subgroup (as element sets), trivial included."""
    order_p = G.elements_of_order(p)
    trivial = frozenset([G.identity])
    found = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for E in frontier:
            for x in order_p:
                if x in E or any(G.mul(x, e) != G.mul(e, x) for e in E):
                    continue
                F = _span_with(G, E, x, p)
                if F not in found:
                    found.add(F)
                    nxt.append(F)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def elementary_abelian_reps(G: FiniteGroup, p: int) -> list[ElemAbelianSubgroup]:
    """One representative per conjugacy class of elementary abelian p-subgroups.

    Breadth-first: each representative of rank r is extended by every
    commuting order-p element; new subgroups are deduplicated against the
    full conjugation orbits of the representatives found so far. The trivial
    subgroup always comes first. Within a class the representative is the
    conjugate with the lexicographically least generating tuple.
    """
    fp.check_prime(p)
    elements = G.elements
    order_p = G.elements_of_order(p)
    trivial = ElemAbelianSubgroup(G, (), p)
    reps = [trivial]
    seen: set[frozenset] = {trivial.element_set}
    frontier = [trivial.element_set]
    while frontier:
        nxt = []
        for E in frontier:
            for x in order_p:
                if x in E or any(G.mul(x, e) != G.mul(e, x) for e in E):
                    continue
                F = _span_with(G, E, x, p)
                if F in seen:
                    continue
                orbit = {frozenset(G.conj(g, y) for y in F) for g in elements}
                seen |= orbit
                best = min(canonical_basis(G, conj, p) for conj in orbit)
                rep = ElemAbelianSubgroup(G, best, p)
                reps.append(rep)
                nxt.append(rep.element_set)
        frontier = nxt
    return sorted(reps, key=lambda E: (E.rank, E.gens))


# ---------------------------------------------------------------------------
# normalizers, centralizers, conjugacy


def centralizer(G: FiniteGroup, H) -> FiniteGroup:
    gens, _ = _gens_and_set(G, H)
    elts = [g for g in G.elements if all(G.mul(g, h) == G.mul(h, g) for h in gens)]
    return G.subgroup_from_elements(elts)


def normalizer(G: FiniteGroup, H) -> FiniteGroup:
    gens, hset = _gens_and_set(G, H)
    elts = [g for g in G.elements if all(G.conj(g, h) in hset for h in gens)]
    return G.subgroup_from_elements(elts)


def conjugacy_witness(G: FiniteGroup, A, B):
    """Some g with g A g^-1 = B, or ``None``.

    Scans G in element order; once g fails, the whole coset g*C_G(A) is
    skipped since it yields the same conjugate.
    """
    agens, aset = _gens_and_set(G, A)
    _, bset = _gens_and_set(G, B)
    if len(aset) != len(bset):
        return None
    cent = [c for c in G.elements if all(G.mul(c, a) == G.mul(a, c) for a in agens)]
    skip: set = set()
    for g in G.elements:
        if g in skip:
            continue
        if all(G.conj(g, a) in bset for a in agens):
            return g
        skip.update(G.mul(g, c) for c in cent)
    return None


def sylow(G: FiniteGroup, p: int) -> FiniteGroup:
    """A Sylow p-subgroup, grown one factor of p at a time inside normalizers."""
    fp.check_prime(p)
    n = G.order
    target = 1
    while n % p == 0:
        n //= p
        target *= p
    P = {G.identity}
    while len(P) < target:
        gens = sorted(P)
        grown = False
        for x in G.elements:
            if x in P:
                continue
            if not all(G.conj(x, h) in P for h in gens):
                continue
            if G.power(x, p) not in P:
                continue
            new = set()
            xk = G.identity
            for _ in range(p):
                new.update(G.mul(xk, h) for h in P)
                xk = G.mul(xk, x)
            P = new
            grown = True
            break
        if not grown:  # pragma: no cover - Sylow theory forbids this
            raise AssertionError("could not extend p-subgroup")
    return G.subgroup_from_elements(P)


@dataclass
class DoubleCosetDecomp:
    reps: list
    intersections: list[frozenset]
    sizes: list[int]

    def __len__(self):
        return len(self.reps)


def double_cosets(G: FiniteGroup, K, H) -> DoubleCosetDecomp:
    """K\\G/H with representatives in element order and L_i = K ∩ s_i H s_i^-1."""
    _, kset = _gens_and_set(G, K)
    _, hset = _gens_and_set(G, H)
    covered: set = set()
    reps, inters, sizes = [], [], []
    for s in G.elements:
        if s in covered:
            continue
        coset = {G.mul(G.mul(k, s), h) for k in kset for h in hset}
        covered |= coset
        reps.append(s)
        conj_h = {G.conj(s, h) for h in hset}
        inters.append(frozenset(kset & conj_h))
        sizes.append(len(coset))
    return DoubleCosetDecomp(reps, inters, sizes)


# ---------------------------------------------------------------------------
# wreath products


def block_copy(g: Sequence[int], block: int, p: int) -> tuple:
    """Embed a permutation of range(d) as acting on block ``block`` of p*d points."""
    d = len(g)
    out = list(range(p * d))
    for i, j in enumerate(g):
        out[block * d + i] = block * d + j
    return tuple(out)


def block_permutation(pi: Sequence[int], d: int) -> tuple:
    """Permute the p blocks of size d by ``pi`` (block b goes to pi[b])."""
    out = [0] * (len(pi) * d)
    for b, c in enumerate(pi):
        for i in range(d):
            out[b * d + i] = c * d + i
    return tuple(out)


def block_rotation(p: int, d: int) -> tuple:
    return block_permutation([(b + 1) % p for b in range(p)], d)


def cyclic_group(p: int) -> FiniteGroup:
    return FiniteGroup(PermRep(p), [tuple((i + 1) % p for i in range(p))] if p > 1 else [])


def symmetric_group(n: int) -> FiniteGroup:
    gens = []
    if n > 1:
        gens.append(tuple([1, 0] + list(range(2, n))))
        gens.append(tuple(list(range(1, n)) + [0]))
    return FiniteGroup(PermRep(n), gens)


def wreath(base: str, G: FiniteGroup, p: int) -> FiniteGroup:
    """``base ≀ G`` acting on p blocks of G's points; base is 'Cp' or 'Sp'."""
    fp.check_prime(p)
    if not isinstance(G.rep, PermRep):
        raise ValueError("wreath products need a permutation group")
    d = G.rep.degree
    gens = []
    for b in range(p):
        gens.extend(block_copy(g, b, p) for g in G.generators)
    if p > 1:
        gens.append(block_rotation(p, d))
    if base == "Sp" and p > 2:
        gens.append(block_permutation([1, 0] + list(range(2, p)), d))
    elif base not in ("Cp", "Sp"):
        raise ValueError(f"unknown wreath base {base!r}")
    return FiniteGroup(PermRep(p * d), gens, cap=G.cap)


def wreath_index(G: FiniteGroup, p: int) -> int:
    """[S_p ≀ G : Z/p ≀ G], which equals (p-1)! and is prime to p."""
    return wreath("Sp", G, p).order // wreath("Cp", G, p).order


# ---------------------------------------------------------------------------
# classical groups over finite fields


def _order_formula(family: str, n: int, q: int) -> int:
    gl = prod(q**n - q**i for i in range(n))
    if family == "GL":
        return gl
    if family == "SL":
        return gl // (q - 1)
    m = n // 2
    return q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1))


def _mat(n: int, entries: dict) -> tuple:
    return tuple(entries.get((i, j), 0) for i in range(n) for j in range(n))


def symplectic_form(F: fp.ExtField, n: int) -> tuple:
    """Antidiagonal form: J[i][n-1-i] = 1 for i < n/2 and -1 otherwise."""
    m = n // 2
    return _mat(n, {(i, n - 1 - i): (1 if i < m else F.neg(1)) for i in range(n)})


def _transpose(g, n):
    return tuple(g[j * n + i] for i in range(n) for j in range(n))


@dataclass
class ClassicalGroupData:
    family: str
    n: int
    q: int
    p: int
    field: fp.ExtField
    group: FiniteGroup
    torus: frozenset
    torus_p_basis: tuple
    weyl_matrices: list[np.ndarray]
    weyl_elements: list

    @property
    def rank(self) -> int:
        return len(self.torus_p_basis)

    @cached_property
    def torus_p(self) -> ElemAbelianSubgroup:
        return ElemAbelianSubgroup(self.group, self.torus_p_basis, self.p)

    def weyl_pullbacks(self) -> list[np.ndarray]:
        """The W-action on CH*BT(k) = F_p[v_1..v_r] (transposed matrices)."""
        return [w.T.copy() for w in self.weyl_matrices]


def classical_group(family: str, n: int, q: int, p: int, cap: int = DEFAULT_CAP) -> ClassicalGroupData:
    """GL_n, SL_n or Sp_n (n = matrix size, even) over F_q with torus and Weyl data."""
    fp.check_prime(p)
    if family not in ("GL", "SL", "Sp"):
        raise ValueError(f"unsupported family {family!r}")
    if family == "Sp" and n % 2:
        raise ValueError("Sp needs an even matrix size")
    fp.has_pth_roots(q, p)  # validates q and rejects p | q
    F = fp.make_field(q)
    rep = MatrixRep(F, n)
    if _order_formula(family, n, q) > cap:
        raise GroupTooLarge(f"{family}_{n}(F_{q}) exceeds the cap {cap}")
    zeta = F.primitive
    basis_scalars = [F.pow(zeta, k) for k in range(F.a)] if q > 2 else [1]
    ident = {(i, i): 1 for i in range(n)}

    gens = []
    if family in ("GL", "SL"):
        for i in range(n):
            for j in range(n):
                if i != j:
                    for a in basis_scalars:
                        gens.append(_mat(n, {**ident, (i, j): a}))
        if family == "GL" and q > 2:
            gens.append(_mat(n, {**ident, (0, 0): zeta}))
    else:
        J = symplectic_form(F, n)

        def transvection(u, a):
            # x -> x + a * w(x, u) * u,  w(x, y) = x^T J y
            Ju = [sum(F.mul(J[i * n + k], u[k]) for k in range(n)) % q if F.a == 1 else None for i in range(n)]
            if F.a != 1:
                Ju = []
                for i in range(n):
                    s = 0
                    for k in range(n):
                        s = F.add(s, F.mul(J[i * n + k], u[k]))
                    Ju.append(s)
            entries = dict(ident)
            for i in range(n):
                for j in range(n):
                    extra = F.mul(a, F.mul(u[i], Ju[j]))
                    entries[(i, j)] = F.add(entries.get((i, j), 0), extra)
            return _mat(n, entries)

        units = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        pairs = [tuple(1 if k in (i, j) else 0 for k in range(n)) for i, j in itertools.combinations(range(n), 2)]
        gens = [transvection(u, a) for u in units + pairs for a in basis_scalars]

    G = FiniteGroup(rep, gens, cap=cap)
    if G.order != _order_formula(family, n, q):
        raise AssertionError(f"generated {G.order} elements, expected {_order_formula(family, n, q)}")
    if family == "Sp":
        J = symplectic_form(F, n)
        for g in G.generators:
            if rep.mul(rep.mul(_transpose(g, n), J), g) != J:
                raise AssertionError("generator does not preserve the symplectic form")

    # split torus T(k)
    units_k = [x for x in range(1, q)]
    torus = set()
    if family == "GL":
        for diag in itertools.product(units_k, repeat=n):
            torus.add(_mat(n, {(i, i): diag[i] for i in range(n)}))
    elif family == "SL":
        for diag in itertools.product(units_k, repeat=n - 1):
            last = F.inv(prod_field(F, diag))
            full = list(diag) + [last]
            torus.add(_mat(n, {(i, i): full[i] for i in range(n)}))
    else:
        m = n // 2
        for diag in itertools.product(units_k, repeat=m):
            full = list(diag) + [F.inv(x) for x in reversed(diag)]
            torus.add(_mat(n, {(i, i): full[i] for i in range(n)}))

    # T(k)[p] basis
    basis: list = []
    if (q - 1) % p == 0:
        w = F.root_of_unity(p)
        winv = F.inv(w)
        if family == "GL":
            for i in range(n):
                basis.append(_mat(n, {**ident, (i, i): w}))
        elif family == "SL":
            for i in range(n - 1):
                basis.append(_mat(n, {**ident, (i, i): w, (n - 1, n - 1): winv}))
        else:
            for i in range(n // 2):
                basis.append(_mat(n, {**ident, (i, i): w, (n - 1 - i, n - 1 - i): winv}))
    basis_t = tuple(basis)
    tp = _ea_coords(G, basis_t, p)

    # Weyl group through explicit normalizer elements
    minus_one = F.neg(1)
    candidates = []
    if family in ("GL", "SL"):
        for sigma in itertools.permutations(range(n)):
            entries = {(sigma[i], i): 1 for i in range(n)}
            if family == "SL" and _perm_sign(sigma) < 0:
                entries[(sigma[0], 0)] = minus_one
            candidates.append(_mat(n, entries))
    else:
        m = n // 2
        for sigma in itertools.permutations(range(m)):
            for flips in itertools.product((0, 1), repeat=m):
                entries = {}
                for i in range(m):
                    a, b = i, n - 1 - i
                    sa, sb = sigma[i], n - 1 - sigma[i]
                    if flips[i]:
                        entries[(sb, a)] = 1
                        entries[(sa, b)] = minus_one
                    else:
                        entries[(sa, a)] = 1
                        entries[(sb, b)] = 1
                candidates.append(_mat(n, entries))
    weyl_mats: list[np.ndarray] = []
    weyl_elts: list = []
    seen = set()
    for g in candidates:
        if g not in G.element_set:
            raise AssertionError("Weyl representative is not in the group")
        if any(not rep.is_diagonal(G.conj(g, t)) for t in G.generators if rep.is_diagonal(t)):
            raise AssertionError("Weyl representative does not normalize the torus")
        cols = []
        for t in basis_t:
            c = G.conj(g, t)
            if not rep.is_diagonal(c) or c not in tp:
                raise AssertionError("Weyl representative does not normalize T(k)[p]")
            cols.append(tp[c])
        mat = np.array(cols, dtype=np.int64).T.reshape(len(basis_t), len(basis_t)) % p
        key = tuple(map(tuple, mat))
        if key not in seen:
            seen.add(key)
            weyl_mats.append(mat)
            weyl_elts.append(g)
    return ClassicalGroupData(family, n, q, p, F, G, frozenset(torus), basis_t, weyl_mats, weyl_elts)


def prod_field(F: fp.ExtField, xs) -> int:
    out = 1
    for x in xs:
        out = F.mul(out, x)
    return out


def _perm_sign(sigma) -> int:
    sign, seen = 1, set()
    for i in range(len(sigma)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = sigma[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def toral_witness(data: ClassicalGroupData, E: ElemAbelianSubgroup):
    """Some g with g E g^-1 inside the split torus, or ``None`` after a full scan."""
    G, rep = data.group, data.group.rep
    if all(x in data.torus for x in E.gens):
        return G.identity
    cent = [c for c in G.elements if all(G.mul(c, a) == G.mul(a, c) for a in E.gens)]
    skip: set = set()
    for g in G.elements:
        if g in skip:
            continue
        if all(G.conj(g, x) in data.torus for x in E.gens):
            return g
        skip.update(G.mul(g, c) for c in cent)
    return None


def quaternion_group() -> FiniteGroup:
    """Q8 in its regular representation on the points 0..7.

    Point 2k + s stands for (-1)^s * u_k with u = (1, i, j, k).
    """
    table = {(0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
             (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
             (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
             (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1)}

    def left(a):
        out = []
        for pt in range(8):
            k, s = divmod(pt, 2)
            prod_k, sign = table[(a, k)]
            out.append(2 * prod_k + (s + sign) % 2)
        return tuple(out)

    return FiniteGroup(PermRep(8), [left(1), left(2)])
