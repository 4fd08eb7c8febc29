"""Prime-field and finite-field arithmetic plus dense linear algebra mod p.

Matrices are numpy ``int64`` arrays with entries reduced into ``[0, p)``.
With ``p < 2**16`` every product of two entries fits comfortably in 64 bits,
so row operations never overflow.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

MAX_PRIME = 1 << 16


def is_prime(n: int) -> bool:
    """Deterministic trial division; inputs here are below 2**16 anyway."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(l, a)`` with ``q == l**a`` and ``l`` prime, else ``None``."""
    if q < 2:
        return None
    for l in range(2, q + 1):
        if q % l == 0:
            if not is_prime(l):
                return None
            a = 0
            while q % l == 0:
                q //= l
                a += 1
            return (l, a) if q == 1 else None
    return None


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"{p!r} is not a prime")
    if p >= MAX_PRIME:
        raise ValueError(f"prime {p} exceeds the supported bound 2**16")
    return int(p)


@dataclass(frozen=True)
class PrimeField:
    """The field F_p with canonical representatives in [0, p)."""

    p: int

    def __post_init__(self):
        check_prime(self.p)

    def __call__(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)


# ---------------------------------------------------------------------------
# Polynomials over F_l as coefficient tuples, constant term first.


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(num: Sequence[int], den: Sequence[int], l: int) -> list[int]:
    num = [x % l for x in num]
    den = _poly_trim([x % l for x in den])
    lead_inv = pow(den[-1], -1, l)
    _poly_trim(num)
    while len(num) >= len(den):
        shift = len(num) - len(den)
        c = (num[-1] * lead_inv) % l
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - c * d) % l
        _poly_trim(num)
    return num


def is_irreducible(coeffs: Sequence[int], l: int) -> bool:
    """Brute-force irreducibility test for a monic polynomial over F_l.

    Tries every monic divisor of degree ``1 .. deg // 2``. Only meant for the
    small extension degrees used for finite groups of Lie type here.
    """
    deg = len(coeffs) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for k in range(1, deg // 2 + 1):
        for low in itertools.product(range(l), repeat=k):
            if not _poly_mod(coeffs, list(low) + [1], l):
                return False
    return True


def smallest_irreducible(l: int, a: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``a`` over F_l.

    Tuples are compared constant-term first. Degree one uses the modulus ``x``.
    """
    if a == 1:
        return (0, 1)
    for low in itertools.product(range(l), repeat=a):
        cand = tuple(low) + (1,)
        if is_irreducible(cand, l):
            return cand
    raise AssertionError("an irreducible polynomial of every degree exists")


@dataclass(frozen=True)
class ExtField:
    """F_q with q = l**a, elements encoded as ints ``sum c_i * l**i``.

    The encoding of a prime field element is its residue, so for ``a == 1``
    this behaves exactly like :class:`PrimeField`.
    """

    l: int
    a: int
    modulus: tuple[int, ...]
    _exp: tuple[int, ...] = field(repr=False, compare=False)
    _log: dict = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.l**self.a

    @property
    def char(self) -> int:
        return self.l

    def digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.a):
            out.append(x % self.l)
            x //= self.l
        return out

    def encode(self, digits: Sequence[int]) -> int:
        x = 0
        for c in reversed(list(digits)):
            x = x * self.l + (c % self.l)
        return x

    def add(self, x: int, y: int) -> int:
        if self.a == 1:
            return (x + y) % self.l
        return self.encode([u + v for u, v in zip(self.digits(x), self.digits(y))])

    def neg(self, x: int) -> int:
        if self.a == 1:
            return (-x) % self.l
        return self.encode([-u for u in self.digits(x)])

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self.a == 1:
            return (x * y) % self.l
        return self._exp[(self._log[x] + self._log[y]) % (self.q - 1)]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._exp[(-self._log[x]) % (self.q - 1)]

    def pow(self, x: int, k: int) -> int:
        if x == 0:
            return 0 if k else 1
        return self._exp[(self._log[x] * k) % (self.q - 1)]

    @property
    def primitive(self) -> int:
        """The generator of F_q^* used for the log tables."""
        return self._exp[1 % (self.q - 1)]

    def log(self, x: int) -> int:
        return self._log[x]

    def elements(self) -> range:
        return range(self.q)

    def root_of_unity(self, p: int) -> int:
        """A primitive p-th root of unity (requires p | q - 1)."""
        if (self.q - 1) % p:
            raise ValueError(f"F_{self.q} has no primitive {p}-th root of unity")
        return self._exp[(self.q - 1) // p]


def _raw_mul(x: list[int], y: list[int], modulus: Sequence[int], l: int) -> list[int]:
    prod = [0] * (len(x) + len(y) - 1)
    for i, u in enumerate(x):
        if u:
            for j, v in enumerate(y):
                prod[i + j] = (prod[i + j] + u * v) % l
    rem = _poly_mod(prod, modulus, l)
    return rem + [0] * (len(modulus) - 1 - len(rem))


def make_ext_field(l: int, a: int) -> ExtField:
    """Build F_{l^a} with the deterministic lex-smallest irreducible modulus."""
    check_prime(l)
    if a < 1:
        raise ValueError("extension degree must be at least 1")
    modulus = smallest_irreducible(l, a)
    q = l**a
    exp = [1]
    for g in range(1, q):  # smallest encoding of multiplicative order q - 1
        gd = [(g // l**i) % l for i in range(a)]
        exp, cur = [1], [1] + [0] * (a - 1)
        while True:
            cur = _raw_mul(cur, gd, modulus, l)
            enc = sum(c * l**i for i, c in enumerate(cur))
            if enc == 1:
                break
            exp.append(enc)
        if len(exp) == q - 1:
            break
    log = {x: i for i, x in enumerate(exp)}
    return ExtField(l, a, modulus, tuple(exp), log)


def make_field(q: int) -> ExtField:
    pa = prime_power(q)
    if pa is None:
        raise ValueError(f"{q} is not a prime power")
    return make_ext_field(*pa)


def has_pth_roots(q: int, p: int) -> bool:
    """True iff F_q contains the p-th roots of unity, i.e. p | q - 1."""
    check_prime(p)
    if prime_power(q) is None:
        raise ValueError(f"{q} is not a prime power")
    if q % p == 0:
        raise ValueError(f"characteristic of F_{q} equals p = {p}")
    return q % p == 1


# ---------------------------------------------------------------------------
# Dense linear algebra over F_p


class RREF(NamedTuple):
    rank: int
    pivots: list[int]
    reduced: np.ndarray


def as_matrix(m, p: int, cols: int | None = None) -> np.ndarray:
    a = np.array(m, dtype=np.int64)
    if a.ndim == 1:
        if a.size == 0:
            a = a.reshape(0, cols or 0)
        else:
            a = a.reshape(1, -1)
    return a % p


def rref(m, p: int) -> RREF:
    """Reduced row echelon form over F_p (zero rows dropped from ``reduced``)."""
    a = as_matrix(m, p).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = (a[r] * pow(piv, -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return RREF(r, pivots, a[:r])


def rank(m, p: int) -> int:
    a = as_matrix(m, p)
    if a.size == 0:
        return 0
    return rref(a, p).rank


def kernel(m, p: int) -> list[np.ndarray]:
    """Canonical basis of the right kernel {v : m v = 0}.

    One vector per free column, in increasing column order; the free entry is
    1 and pivot entries are read off the RREF.
    """
    a = as_matrix(m, p)
    cols = a.shape[1]
    red = rref(a, p)
    pivset = set(red.pivots)
    basis = []
    for f in range(cols):
        if f in pivset:
            continue
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(red.pivots):
            v[c] = (-red.reduced[i, f]) % p
        basis.append(v)
    return basis


def kernel_matrix(m, p: int, cols: int) -> np.ndarray:
    """Kernel basis stacked as rows, then put in RREF (canonical form)."""
    if np.asarray(m).size == 0:
        return np.eye(cols, dtype=np.int64)
    vecs = kernel(m, p)
    if not vecs:
        return np.zeros((0, cols), dtype=np.int64)
    return rref(np.array(vecs), p).reduced


def row_space(m, p: int, cols: int) -> np.ndarray:
    """Canonical (RREF) basis of the row space; shape ``(rank, cols)``."""
    a = np.asarray(m, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, cols), dtype=np.int64)
    return rref(a.reshape(-1, cols) % p, p).reduced


def in_row_space(vecs, basis, p: int) -> bool:
    """True iff every row of ``vecs`` lies in the row span of ``basis``."""
    vecs = np.asarray(vecs, dtype=np.int64)
    basis = np.asarray(basis, dtype=np.int64)
    if vecs.size == 0:
        return True
    vecs = vecs.reshape(-1, vecs.shape[-1])
    if basis.size == 0:
        return not np.any(vecs % p)
    return rank(np.vstack([basis, vecs]), p) == rank(basis, p)


def solve_left(basis, vecs, p: int) -> np.ndarray:
    """Coefficients c with ``c @ basis == vecs`` (rows of basis independent).

    Raises ``ValueError`` when some row of ``vecs`` is outside the span.
    """
    basis = np.asarray(basis, dtype=np.int64) % p
    vecs = np.asarray(vecs, dtype=np.int64).reshape(-1, basis.shape[1]) % p
    k = basis.shape[0]
    if k == 0:
        if np.any(vecs):
            raise ValueError("vector not in span")
        return np.zeros((vecs.shape[0], 0), dtype=np.int64)
    # reduce [basis^T | vecs^T] column-wise: solve basis^T c^T = vecs^T
    aug = np.hstack([basis.T, vecs.T])
    red = rref(aug, p)
    if any(c >= k for c in red.pivots):
        raise ValueError("vector not in span")
    if red.rank != k:
        raise ValueError("basis rows are dependent")
    return red.reduced[:, k:].T.copy()


def intersect(a, b, p: int, cols: int) -> np.ndarray:
    """RREF basis of rowspace(a) ∩ rowspace(b)."""
    a = row_space(a, p, cols)
    b = row_space(b, p, cols)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, cols), dtype=np.int64)
    # x a = y b  <=>  (x, -y) in left kernel of [a; b]
    stacked = np.vstack([a, b])
    rel = kernel(stacked.T, p)
    if not rel:
        return np.zeros((0, cols), dtype=np.int64)
    coeffs = np.array(rel)[:, : a.shape[0]]
    return row_space(coeffs @ a % p, p, cols)


def matmul(a, b, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p
