"""The verification suite: structural checks A1-A10 at desk scale.

Each criterion returns a :class:`CriterionResult`; a criterion passes only if
every check succeeds and the wall time stays under its bound. Limit rings
built for A3-A6 are cached so that A8 re-examines exactly those rings.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import groups, quillen, steenrod, wreath
from .graded import GradedBasis, PolyAlgebra, PolyElement, constants_basis, full_basis, invariants, monomial_ideal_basis


@dataclass
class CriterionResult:
    name: str
    passed: bool
    seconds: float
    bound: float
    detail: str = ""
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{self.name} {status} {self.seconds:.2f}s (bound {self.bound:g}s)"
        if self.detail:
            text += f" {self.detail}"
        return text

    def to_dict(self) -> dict:
        return {
            "criterion": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "bound": self.bound,
            "detail": self.detail,
            "failures": self.failures[:20],
        }


_LIMITS: dict[str, quillen.LimitRing] = {}


def _remember(key: str, L: quillen.LimitRing) -> quillen.LimitRing:
    _LIMITS[key] = L
    return L


def computed_limits() -> dict[str, quillen.LimitRing]:
    return dict(_LIMITS)


def _limit(key: str, G: groups.FiniteGroup, p: int, D: int) -> quillen.LimitRing:
    if key in _LIMITS and _LIMITS[key].cutoff >= D:
        return _LIMITS[key]
    return _remember(key, quillen.limit_ring(quillen.build_category(G, p), D))


# ---------------------------------------------------------------------------
# A1


def random_homogeneous(rng: random.Random, A: PolyAlgebra, d: int, terms: int = 4) -> PolyElement:
    mons = A.monomials(d)
    out = {}
    for _ in range(rng.randint(1, terms)):
        m = mons[rng.randrange(len(mons))]
        out[m] = (out.get(m, 0) + rng.randrange(1, A.p)) % A.p
    return PolyElement(A, out)


def _cartan_ok(x: PolyElement, y: PolyElement) -> bool:
    tx, ty, txy = steenrod.total_steenrod(x), steenrod.total_steenrod(y), steenrod.total_steenrod(x * y)
    expect: dict[int, PolyElement] = {}
    for a, xa in tx.items():
        for b, yb in ty.items():
            expect[a + b] = expect.get(a + b, x.alg.zero()) + xa * yb
    keys = set(expect) | set(txy)
    zero = x.alg.zero()
    return all(expect.get(k, zero) == txy.get(k, zero) for k in keys)


def check_steenrod_axioms(cases: int = 1000, seed: int = 0) -> list[str]:
    rng = random.Random(seed)
    failures = []
    primes = (2, 3, 5)
    for c in range(cases):
        p = primes[c % 3]
        A = PolyAlgebra(p, rng.randint(1, 4))
        # Cartan
        k1 = rng.randint(0, 14)
        k2 = rng.randint(0, 15 - k1)
        x, y = random_homogeneous(rng, A, 2 * k1), random_homogeneous(rng, A, 2 * k2)
        if not _cartan_ok(x, y):
            failures.append(f"cartan p={p} x={x} y={y}")
        # instability and P_0
        k = rng.randint(0, 15)
        z = random_homogeneous(rng, A, 2 * k)
        for i in range(k + 1, k + 3):
            if steenrod.apply_P(i, z):
                failures.append(f"instability p={p} i={i} x={z}")
        if steenrod.p0(z) != z**p:
            failures.append(f"frobenius p={p} x={z}")
        # additivity
        w = random_homogeneous(rng, A, 2 * k)
        for i in range(k + 1):
            if steenrod.apply_P(i, z + w) != steenrod.apply_P(i, z) + steenrod.apply_P(i, w):
                failures.append(f"additivity p={p} i={i}")
                break
    return failures


# ---------------------------------------------------------------------------
# A2


def sample_modules(p: int, D: int) -> dict[str, GradedBasis]:
    A0, A1, A2 = PolyAlgebra(p, 0), PolyAlgebra(p, 1), PolyAlgebra(p, 2)
    return {
        "F_p": constants_basis(A0, D),
        "F_p[v]": full_basis(A1, D),
        "F_p[v1,v2]": full_basis(A2, D),
        "(v^2)": monomial_ideal_basis(A1, [(2,)], D),
    }


def submodule_pairs(p: int, D: int) -> list[tuple[str, GradedBasis, GradedBasis]]:
    A0, A1, A2 = PolyAlgebra(p, 0), PolyAlgebra(p, 1), PolyAlgebra(p, 2)
    zero = GradedBasis(A0, D, {})
    return [
        ("F_p > 0", constants_basis(A0, D), zero),
        ("F_p[v] > (v^2)", full_basis(A1, D), monomial_ideal_basis(A1, [(2,)], D)),
        ("F_p[v1,v2] > (v1 v2)", full_basis(A2, D), monomial_ideal_basis(A2, [(1, 1)], D)),
        ("(v^2) > (v^3)", monomial_ideal_basis(A1, [(2,)], D), monomial_ideal_basis(A1, [(3,)], D)),
    ]


def check_r1ev_properties(D_cap: int | None = None) -> list[str]:
    failures = []
    for p in (2, 3):
        D = 4 * p * p if D_cap is None else min(4 * p * p, D_cap)
        for name, M in sample_modules(p, D).items():
            try:
                R = wreath.r1ev(M, D)
            except quillen.TheoremViolation as exc:
                failures.append(f"st-freeness p={p} {name}: {exc}")
                continue
            if R.dims() != wreath.r1ev_dimension_formula(M, D):
                failures.append(f"r1ev-dimension p={p} {name}: {R.dims()}")
            if not wreath.frobenius_property_holds(M, D):
                failures.append(f"frobenius p={p} {name}")
        for name, M, Ms in submodule_pairs(p, D):
            if not wreath.intersection_property_holds(M, Ms, D):
                failures.append(f"intersection p={p} {name}")
    return failures


# ---------------------------------------------------------------------------
# A3, A4


def cyclic_wreath_model(p: int, D: int) -> quillen.SylowModel:
    C = groups.cyclic_group(p)
    return wreath.wreath_sylow_model(C, (C.generators[0],), p, D)


def check_wreath_stage(D: int) -> list[str]:
    failures = []
    for p in (2, 3):
        S = cyclic_wreath_model(p, D)
        try:
            S.check_injective()
        except quillen.TheoremViolation as exc:
            failures.append(f"p={p}: {exc}")
        L = _limit(f"Z/{p} wr Z/{p}", S.group, p, D)
        if not quillen.model_matches_limit(S, L, D):
            failures.append(f"p={p}: model {S.dims[:D + 1:2]} vs limit {L.dims()[::2]}")
        M = full_basis(PolyAlgebra(p, 1), D)
        cp = wreath.wreath_model(M, p, "Cp", D)
        sp = wreath.wreath_model(M, p, "Sp", D)
        if sp.dims() != wreath.w_invariant_dims(cp):
            failures.append(f"p={p}: Sp dims {sp.dims()} vs W-invariants {wreath.w_invariant_dims(cp)}")
        tau = wreath.tau_subspace(M, p, D)
        R = wreath.r1ev(M, D)
        book = [a + b for a, b in zip(tau.w_dims(), R.dims())]
        if sp.dims() != book:
            failures.append(f"p={p}: Sp dims {sp.dims()} vs tau^W + R {book}")
        if not wreath.restriction_is_injective(sp, D):
            failures.append(f"p={p}: Sp restriction not injective")
    return failures


def check_symmetric_groups(D: int) -> list[str]:
    failures = []
    S4 = groups.symmetric_group(4)
    st = quillen.stable_elements(S4, 2, cyclic_wreath_model(2, D), D)
    L = _limit("S4 p=2", S4, 2, D)
    if st.dims() != L.dims():
        failures.append(f"S4: stable {st.dims()} vs limit {L.dims()}")
    if not st.multiplicatively_closed():
        failures.append("S4: stable subspace not closed under products")
    for n in (3, 5):
        G = groups.symmetric_group(n)
        L = _limit(f"S{n} p=3", G, 3, D)
        sw = quillen.swan_invariants(G, 3, D)
        P = groups.sylow(G, 3)
        E = quillen.omega1(P, 3)
        model = quillen.SylowModel.polynomial(groups.ElemAbelianSubgroup(G, E.gens, 3), D)
        st = quillen.stable_elements(G, 3, model, D)
        if not (sw.dims() == L.dims() == st.dims()):
            failures.append(f"S{n}: swan {sw.dims()} stable {st.dims()} limit {L.dims()}")
    return failures


# ---------------------------------------------------------------------------
# A5, A6


TORAL_CASES = [("GL", 2, 7, 3), ("SL", 2, 7, 3), ("GL", 2, 5, 2), ("Sp", 2, 7, 3)]


def check_toral(per_group_bound: float = 120) -> list[str]:
    failures = []
    for fam, n, q, p in TORAL_CASES:
        t0 = time.perf_counter()
        data = groups.classical_group(fam, n, q, p)
        for E in groups.elementary_abelian_reps(data.group, p):
            g = groups.toral_witness(data, E)
            if g is None:
                failures.append(f"{fam}{n}(F{q}) p={p}: class {E.gens} is not toral")
            elif not all(data.group.conj(g, x) in data.torus for x in E.gens):
                failures.append(f"{fam}{n}(F{q}) p={p}: bad witness")
        if time.perf_counter() - t0 > per_group_bound:
            failures.append(f"{fam}{n}(F{q}) p={p}: over {per_group_bound}s")
    return failures


def check_chevalley(D: int) -> list[str]:
    failures = []
    for fam in ("GL", "SL"):
        data = groups.classical_group(fam, 2, 7, 3)
        L = _limit(f"{fam}2(F7) p=3", data.group, 3, D)
        weyl = invariants(data.rank, data.weyl_pullbacks(), D, 3)
        if fam == "GL":
            swap = invariants(2, [np.eye(2, dtype=np.int64), np.array([[0, 1], [1, 0]])], D, 3)
            expect = [(d // 4 + 1) if d % 2 == 0 else 0 for d in range(D + 1)]
        else:
            swap = invariants(1, [np.eye(1, dtype=np.int64), np.array([[2]])], D, 3)
            expect = [1 if d % 4 == 0 else 0 for d in range(D + 1)]
        if not (L.dims() == weyl.dims() == swap.dims() == expect):
            failures.append(f"{fam}2(F7): limit {L.dims()} weyl {weyl.dims()} expected {expect}")
    return failures


# ---------------------------------------------------------------------------
# A7


def check_tau_exactness(D: int) -> list[str]:
    failures = []
    for p in (2, 3):
        for n in (1, 2):
            M = full_basis(PolyAlgebra(p, n), D)
            tau = wreath.tau_subspace(M, p, D)
            phi = steenrod.phi(M)
            for d in range(D + 1):
                if tau.invariant_dims[d] != tau.dim(d) + phi.dim(d):
                    failures.append(f"p={p} n={n} d={d}: {tau.invariant_dims[d]} != {tau.dim(d)} + {phi.dim(d)}")
    return failures


# ---------------------------------------------------------------------------
# A8


def check_limit_structure(D: int) -> list[str]:
    """Reducedness and Steenrod closure of every cached limit ring."""
    if not _LIMITS:
        check_wreath_stage(D)
        check_symmetric_groups(D)
        check_chevalley(D)
    failures = []
    for name, L in sorted(_LIMITS.items()):
        red = quillen.reducedness_check(L)
        if not red.reduced:
            failures.append(f"{name}: P_0 kills {red.witness} in degree {red.witness_degree}")
        clo = quillen.steenrod_closure_check(L)
        if not clo.closed:
            failures.append(f"{name}: Steenrod closure fails at {clo.failures[:3]}")
    return failures


# ---------------------------------------------------------------------------
# A9, A10


def check_quaternion(D: int = 12) -> list[str]:
    failures = []
    C = quillen.build_category(groups.quaternion_group(), 2)
    nontrivial = C.nontrivial_objects()
    if len(nontrivial) != 1 or C.ranks[nontrivial[0]] != 1:
        failures.append(f"objects {C.ranks}")
    else:
        autos = C.automorphisms(nontrivial[0])
        if len(autos) != 1 or autos[0].tolist() != [[1]]:
            failures.append(f"automorphisms {autos}")
    L = quillen.limit_ring(C, D)
    expect = [1 if d % 2 == 0 else 0 for d in range(D + 1)]
    if L.dims() != expect:
        failures.append(f"dims {L.dims()}")
    return failures


def check_torsion_free_image() -> list[str]:
    failures = []
    for n in range(1, 7):
        degs = [2 * k for k in range(1, n + 1)]
        for r in (1, 2, 3):
            expect = [2 * k for k in range(1, n + 1) if k % r == 0]
            got = wreath.torsion_free_image(degs, r)
            if got != expect:
                failures.append(f"n={n} r={r}: {got} != {expect}")
    return failures


# ---------------------------------------------------------------------------
# suite


def _criteria(D: int) -> list[tuple[str, float, Callable[[], list[str]]]]:
    return [
        ("A1", 10, lambda: check_steenrod_axioms()),
        ("A2", 30, lambda: check_r1ev_properties(None if D >= 20 else D)),
        ("A3", 60, lambda: check_wreath_stage(D)),
        ("A4", 120, lambda: check_symmetric_groups(D)),
        ("A5", 480, check_toral),
        ("A6", 120, lambda: check_chevalley(D)),
        ("A7", 10, lambda: check_tau_exactness(D)),
        ("A8", 120, lambda: check_limit_structure(D)),
        ("A9", 1, check_quaternion),
        ("A10", 1, check_torsion_free_image),
    ]


CRITERIA = ("A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10")


def run_criterion(name: str, D: int = 20) -> CriterionResult:
    table = {n: (b, f) for n, b, f in _criteria(D)}
    bound, fn = table[name]
    t0 = time.perf_counter()
    failures = fn()
    dt = time.perf_counter() - t0
    ok = not failures and dt < bound
    detail = "" if dt < bound else "over time bound"
    return CriterionResult(name, ok, dt, bound, detail, failures)


def run_suite(D: int = 20, names=CRITERIA) -> list[CriterionResult]:
    _LIMITS.clear()
    return [run_criterion(n, D) for n in names]
