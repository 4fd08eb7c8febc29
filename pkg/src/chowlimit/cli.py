"""Command-line interface.

Group specifications are JSON documents::

    {"type": "perm", "degree": d, "generators": [[images, 1-based]]}
    {"type": "matrix", "q": q, "n": n, "generators": [[row-major entries]]}
    {"type": "classical", "family": "GL" | "SL" | "Sp", "n": n, "q": q}
    {"type": "wreath", "base": "Cp" | "Sp", "p": p, "inner": <perm spec>}

Matrix entries over F_{l^a} are integers whose base-l digits are the
coefficients of the element in the polynomial basis of the field.

Exit codes: 0 success, 2 bad input, 3 enumeration cap exceeded,
4 a computed outcome contradicts a structural theorem.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import fp, groups, quillen, verify, wreath
from .graded import PolyAlgebra, full_basis, invariants

EXIT_OK, EXIT_SPEC, EXIT_CAP, EXIT_THEOREM = 0, 2, 3, 4


class SpecError(ValueError):
    pass


# ---------------------------------------------------------------------------
# specs


def _require(doc: dict, key: str):
    if key not in doc:
        raise SpecError(f"group spec is missing {key!r}")
    return doc[key]


def parse_group(doc, cap: int = groups.DEFAULT_CAP, p: int | None = None):
    """Build a FiniteGroup from a spec; classical specs also return their data."""
    if not isinstance(doc, dict):
        raise SpecError("group spec must be a JSON object")
    kind = _require(doc, "type")
    if kind == "perm":
        d = int(_require(doc, "degree"))
        gens = []
        for g in _require(doc, "generators"):
            if len(g) != d:
                raise SpecError(f"generator {g} does not have length {d}")
            gens.append(tuple(int(x) - 1 for x in g))
        try:
            return groups.FiniteGroup(groups.PermRep(d), gens, cap=cap), None
        except ValueError as exc:
            raise SpecError(str(exc)) from exc
    if kind == "matrix":
        q, n = int(_require(doc, "q")), int(_require(doc, "n"))
        if fp.prime_power(q) is None:
            raise SpecError(f"{q} is not a prime power")
        rep = groups.MatrixRep(fp.make_field(q), n)
        try:
            return groups.FiniteGroup(rep, [tuple(g) for g in _require(doc, "generators")], cap=cap), None
        except ValueError as exc:
            raise SpecError(str(exc)) from exc
    if kind == "classical":
        fam, n, q = _require(doc, "family"), int(_require(doc, "n")), int(_require(doc, "q"))
        if p is None:
            raise SpecError("classical groups need --prime")
        try:
            data = groups.classical_group(fam, n, q, p, cap=cap)
        except groups.GroupTooLarge:
            raise
        except ValueError as exc:
            raise SpecError(str(exc)) from exc
        return data.group, data
    if kind == "wreath":
        base = _require(doc, "base")
        wp = int(_require(doc, "p"))
        inner, _ = parse_group(_require(doc, "inner"), cap, p)
        try:
            return groups.wreath(base, inner, wp), None
        except ValueError as exc:
            raise SpecError(str(exc)) from exc
    raise SpecError(f"unknown group type {kind!r}")


def load_spec(path: str | None):
    try:
        if path in (None, "-"):
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read group spec: {exc}") from exc


# ---------------------------------------------------------------------------
# reports


def _report(args, payload: dict, warnings: list[str], t0: float) -> dict:
    return {
        "command": args.command,
        "prime": getattr(args, "prime", None),
        "cutoff": getattr(args, "max_degree", None),
        "seconds": round(time.perf_counter() - t0, 3),
        "payload": payload,
        "warnings": warnings,
    }


def _emit(args, report: dict) -> None:
    if args.json:
        print(json.dumps(report, sort_keys=True))
        return
    print(f"{report['command']}: prime {report['prime']}, cutoff {report['cutoff']}, {report['seconds']}s")
    for key, val in report["payload"].items():
        print(f"  {key}: {json.dumps(val)}")
    for w in report["warnings"]:
        print(f"warning: {w}", file=sys.stderr)


def _check_prime(args) -> int:
    try:
        return fp.check_prime(args.prime)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc


# ---------------------------------------------------------------------------
# commands


def cmd_limit(args) -> int:
    t0 = time.perf_counter()
    p = _check_prime(args)
    G, _ = parse_group(load_spec(args.spec), args.cap, p)
    D = args.max_degree
    L = quillen.limit_ring(quillen.build_category(G, p), D)
    clo = quillen.steenrod_closure_check(L)
    red = quillen.reducedness_check(L)
    payload = L.to_dict()
    payload["steenrod_closed"] = clo.closed
    payload["reduced"] = red.reduced
    payload["reduced_degrees_checked"] = red.checked
    warnings = []
    if red.unchecked:
        warnings.append(f"degrees above D/p unchecked for reducedness: {red.unchecked}")
    if clo.unchecked:
        warnings.append(f"{len(clo.unchecked)} Steenrod operations land above D and were not checked")
    _emit(args, _report(args, payload, warnings, t0))
    return EXIT_OK if clo.closed and red.reduced else EXIT_THEOREM


def cmd_toral(args) -> int:
    t0 = time.perf_counter()
    p = _check_prime(args)
    doc = load_spec(args.spec)
    if not isinstance(doc, dict) or doc.get("type") != "classical":
        raise SpecError("toral needs a classical group spec")
    _, data = parse_group(doc, args.cap, p)
    classes = []
    ok = True
    for E in groups.elementary_abelian_reps(data.group, p):
        g = groups.toral_witness(data, E)
        ok &= g is not None
        classes.append({"rank": E.rank, "generators": [list(x) for x in E.gens], "witness": list(g) if g is not None else None})
    payload = {"group_order": data.group.order, "torus_rank": data.rank, "all_toral": ok, "classes": classes}
    _emit(args, _report(args, payload, [], t0))
    return EXIT_OK if ok else EXIT_THEOREM


def _is_elementary_abelian(G: groups.FiniteGroup, p: int) -> bool:
    return G.is_abelian() and all(G.power(g, p) == G.identity for g in G.generators)


def cmd_stable(args) -> int:
    t0 = time.perf_counter()
    p = _check_prime(args)
    G, _ = parse_group(load_spec(args.spec), args.cap, p)
    D = args.max_degree
    P = groups.sylow(G, p)
    warnings = []
    if _is_elementary_abelian(P, p):
        E = groups.ElemAbelianSubgroup(G, groups.canonical_basis(G, P.elements, p), p)
        model = quillen.SylowModel.polynomial(E, D)
    else:
        C = groups.cyclic_group(p)
        W = groups.wreath("Cp", C, p)
        if G.rep != W.rep or not W.element_set <= G.element_set or (G.order // W.order) % p == 0:
            raise SpecError("stable elements need an elementary abelian Sylow or the standard Z/p wr Z/p Sylow")
        model = wreath.wreath_sylow_model(C, (C.generators[0],), p, D)
    st = quillen.stable_elements(G, p, model, D)
    payload = {"model": model.label, "sylow_order": P.order, "conditions": st.conditions, "dims": st.dims()}
    _emit(args, _report(args, payload, warnings, t0))
    return EXIT_OK


def cmd_wreath(args) -> int:
    t0 = time.perf_counter()
    p = _check_prime(args)
    inner, _ = parse_group(load_spec(args.spec), args.cap, p)
    D = args.max_degree
    warnings = []
    if _is_elementary_abelian(inner, p):
        basis = groups.canonical_basis(inner, inner.elements, p)
        M = full_basis(PolyAlgebra(p, len(basis)), D)
        model = wreath.wreath_model(M, p, args.variant, D)
        injective = wreath.restriction_is_injective(model, D)
        payload = {"inner_rank": len(basis), "dims": model.dims(), "restriction_injective": injective}
        if not injective:
            _emit(args, _report(args, payload, warnings, t0))
            return EXIT_THEOREM
    else:
        L = quillen.limit_ring(quillen.build_category(inner, p), D)
        model = wreath.wreath_model(L.basis, p, args.variant, D)
        payload = {"inner_dims": L.dims(), "dims": model.dims()}
        warnings.append("inner group is not elementary abelian: restrictions not computed")
    _emit(args, _report(args, payload, warnings, t0))
    return EXIT_OK


def cmd_invariants(args) -> int:
    t0 = time.perf_counter()
    p = _check_prime(args)
    D = args.max_degree
    if args.matrices:
        try:
            doc = json.loads(args.matrices)
            n = int(doc["n"])
            mats = [np.array(m, dtype=np.int64).reshape(n, n) for m in doc["matrices"]]
            inv = invariants(n, mats, D, p)
        except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
            raise SpecError(f"bad matrix group: {exc}") from exc
        payload = {"rank": n, "dims": inv.dims()}
    else:
        doc = load_spec(args.spec)
        G, data = parse_group(doc, args.cap, p)
        if data is not None:
            inv = invariants(data.rank, data.weyl_pullbacks(), D, p)
            payload = {"source": "weyl", "rank": data.rank, "weyl_matrices": len(data.weyl_matrices), "dims": inv.dims()}
        else:
            try:
                inv = quillen.swan_invariants(G, p, D)
            except ValueError as exc:
                raise SpecError(str(exc)) from exc
            payload = {"source": "normalizer", "rank": inv.ring.n, "dims": inv.dims()}
    _emit(args, _report(args, payload, [], t0))
    return EXIT_OK


def _parse_gens(G: groups.FiniteGroup, text: str):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"bad generator list: {exc}") from exc
    gens = []
    for g in raw:
        if isinstance(G.rep, groups.PermRep):
            g = tuple(int(x) - 1 for x in g)
        else:
            g = tuple(int(x) for x in g)
        try:
            g = G.rep.check(g)
        except ValueError as exc:
            raise SpecError(str(exc)) from exc
        if g not in G.element_set:
            raise SpecError(f"{g} is not an element of the group")
        gens.append(g)
    return G.subgroup(gens)


def cmd_double_cosets(args) -> int:
    t0 = time.perf_counter()
    p = _check_prime(args)
    G, _ = parse_group(load_spec(args.spec), args.cap, p)
    K = _parse_gens(G, args.left) if args.left else groups.sylow(G, p)
    H = _parse_gens(G, args.right) if args.right else K
    dc = groups.double_cosets(G, K, H)
    one_based = isinstance(G.rep, groups.PermRep)
    reps = [[x + 1 for x in r] if one_based else list(r) for r in dc.reps]
    payload = {"count": len(dc), "sizes": dc.sizes, "representatives": reps, "intersection_orders": [len(s) for s in dc.intersections]}
    _emit(args, _report(args, payload, [], t0))
    return EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    if args.suite != "paper":
        raise SpecError(f"unknown suite {args.suite!r}")
    results = verify.run_suite(args.max_degree)
    payload = {"criteria": [r.to_dict() for r in results], "all_passed": all(r.passed for r in results)}
    if args.json:
        _emit(args, _report(args, payload, [], t0))
    else:
        for r in results:
            print(r.line())
            for f in r.failures[:5]:
                print(f"    {f}")
    return EXIT_OK if payload["all_passed"] else EXIT_THEOREM


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chowlimit", description="Mod-p Chow rings of classifying spaces of finite groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--cap", type=int, default=groups.DEFAULT_CAP, help="maximum group order to enumerate")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, spec=True, degree=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if spec:
            sp.add_argument("spec", nargs="?", default=None, help="group spec file (default: stdin)")
        sp.add_argument("--prime", "-p", type=int, required=name != "verify", default=None)
        if degree:
            sp.add_argument("--max-degree", "-D", type=int, default=20)
        sp.set_defaults(func=fn)
        return sp

    add("limit", cmd_limit, "inverse limit over the Quillen category")
    add("toral", cmd_toral, "toral witnesses for a classical group", degree=False)
    add("stable", cmd_stable, "stable elements of a Sylow model")
    w = add("wreath", cmd_wreath, "wreath-product model for an inner group")
    w.add_argument("--variant", choices=["Cp", "Sp"], default="Cp")
    inv = add("invariants", cmd_invariants, "Weyl or normalizer invariants")
    inv.add_argument("--matrices", help='JSON {"n": n, "matrices": [[...]]} instead of a group spec')
    dc = add("double-cosets", cmd_double_cosets, "double coset decomposition K\\G/H", degree=False)
    dc.add_argument("--left", help="JSON list of generators of K (default: a Sylow subgroup)")
    dc.add_argument("--right", help="JSON list of generators of H (default: K)")
    v = add("verify", cmd_verify, "run the verification suite", spec=False)
    v.add_argument("--suite", default="paper")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("invariants",) and args.matrices is None and args.spec is None and sys.stdin.isatty():
        parser.error("invariants needs a group spec or --matrices")
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except groups.GroupTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except quillen.TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_THEOREM


if __name__ == "__main__":
    sys.exit(main())
