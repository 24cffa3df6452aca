"""Command-line front end.

Exit codes: 0 success, 1 definite negative against an assertion (or a
failed verification), 2 undecided within bounds, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from .graph import ParseError, UnknownVertex, ValidationError, bundled_graph, bundled_names, load_graph, strata
from .k0 import ConsistencyFailure, k0_consistency, k0_invariants
from .monoid import (
    Bounds,
    CertificateFailure,
    CongruenceEngine,
    Inconclusive,
    Verdict,
    equal,
    fingerprint,
    infinite_certificate,
    module_type,
    refinement_check,
)
from .presentations import Element, build_v_monoid
from .symbolic import EmptySource, verify_theorem_witnesses

OK, NEGATIVE, UNKNOWN, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


def resolve_graph(arg: str):
    if os.path.exists(arg):
        return load_graph(arg)
    stem = os.path.splitext(os.path.basename(arg))[0]
    if stem in bundled_names():
        return bundled_graph(stem)
    raise InputError(f"no such graph file or bundled graph: {arg!r} (bundled: {', '.join(bundled_names())})")


def _bounds(args) -> Bounds:
    b = Bounds.from_env()
    overrides = {
        "degree": args.bound_degree,
        "nodes": args.bound_nodes,
        "n": args.bound_n,
        "k": args.bound_k,
    }
    return replace(b, **{k: v for k, v in overrides.items() if v is not None})


def _emit(args, payload, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _vertices(args, g):
    if args.vertex is None:
        return g.emitting_vertices()
    if args.vertex not in g.vertices:
        raise UnknownVertex(args.vertex)
    return [args.vertex]


def cmd_present(args, g, bounds):
    p = build_v_monoid(g)
    lines = [
        "generators: " + ", ".join(map(str, p.generators)),
        "relations:",
        *(f"  {l.render(p.generators)} = {r.render(p.generators)}" for l, r in p.relations),
    ]
    _emit(args, p.to_json(), "\n".join(lines))
    return OK


def cmd_k0(args, g, bounds):
    inv = k0_invariants(g)
    _emit(args, inv.to_json(), str(inv))
    return OK


def cmd_equal(args, g, bounds):
    if len(args.elements) != 2:
        raise InputError("equal needs exactly two element literals, e.g. 'u=1,q:v:1=2' 'u=1'")
    eng = CongruenceEngine(build_v_monoid(g), bounds)
    a, b = (Element.parse(s) for s in args.elements)
    for el in (a, b):
        missing = [str(x) for x in el.support() if x not in eng.generators]
        if missing:
            raise InputError(f"element {el} uses unknown generators {missing}")
    res = equal(eng, a, b)
    _emit(args, res.to_json(), f"{res.verdict.value} ({res.certificate.get('stage', '')})")
    if res.verdict is Verdict.UNKNOWN:
        return UNKNOWN
    if args.assert_equal and not res.equal:
        return NEGATIVE
    if args.assert_not_equal and res.equal:
        return NEGATIVE
    return OK


def cmd_module_type(args, g, bounds):
    eng = CongruenceEngine(build_v_monoid(g), bounds)
    out, code = {}, OK
    for v in (_vertices(args, g) if args.vertex else list(g.vertices)):
        try:
            mt = module_type(eng, v, bounds.n, bounds.k)
        except Inconclusive as exc:
            out[v] = {"verdict": "Unknown", "reason": str(exc)}
            code = UNKNOWN
            continue
        out[v] = {"verdict": "Found", "n": mt[0], "k": mt[1]} if mt else {"verdict": "NoneWithinBounds"}
        if mt is None:
            code = max(code, UNKNOWN)
    text = "\n".join(
        f"{v}: ({r['n']},{r['k']})" if r["verdict"] == "Found" else f"{v}: {r['verdict']}" for v, r in out.items()
    )
    _emit(args, out, text)
    return code


def cmd_atoms(args, g, bounds):
    fp = fingerprint(CongruenceEngine(build_v_monoid(g), bounds), bounds)
    payload = {"atoms": [a.to_json() for a in fp.atoms], "unknown": fp.atoms_unknown, "degree": fp.atom_degree}
    _emit(args, payload, "\n".join(str(a) for a in fp.atoms) + f"\n({fp.atom_count} atoms up to degree {fp.atom_degree})")
    return UNKNOWN if fp.atoms_unknown else OK


def cmd_infinite_check(args, g, bounds):
    eng = CongruenceEngine(build_v_monoid(g), bounds)
    try:
        cert = infinite_certificate(g, eng, bounds.n)
    except Inconclusive as exc:
        _emit(args, {"verdict": "Unknown", "reason": str(exc)}, f"Unknown: {exc}")
        return UNKNOWN
    except CertificateFailure as exc:
        _emit(args, {"verdict": "CertificateFailure", "reason": str(exc)}, f"CertificateFailure: {exc}")
        return NEGATIVE
    if cert is None:
        _emit(args, {"verdict": "NotApplicable"}, "NotApplicable: every vertex has a single edge weight")
        return OK
    _emit(args, cert.to_json(), f"InfiniteByWeights: {len(cert.classes)} distinct multiples of {cert.generator}")
    return OK


def cmd_refine_check(args, g, bounds):
    from .presentations import auto_simplify

    p, _ = auto_simplify(build_v_monoid(g))
    eng = CongruenceEngine(p, bounds)
    res = refinement_check(eng, bounds.degree)
    text = f"{res.verdict} at degree bound {res.bound}"
    if res.witness:
        a1, a2, b1, b2 = (eng.element(x) for x in res.witness)
        text += f"\nwitness: {a1} + {a2} = {b1} + {b2} admits no refinement"
    _emit(args, res.to_json(eng), text)
    return OK


def cmd_verify_witnesses(args, g, bounds):
    reports = []
    for v in _vertices(args, g):
        if not strata(g, v).ordered_edges:
            raise EmptySource(f"vertex {v!r} emits no edges")
        reports.append(verify_theorem_witnesses(g, v))
    rows = [row for r in reports for row in r.to_json()]
    text = "\n".join(
        f"{row['vertex']} l={row['l']} {row['identity']}: {row['verdict']}"
        + (f" at {tuple(row['position'])}: {row['residual']}" if row["verdict"] != "Verified" else "")
        for row in rows
    )
    _emit(args, rows, text)
    return OK if all(r.all_verified for r in reports) else NEGATIVE


def cmd_fingerprint(args, g, bounds):
    fp = fingerprint(CongruenceEngine(build_v_monoid(g), bounds), bounds)
    text = "\n".join(
        [
            f"generators: {fp.generator_count}  relations: {fp.relation_count}",
            f"atoms (degree <= {fp.atom_degree}): {fp.atom_count} [{', '.join(map(str, fp.atoms))}]",
            f"group completion: {fp.group}",
            f"refinement: {fp.refinement.verdict} at degree bound {fp.refinement.bound}",
            f"infiniteness: {fp.infiniteness}",
        ]
    )
    _emit(args, fp.to_json(), text)
    return OK


def cmd_consistency(args, g, bounds):
    try:
        rep = k0_consistency(g)
    except ConsistencyFailure as exc:
        _emit(args, {"consistent": False, "reason": str(exc)}, f"Inconsistent: {exc}")
        return NEGATIVE
    _emit(args, rep.to_json(), f"consistent: {rep.direct_invariants} (direct) = {rep.via_monoid_invariants} (via monoid)")
    return OK


COMMANDS = {
    "present": cmd_present,
    "k0": cmd_k0,
    "equal": cmd_equal,
    "module-type": cmd_module_type,
    "atoms": cmd_atoms,
    "infinite-check": cmd_infinite_check,
    "refine-check": cmd_refine_check,
    "verify-witnesses": cmd_verify_witnesses,
    "fingerprint": cmd_fingerprint,
    "consistency": cmd_consistency,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wmk", description="Monoids and K-theory of weighted Leavitt path algebras.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("graph", help="graph JSON file or bundled graph name")
    parser.add_argument("elements", nargs="*", help="element literals for 'equal', e.g. u=1,q:v:1=2")
    parser.add_argument("--bound-degree", type=int)
    parser.add_argument("--bound-nodes", type=int)
    parser.add_argument("--bound-n", type=int)
    parser.add_argument("--bound-k", type=int)
    parser.add_argument("--vertex")
    parser.add_argument("--json", action="store_true")
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--assert-equal", action="store_true")
    group.add_argument("--assert-not-equal", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else INPUT_ERROR
    try:
        if args.elements and args.command != "equal":
            raise InputError(f"'{args.command}' takes no element literals")
        g = resolve_graph(args.graph)
        bounds = _bounds(args)
        return COMMANDS[args.command](args, g, bounds)
    except (InputError, ParseError, ValidationError, UnknownVertex, EmptySource, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
