"""Print presentations, K0, module types, fingerprints and witness checks for the bundled graphs."""

import argparse
import json
from dataclasses import asdict, dataclass

from wmk.graph import bundled_graph, bundled_names, strata
from wmk.k0 import k0_consistency
from wmk.monoid import Bounds, CongruenceEngine, fingerprint, infinite_certificate, module_type
from wmk.presentations import auto_simplify, build_v_monoid
from wmk.symbolic import verify_theorem_witnesses


@dataclass
class Config:
    degree: int = 6
    json: bool = False


def summarize(name: str, cfg: Config) -> dict:
    g = bundled_graph(name)
    bounds = Bounds(degree=cfg.degree)
    p = build_v_monoid(g)
    simplified, _ = auto_simplify(p)
    eng = CongruenceEngine(p, bounds)
    fp = fingerprint(eng, bounds)
    cert = infinite_certificate(g, eng, bounds.n)
    witnesses = {v: verify_theorem_witnesses(g, v).all_verified for v in g.emitting_vertices()}
    types = {}
    for v in g.vertices:
        mt = module_type(eng, v)
        types[v] = list(mt) if mt else None
    return {
        "graph": name,
        "k_v": {v: strata(g, v).k for v in g.vertices},
        "presentation": p.render(),
        "simplified": simplified.render(),
        "k0": str(k0_consistency(g).direct_invariants),
        "module_type": types,
        "atoms": [str(a) for a in fp.atoms],
        "refinement": f"{fp.refinement.verdict} (degree <= {fp.refinement.bound})",
        "infiniteness": fp.infiniteness,
        "infinite_certificate": None if cert is None else f"{len(cert.classes)} distinct multiples of {cert.generator}",
        "witnesses_verified": witnesses,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degree", type=int, default=Config.degree)
    ap.add_argument("--json", action="store_true")
    cfg = Config(**vars(ap.parse_args()))
    rows = [summarize(n, cfg) for n in bundled_names()]
    if cfg.json:
        print(json.dumps({"config": asdict(cfg), "graphs": rows}, indent=2))
        return
    for row in rows:
        print(f"== {row['graph']}")
        for key, value in row.items():
            if key != "graph":
                print(f"  {key:22} {value}")


if __name__ == "__main__":
    main()
