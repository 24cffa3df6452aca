"""Compare the two K0 computations on seeded random weighted graphs."""

import argparse
import collections
import random
import time
from dataclasses import dataclass, fields

from wmk.k0 import ConsistencyFailure, k0_consistency
from wmk.sampling import GraphSpace, random_graph
from wmk.symbolic import verify_theorem_witnesses


@dataclass
class Config:
    seed: int = 2024
    count: int = 1000
    max_vertices: int = 4
    max_edges: int = 6
    max_weight: int = 4
    witnesses: bool = False


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for f in fields(Config):
        if f.type in (bool, "bool"):
            ap.add_argument(f"--{f.name}", action="store_true")
        else:
            ap.add_argument(f"--{f.name.replace('_', '-')}", type=int, default=f.default)
    cfg = Config(**vars(ap.parse_args()))
    rng = random.Random(cfg.seed)
    space = GraphSpace(cfg.max_vertices, cfg.max_edges, cfg.max_weight)
    groups = collections.Counter()
    failures = witness_failures = 0
    start = time.perf_counter()
    for _ in range(cfg.count):
        g = random_graph(rng, space)
        try:
            groups[str(k0_consistency(g).direct_invariants)] += 1
        except ConsistencyFailure as exc:
            failures += 1
            print("inconsistent:", exc)
        if cfg.witnesses:
            for v in g.emitting_vertices():
                if not verify_theorem_witnesses(g, v).all_verified:
                    witness_failures += 1
                    print("witness failure at", v, g)
    print(f"{cfg}")
    print(f"graphs: {cfg.count}  inconsistent: {failures}  witness failures: {witness_failures}")
    print(f"elapsed: {time.perf_counter() - start:.2f}s")
    print("most common K0 groups:")
    for grp, n in groups.most_common(10):
        print(f"  {n:5}  {grp}")


if __name__ == "__main__":
    main()
