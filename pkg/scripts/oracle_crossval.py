"""Cross-check the congruence engine against plain breadth-first search."""

import argparse
import collections
import random
from dataclasses import dataclass, fields

from wmk.monoid import Bounds, CongruenceEngine, Verdict, bfs_decide, equal
from wmk.sampling import PresentationSpace, random_presentation, random_vector


@dataclass
class Config:
    seed: int = 10
    presentations: int = 500
    pairs: int = 4
    max_total: int = 8
    oracle_nodes: int = 400


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for f in fields(Config):
        ap.add_argument(f"--{f.name.replace('_', '-')}", type=int, default=f.default)
    cfg = Config(**vars(ap.parse_args()))
    rng = random.Random(cfg.seed)
    tally = collections.Counter()
    stages = collections.Counter()
    for _ in range(cfg.presentations):
        p = random_presentation(rng, PresentationSpace())
        eng = CongruenceEngine(p, Bounds(nodes=2000, pairs=2000))
        for _ in range(cfg.pairs):
            a = random_vector(rng, len(p.generators), rng.randint(0, cfg.max_total))
            b = random_vector(rng, len(p.generators), rng.randint(0, cfg.max_total))
            res = equal(eng, a, b)
            stages[res.certificate.get("stage", "search")] += 1
            oracle = bfs_decide(eng, a, b, cfg.oracle_nodes)
            if Verdict.UNKNOWN in (res.verdict, oracle):
                tally["undecided"] += 1
            elif res.verdict is oracle:
                tally["agree"] += 1
            else:
                tally["contradiction"] += 1
                print("contradiction:", p.render(), a, b, res.verdict, oracle)
            if res.equal and not res.replay():
                tally["bad trace"] += 1
    print(cfg)
    print("verdicts:", dict(tally))
    print("deciding stage:", dict(stages))


if __name__ == "__main__":
    main()
