"""Seeded random instances for sweeps and cross-validation."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Edge, WeightedGraph
from .presentations import Element, MonoidPresentation

__all__ = ["GraphSpace", "PresentationSpace", "random_graph", "random_presentation", "random_vector"]


@dataclass(frozen=True)
class GraphSpace:
    max_vertices: int = 4
    max_edges: int = 6
    max_weight: int = 4


@dataclass(frozen=True)
class PresentationSpace:
    max_generators: int = 3
    max_relations: int = 2
    max_coefficient: int = 3


def random_graph(rng: random.Random, space: GraphSpace = GraphSpace()) -> WeightedGraph:
    n = rng.randint(1, space.max_vertices)
    vertices = [f"v{i}" for i in range(n)]
    edges = [
        Edge(f"e{j}", rng.choice(vertices), rng.choice(vertices), rng.randint(1, space.max_weight))
        for j in range(rng.randint(0, space.max_edges))
    ]
    return WeightedGraph(tuple(vertices), tuple(edges))


def random_presentation(rng: random.Random, space: PresentationSpace = PresentationSpace()) -> MonoidPresentation:
    gens = [f"g{i}" for i in range(rng.randint(1, space.max_generators))]

    def side():
        return Element({g: rng.randint(0, space.max_coefficient) for g in gens})

    rels = tuple((side(), side()) for _ in range(rng.randint(0, space.max_relations)))
    return MonoidPresentation(tuple(gens), rels)


def random_vector(rng: random.Random, n: int, total: int) -> tuple[int, ...]:
    """Uniformly placed ``total`` units over ``n`` coordinates."""
    v = [0] * n
    for _ in range(total):
        v[rng.randrange(n)] += 1
    return tuple(v)
