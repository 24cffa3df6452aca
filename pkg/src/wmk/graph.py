"""Row-finite weighted graphs and the per-vertex weight stratification."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "Edge",
    "WeightedGraph",
    "VertexStrata",
    "ParseError",
    "ValidationError",
    "UnknownVertex",
    "parse_graph",
    "serialize_graph",
    "load_graph",
    "strata",
    "vertex_weight",
    "bundled_names",
    "bundled_graph",
]

# Vertex ids of this shape would collide with the rendering of Q-generators.
_RESERVED = re.compile(r"^q:.*:\d+$")


class ParseError(ValueError):
    """Graph text is not well-formed JSON of the expected shape."""


class ValidationError(ValueError):
    """Graph data violates a structural invariant."""


class UnknownVertex(KeyError):
    def __str__(self):
        return f"unknown vertex {self.args[0]!r}"


@dataclass(frozen=True, order=True)
class Edge:
    id: str
    source: str
    range: str
    weight: int


@dataclass(frozen=True)
class WeightedGraph:
    """A finite weighted graph.

    ``vertices`` keeps declaration order; ``edges`` is a tuple of :class:`Edge`.
    Construction validates every invariant, so instances are always sound.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        seen = set()
        for v in self.vertices:
            if not isinstance(v, str) or not v:
                raise ValidationError(f"vertex id must be a non-empty string, got {v!r}")
            if v in seen:
                raise ValidationError(f"duplicate vertex id {v!r}")
            if _RESERVED.match(v) or "=" in v or "," in v:
                raise ValidationError(f"vertex id {v!r} is reserved or contains '=' or ','")
            seen.add(v)
        edge_ids = set()
        for e in self.edges:
            if not isinstance(e.id, str) or not e.id:
                raise ValidationError(f"edge id must be a non-empty string, got {e.id!r}")
            if e.id in edge_ids:
                raise ValidationError(f"duplicate edge id {e.id!r}")
            edge_ids.add(e.id)
            for end in ("source", "range"):
                if getattr(e, end) not in seen:
                    raise ValidationError(
                        f"edge {e.id!r}: {end} {getattr(e, end)!r} is not a declared vertex"
                    )
            if type(e.weight) is not int or e.weight < 1:
                raise ValidationError(f"edge {e.id!r}: weight must be an integer >= 1, got {e.weight!r}")

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple]) -> "WeightedGraph":
        """Shorthand: ``edges`` as ``(id, source, range, weight)`` tuples."""
        return cls(tuple(vertices), tuple(Edge(*e) for e in edges))

    def emitted(self, v: str) -> list[Edge]:
        if v not in self.vertices:
            raise UnknownVertex(v)
        return [e for e in self.edges if e.source == v]

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)

    def emitting_vertices(self) -> list[str]:
        return [v for v in self.vertices if any(e.source == v for e in self.edges)]


@dataclass(frozen=True)
class VertexStrata:
    """Weight stratification of the edges emitted by one vertex.

    ``weights[l]`` is the l-th distinct weight (``weights[0] == 0``) and
    ``counts[l]`` the number of emitted edges of weight at most ``weights[l]``.
    ``ordered_edges`` lists the emitted edges by ascending weight, ties broken
    by edge id.
    """

    vertex: str
    k: int
    weights: tuple[int, ...]
    counts: tuple[int, ...]
    ordered_edges: tuple[Edge, ...]

    @property
    def weight(self) -> int:
        return self.weights[-1]

    @property
    def out_degree(self) -> int:
        return self.counts[-1]

    def edges_of_stratum(self, i: int) -> tuple[Edge, ...]:
        """Edges of weight exactly ``weights[i]`` (1 <= i <= k)."""
        return self.ordered_edges[self.counts[i - 1]:self.counts[i]]


def strata(g: WeightedGraph, v: str) -> VertexStrata:
    out = sorted(g.emitted(v), key=lambda e: (e.weight, e.id))
    weights = [0] + sorted({e.weight for e in out})
    counts = [sum(1 for e in out if e.weight <= w) for w in weights]
    return VertexStrata(v, len(weights) - 1, tuple(weights), tuple(counts), tuple(out))


def vertex_weight(g: WeightedGraph, v: str) -> int:
    return max((e.weight for e in g.emitted(v)), default=0)


_EDGE_KEYS = {"id", "source", "range", "weight"}


def parse_graph(text: str) -> WeightedGraph:
    """Parse the JSON graph format, rejecting unknown keys."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    extra = set(data) - {"vertices", "edges"}
    if extra:
        raise ParseError(f"unknown top-level keys: {sorted(extra)}")
    vertices = data.get("vertices")
    if not isinstance(vertices, list):
        raise ParseError("'vertices' must be a list")
    for pos, v in enumerate(vertices):
        if not isinstance(v, str):
            raise ParseError(f"vertices[{pos}] must be a string, got {v!r}")
    edges = []
    for pos, rec in enumerate(data.get("edges", [])):
        if not isinstance(rec, dict):
            raise ParseError(f"edges[{pos}] must be an object")
        keys = set(rec)
        if keys - _EDGE_KEYS:
            raise ParseError(f"edges[{pos}]: unknown keys {sorted(keys - _EDGE_KEYS)}")
        if _EDGE_KEYS - keys:
            raise ParseError(f"edges[{pos}]: missing keys {sorted(_EDGE_KEYS - keys)}")
        if not isinstance(rec["weight"], int) or isinstance(rec["weight"], bool):
            raise ValidationError(f"edge {rec['id']!r}: weight must be an integer >= 1, got {rec['weight']!r}")
        edges.append(Edge(rec["id"], rec["source"], rec["range"], rec["weight"]))
    return WeightedGraph(tuple(vertices), tuple(edges))


def serialize_graph(g: WeightedGraph) -> str:
    return json.dumps(
        {
            "vertices": list(g.vertices),
            "edges": [
                {"id": e.id, "source": e.source, "range": e.range, "weight": e.weight}
                for e in g.edges
            ],
        },
        indent=2,
    )


def load_graph(path) -> WeightedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def bundled_names() -> list[str]:
    """Names of the graphs shipped in ``wmk/data``."""
    from importlib import resources

    return sorted(
        p.name[:-5] for p in resources.files("wmk").joinpath("data").iterdir() if p.name.endswith(".json")
    )


def bundled_graph(name: str) -> WeightedGraph:
    from importlib import resources

    return parse_graph(resources.files("wmk").joinpath("data", f"{name}.json").read_text("utf-8"))
