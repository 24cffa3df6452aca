"""Commutative monoid and abelian group presentations attached to weighted graphs.

The monoid built here has one generator per vertex plus ``q:v:i`` generators
for every vertex emitting edges of several distinct weights; the group is the
plain vertex presentation of K0.  Generator elimination substitutes a
generator that a relation expresses in terms of the others.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .graph import WeightedGraph, strata

__all__ = [
    "GeneratorName",
    "Element",
    "Substitution",
    "MonoidPresentation",
    "GroupPresentation",
    "NotClassic",
    "NotEliminable",
    "build_v_monoid",
    "build_graph_monoid_classic",
    "build_k0",
    "eliminate_generator",
    "auto_simplify",
    "group_completion",
    "compose_log",
]

VERTEX = "vertex"
Q = "q"
_Q_NAME = re.compile(r"^q:(.+):(\d+)$")


class NotClassic(ValueError):
    pass


class NotEliminable(ValueError):
    pass


@dataclass(frozen=True, order=True)
class GeneratorName:
    kind: str
    vertex: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in (VERTEX, Q):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == Q and self.index < 1:
            raise ValueError("Q-generator index must be >= 1")

    @classmethod
    def of(cls, name: Union[str, "GeneratorName"]) -> "GeneratorName":
        if isinstance(name, GeneratorName):
            return name
        m = _Q_NAME.match(name)
        if m:
            return cls(Q, m.group(1), int(m.group(2)))
        return cls(VERTEX, name)

    @classmethod
    def q(cls, vertex: str, index: int) -> "GeneratorName":
        return cls(Q, vertex, index)

    @property
    def is_q(self) -> bool:
        return self.kind == Q

    def __str__(self):
        return f"q:{self.vertex}:{self.index}" if self.kind == Q else self.vertex

    def __repr__(self):
        return f"GeneratorName({str(self)!r})"


def _gens(names: Iterable) -> tuple[GeneratorName, ...]:
    return tuple(GeneratorName.of(n) for n in names)


class Element:
    """Finitely supported map from generators to nonnegative integers.

    Equality and hashing ignore insertion order.  Keys may be given as strings
    (``"q:v:1"``) or :class:`GeneratorName`.  Negative entries are allowed only
    through :meth:`integer`, which the group-side code uses.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, coefficients: Mapping = (), *, _allow_negative=False):
        if isinstance(coefficients, Element):
            coefficients = coefficients._items
        items = {}
        for k, n in dict(coefficients).items():
            if not isinstance(n, int):
                raise TypeError(f"coefficient of {k} must be an integer")
            if n < 0 and not _allow_negative:
                raise ValueError(f"negative coefficient {n} for {k}")
            if n:
                g = GeneratorName.of(k)
                items[g] = items.get(g, 0) + n
        self._items = {g: n for g, n in items.items() if n}
        self._hash = hash(frozenset(self._items.items()))

    @classmethod
    def unit(cls, g) -> "Element":
        return cls({GeneratorName.of(g): 1})

    @classmethod
    def integer(cls, coefficients: Mapping) -> "Element":
        return cls(coefficients, _allow_negative=True)

    @classmethod
    def from_vector(cls, generators, vec) -> "Element":
        return cls.integer(dict(zip(_gens(generators), vec)))

    @classmethod
    def parse(cls, text: str) -> "Element":
        """Parse the literal syntax ``"u=1,q:v:1=2"``; ``"0"`` or ``""`` is zero."""
        text = text.strip()
        if text in ("", "0"):
            return cls()
        coeffs = {}
        for pos, part in enumerate(text.split(",")):
            name, sep, num = part.strip().rpartition("=")
            if not sep or not name:
                raise ValueError(f"element literal term {pos}: expected generator=coefficient, got {part!r}")
            try:
                n = int(num)
            except ValueError:
                raise ValueError(f"element literal term {pos}: bad coefficient {num!r}") from None
            g = GeneratorName.of(name.strip())
            coeffs[g] = coeffs.get(g, 0) + n
        return cls(coeffs)

    def __getitem__(self, g) -> int:
        return self._items.get(GeneratorName.of(g), 0)

    def __iter__(self):
        return iter(self._items)

    def __len__(self):
        return len(self._items)

    def items(self):
        return self._items.items()

    def support(self) -> set[GeneratorName]:
        return set(self._items)

    @property
    def degree(self) -> int:
        return sum(self._items.values())

    def __bool__(self):
        return bool(self._items)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return self._hash

    def __add__(self, other: "Element") -> "Element":
        out = dict(self._items)
        for g, n in other.items():
            out[g] = out.get(g, 0) + n
        return Element.integer(out)

    def __sub__(self, other: "Element") -> "Element":
        out = dict(self._items)
        for g, n in other.items():
            out[g] = out.get(g, 0) - n
        return Element.integer(out)

    def __mul__(self, k: int) -> "Element":
        return Element.integer({g: k * n for g, n in self._items.items()})

    __rmul__ = __mul__

    def vector(self, generators) -> tuple[int, ...]:
        gens = _gens(generators)
        missing = self.support() - set(gens)
        if missing:
            raise KeyError(f"generators {sorted(map(str, missing))} not declared")
        return tuple(self._items.get(g, 0) for g in gens)

    def substitute(self, y: GeneratorName, image: "Element") -> "Element":
        n = self._items.get(y, 0)
        if not n:
            return self
        rest = Element.integer({g: c for g, c in self._items.items() if g != y})
        return rest + n * image

    def render(self, order: Iterable = ()) -> str:
        if not self._items:
            return "0"
        pos = {g: i for i, g in enumerate(_gens(order))}
        keys = sorted(self._items, key=lambda g: (not g.is_q, pos.get(g, len(pos)), str(g)))
        parts = []
        for g in keys:
            n = self._items[g]
            parts.append(str(g) if n == 1 else f"{n}{g}")
        return " + ".join(parts)

    def to_json(self, order: Iterable = ()) -> dict:
        pos = {g: i for i, g in enumerate(_gens(order))}
        keys = sorted(self._items, key=lambda g: (not g.is_q, pos.get(g, len(pos)), str(g)))
        return {str(g): self._items[g] for g in keys}

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Element({self.to_json()!r})"


@dataclass(frozen=True)
class Substitution:
    """One elimination step: ``generator`` was replaced by ``image``."""

    generator: GeneratorName
    image: Element

    def to_json(self):
        return {"generator": str(self.generator), "image": self.image.to_json()}


Relation = tuple[Element, Element]


@dataclass(frozen=True)
class MonoidPresentation:
    generators: tuple[GeneratorName, ...]
    relations: tuple[Relation, ...]
    log: tuple[Substitution, ...] = field(default=(), compare=False)

    def __post_init__(self):
        gens = _gens(self.generators)
        object.__setattr__(self, "generators", gens)
        rels = tuple((Element(l), Element(r)) if not isinstance(l, Element) else (l, r) for l, r in self.relations)
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "log", tuple(self.log))
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generators")
        declared = set(gens)
        for i, (l, r) in enumerate(rels):
            undeclared = (l.support() | r.support()) - declared
            if undeclared:
                raise ValueError(f"relation {i} uses undeclared generators {sorted(map(str, undeclared))}")
            if any(n < 0 for _, n in l.items()) or any(n < 0 for _, n in r.items()):
                raise ValueError(f"relation {i} has a negative coefficient")

    @classmethod
    def from_strings(cls, generators, relations) -> "MonoidPresentation":
        """``relations`` as pairs of element literals, e.g. ``("v=1", "q:v:1=1,u=1")``."""
        return cls(_gens(generators), tuple((Element.parse(l), Element.parse(r)) for l, r in relations))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def vectors(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return [(l.vector(self.generators), r.vector(self.generators)) for l, r in self.relations]

    def element(self, vec) -> Element:
        return Element.from_vector(self.generators, vec)

    def normalized(self) -> "MonoidPresentation":
        """Drop trivial relations and duplicates (relations are unordered pairs)."""
        seen = set()
        out = []
        for l, r in self.relations:
            if l == r:
                continue
            key = frozenset((l, r))
            if key in seen:
                continue
            seen.add(key)
            out.append((l, r))
        return MonoidPresentation(self.generators, tuple(out), self.log)

    def canonical_relations(self) -> list[Relation]:
        """Relations oriented with the lexicographically larger vector first."""
        out = []
        for l, r in self.relations:
            lv, rv = l.vector(self.generators), r.vector(self.generators)
            out.append((l, r) if lv >= rv else (r, l))
        return out

    def render(self) -> str:
        gens = ", ".join(map(str, self.generators))
        rels = "; ".join(f"{l.render(self.generators)} = {r.render(self.generators)}" for l, r in self.relations)
        return f"<{gens} | {rels}>"

    def to_json(self) -> dict:
        return {
            "generators": [str(g) for g in self.generators],
            "relations": [
                {"lhs": l.to_json(self.generators), "rhs": r.to_json(self.generators)} for l, r in self.relations
            ],
        }

    @classmethod
    def from_json(cls, data) -> "MonoidPresentation":
        if isinstance(data, str):
            data = json.loads(data)
        if set(data) - {"generators", "relations"}:
            raise ValueError(f"unknown keys {sorted(set(data) - {'generators', 'relations'})}")
        return cls(
            _gens(data["generators"]),
            tuple((Element(rel["lhs"]), Element(rel["rhs"])) for rel in data["relations"]),
        )


@dataclass(frozen=True)
class GroupPresentation:
    """Abelian group presentation: one integer row per relation ``lhs - rhs``."""

    generators: tuple[GeneratorName, ...]
    relation_matrix: tuple[tuple[int, ...], ...]
    log: tuple[Substitution, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", _gens(self.generators))
        rows = tuple(tuple(int(x) for x in row) for row in self.relation_matrix)
        object.__setattr__(self, "relation_matrix", rows)
        object.__setattr__(self, "log", tuple(self.log))
        for i, row in enumerate(rows):
            if len(row) != len(self.generators):
                raise ValueError(f"row {i} has {len(row)} entries, expected {len(self.generators)}")

    def matrix(self) -> list[list[int]]:
        return [list(row) for row in self.relation_matrix]

    def to_json(self) -> dict:
        return {"generators": [str(g) for g in self.generators], "relation_matrix": self.matrix()}

    @classmethod
    def from_json(cls, data) -> "GroupPresentation":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(_gens(data["generators"]), tuple(tuple(r) for r in data["relation_matrix"]))


Presentation = Union[MonoidPresentation, GroupPresentation]


def build_v_monoid(g: WeightedGraph) -> MonoidPresentation:
    """One relation per vertex ``v`` and weight stratum ``1 <= i <= k_v``.

    Relations are kept exactly as generated (one per stratum, no
    deduplication) so their count is the sum of the ``k_v``.
    """
    gens = []
    rels = []
    for v in g.vertices:
        st = strata(g, v)
        gens.append(GeneratorName(VERTEX, v))
        gens.extend(GeneratorName.q(v, i) for i in range(1, st.k))

        def q(i):
            return Element.unit(GeneratorName.q(v, i)) if 0 < i < st.k else Element()

        for i in range(1, st.k + 1):
            lhs = q(i - 1) + Element({v: st.weights[i] - st.weights[i - 1]})
            rhs = q(i)
            for e in st.edges_of_stratum(i):
                rhs = rhs + Element.unit(e.range)
            rels.append((lhs, rhs))
    return MonoidPresentation(tuple(gens), tuple(rels))


def build_graph_monoid_classic(g: WeightedGraph) -> MonoidPresentation:
    bad = [v for v in g.vertices if strata(g, v).k > 1]
    if bad:
        raise NotClassic(f"vertices with edges of several weights: {bad}")
    return build_v_monoid(g)


def build_k0(g: WeightedGraph) -> GroupPresentation:
    gens = _gens(g.vertices)
    rows = []
    for v in g.emitting_vertices():
        st = strata(g, v)
        rel = Element({v: st.weight}) - sum((Element.unit(e.range) for e in st.ordered_edges), Element())
        rows.append(tuple(rel[x] for x in gens))
    return GroupPresentation(gens, tuple(rows))


def group_completion(p: MonoidPresentation) -> GroupPresentation:
    return GroupPresentation(
        p.generators,
        tuple(tuple(a - b for a, b in zip(lv, rv)) for lv, rv in p.vectors()),
        p.log,
    )


def _monoid_image(p: MonoidPresentation, y: GeneratorName, index: int):
    l, r = p.relations[index]
    unit = Element.unit(y)
    if l == unit and r[y] == 0:
        return r
    if r == unit and l[y] == 0:
        return l
    return None


def _group_coefficient(p: GroupPresentation, y: GeneratorName, index: int) -> int:
    c = p.relation_matrix[index][p.generators.index(y)]
    return c if c in (1, -1) else 0


def is_eliminable(p: Presentation, y, index: int) -> bool:
    y = GeneratorName.of(y)
    if y not in p.generators:
        return False
    if isinstance(p, MonoidPresentation):
        return _monoid_image(p, y, index) is not None
    return _group_coefficient(p, y, index) != 0


def eliminate_generator(p: Presentation, y, defining_relation_index: int) -> Presentation:
    """Remove ``y`` using the relation at ``defining_relation_index``.

    Monoid case: one side of the relation must be exactly ``y`` and the other
    side must not mention ``y``.  Group case: ``y`` must have coefficient +-1.
    The defining relation is dropped and every other relation rewritten under
    the substitution; the substitution is appended to ``log``.
    """
    y = GeneratorName.of(y)
    idx = defining_relation_index
    if y not in p.generators:
        raise NotEliminable(f"{y} is not a generator")
    rels = p.relations if isinstance(p, MonoidPresentation) else p.relation_matrix
    if not 0 <= idx < len(rels):
        raise NotEliminable(f"no relation with index {idx}")
    remaining = tuple(x for x in p.generators if x != y)

    if isinstance(p, MonoidPresentation):
        image = _monoid_image(p, y, idx)
        if image is None:
            raise NotEliminable(f"relation {idx} does not isolate {y} with coefficient 1")
        new = tuple(
            (l.substitute(y, image), r.substitute(y, image)) for i, (l, r) in enumerate(p.relations) if i != idx
        )
        return MonoidPresentation(remaining, new, p.log + (Substitution(y, image),)).normalized()

    c = _group_coefficient(p, y, idx)
    if not c:
        raise NotEliminable(f"row {idx} does not have coefficient +-1 at {y}")
    col = p.generators.index(y)
    defining = p.relation_matrix[idx]
    # c*y + sum(a_x x) = 0  =>  y = -c * sum(a_x x)
    image = Element.integer({x: -c * a for x, a in zip(p.generators, defining) if x != y})
    rows = []
    for i, row in enumerate(p.relation_matrix):
        if i == idx:
            continue
        t = row[col] * c
        new_row = [a - t * d for a, d in zip(row, defining)]
        del new_row[col]
        rows.append(tuple(new_row))
    return GroupPresentation(remaining, tuple(rows), p.log + (Substitution(y, image),))


def _scan(p: Presentation, kinds):
    order = [g for g in p.generators if g.is_q] + [g for g in p.generators if not g.is_q]
    if kinds is not None:
        order = [g for g in order if g.kind in kinds]
    n = len(p.relations) if isinstance(p, MonoidPresentation) else len(p.relation_matrix)
    for idx in range(n):
        for y in order:
            if is_eliminable(p, y, idx):
                return y, idx
    return None


def auto_simplify(p: Presentation, kinds=None) -> tuple[Presentation, tuple[Substitution, ...]]:
    """Eliminate generators until no relation isolates one.

    Relations are scanned in order; within a relation Q-generators are tried
    before vertex generators, each group in declaration order.  ``kinds``
    restricts the eliminated generators (``{"q"}`` or ``{"vertex"}``).
    Returns the simplified presentation and the substitutions performed.
    """
    start = len(p.log)
    if isinstance(p, MonoidPresentation):
        p = p.normalized()
    while True:
        hit = _scan(p, kinds)
        if hit is None:
            return p, p.log[start:]
        p = eliminate_generator(p, *hit)


def compose_log(generators, log: Iterable[Substitution]) -> dict[GeneratorName, Element]:
    """Image of each original generator in the final generators after ``log``."""
    images = {g: Element.unit(g) for g in _gens(generators)}
    for sub in log:
        images = {g: img.substitute(sub.generator, sub.image) for g, img in images.items()}
    return images
