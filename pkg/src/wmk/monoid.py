"""Word problem and derived invariants for finitely presented commutative monoids.

Elements are vectors over the generator sequence of a presentation.  Two
vectors are congruent iff the binomial ``x^a - x^b`` lies in the binomial ideal
of the relations, so a Buchberger-style completion over rewrite rules
``lhs -> rhs`` (graded reverse lexicographic order) decides equality.  A
Hermite-reduced difference lattice gives a cheap inequality test in front of
it, and a capped breadth-first search over relation moves backs it up.
"""

from __future__ import annotations

import enum
import itertools
import os
import threading
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Optional

from .graph import WeightedGraph, strata
from .k0 import (
    AbelianGroupInvariants,
    group_invariants,
    hermite_normal_form,
    hnf_reduce,
    separating_invariant,
)
from .presentations import (
    Element,
    GeneratorName,
    MonoidPresentation,
    auto_simplify,
    group_completion,
)

__all__ = [
    "Bounds",
    "Verdict",
    "DecisionResult",
    "CongruenceEngine",
    "ClassResult",
    "Inconclusive",
    "ZeroElement",
    "equal",
    "bfs_decide",
    "class_enumerate",
    "is_atom",
    "module_type",
    "infinite_certificate",
    "refinement_check",
    "fingerprint",
    "Fingerprint",
]

Vec = tuple


class Inconclusive(RuntimeError):
    """A decision needed for the answer came back Unknown."""


class ZeroElement(ValueError):
    pass


@dataclass(frozen=True)
class Bounds:
    """Search caps.  ``degree`` bounds refinement checks, ``atom_degree`` atom scans."""

    degree: int = 8
    nodes: int = 100_000
    pairs: int = 100_000
    n: int = 10
    k: int = 10
    atom_degree: int = 2

    @classmethod
    def from_env(cls, var: str = "WMK_DEFAULT_BOUNDS") -> "Bounds":
        """Defaults overridden by e.g. ``WMK_DEFAULT_BOUNDS="degree=6,nodes=5000"``."""
        text = os.environ.get(var, "").strip()
        if not text:
            return cls()
        kw = {}
        for part in text.split(","):
            key, _, val = part.partition("=")
            key = key.strip().replace("-", "_")
            if key not in cls.__dataclass_fields__:
                raise ValueError(f"{var}: unknown bound {key!r}")
            kw[key] = int(val)
        return cls(**kw)


class Verdict(enum.Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqual"
    UNKNOWN = "Unknown"


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def _grevlex_key(a):
    return (sum(a), tuple(-x for x in reversed(a)))


@dataclass
class _Rule:
    lhs: Vec
    rhs: Vec
    # Either ("rel", index, direction) or ("seq", items) where items are
    # (rule index, reversed, context) triples.
    proof: tuple


@dataclass
class DecisionResult:
    """Verdict plus certificate.

    Certificates: ``stage`` names the deciding stage.  Equal results carry a
    rewrite trace over the original relations (built on demand by
    :meth:`trace`); lattice NotEqual results carry a separating homomorphism
    ``(functional, modulus)``; other NotEqual results carry distinct normal
    forms or an exhausted congruence class.
    """

    verdict: Verdict
    a: Vec
    b: Vec
    certificate: dict = field(default_factory=dict)
    _engine: Optional["CongruenceEngine"] = field(default=None, repr=False, compare=False)
    _proof: tuple = field(default=(), repr=False, compare=False)

    @property
    def equal(self) -> bool:
        return self.verdict is Verdict.EQUAL

    def trace(self, cap: int = 1_000_000) -> list[tuple[int, int, Vec]]:
        """Steps ``(relation index, direction, context)`` turning ``a`` into ``b``.

        ``direction`` is +1 for lhs -> rhs and -1 for rhs -> lhs; each step
        maps ``context + from_side`` to ``context + to_side``.
        """
        if self.verdict is not Verdict.EQUAL:
            raise ValueError("only Equal results carry a trace")
        if "trace" in self.certificate:
            return list(self.certificate["trace"])
        return self._engine._expand(self._proof, cap)

    def replay(self) -> bool:
        eng = self._engine
        cur = self.a
        for idx, direction, ctx in self.trace():
            lhs, rhs = eng.vectors[idx]
            src, dst = (lhs, rhs) if direction > 0 else (rhs, lhs)
            if _add(ctx, src) != cur or any(x < 0 for x in ctx):
                return False
            cur = _add(ctx, dst)
        return cur == self.b

    def check_separation(self) -> bool:
        """Independently verify a lattice NotEqual certificate."""
        y, d = self.certificate["functional"], self.certificate["modulus"]
        eng = self._engine

        def val(v):
            s = sum(a * b for a, b in zip(y, v))
            return s % d if d else s

        if any(val(_sub(l, r)) for l, r in eng.vectors):
            return False
        return val(_sub(self.a, self.b)) != 0

    def to_json(self) -> dict:
        eng = self._engine
        out = {
            "verdict": self.verdict.value,
            "a": eng.element(self.a).to_json(eng.generators),
            "b": eng.element(self.b).to_json(eng.generators),
        }
        cert = {k: v for k, v in self.certificate.items() if k != "trace"}
        for key in ("normal_forms",):
            if key in cert:
                cert[key] = [eng.element(x).to_json(eng.generators) for x in cert[key]]
        if "exhausted_class" in cert:
            cert["exhausted_class"] = [eng.element(x).to_json(eng.generators) for x in cert["exhausted_class"]]
        if self.verdict is Verdict.EQUAL:
            cert["trace"] = [
                {
                    "relation": i,
                    "direction": "lhs->rhs" if d > 0 else "rhs->lhs",
                    "position": eng.element(c).to_json(eng.generators),
                }
                for i, d, c in self.trace()
            ]
        out["certificate"] = cert
        return out


@dataclass
class ClassResult:
    elements: frozenset
    complete: bool

    @property
    def truncated(self) -> bool:
        return not self.complete


class CongruenceEngine:
    """Decision state for one presentation.

    Queries memoize; a lock makes concurrent queries behave like sequential ones.
    """

    def __init__(self, presentation: MonoidPresentation, bounds: Bounds | None = None):
        self.presentation = presentation
        self.bounds = bounds or Bounds()
        self.generators = presentation.generators
        self.n = len(self.generators)
        self.vectors = presentation.vectors()
        self.difference_lattice = hermite_normal_form([_sub(l, r) for l, r in self.vectors], self.n)
        self.rules: list[_Rule] = []
        self.completed: Optional[bool] = None  # None: not run yet
        self._nf_cache: dict = {}
        self._lock = threading.RLock()
        self._moves = None

    # element conversion -------------------------------------------------

    def vec(self, x) -> Vec:
        if isinstance(x, Element):
            return x.vector(self.generators)
        if isinstance(x, str):
            return Element.parse(x).vector(self.generators)
        x = tuple(x)
        if len(x) != self.n or any(c < 0 for c in x):
            raise ValueError(f"expected a nonnegative vector of length {self.n}, got {x}")
        return x

    def element(self, v: Vec) -> Element:
        return self.presentation.element(v)

    def unit(self, g) -> Vec:
        return Element.unit(g).vector(self.generators)

    @property
    def zero(self) -> Vec:
        return (0,) * self.n

    # stage 1: lattice ----------------------------------------------------

    def in_lattice(self, d: Vec) -> bool:
        _, res = hnf_reduce(self.difference_lattice, d)
        return not any(res)

    # stage 2: completion -------------------------------------------------

    def _orient(self, a, b, proof_ab):
        """Rule from the larger of a, b; ``proof_ab`` turns a into b."""
        if _grevlex_key(a) > _grevlex_key(b):
            return _Rule(a, b, proof_ab)
        return _Rule(b, a, ("rev", proof_ab))

    def _reduce(self, x: Vec):
        chain = []
        rules = self.rules
        while True:
            for i, r in enumerate(rules):
                if _leq(r.lhs, x):
                    ctx = _sub(x, r.lhs)
                    chain.append((i, False, ctx))
                    x = _add(ctx, r.rhs)
                    break
            else:
                return x, chain

    def complete(self) -> bool:
        """Run completion once; True iff it finished within the pair cap."""
        with self._lock:
            if self.completed is not None:
                return self.completed
            for j, (l, r) in enumerate(self.vectors):
                if l != r:
                    self.rules.append(self._orient(l, r, ("rel", j, 1)))
            queue = deque(itertools.combinations(range(len(self.rules)), 2))
            processed = 0
            while queue:
                if processed >= self.bounds.pairs:
                    self.completed = False
                    return False
                i, j = queue.popleft()
                processed += 1
                r1, r2 = self.rules[i], self.rules[j]
                if not any(a and b for a, b in zip(r1.lhs, r2.lhs)):
                    continue  # coprime leading terms: joinable
                m = tuple(max(a, b) for a, b in zip(r1.lhs, r2.lhs))
                c1, c2 = _sub(m, r1.lhs), _sub(m, r2.lhs)
                n1, ch1 = self._reduce(_add(c1, r1.rhs))
                n2, ch2 = self._reduce(_add(c2, r2.rhs))
                if n1 == n2:
                    continue
                # n1 -> s1 -> m -> s2 -> n2
                seq = (
                    [(k, not rv, c) for k, rv, c in reversed(ch1)]
                    + [(i, True, c1), (j, False, c2)]
                    + ch2
                )
                self.rules.append(self._orient(n1, n2, ("seq", tuple(seq))))
                new = len(self.rules) - 1
                queue.extend((k, new) for k in range(new))
            self.completed = True
            return True

    def normal_form(self, x) -> Vec:
        x = self.vec(x)
        if not self.complete():
            raise Inconclusive("completion hit the pair cap")
        with self._lock:
            hit = self._nf_cache.get(x)
            if hit is None:
                hit = self._nf_cache[x] = self._reduce(x)
            return hit[0]

    def _nf_chain(self, x):
        with self._lock:
            hit = self._nf_cache.get(x)
            if hit is None:
                hit = self._nf_cache[x] = self._reduce(x)
            return hit

    # proof expansion -----------------------------------------------------

    def _rule_steps(self, proof, out, ctx, reverse, budget):
        kind = proof[0]
        if kind == "rel":
            _, idx, d = proof
            out.append((idx, -d if reverse else d, ctx))
            if len(out) > budget:
                raise Inconclusive("rewrite trace exceeds the expansion cap")
        elif kind == "rev":
            self._rule_steps(proof[1], out, ctx, not reverse, budget)
        else:
            items = proof[1]
            for k, rv, c in (reversed(items) if reverse else items):
                self._rule_steps(self.rules[k].proof, out, _add(ctx, c), rv != reverse, budget)

    def _expand(self, items, cap) -> list:
        out = []
        for k, rv, c in items:
            self._rule_steps(self.rules[k].proof, out, c, rv, cap)
        return out

    # stage 3: bounded search ---------------------------------------------

    def neighbours(self, x: Vec):
        if self._moves is None:
            self._moves = [
                (idx, d, src, dst)
                for idx, (l, r) in enumerate(self.vectors)
                if l != r
                for d, src, dst in ((1, l, r), (-1, r, l))
            ]
        for idx, d, src, dst in self._moves:
            ctx = tuple(a - b for a, b in zip(x, src))
            if min(ctx, default=0) >= 0:
                yield tuple(a + b for a, b in zip(ctx, dst)), (idx, d, ctx)

    def __repr__(self):
        return f"CongruenceEngine({self.presentation.render()})"


def _bfs_iter(eng: CongruenceEngine, start: Vec, cap: int, parent: dict):
    """Yield nodes in breadth-first order, filling ``parent``.

    Returns True from the generator when the class is exhausted and False
    when the node cap stops it.
    """
    parent[start] = None
    todo = deque([start])
    yield start
    while todo:
        x = todo.popleft()
        for y, step in eng.neighbours(x):
            if y not in parent:
                if len(parent) >= cap:
                    return False
                parent[y] = (x, step)
                todo.append(y)
                yield y
    return True


def _bfs(eng: CongruenceEngine, start: Vec, cap: int, target: Optional[Vec] = None):
    parent = {}
    it = _bfs_iter(eng, start, cap, parent)
    while True:
        try:
            node = next(it)
        except StopIteration as stop:
            return parent, stop.value
        if node == target:
            return parent, False


def _path(parent, node):
    steps = []
    while parent[node] is not None:
        node, step = parent[node]
        steps.append(step)
    steps.reverse()
    return steps


def _reverse_steps(steps):
    return [(i, -d, c) for i, d, c in reversed(steps)]


def _bidirectional(eng: CongruenceEngine, a: Vec, b: Vec, cap: int) -> DecisionResult:
    pa, pb = {a: None}, {b: None}
    qa, qb = deque([a]), deque([b])
    done_a = done_b = False

    def meet(x):
        trace = _path(pa, x) + _reverse_steps(_path(pb, x))
        return DecisionResult(Verdict.EQUAL, a, b, {"stage": "bfs", "trace": trace}, eng)

    while True:
        for parent, other, todo, side in ((pa, pb, qa, "a"), (pb, pa, qb, "b")):
            if not todo:
                if side == "a":
                    done_a = True
                else:
                    done_b = True
                continue
            x = todo.popleft()
            for y, step in eng.neighbours(x):
                if y in parent:
                    continue
                if len(pa) + len(pb) >= cap:
                    return DecisionResult(Verdict.UNKNOWN, a, b, {"stage": "bfs", "exhausted_nodes": cap}, eng)
                parent[y] = (x, step)
                todo.append(y)
                if y in other:
                    return meet(y)
        if done_a or done_b:
            cls = pa if done_a else pb
            return DecisionResult(
                Verdict.NOT_EQUAL, a, b, {"stage": "bfs", "exhausted_class": sorted(cls)}, eng
            )


def equal(eng: CongruenceEngine, a, b) -> DecisionResult:
    """Decide ``a == b`` in the presented monoid (lattice, completion, then search)."""
    a, b = eng.vec(a), eng.vec(b)
    if a == b:
        return DecisionResult(Verdict.EQUAL, a, b, {"stage": "trivial", "trace": []}, eng)
    d = _sub(a, b)
    if not eng.in_lattice(d):
        rows = [_sub(l, r) for l, r in eng.vectors]
        y, mod = separating_invariant(rows, eng.n, d)
        return DecisionResult(
            Verdict.NOT_EQUAL, a, b, {"stage": "lattice", "functional": y, "modulus": mod}, eng
        )
    if eng.complete():
        na, cha = eng._nf_chain(a)
        nb, chb = eng._nf_chain(b)
        if na == nb:
            proof = tuple(cha) + tuple((k, not rv, c) for k, rv, c in reversed(chb))
            return DecisionResult(Verdict.EQUAL, a, b, {"stage": "completion"}, eng, proof)
        return DecisionResult(Verdict.NOT_EQUAL, a, b, {"stage": "completion", "normal_forms": [na, nb]}, eng)
    return _bidirectional(eng, a, b, eng.bounds.nodes)


def bfs_decide(eng: CongruenceEngine, a, b, cap: int | None = None) -> Verdict:
    """Search-only decision, independent of the lattice and completion stages."""
    a, b = eng.vec(a), eng.vec(b)
    cap = cap or eng.bounds.nodes
    parent, complete = _bfs(eng, a, cap, target=b)
    if b in parent:
        return Verdict.EQUAL
    if complete:
        return Verdict.NOT_EQUAL
    parent, complete = _bfs(eng, b, cap, target=a)
    if a in parent:
        return Verdict.EQUAL
    return Verdict.NOT_EQUAL if complete else Verdict.UNKNOWN


def class_enumerate(eng: CongruenceEngine, a, bound: int | None = None) -> ClassResult:
    if bound is not None and bound < 1:
        raise ValueError("bound must be >= 1")
    parent, complete = _bfs(eng, eng.vec(a), bound or eng.bounds.nodes)
    return ClassResult(frozenset(parent), complete)


# atoms -------------------------------------------------------------------


@dataclass(frozen=True)
class AtomVerdict:
    verdict: str  # "Yes" | "No" | "Unknown"
    witness: Optional[tuple[Vec, Vec]] = None

    def __bool__(self):
        return self.verdict == "Yes"


def _splits(x: Vec):
    for b in itertools.product(*(range(c + 1) for c in x)):
        if any(b) and b != x:
            yield b, _sub(x, b)


def is_atom(eng: CongruenceEngine, a, bounds: Bounds | None = None) -> AtomVerdict:
    bounds = bounds or eng.bounds
    a = eng.vec(a)
    z = equal(eng, a, eng.zero).verdict
    if z is Verdict.EQUAL:
        raise ZeroElement(f"{eng.element(a)} is zero in the monoid")
    unknown = z is Verdict.UNKNOWN
    zero_cache = {}

    def nonzero(x):
        if x not in zero_cache:
            zero_cache[x] = equal(eng, x, eng.zero).verdict
        return zero_cache[x]

    it = _bfs_iter(eng, a, bounds.nodes, {})
    while True:
        try:
            rep = next(it)
        except StopIteration as stop:
            complete = stop.value
            break
        for b, c in _splits(rep):
            vb, vc = nonzero(b), nonzero(c)
            if vb is Verdict.NOT_EQUAL and vc is Verdict.NOT_EQUAL:
                return AtomVerdict("No", (b, c))
            if Verdict.UNKNOWN in (vb, vc):
                unknown = True
    if not complete or unknown:
        return AtomVerdict("Unknown")
    return AtomVerdict("Yes")


# module type -------------------------------------------------------------


def module_type(eng: CongruenceEngine, u, n_max: int | None = None, k_max: int | None = None):
    """Smallest ``(n, k)`` with ``n*u == (n+k)*u``, or None within the bounds.

    Raises :class:`Inconclusive` if an Unknown decision precedes the answer.
    """
    n_max = n_max or eng.bounds.n
    k_max = k_max or eng.bounds.k
    one = eng.unit(u)
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            res = equal(eng, tuple(n * x for x in one), tuple((n + k) * x for x in one))
            if res.verdict is Verdict.UNKNOWN:
                raise Inconclusive(f"equality {n}*{u} vs {n + k}*{u} undecided")
            if res.equal:
                return n, k
    return None


# infiniteness ------------------------------------------------------------


@dataclass(frozen=True)
class InfiniteByWeights:
    vertex: str
    generator: GeneratorName
    classes: tuple[Element, ...]

    def to_json(self):
        return {
            "verdict": "InfiniteByWeights",
            "vertex": self.vertex,
            "generator": str(self.generator),
            "distinct_classes": [c.to_json() for c in self.classes],
        }


class CertificateFailure(AssertionError):
    pass


def infinite_certificate(g: WeightedGraph, eng: CongruenceEngine, bound: int = 10):
    """Pairwise distinct multiples of ``q:v:1`` for a vertex with several weights.

    Returns None (not applicable) when every vertex has at most one weight.
    """
    for v in g.vertices:
        if strata(g, v).k > 1:
            break
    else:
        return None
    q = GeneratorName.q(v, 1)
    if q not in eng.generators:
        raise ValueError(f"engine has no generator {q}; build it from the graph's V-monoid")
    one = eng.unit(q)
    mults = [tuple(n * x for x in one) for n in range(bound + 1)]
    for i, j in itertools.combinations(range(bound + 1), 2):
        res = equal(eng, mults[i], mults[j])
        if res.verdict is Verdict.UNKNOWN:
            raise Inconclusive(f"{i}*{q} vs {j}*{q} undecided")
        if res.equal:
            raise CertificateFailure(f"{i}*{q} == {j}*{q}")
    return InfiniteByWeights(v, q, tuple(eng.element(m) for m in mults))


# refinement --------------------------------------------------------------


@dataclass(frozen=True)
class RefinementResult:
    verdict: str  # "Satisfied" | "Fails" | "Inapplicable"
    bound: int
    witness: Optional[tuple[Vec, Vec, Vec, Vec]] = None
    checked: int = 0

    def to_json(self, eng: CongruenceEngine | None = None):
        out = {"verdict": self.verdict, "bound": self.bound, "checked": self.checked}
        if self.witness is not None:
            names = ("a1", "a2", "b1", "b2")
            out["witness"] = {
                k: (eng.element(v).to_json(eng.generators) if eng else list(v)) for k, v in zip(names, self.witness)
            }
        return out


def _compositions(n_vars: int, total: int):
    if n_vars == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(n_vars - 1, total - first):
            yield (first,) + rest


def degree_classes(eng: CongruenceEngine, bound: int) -> dict[Vec, Vec]:
    """Class representative (least vector) of every vector of degree <= bound.

    Only meaningful for degree-preserving presentations.
    """
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d in range(bound + 1):
        layer = list(_compositions(eng.n, d))
        for x in layer:
            parent[x] = x
        for x in layer:
            for y, _ in eng.neighbours(x):
                rx, ry = find(x), find(y)
                if rx != ry:
                    lo, hi = sorted((rx, ry))
                    parent[hi] = lo
    return {x: find(x) for x in parent}


def is_degree_preserving(eng: CongruenceEngine) -> bool:
    return all(sum(l) == sum(r) for l, r in eng.vectors)


def refinement_check(eng: CongruenceEngine, degree_bound: int | None = None) -> RefinementResult:
    """Exhaustive refinement search over classes of total degree <= degree_bound."""
    bound = eng.bounds.degree if degree_bound is None else degree_bound
    if not is_degree_preserving(eng):
        return RefinementResult("Inapplicable", bound)
    cls = degree_classes(eng, bound)
    members: dict[Vec, list[Vec]] = {}
    for x, r in cls.items():
        members.setdefault(r, []).append(x)
    reps = sorted(members, key=lambda r: (sum(r), r))
    checked = 0
    for i, a1 in enumerate(reps):
        if not any(a1):
            continue
        for a2 in reps[i:]:
            if not any(a2) or sum(a1) + sum(a2) > bound:
                continue
            achievable = set()
            for x in members[a1]:
                for y in members[a2]:
                    for c11 in itertools.product(*(range(c + 1) for c in x)):
                        c12 = _sub(x, c11)
                        for c21 in itertools.product(*(range(c + 1) for c in y)):
                            c22 = _sub(y, c21)
                            achievable.add((cls[_add(c11, c21)], cls[_add(c12, c22)]))
            for s in members[cls[_add(a1, a2)]]:
                for b1 in itertools.product(*(range(c + 1) for c in s)):
                    b2 = _sub(s, b1)
                    checked += 1
                    if (cls[b1], cls[b2]) not in achievable:
                        return RefinementResult("Fails", bound, (a1, a2, b1, b2), checked)
    return RefinementResult("Satisfied", bound, None, checked)


# fingerprint -------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    generator_count: int
    relation_count: int
    atom_degree: int
    atoms: tuple[Element, ...]
    atoms_unknown: int
    group: AbelianGroupInvariants
    degree_preserving: bool
    refinement: RefinementResult
    infiniteness: str

    @property
    def atom_count(self) -> int:
        return len(self.atoms)

    def to_json(self) -> dict:
        return {
            "generator_count": self.generator_count,
            "relation_count": self.relation_count,
            "atom_degree": self.atom_degree,
            "atom_count": self.atom_count,
            "atoms": [a.to_json() for a in self.atoms],
            "atoms_unknown": self.atoms_unknown,
            "group": self.group.to_json(),
            "degree_preserving": self.degree_preserving,
            "refinement": self.refinement.to_json(),
            "infiniteness": self.infiniteness,
        }


def _infiniteness(eng: CongruenceEngine, group: AbelianGroupInvariants, bounds: Bounds) -> str:
    if group.free_rank > 0:
        return "Infinite"
    periodic = True
    for g in eng.generators:
        try:
            if module_type(eng, g, bounds.n, bounds.k) is None:
                periodic = False
        except Inconclusive:
            periodic = False
    if periodic:
        return "Finite"
    for g in eng.generators:
        one = eng.unit(g)
        mults = [tuple(n * x for x in one) for n in range(bounds.n + 1)]
        if all(
            equal(eng, mults[i], mults[j]).verdict is Verdict.NOT_EQUAL
            for i, j in itertools.combinations(range(len(mults)), 2)
        ):
            return "InfiniteAtBound"
    return "Unknown"


def fingerprint(eng: CongruenceEngine, bounds: Bounds | None = None, simplify: bool = True) -> Fingerprint:
    """Bounded isomorphism invariants of the presented monoid.

    With ``simplify`` the presentation is first reduced by generator
    elimination (an isomorphic monoid), so counts refer to the simplified one.
    """
    bounds = bounds or eng.bounds
    if simplify:
        p, _ = auto_simplify(eng.presentation)
        eng = CongruenceEngine(p, replace(bounds))
    atoms: list[Vec] = []
    unknown = 0
    for d in range(1, bounds.atom_degree + 1):
        for x in _compositions(eng.n, d):
            if equal(eng, x, eng.zero).verdict is not Verdict.NOT_EQUAL:
                continue
            if any(equal(eng, x, a).equal for a in atoms):
                continue
            v = is_atom(eng, x, bounds)
            if v.verdict == "Yes":
                atoms.append(x)
            elif v.verdict == "Unknown":
                unknown += 1
    group, _ = group_invariants(group_completion(eng.presentation))
    refinement = refinement_check(eng, bounds.degree)
    return Fingerprint(
        generator_count=eng.n,
        relation_count=len(eng.presentation.relations),
        atom_degree=bounds.atom_degree,
        atoms=tuple(eng.element(a) for a in atoms),
        atoms_unknown=unknown,
        group=group,
        degree_preserving=is_degree_preserving(eng),
        refinement=refinement,
        infiniteness=_infiniteness(eng, group, bounds),
    )
