"""Exact verification of matrix identities over a weighted Leavitt path algebra.

Elements are formal sums of words in vertices ``v``, edge parts ``e_i`` and
their adjoints ``e_i*`` with rational coefficients.  :func:`reduce` applies
the defining relations as rewriting: vertex absorption and orthogonality
(monomial rules), and contraction of complete sums

* ``sum_{e in s^-1(v)} e_i e_j*  ->  delta_ij v``
* ``sum_{h} e_h* f_h             ->  delta_ef r(e)``

where edge parts of index above the edge's weight are zero.  The reducer
certifies identities; a nonzero residual is reported, never hidden.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .graph import Edge, WeightedGraph, strata

__all__ = [
    "Letter",
    "StarPolynomial",
    "BlockMatrix",
    "ReductionRuleSet",
    "EmptySource",
    "IndexOutOfRange",
    "DimensionMismatch",
    "NonTermination",
    "IdentityResult",
    "WitnessReport",
    "build_A",
    "block",
    "epsilon",
    "epsilon_definition",
    "star_transpose",
    "reduce",
    "verify_identity",
    "verify_theorem_witnesses",
]


class EmptySource(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class DimensionMismatch(ValueError):
    pass


class NonTermination(RuntimeError):
    pass


class Letter(NamedTuple):
    kind: str  # "v" vertex, "e" edge part, "s" adjoint edge part
    name: str
    index: int = 0

    def star(self) -> "Letter":
        if self.kind == "v":
            return self
        return Letter("s" if self.kind == "e" else "e", self.name, self.index)

    def __str__(self):
        if self.kind == "v":
            return self.name
        return f"{self.name}_{self.index}" + ("*" if self.kind == "s" else "")


Monomial = tuple  # tuple of Letter, never empty


def _render_word(word) -> str:
    return "·".join(map(str, word))


class StarPolynomial:
    """Finite sum of words with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {}
        for word, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[tuple(word)] = c

    @classmethod
    def vertex(cls, v: str) -> "StarPolynomial":
        return cls({(Letter("v", v),): 1})

    @classmethod
    def edge(cls, e: Edge, i: int, star: bool = False) -> "StarPolynomial":
        """``e_i`` (or ``e_i*``); zero when ``i`` exceeds the weight of ``e``."""
        if i > e.weight:
            return cls()
        return cls({(Letter("s" if star else "e", e.id, i),): 1})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, StarPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "StarPolynomial") -> "StarPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return StarPolynomial(out)

    def __neg__(self):
        return StarPolynomial({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return StarPolynomial({w: c * other for w, c in self.terms.items()})
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return StarPolynomial(out)

    __rmul__ = __mul__

    def star(self) -> "StarPolynomial":
        return StarPolynomial({tuple(l.star() for l in reversed(w)): c for w, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            if c == 1:
                parts.append(_render_word(w))
            elif c == -1:
                parts.append("-" + _render_word(w))
            else:
                parts.append(f"{c}·{_render_word(w)}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


ZERO = StarPolynomial()


@dataclass(frozen=True)
class BlockMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples of StarPolynomial

    @classmethod
    def of(cls, entries, rows: int | None = None, cols: int | None = None) -> "BlockMatrix":
        entries = tuple(tuple(r) for r in entries)
        rows = len(entries) if rows is None else rows
        cols = (len(entries[0]) if entries else 0) if cols is None else cols
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionMismatch("ragged matrix")
        return cls(rows, cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BlockMatrix":
        return cls(rows, cols, tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def diag(cls, polys) -> "BlockMatrix":
        polys = list(polys)
        n = len(polys)
        return cls(n, n, tuple(tuple(polys[i] if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def block_diag(cls, *blocks: "BlockMatrix") -> "BlockMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[ZERO] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b.entries[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls.of(out, rows, cols)

    @classmethod
    def hstack(cls, *blocks: "BlockMatrix") -> "BlockMatrix":
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise DimensionMismatch("hstack of blocks with different row counts")
        return cls.of(
            [sum((list(b.entries[i]) for b in blocks), []) for i in range(rows)], rows, sum(b.cols for b in blocks)
        )

    def __getitem__(self, ij) -> StarPolynomial:
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._same_shape(other)
        return BlockMatrix.of(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)], self.rows, self.cols
        )

    def __sub__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._same_shape(other)
        return BlockMatrix.of(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)], self.rows, self.cols
        )

    def __matmul__(self, other: "BlockMatrix") -> "BlockMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = StarPolynomial()
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return BlockMatrix.of(out, self.rows, other.cols)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def star(self) -> "BlockMatrix":
        return star_transpose(self)

    def map(self, fn) -> "BlockMatrix":
        return BlockMatrix.of([[fn(p) for p in row] for row in self.entries], self.rows, self.cols)

    def __str__(self):
        if not self.rows or not self.cols:
            return f"<empty {self.rows}x{self.cols}>"
        cells = [[str(p) for p in row] for row in self.entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[ " + "  ".join(c.ljust(width) for c in row) + " ]" for row in cells)


def star_transpose(m: BlockMatrix) -> BlockMatrix:
    return BlockMatrix.of(
        [[m.entries[i][j].star() for i in range(m.rows)] for j in range(m.cols)], m.cols, m.rows
    )


# reduction ---------------------------------------------------------------


class ReductionRuleSet:
    """Rewriting rules of one weighted graph.

    ``disabled`` may name whole rule families (``"i"``, ``"ii"``, ``"path"``,
    ``"iii"``, ``"iv"``) or single sum relations (``"iii:v"``, ``"iv:v"``);
    used for negative controls.
    """

    def __init__(self, g: WeightedGraph, disabled=()):
        self.graph = g
        self.disabled = frozenset(disabled)
        self.edges = {e.id: e for e in g.edges}
        self.out = {v: strata(g, v).ordered_edges for v in g.vertices}

    def enabled(self, family: str, vertex: Optional[str] = None) -> bool:
        if family in self.disabled:
            return False
        return vertex is None or f"{family}:{vertex}" not in self.disabled

    def start(self, letter: Letter) -> str:
        if letter.kind == "v":
            return letter.name
        e = self.edges[letter.name]
        return e.source if letter.kind == "e" else e.range

    def end(self, letter: Letter) -> str:
        if letter.kind == "v":
            return letter.name
        e = self.edges[letter.name]
        return e.range if letter.kind == "e" else e.source

    def normalize_word(self, word) -> Optional[tuple]:
        """Monomial rules; None means the word is zero."""
        stack: list = []
        for x in word:
            if x.kind != "v" and x.index > self.edges[x.name].weight:
                return None
            if not stack:
                stack.append(x)
                continue
            top = stack[-1]
            if top.kind == "v" and x.kind == "v":
                if not self.enabled("i"):
                    stack.append(x)
                elif top != x:
                    return None
            elif top.kind == "v" or x.kind == "v":
                if not self.enabled("ii"):
                    stack.append(x)
                elif top.kind == "v":
                    if top.name != self.start(x):
                        return None
                    stack[-1] = x
                elif x.name != self.end(top):
                    return None
            else:
                if self.enabled("path") and self.end(top) != self.start(x):
                    return None
                stack.append(x)
        return tuple(stack)

    def normalize(self, p: StarPolynomial) -> StarPolynomial:
        out: dict = {}
        for w, c in p.terms.items():
            nw = self.normalize_word(w)
            if nw is not None:
                out[nw] = out.get(nw, 0) + c
        return StarPolynomial(out)

    def contraction(self, terms: dict, word: tuple, p: int):
        """The complete group anchored at ``word[p:p+2]`` and its replacement, if any."""
        x, y = word[p], word[p + 1]
        X, Y = word[:p], word[p + 2:]
        if x.kind == "e" and y.kind == "s" and x.name == y.name:
            v = self.edges[x.name].source
            if not self.enabled("iii", v):
                return None
            need = max(x.index, y.index)
            group = [
                X + (Letter("e", f.id, x.index), Letter("s", f.id, y.index)) + Y
                for f in self.out[v]
                if f.weight >= need
            ]
            target = X + (Letter("v", v),) + Y if x.index == y.index else None
        elif x.kind == "s" and y.kind == "e" and x.index == y.index:
            e, f = self.edges[x.name], self.edges[y.name]
            if e.source != f.source or not self.enabled("iv", e.source):
                return None
            group = [
                X + (Letter("s", e.id, h), Letter("e", f.id, h)) + Y for h in range(1, min(e.weight, f.weight) + 1)
            ]
            target = X + (Letter("v", e.range),) + Y if e.id == f.id else None
        else:
            return None
        if all(w in terms for w in group):
            return group, target
        return None


def reduce(p: StarPolynomial, rules: ReductionRuleSet, order: str = "forward", cap: int = 10_000) -> StarPolynomial:
    """Normal form under the monomial rules and complete-sum contractions.

    ``order`` ("forward" or "reverse") selects the scan order for
    contractions; both should give the same result.
    """
    p = rules.normalize(p)
    for _ in range(cap):
        terms = p.terms
        words = sorted(terms, key=lambda w: (len(w), w), reverse=(order == "reverse"))
        hit = None
        for w in words:
            positions = range(len(w) - 1)
            for pos in reversed(positions) if order == "reverse" else positions:
                hit = rules.contraction(terms, w, pos)
                if hit:
                    c = terms[w]
                    break
            if hit:
                break
        if not hit:
            return p
        group, target = hit
        out = dict(terms)
        for g in group:
            out[g] = out[g] - c
        if target is not None:
            nt = rules.normalize_word(target)
            if nt is not None:
                out[nt] = out.get(nt, 0) + c
        p = StarPolynomial(out)
    raise NonTermination(f"no normal form after {cap} passes")


@dataclass(frozen=True)
class IdentityResult:
    verified: bool
    position: Optional[tuple[int, int]] = None
    residual: Optional[StarPolynomial] = None

    def __bool__(self):
        return self.verified

    @property
    def verdict(self) -> str:
        return "Verified" if self.verified else "Counterexample"

    def to_json(self):
        out = {"verdict": self.verdict}
        if not self.verified:
            out["position"] = list(self.position)
            out["residual"] = str(self.residual)
        return out


def verify_identity(lhs: BlockMatrix, rhs: BlockMatrix, rules: ReductionRuleSet, order: str = "forward") -> IdentityResult:
    if (lhs.rows, lhs.cols) != (rhs.rows, rhs.cols):
        raise DimensionMismatch(f"{lhs.rows}x{lhs.cols} vs {rhs.rows}x{rhs.cols}")
    for i in range(lhs.rows):
        for j in range(lhs.cols):
            diff = reduce(lhs.entries[i][j] - rhs.entries[i][j], rules, order)
            if diff:
                return IdentityResult(False, (i, j), diff)
    return IdentityResult(True)


# the matrices ------------------------------------------------------------


def build_A(g: WeightedGraph, v: str) -> BlockMatrix:
    """``w(v) x n(v)`` matrix with entry ``(i, j)`` the i-th part of the j-th edge."""
    st = strata(g, v)
    if not st.ordered_edges:
        raise EmptySource(f"vertex {v!r} emits no edges")
    return BlockMatrix.of(
        [[StarPolynomial.edge(e, i) for e in st.ordered_edges] for i in range(1, st.weight + 1)]
    )


def block(g: WeightedGraph, v: str, l: int, t: int, lp: int, tp: int) -> BlockMatrix:
    """Rows ``w_l+1 .. w_t`` and columns ``n_lp+1 .. n_tp`` of ``build_A``."""
    st = strata(g, v)
    if not st.ordered_edges:
        raise EmptySource(f"vertex {v!r} emits no edges")
    if not (0 <= l < t <= st.k and 0 <= lp < tp <= st.k):
        raise IndexOutOfRange(f"block indices ({l},{t},{lp},{tp}) outside 0..{st.k}")
    w, n = st.weights, st.counts
    edges = st.ordered_edges
    return BlockMatrix.of(
        [
            [StarPolynomial.edge(edges[n[lp] + j], w[l] + i) for j in range(n[tp] - n[lp])]
            for i in range(1, w[t] - w[l] + 1)
        ],
        w[t] - w[l],
        n[tp] - n[lp],
    )


def _vertex_diag(v: str, size: int) -> BlockMatrix:
    return BlockMatrix.diag([StarPolynomial.vertex(v)] * size)


def _empty() -> BlockMatrix:
    return BlockMatrix(0, 0, ())


def epsilon_definition(g: WeightedGraph, v: str, l: int) -> BlockMatrix:
    """``B B*`` for ``B`` = rows up to ``w_l``, columns of edges heavier than ``w_l``."""
    st = strata(g, v)
    if l == 0 or l == st.k:
        return _empty()
    B = block(g, v, 0, l, l, st.k)
    return B @ B.star()


def epsilon(g: WeightedGraph, v: str, l: int, rules: ReductionRuleSet | None = None) -> BlockMatrix:
    """The idempotent as ``diag(v) - B B*`` with ``B`` the columns of weight <= ``w_l``.

    Empty for ``l == 0`` and ``l == k_v``.  Entries are reduced when ``rules``
    is given.
    """
    st = strata(g, v)
    if l == 0 or l == st.k:
        return _empty()
    B = block(g, v, 0, l, 0, l)
    eps = _vertex_diag(v, st.weights[l]) - B @ B.star()
    return eps.map(lambda p: reduce(p, rules)) if rules else eps


@dataclass
class WitnessReport:
    vertex: str
    results: dict = field(default_factory=dict)  # (vertex, l, name) -> IdentityResult

    @property
    def all_verified(self) -> bool:
        return all(r.verified for r in self.results.values())

    def failures(self):
        return {k: r for k, r in self.results.items() if not r.verified}

    def to_json(self) -> list:
        return [
            {"vertex": v, "l": l, "identity": name, **r.to_json()} for (v, l, name), r in self.results.items()
        ]


def verify_theorem_witnesses(
    g: WeightedGraph, v: str, rules: ReductionRuleSet | None = None, order: str = "forward"
) -> WitnessReport:
    """Check the matrix identities realizing the monoid relations at ``v``.

    For the whole matrix ``A``: ``A A* = diag(v)`` and ``A* A = diag(r(e^j))``.
    For each ``1 <= l < k_v``: both forms of the idempotent agree, the Gram
    identity of the leading columns, idempotency, annihilation of the
    weight-``w_l`` columns and the recursive form.  For each ``1 <= l <= k_v``:
    ``X_l Y_l`` and ``Y_l X_l`` equal the two block diagonals.
    """
    st = strata(g, v)
    if not st.ordered_edges:
        raise EmptySource(f"vertex {v!r} emits no edges")
    rules = rules or ReductionRuleSet(g)
    report = WitnessReport(v)
    k, w, n = st.k, st.weights, st.counts
    edges = st.ordered_edges
    rng = lambda a, b: BlockMatrix.diag([StarPolynomial.vertex(edges[j].range) for j in range(a, b)])

    def check(l, name, lhs, rhs):
        report.results[(v, l, name)] = verify_identity(lhs, rhs, rules, order)

    A = build_A(g, v)
    check(0, "AA*=diag(v)", A @ A.star(), _vertex_diag(v, w[k]))
    check(0, "A*A=diag(r)", A.star() @ A, rng(0, n[k]))

    eps = {l: epsilon(g, v, l) for l in range(k + 1)}
    for l in range(1, k):
        B = block(g, v, 0, l, 0, l)
        C = block(g, v, 0, l, l - 1, l)
        check(l, "eps=diag(v)-BB*", epsilon_definition(g, v, l), eps[l])
        check(l, "B*B=diag(r)", B.star() @ B, rng(0, n[l]))
        check(l, "eps^2=eps", eps[l] @ eps[l], eps[l])
        check(l, "eps*C=0", eps[l] @ C, BlockMatrix.zeros(w[l], n[l] - n[l - 1]))
        check(l, "C*eps=0", C.star() @ eps[l], BlockMatrix.zeros(n[l] - n[l - 1], w[l]))
        prev = BlockMatrix.block_diag(eps[l - 1], _vertex_diag(v, w[l] - w[l - 1]))
        check(l, "eps=diag(eps',v)-CC*", eps[l], prev - C @ C.star())

    for l in range(1, k + 1):
        C = block(g, v, 0, l, l - 1, l)
        X = C if l == k else BlockMatrix.hstack(eps[l], C)
        Y = X.star()
        check(l, "XY=diag(eps',v)", X @ Y, BlockMatrix.block_diag(eps[l - 1], _vertex_diag(v, w[l] - w[l - 1])))
        check(l, "YX=diag(eps,r)", Y @ X, BlockMatrix.block_diag(eps[l], rng(n[l - 1], n[l])))
    return report
