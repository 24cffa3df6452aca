"""Integer matrix normal forms and K0 of weighted graphs.

Matrices are lists of lists of Python ints; all arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import WeightedGraph
from .presentations import (
    GroupPresentation,
    auto_simplify,
    build_k0,
    build_v_monoid,
    group_completion,
)

__all__ = [
    "SNFDecomposition",
    "AbelianGroupInvariants",
    "ConsistencyFailure",
    "ConsistencyReport",
    "smith_normal_form",
    "hermite_normal_form",
    "hnf_reduce",
    "separating_invariant",
    "group_invariants",
    "k0_invariants",
    "group_iso_check",
    "k0_consistency",
    "matmul",
    "determinant",
]


class ConsistencyFailure(AssertionError):
    pass


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def determinant(m) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


@dataclass(frozen=True)
class SNFDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    A: list
    U: list
    V: list
    D: list
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def replay(self) -> bool:
        """Check the decomposition from scratch."""
        m = len(self.A)
        n = len(self.V)
        product = matmul(matmul(self.U, self.A), self.V) if m else []
        if product != self.D:
            return False
        if abs(determinant(self.U)) != 1 or abs(determinant(self.V)) != 1:
            return False
        for i in range(m):
            for j in range(n):
                if i != j and self.D[i][j]:
                    return False
        diag = [self.D[i][i] for i in range(min(m, n))]
        nz = [d for d in diag if d]
        if tuple(nz) != self.invariant_factors or diag[: len(nz)] != nz:
            return False
        return all(d > 0 for d in nz) and all(b % a == 0 for a, b in zip(nz, nz[1:]))


def smith_normal_form(A, ncols: int | None = None) -> SNFDecomposition:
    """Smith normal form with recorded transforms.

    The pivot is always an entry of minimal nonzero absolute value in the
    remaining submatrix (first in row-major order).  ``ncols`` is needed only
    when ``A`` has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [list(map(int, row)) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        if all(D[i][j] == 0 for i in range(t, m) for j in range(t, n)):
            break
    factors = tuple(D[i][i] for i in range(min(m, n)) if D[i][i])
    return SNFDecomposition([list(map(int, r)) for r in A], U, V, D, factors)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(rows, ncols: int) -> list[list[int]]:
    """Row-style Hermite basis of the lattice spanned by ``rows``.

    Rows of the result are in echelon form with positive pivots and entries
    above each pivot reduced into ``[0, pivot)``.
    """
    basis = [list(map(int, r)) for r in rows if any(r)]
    out = []
    col = 0
    while basis and col < ncols:
        nz = [r for r in basis if r[col]]
        if not nz:
            col += 1
            continue
        rest = [r for r in basis if not r[col]]
        piv = nz[0]
        for r in nz[1:]:
            g, x, y = _xgcd(piv[col], r[col])
            a, b = piv[col] // g, r[col] // g
            piv, r2 = [x * p + y * s for p, s in zip(piv, r)], [b * p - a * s for p, s in zip(piv, r)]
            if any(r2):
                rest.append(r2)
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        basis = rest
        col += 1
    for i, row in enumerate(out):
        c = next(j for j, x in enumerate(row) if x)
        for k in range(i):
            q = out[k][c] // row[c]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], row)]
    return out


def hnf_reduce(basis, vec) -> tuple[list[int], list[int]]:
    """Reduce ``vec`` against a Hermite basis.

    Returns ``(coefficients, residual)`` with
    ``vec == sum(c * row) + residual``; ``vec`` is in the lattice iff the
    residual is zero.
    """
    res = list(vec)
    coeffs = [0] * len(basis)
    for i, row in enumerate(basis):
        c = next(j for j, x in enumerate(row) if x)
        if res[c] % row[c]:
            break
        coeffs[i] = q = res[c] // row[c]
        res = [a - q * b for a, b in zip(res, row)]
    return coeffs, res


def separating_invariant(rows, ncols: int, vec):
    """A homomorphism certifying ``vec`` is outside the row lattice.

    Returns ``(y, d)`` such that ``y . row == 0 (mod d)`` for every row and
    ``y . vec != 0 (mod d)``, where ``d == 0`` means an exact integer
    functional.  Returns ``None`` if ``vec`` lies in the lattice.
    """
    snf = smith_normal_form(rows, ncols)
    image = [sum(vec[k] * snf.V[k][j] for k in range(ncols)) for j in range(ncols)]
    for j in range(ncols):
        d = snf.invariant_factors[j] if j < snf.rank else 0
        if (d == 0 and image[j]) or (d and image[j] % d):
            return [snf.V[k][j] for k in range(ncols)], d
    return None


@dataclass(frozen=True)
class AbelianGroupInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion if abs(t) != 1))

    def __str__(self):
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data) -> "AbelianGroupInvariants":
        return cls(data["free_rank"], tuple(data["torsion"]))


def group_invariants(p: GroupPresentation) -> tuple[AbelianGroupInvariants, SNFDecomposition]:
    snf = smith_normal_form(p.matrix(), len(p.generators))
    inv = AbelianGroupInvariants(len(p.generators) - snf.rank, tuple(d for d in snf.invariant_factors if d > 1))
    return inv, snf


def k0_invariants(g: WeightedGraph) -> AbelianGroupInvariants:
    return group_invariants(build_k0(g))[0]


def group_iso_check(a: AbelianGroupInvariants, b: AbelianGroupInvariants) -> bool:
    return a.free_rank == b.free_rank and a.torsion == b.torsion


@dataclass(frozen=True)
class ConsistencyReport:
    direct: GroupPresentation
    via_monoid: GroupPresentation
    direct_snf: SNFDecomposition
    via_monoid_snf: SNFDecomposition
    direct_invariants: AbelianGroupInvariants
    via_monoid_invariants: AbelianGroupInvariants

    @property
    def consistent(self) -> bool:
        return group_iso_check(self.direct_invariants, self.via_monoid_invariants)

    def to_json(self) -> dict:
        return {
            "consistent": self.consistent,
            "direct": {**self.direct.to_json(), "invariants": self.direct_invariants.to_json()},
            "via_monoid": {**self.via_monoid.to_json(), "invariants": self.via_monoid_invariants.to_json()},
        }


def k0_consistency(g: WeightedGraph) -> ConsistencyReport:
    """Compare K0 from the vertex presentation with the completion of the simplified monoid."""
    direct = build_k0(g)
    simplified, _ = auto_simplify(build_v_monoid(g))
    via = group_completion(simplified)
    d_inv, d_snf = group_invariants(direct)
    v_inv, v_snf = group_invariants(via)
    report = ConsistencyReport(direct, via, d_snf, v_snf, d_inv, v_inv)
    if not report.consistent:
        raise ConsistencyFailure(f"K0 mismatch: {d_inv} (direct) vs {v_inv} (via monoid)")
    return report
