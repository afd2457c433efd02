"""Exact integer linear algebra for boundary matrices.

Matrices are column-sparse: ``cols[c]`` maps row index to a nonzero int.
Python ints are arbitrary precision, so nothing here can overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [{} for _ in range(ncols)]
        self.cols = cols

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for c, v in enumerate(row):
                if v:
                    cols[c][r] = int(v)
        return cls(nrows, ncols, cols)

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                out[r][c] = v
        return out

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = []
        for ocol in other.cols:
            acc = {}
            for k, b in ocol.items():
                for r, a in self.cols[k].items():
                    acc[r] = acc.get(r, 0) + a * b
            cols.append({r: v for r, v in acc.items() if v})
        return SparseMatrix(self.nrows, other.ncols, cols)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def to_text(self, label="") -> str:
        """``dim rows cols`` header followed by ``row col value`` triplets."""
        lines = [f"{label} {self.nrows} {self.ncols}".strip()]
        for c, col in enumerate(self.cols):
            for r in sorted(col):
                lines.append(f"{r} {c} {col[r]}")
        return "\n".join(lines) + "\n"


def _as_sparse(M) -> SparseMatrix:
    if isinstance(M, SparseMatrix):
        return M
    return SparseMatrix.from_dense(M)


@dataclass(frozen=True)
class SmithForm:
    """Nonzero invariant factors ``d_1 | d_2 | ... | d_r``."""

    factors: tuple

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self.factors if d > 1)


def smith_normal_form(M) -> SmithForm:
    """Invariant factors of an integer matrix.

    Unit entries are pivoted away sparsely first (boundary matrices are mostly
    +-1); whatever is left is reduced densely with smallest-absolute-value
    pivots.
    """
    M = _as_sparse(M)
    cols = {c: dict(col) for c, col in enumerate(M.cols) if col}
    rows = {}
    for c, col in cols.items():
        for r, v in col.items():
            rows.setdefault(r, {})[c] = v

    units = 0
    # columns are revisited because eliminations can create new unit entries
    progress = True
    while progress and cols:
        progress = False
        for c in sorted(cols, key=lambda k: len(cols[k])):
            col = cols.get(c)
            if col is None:
                continue
            pivot_row = None
            best = None
            for r, v in col.items():
                if v == 1 or v == -1:
                    weight = len(rows[r])
                    if best is None or weight < best:
                        pivot_row, best = r, weight
            if pivot_row is None:
                continue
            _eliminate_unit(cols, rows, pivot_row, c)
            units += 1
            progress = True

    rest = _dense_invariants(cols, rows)
    factors = [1] * units + rest
    return SmithForm(tuple(factors))


def _eliminate_unit(cols, rows, r, c):
    pcol = cols[c]
    p = pcol[r]
    for c2 in [k for k in rows[r] if k != c]:
        col2 = cols[c2]
        f = col2[r] * p  # p is +-1, so col2[r] / p == col2[r] * p
        for r2, v in pcol.items():
            nv = col2.get(r2, 0) - f * v
            if nv:
                col2[r2] = nv
                rows[r2][c2] = nv
            else:
                col2.pop(r2, None)
                rows[r2].pop(c2, None)
        if not col2:
            del cols[c2]
    # row r now only meets column c, so clearing column c by row ops
    # touches nothing else: drop both
    for r2 in pcol:
        rows[r2].pop(c, None)
        if not rows[r2]:
            del rows[r2]
    del cols[c]


def _dense_invariants(cols, rows):
    if not cols:
        return []
    rkeys = sorted(rows)
    ckeys = sorted(cols)
    rpos = {r: i for i, r in enumerate(rkeys)}
    A = [[0] * len(ckeys) for _ in rkeys]
    for j, c in enumerate(ckeys):
        for r, v in cols[c].items():
            A[rpos[r]][j] = v
    return dense_smith(A)


def dense_smith(A):
    """Invariant factors of a dense integer matrix (list of rows); mutates ``A``."""
    m = len(A)
    n = len(A[0]) if m else 0
    out = []
    t = 0
    while t < min(m, n):
        # smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        rt, ri = A[t], A[i]
                        for k in range(t, n):
                            ri[k] -= q * rt[k]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the whole trailing block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                rt, rb = A[t], A[bad]
                for k in range(t, n):
                    rt[k] += rb[k]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                v = A[i][t]
                if v and abs(v) < best[0]:
                    best = (abs(v), i, t)
            for j in range(t + 1, n):
                v = A[t][j]
                if v and abs(v) < best[0]:
                    best = (abs(v), t, j)
            _, i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        out.append(abs(A[t][t]))
        t += 1
    return out


def rank_mod_p(M, p: int) -> int:
    """Rank over the prime field of order ``p`` by sparse elimination."""
    M = _as_sparse(M)
    pivots = {}  # lead row -> vector normalised to lead coefficient 1
    rank = 0
    for col in M.cols:
        vec = {r: v % p for r, v in col.items() if v % p}
        while vec:
            lead = min(vec)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(vec[lead], -1, p)
                pivots[lead] = {r: v * inv % p for r, v in vec.items()}
                rank += 1
                break
            f = vec[lead]
            for r, v in piv.items():
                nv = (vec.get(r, 0) - f * v) % p
                if nv:
                    vec[r] = nv
                else:
                    vec.pop(r, None)
    return rank


def rank_rational(M) -> int:
    """Rank over the rationals by fraction-free sparse elimination."""
    M = _as_sparse(M)
    pivots = {}
    rank = 0
    for col in M.cols:
        vec = dict(col)
        while vec:
            lead = min(vec)
            piv = pivots.get(lead)
            if piv is None:
                g = 0
                for v in vec.values():
                    g = gcd(g, v)
                pivots[lead] = {r: v // g for r, v in vec.items()}
                rank += 1
                break
            a, b = piv[lead], vec[lead]
            new = {}
            for r in vec.keys() | piv.keys():
                nv = a * vec.get(r, 0) - b * piv.get(r, 0)
                if nv:
                    new[r] = nv
            g = 0
            for v in new.values():
                g = gcd(g, v)
            vec = {r: v // g for r, v in new.items()} if g > 1 else new
    return rank


def rank_over(M, characteristic: int) -> int:
    if characteristic == 0:
        return rank_rational(M)
    return rank_mod_p(M, characteristic)
