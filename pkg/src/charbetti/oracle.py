"""Betti numbers straight from the Koszul complex, as a cross-check.

``Tor_i(k, R/I)_a`` is the homology of the degree-``a`` strand of
``K(x_1..x_n) ⊗ R/I``. In degree ``a`` that strand has one basis vector
``e_tau ⊗ x^(a - tau)`` for each squarefree ``tau ⊆ supp(a)`` with
``x^(a - tau)`` not in ``I``. Nothing here goes through simplicial complexes,
polarization or the sparse elimination used elsewhere.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

from .betti import BettiTable, IDEAL, QUOTIENT
from .errors import CapacityError
from .ideal import FieldSpec, Monomial, MonomialIdeal

ORACLE_BOUND = 14


def _dense_rank(rows, p):
    if not rows or not rows[0]:
        return 0
    if p:
        A = [[v % p for v in r] for r in rows]
    else:
        A = [[Fraction(v) for v in r] for r in rows]
    m, n = len(A), len(A[0])
    rank = 0
    for c in range(n):
        piv = next((r for r in range(rank, m) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        top = A[rank]
        inv = pow(top[c], -1, p) if p else 1 / top[c]
        for r in range(m):
            if r != rank and A[r][c]:
                f = A[r][c] * inv
                row = A[r]
                for k in range(c, n):
                    row[k] -= f * top[k]
                if p:
                    for k in range(c, n):
                        row[k] %= p
        rank += 1
        if rank == m:
            break
    return rank


def koszul_betti(I: MonomialIdeal, F: FieldSpec, a) -> dict:
    """``{i: beta_{i,a}(R/I)}`` for the multidegree ``a`` (dense exponent vector)."""
    a = tuple(a)
    support = [v for v, e in enumerate(a) if e]
    if len(support) > ORACLE_BOUND:
        raise CapacityError(f"Koszul strand over {len(support)} variables", bound=ORACLE_BOUND)
    p = F.characteristic

    def alive(tau):
        rest = list(a)
        for v in tau:
            rest[v] -= 1
        return not I.contains(Monomial.from_exponents(rest))

    basis = []
    for i in range(len(support) + 1):
        basis.append([tau for tau in combinations(support, i) if alive(tau)])
    index = [{tau: k for k, tau in enumerate(level)} for level in basis]

    ranks = [0]
    for i in range(1, len(basis)):
        rows = [[0] * len(basis[i]) for _ in basis[i - 1]]
        for col, tau in enumerate(basis[i]):
            for pos, v in enumerate(tau):
                face = tau[:pos] + tau[pos + 1:]
                row = index[i - 1].get(face)
                if row is not None:
                    rows[row][col] = -1 if pos % 2 else 1
        ranks.append(_dense_rank(rows, p))
    ranks.append(0)
    out = {}
    for i in range(len(basis)):
        d = len(basis[i]) - ranks[i] - ranks[i + 1]
        if d:
            out[i] = d
    return out


def koszul_oracle(I: MonomialIdeal, F: FieldSpec, sigma) -> dict:
    """``{i: beta_{i,sigma}(R/I)}`` for a squarefree multidegree given by variables."""
    ids = {I.var_id(x) for x in sigma}
    return koszul_betti(I, F, [1 if v in ids else 0 for v in range(I.nvars)])


def koszul_multigraded(I: MonomialIdeal, F: FieldSpec) -> dict:
    """``{(i, sigma_mask): n}`` over all squarefree multidegrees."""
    out = {}
    for mask in range(1 << I.nvars):
        a = [(mask >> v) & 1 for v in range(I.nvars)]
        for i, d in koszul_betti(I, F, a).items():
            out[i, mask] = d
    return out


def koszul_table(I: MonomialIdeal, F: FieldSpec, convention: str = QUOTIENT) -> BettiTable:
    """Graded table summed over every multidegree below the lcm of the generators."""
    top = [0] * I.nvars
    for g in I.gens:
        for v, e in g.items:
            top[v] = max(top[v], e)
    entries = {}
    for a in product(*(range(e + 1) for e in top)):
        deg = sum(a)
        for i, d in koszul_betti(I, F, a).items():
            entries[i, deg] = entries.get((i, deg), 0) + d
    table = BettiTable(QUOTIENT, entries)
    return table.to_ideal() if convention == IDEAL else table
