"""Betti tables of monomial ideals via Hochster's formula.

For a squarefree ideal ``I`` with Stanley-Reisner complex ``D``,

    beta_{i, sigma}(R/I) = dim H~_{|sigma| - i - 1}(D|sigma; k)

for every subset ``sigma`` of the variables. Everything else reduces to this:
non-squarefree ideals are polarized first (graded Betti numbers are
unchanged), and the ideal convention is the quotient one shifted by one
homological degree.

The subset scans are a map over bit masks split into contiguous chunks. Chunk
results are merged in mask order, so the output does not depend on the number
of worker processes.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat
from typing import Optional

from ._bits import bits, popcount
from .complex import sr_complex
from .errors import CapacityError, InputError
from .homology import (
    homology_dims_from_faces,
    homology_groups_from_faces,
    torsion_primes_of,
)
from .ideal import (
    QQ,
    FieldSpec,
    MonomialIdeal,
    d_of,
    graded_piece,
    polarize,
    power_split,
)

QUOTIENT = "quotient"
IDEAL = "ideal"
CONVENTIONS = (QUOTIENT, IDEAL)
DEFAULT_SCAN_BOUND = 20
CHUNK = 256


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise InputError(f"unknown module convention {convention!r}")


class BettiTable:
    """Graded Betti numbers ``(i, j) -> beta_{i,j}`` (zeros not stored)."""

    __slots__ = ("convention", "entries")

    def __init__(self, convention: str = QUOTIENT, entries=None):
        _check_convention(convention)
        clean = {}
        for (i, j), n in dict(entries or {}).items():
            if n < 0:
                raise InputError(f"negative Betti number at ({i}, {j})")
            if n:
                clean[int(i), int(j)] = int(n)
        self.convention = convention
        self.entries = dict(sorted(clean.items()))

    def __getitem__(self, key) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other):
        return (
            isinstance(other, BettiTable)
            and self.convention == other.convention
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"BettiTable({self.convention!r}, {self.entries!r})"

    def totals(self) -> dict:
        out = {}
        for (i, _), n in self.entries.items():
            out[i] = out.get(i, 0) + n
        return dict(sorted(out.items()))

    def total_row(self) -> list:
        if not self.entries:
            return []
        t = self.totals()
        return [t.get(i, 0) for i in range(max(t) + 1)]

    def regularity(self) -> Optional[int]:
        """``max(j - i)``; ``None`` for the zero table."""
        if not self.entries:
            return None
        return max(j - i for i, j in self.entries)

    def to_ideal(self) -> "BettiTable":
        if self.convention == IDEAL:
            return self
        if self[0, 0] != 1:
            raise InputError("quotient table without beta_{0,0} = 1")
        return BettiTable(IDEAL, {(i - 1, j): n for (i, j), n in self.entries.items() if i > 0})

    def to_quotient(self) -> "BettiTable":
        if self.convention == QUOTIENT:
            return self
        entries = {(i + 1, j): n for (i, j), n in self.entries.items()}
        entries[0, 0] = 1
        return BettiTable(QUOTIENT, entries)

    def render(self) -> str:
        """Macaulay2-style text: columns are homological degrees ``i``, rows are
        ``j - i``, zeros print as ``.``."""
        label_w = len("total:")
        if not self.entries:
            return " " * label_w + "\n" + "total:\n"
        cols = range(max(i for i, _ in self.entries) + 1)
        row_keys = [j - i for i, j in self.entries]
        rows = range(min(row_keys), max(row_keys) + 1)
        totals = self.totals()
        cells = {c: [str(c), str(totals.get(c, 0))] for c in cols}
        for r in rows:
            for c in cols:
                n = self[c, c + r]
                cells[c].append(str(n) if n else ".")
        widths = {c: max(len(s) for s in cells[c]) for c in cols}
        labels = [""] + ["total:"] + [f"{r}:" for r in rows]
        lines = []
        for k, label in enumerate(labels):
            line = label.rjust(label_w) + "".join(" " + cells[c][k].rjust(widths[c]) for c in cols)
            lines.append(line.rstrip() if k == 0 else line)
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "convention": self.convention,
            "entries": [[i, j, n] for (i, j), n in self.entries.items()],
        }

    @classmethod
    def from_json(cls, data) -> "BettiTable":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            entries = {}
            for i, j, n in data["entries"]:
                entries[i, j] = entries.get((i, j), 0) + n
            return cls(data["convention"], entries)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed Betti table JSON: {exc}") from None


@dataclass(frozen=True)
class MultigradedBetti:
    """``(i, sigma) -> beta_{i,sigma}`` with ``sigma`` a bit mask over ``ring``."""

    ring: tuple
    convention: str
    entries: dict

    def __getitem__(self, key) -> int:
        return self.entries.get(key, 0)

    def graded(self) -> BettiTable:
        out = {}
        for (i, sigma), n in self.entries.items():
            key = (i, popcount(sigma))
            out[key] = out.get(key, 0) + n
        return BettiTable(self.convention, out)

    def filtered(self, keep_mask: int) -> "MultigradedBetti":
        return MultigradedBetti(
            self.ring,
            self.convention,
            {k: n for k, n in self.entries.items() if k[1] & ~keep_mask == 0},
        )


# -- the subset scan ---------------------------------------------------------


def _check_bound(n, bound, allow_large):
    if n > bound and not allow_large:
        raise CapacityError(
            f"subset scan over {n} variables", bound=bound, override="--allow-large"
        )


def _faces_within(faces, sigma):
    out = []
    for f in faces:
        if f & ~sigma == 0:
            out.append(f)
    return out


def _betti_chunk(args, masks):
    faces, faceset, characteristic = args
    out = []
    for sigma in masks:
        if sigma and sigma in faceset:
            continue  # a simplex: no reduced homology
        sub = _faces_within(faces, sigma)
        dims = homology_dims_from_faces(sub, characteristic)
        size = popcount(sigma)
        for i in range(size + 1):
            d = dims.get(size - i - 1, 0)
            if d:
                out.append(((i, sigma), d))
    return out


def _torsion_chunk(args, masks):
    faces, faceset = args
    out = []
    for sigma in masks:
        if sigma in faceset:
            continue
        groups = homology_groups_from_faces(_faces_within(faces, sigma))
        primes = torsion_primes_of(groups)
        if primes:
            out.append((sigma, tuple(sorted(primes))))
    return out


def _chunks(n, size=CHUNK):
    total = 1 << n
    return [range(a, min(a + size, total)) for a in range(0, total, size)]


def _scan(fn, payload, n, jobs=1, stop_early=False):
    """Run ``fn(payload, chunk)`` over all masks of ``n`` bits; concatenate in
    chunk order. With ``stop_early`` the scan ends after the first chunk that
    produced anything."""
    chunks = _chunks(n)
    out = []
    if jobs <= 1:
        for c in chunks:
            res = fn(payload, c)
            out.extend(res)
            if stop_early and res:
                break
        return out
    ex = ProcessPoolExecutor(max_workers=jobs)
    try:
        for res in ex.map(fn, repeat(payload), chunks):
            out.extend(res)
            if stop_early and res:
                break
    finally:
        ex.shutdown(wait=True, cancel_futures=True)
    return out


def hochster_multigraded(
    I: MonomialIdeal,
    F: FieldSpec = QQ,
    jobs: int = 1,
    bound: int = DEFAULT_SCAN_BOUND,
    allow_large: bool = False,
) -> MultigradedBetti:
    """Multigraded Betti numbers of ``R/I`` for squarefree ``I``."""
    if I.is_unit:
        raise InputError("Hochster's formula needs a proper ideal")
    _check_bound(I.nvars, bound, allow_large)
    delta = sr_complex(I)
    faces = delta.faces()
    payload = (faces, frozenset(faces), F.characteristic)
    entries = dict(_scan(_betti_chunk, payload, I.nvars, jobs))
    return MultigradedBetti(I.ring, QUOTIENT, entries)


def betti_table(
    I: MonomialIdeal,
    F: FieldSpec = QQ,
    convention: str = QUOTIENT,
    jobs: int = 1,
    bound: int = DEFAULT_SCAN_BOUND,
    allow_large: bool = False,
) -> BettiTable:
    _check_convention(convention)
    if I.is_unit:
        # R/R = 0, while R itself is free of rank one
        return BettiTable(convention, {(0, 0): 1} if convention == IDEAL else {})
    J = I if I.is_squarefree else polarize(I).ideal
    table = hochster_multigraded(J, F, jobs, bound, allow_large).graded()
    return table.to_ideal() if convention == IDEAL else table


# -- characteristic dependence -----------------------------------------------


@dataclass(frozen=True)
class CharDependenceReport:
    """Subsets ``sigma`` (as variable names of ``ring``) whose restriction has
    torsion in integer homology, with the primes involved.

    ``ring`` is the polarized ring when the input was not squarefree.
    """

    depends: bool
    witnesses: tuple
    primes: tuple
    ring: tuple
    polarized: bool = False
    complete: bool = True

    def to_json(self) -> dict:
        return {
            "depends": self.depends,
            "primes": list(self.primes),
            "witnesses": [{"sigma": list(s), "primes": list(p)} for s, p in self.witnesses],
            "ring": list(self.ring),
            "polarized": self.polarized,
            "complete": self.complete,
        }


def char_dependence_scan(
    I: MonomialIdeal,
    early_exit: bool = False,
    jobs: int = 1,
    bound: int = DEFAULT_SCAN_BOUND,
    allow_large: bool = False,
) -> CharDependenceReport:
    polarized = not I.is_squarefree
    J = polarize(I).ideal if polarized else I
    if J.is_unit:
        return CharDependenceReport(False, (), (), J.ring, polarized)
    _check_bound(J.nvars, bound, allow_large)
    faces = sr_complex(J).faces()
    hits = _scan(_torsion_chunk, (faces, frozenset(faces)), J.nvars, jobs, stop_early=early_exit)
    if early_exit:
        hits = hits[:1]
    witnesses = tuple((tuple(J.ring[v] for v in bits(s)), p) for s, p in hits)
    primes = sorted({q for _, p in hits for q in p})
    return CharDependenceReport(
        bool(hits), witnesses, tuple(primes), J.ring, polarized, complete=not early_exit
    )


def depends_on_char(I: MonomialIdeal, **kw) -> bool:
    return char_dependence_scan(I, early_exit=True, **kw).depends


@dataclass(frozen=True)
class PowersReport:
    t: int
    dep_ideal: bool
    dep_J: bool
    dep_colon: bool

    @property
    def consistent(self) -> bool:
        return self.dep_ideal == (self.dep_J or self.dep_colon)


def powers_report(I: MonomialIdeal, x, **kw) -> PowersReport:
    """Dependence of ``I``, of ``J`` in ``I = (J, x^t)`` and of ``(I : x)``."""
    split = power_split(I, x)
    return PowersReport(
        split.t,
        depends_on_char(I, **kw),
        depends_on_char(split.J, **kw),
        depends_on_char(split.colon, **kw),
    )


# -- consecutive cancellations -----------------------------------------------


@dataclass(frozen=True)
class CancellationStep:
    """Remove ``count`` from both ``beta_{i,j}`` and ``beta_{i+1,j}``."""

    i: int
    j: int
    count: int

    def to_json(self):
        return {"i": self.i, "j": self.j, "count": self.count}


def cancellation_feasible(source: BettiTable, target: BettiTable):
    """Steps turning ``source`` into ``target`` by consecutive cancellations,
    or ``None`` if impossible.

    Cancellations only couple ``(i, j)`` with ``(i + 1, j)``, so each internal
    degree ``j`` is an independent triangular system with a unique solution.
    """
    if source.convention != target.convention:
        raise InputError(
            f"convention mismatch: {source.convention} vs {target.convention}"
        )
    keys = set(source.entries) | set(target.entries)
    steps = []
    for j in sorted({j for _, j in keys}):
        idx = [i for i, jj in keys if jj == j]
        lo, hi = min(idx), max(idx)
        carry = 0
        for i in range(lo, hi + 1):
            diff = source[i, j] - target[i, j]
            if diff < 0:
                return None
            c = diff - carry
            if c < 0:
                return None
            if c:
                steps.append(CancellationStep(i, j, c))
            carry = c
        if carry:
            return None  # the last step would need an entry at column hi + 1
    return sorted(steps, key=lambda s: (s.j, s.i))


# -- linearity ---------------------------------------------------------------


def is_linear_resolution(I: MonomialIdeal, F: FieldSpec, t: int, **kw) -> bool:
    """``I = (I_t)R`` and ``beta_{i,j}(I) = 0`` unless ``j = i + t``."""
    if any(g.degree != t for g in I.gens):
        return False
    table = betti_table(I, F, IDEAL, **kw)
    return all(j == i + t for i, j in table.entries)


@dataclass(frozen=True)
class ComponentwiseReport:
    linear: bool
    checked: tuple  # ((t, is_t_linear), ...)
    bound: int

    @property
    def first_failure(self) -> Optional[int]:
        for t, ok in self.checked:
            if not ok:
                return t
        return None


def is_componentwise_linear(
    I: MonomialIdeal,
    F: FieldSpec,
    stop_at_failure=True,
    squarefree_pieces: Optional[bool] = None,
    **kw,
) -> ComponentwiseReport:
    """Check ``(I_t)R`` for ``t`` from ``d(I)`` up to ``max(max generator degree,
    reg I)``.

    Past that bound ``(I_t)R = I ∩ m^t`` has a ``t``-linear resolution, so the
    finite range is a complete check.

    For squarefree ``I`` the default is the squarefree criterion instead:
    ``I`` is componentwise linear iff each squarefree piece ``I_[t]`` has a
    ``t``-linear resolution (Herzog-Hibi), with ``t`` running up to the number
    of variables. That keeps every check inside the original ring rather than
    polarizing high-degree pieces. Pass ``squarefree_pieces=False`` to force
    the general route.
    """
    if I.is_zero:
        return ComponentwiseReport(True, (), 0)
    if I.is_unit:
        return ComponentwiseReport(True, ((0, True),), 0)
    if squarefree_pieces is None:
        squarefree_pieces = I.is_squarefree
    if squarefree_pieces:
        if not I.is_squarefree:
            raise InputError("squarefree pieces need a squarefree ideal")
        top = I.nvars
    else:
        reg = betti_table(I, F, IDEAL, **kw).regularity()
        top = max(I.max_degree(), reg)
    checked = []
    for t in range(d_of(I), top + 1):
        piece = graded_piece(I, t, squarefree=squarefree_pieces)
        ok = is_linear_resolution(piece, F, t, **kw)
        checked.append((t, ok))
        if not ok and stop_at_failure:
            break
    return ComponentwiseReport(all(ok for _, ok in checked), tuple(checked), top)
