"""Reduced simplicial homology over ZZ, QQ and prime fields.

Chain complexes are augmented: the empty face sits in degree -1, so the empty
complex has ``H_{-1} = ZZ`` and the void complex has no homology at all.
Integer homology comes from Smith normal form; field dimensions come from
separate rank computations, which keeps the universal coefficient identity a
real cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ._bits import bits, popcount, submasks
from .complex import SimplicialComplex
from .errors import CapacityError, InputError
from .ideal import FieldSpec
from .linalg import SparseMatrix, rank_over, smith_normal_form

DEFAULT_MAX_FACES = 500_000


@dataclass(frozen=True)
class ChainBoundary:
    """``faces[k]`` lists the faces of dimension ``k - 1`` (so ``faces[0] == [0]``);
    ``matrices[i]`` is the boundary map from dimension ``i`` to ``i - 1``."""

    faces: tuple
    matrices: tuple

    def face_count(self, dim: int) -> int:
        k = dim + 1
        return len(self.faces[k]) if 0 <= k < len(self.faces) else 0

    def matrix(self, dim: int) -> SparseMatrix:
        if 0 <= dim < len(self.matrices):
            return self.matrices[dim]
        return SparseMatrix(self.face_count(dim - 1), self.face_count(dim))

    @property
    def top_dim(self) -> int:
        return len(self.faces) - 2


def boundary_from_faces(faces: Sequence[int], max_faces: int = DEFAULT_MAX_FACES) -> ChainBoundary:
    """Boundary matrices of a face list that is closed under taking subsets.

    The sign of ``F - v`` is ``(-1)**l`` where ``l`` is the position of ``v``
    in the ascending vertex list of ``F``.
    """
    if len(faces) > max_faces:
        raise CapacityError(f"{len(faces)} faces", bound=max_faces, override="max_faces")
    by_size = []
    for f in sorted(faces, key=lambda m: (popcount(m), m)):
        k = popcount(f)
        while len(by_size) <= k:
            by_size.append([])
        by_size[k].append(f)
    index = [{f: i for i, f in enumerate(level)} for level in by_size]
    mats = []
    for k in range(1, len(by_size)):
        below = index[k - 1]
        cols = []
        for f in by_size[k]:
            col = {}
            sign = 1
            for v in bits(f):
                col[below[f & ~(1 << v)]] = sign
                sign = -sign
            cols.append(col)
        mats.append(SparseMatrix(len(by_size[k - 1]), len(by_size[k]), cols))
    return ChainBoundary(tuple(tuple(level) for level in by_size), tuple(mats))


def boundary(delta: SimplicialComplex, max_faces: int = DEFAULT_MAX_FACES) -> ChainBoundary:
    return boundary_from_faces(delta.faces(), max_faces)


@dataclass(frozen=True, order=True)
class HomologyGroup:
    rank: int = 0
    torsion: tuple = ()

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}


def _groups_from_boundary(cb: ChainBoundary) -> dict:
    top = cb.top_dim
    snf = {i: smith_normal_form(cb.matrices[i]) for i in range(len(cb.matrices))}
    out = {}
    for k in range(-1, top + 1):
        rk = snf[k].rank if k >= 0 else 0
        above = snf.get(k + 1)
        rk_up = above.rank if above else 0
        tors = tuple(sorted(above.torsion)) if above else ()
        out[k] = HomologyGroup(cb.face_count(k) - rk - rk_up, tors)
    return out


def homology_groups_from_faces(faces: Sequence[int]) -> dict:
    """``{k: HomologyGroup}`` for ``k = -1 .. dim``; empty dict for no faces."""
    if not faces:
        return {}
    return _groups_from_boundary(boundary_from_faces(faces))


def homology_groups_Z(delta: SimplicialComplex) -> dict:
    return homology_groups_from_faces(delta.faces())


def homology_Z(delta: SimplicialComplex, i: int) -> HomologyGroup:
    if i < -1:
        raise InputError("reduced homology starts in degree -1")
    return homology_groups_Z(delta).get(i, HomologyGroup())


def _dims_from_boundary(cb: ChainBoundary, characteristic: int) -> dict:
    ranks = [rank_over(m, characteristic) for m in cb.matrices]
    out = {}
    for k in range(-1, cb.top_dim + 1):
        rk = ranks[k] if k >= 0 else 0
        rk_up = ranks[k + 1] if k + 1 < len(ranks) else 0
        out[k] = cb.face_count(k) - rk - rk_up
    return out


def homology_dims_from_faces(faces: Sequence[int], characteristic: int) -> dict:
    if not faces:
        return {}
    return _dims_from_boundary(boundary_from_faces(faces), characteristic)


def homology_dims(delta: SimplicialComplex, F: FieldSpec) -> dict:
    return homology_dims_from_faces(delta.faces(), F.characteristic)


def homology_dim(delta: SimplicialComplex, i: int, F: FieldSpec) -> int:
    if i < -1:
        raise InputError("reduced homology starts in degree -1")
    return homology_dims(delta, F).get(i, 0)


def prime_factors(n: int) -> set:
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def torsion_primes_of(groups: dict) -> set:
    out = set()
    for g in groups.values():
        for d in g.torsion:
            out |= prime_factors(d)
    return out


def torsion_primes(delta: SimplicialComplex) -> set:
    return torsion_primes_of(homology_groups_Z(delta))


# -- discrete Morse matchings -------------------------------------------------


@dataclass(frozen=True)
class MatchingVerdict:
    complete: bool
    acyclic: bool
    problems: tuple = ()

    @property
    def ok(self) -> bool:
        return self.complete and self.acyclic and not self.problems


@dataclass(frozen=True)
class MorseMatching:
    """Pairs ``(F, F + y)`` of faces of ``complex`` as bit masks on its vertex list."""

    complex: SimplicialComplex
    pairs: tuple
    verdict: MatchingVerdict

    @property
    def complete(self) -> bool:
        return self.verdict.complete

    @property
    def acyclic(self) -> bool:
        return self.verdict.acyclic


def check_matching(faces: Iterable[int], pairs: Iterable[tuple]) -> MatchingVerdict:
    """Validate a matching on the Hasse diagram of a face set (empty face included).

    Acyclicity is decided by depth-first search on the Hasse digraph with every
    edge pointing down except matched edges, which point up.
    """
    faces = set(faces)
    pairs = list(pairs)
    problems = []
    partner = {}
    for lo, hi in pairs:
        if lo not in faces or hi not in faces:
            problems.append(f"pair ({lo:#x}, {hi:#x}) is not a pair of faces")
            continue
        if lo & hi != lo or popcount(hi) != popcount(lo) + 1:
            problems.append(f"pair ({lo:#x}, {hi:#x}) does not differ by one vertex")
            continue
        for f in (lo, hi):
            if f in partner:
                problems.append(f"face {f:#x} matched twice")
        partner[lo] = hi
        partner[hi] = lo
    complete = all(f in partner for f in faces)

    up = {lo: hi for lo, hi in pairs if partner.get(lo) == hi}
    # 0 = unseen, 1 = on stack, 2 = finished
    state = dict.fromkeys(faces, 0)

    def successors(f):
        out = []
        for v in bits(f):
            g = f & ~(1 << v)
            if up.get(g) != f:
                out.append(g)
        u = up.get(f)
        if u is not None:
            out.append(u)
        return out

    acyclic = True
    for root in faces:
        if state[root]:
            continue
        state[root] = 1
        stack = [(root, iter(successors(root)))]
        while stack and acyclic:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
            elif state[nxt] == 1:
                acyclic = False
            elif state[nxt] == 0:
                state[nxt] = 1
                stack.append((nxt, iter(successors(nxt))))
        if not acyclic:
            break
    return MatchingVerdict(complete, acyclic, tuple(problems))


def coning_matching(gamma: SimplicialComplex, covers: Sequence[SimplicialComplex]) -> MorseMatching:
    """The matching on the coned complex that pairs ``F`` with ``F + y_j`` for the
    least cover index ``j`` whose subcomplex contains the base part of ``F``."""
    from .constructions import coning_faces

    vertices, family = coning_faces(gamma, covers)
    pairs = []
    faces = []
    for sigma, ymask in family.items():
        for tau in submasks(ymask):
            faces.append(sigma | tau)
        if not ymask:
            continue
        low = ymask & -ymask
        rest = ymask & ~low
        for tau in submasks(rest):
            pairs.append((sigma | tau, sigma | tau | low))
    pairs.sort()
    verdict = check_matching(faces, pairs)
    tilde = SimplicialComplex(vertices, [s | y for s, y in family.items()])
    return MorseMatching(tilde, tuple(pairs), verdict)

