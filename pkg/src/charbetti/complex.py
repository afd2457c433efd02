"""Simplicial complexes on a named vertex list, with faces as bit masks.

Two degenerate complexes are kept apart: the *void* complex has no faces at
all (facet list ``()``), the *empty* complex has only the empty face (facet
list ``(0,)``). Vertices need not lie in any facet; such ghost vertices still
count for restrictions and for the Stanley-Reisner ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ._bits import bits, mask_of, maximal, minimal_transversals, popcount, submasks
from .errors import CapacityError, InputError, NotSquarefreeError, VoidComplexError
from .ideal import MonomialIdeal

MAX_VERTICES = 63


class SimplicialComplex:
    __slots__ = ("vertices", "facets", "_hash")

    def __init__(self, vertices: Sequence[str], facets: Iterable[int] = ()):
        vertices = tuple(vertices)
        if len(vertices) > MAX_VERTICES:
            raise CapacityError(
                f"{len(vertices)} vertices exceed the {MAX_VERTICES}-vertex limit",
                bound=MAX_VERTICES,
            )
        if len(set(vertices)) != len(vertices):
            raise InputError(f"duplicate vertex names {vertices}")
        full = (1 << len(vertices)) - 1
        facets = list(facets)
        for f in facets:
            if f & ~full:
                raise InputError(f"facet mask {f:#x} uses undeclared vertices")
        self.vertices = vertices
        self.facets = tuple(maximal(facets))
        self._hash = hash((self.vertices, self.facets))

    @classmethod
    def from_faces(cls, vertices: Sequence[str], faces: Iterable[Iterable[str]]):
        vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        masks = []
        for face in faces:
            try:
                masks.append(mask_of(index[v] for v in face))
            except KeyError as exc:
                raise InputError(f"unknown vertex {exc.args[0]!r}") from None
        return cls(vertices, masks)

    @classmethod
    def simplex(cls, vertices: Sequence[str]):
        return cls(vertices, [(1 << len(vertices)) - 1])

    @classmethod
    def void(cls, vertices: Sequence[str] = ()):
        return cls(vertices, [])

    @classmethod
    def empty(cls, vertices: Sequence[str] = ()):
        return cls(vertices, [0])

    @property
    def nvertices(self) -> int:
        return len(self.vertices)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.vertices)) - 1

    @property
    def is_void(self) -> bool:
        return not self.facets

    def vertex_id(self, x) -> int:
        if isinstance(x, int):
            if not 0 <= x < self.nvertices:
                raise InputError(f"unknown vertex id {x}")
            return x
        try:
            return self.vertices.index(x)
        except ValueError:
            raise InputError(f"unknown vertex {x!r}") from None

    def mask(self, names: Iterable) -> int:
        return mask_of(self.vertex_id(x) for x in names)

    def names(self, mask: int) -> tuple:
        return tuple(self.vertices[i] for i in bits(mask))

    def facet_names(self) -> list:
        return [self.names(f) for f in self.facets]

    def contains(self, face: int) -> bool:
        return any(face & f == face for f in self.facets)

    def faces(self) -> list:
        """Every face, ordered by size and then by mask value."""
        out = set()
        for f in self.facets:
            out.update(submasks(f))
        return sorted(out, key=lambda m: (popcount(m), m))

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.vertices == other.vertices
            and self.facets == other.facets
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SimplicialComplex({list(self.vertices)}, {self.facet_names()})"


def _require_same_vertices(a: SimplicialComplex, b: SimplicialComplex):
    if a.vertices != b.vertices:
        raise InputError("complexes live on different vertex lists")


def union(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    _require_same_vertices(a, b)
    return SimplicialComplex(a.vertices, a.facets + b.facets)


def intersection(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    _require_same_vertices(a, b)
    return SimplicialComplex(a.vertices, [f & g for f in a.facets for g in b.facets])


def is_subcomplex(a: SimplicialComplex, b: SimplicialComplex) -> bool:
    _require_same_vertices(a, b)
    return all(b.contains(f) for f in a.facets)


def sr_complex(I: MonomialIdeal) -> SimplicialComplex:
    """Stanley-Reisner complex of a squarefree ideal; the unit ideal gives the void complex."""
    if not I.is_squarefree:
        raise NotSquarefreeError("Stanley-Reisner complex needs a squarefree ideal")
    full = (1 << I.nvars) - 1
    # faces avoid every generator, so complements of facets are minimal transversals
    return SimplicialComplex(I.ring, [full & ~t for t in minimal_transversals(I.masks())])


def sr_ideal(delta: SimplicialComplex) -> MonomialIdeal:
    """Minimal nonfaces as squarefree monomials."""
    full = delta.full_mask
    return MonomialIdeal.from_masks(
        delta.vertices, minimal_transversals([full & ~f for f in delta.facets])
    )


def _reindex(mask: int, positions: Sequence[int]) -> int:
    out = 0
    for new, old in enumerate(positions):
        if mask >> old & 1:
            out |= 1 << new
    return out


def restriction(delta: SimplicialComplex, sigma: Iterable) -> SimplicialComplex:
    """Faces of ``delta`` inside ``sigma``, on the vertex list ``sigma``."""
    positions = sorted({delta.vertex_id(x) for x in sigma})
    smask = mask_of(positions)
    return SimplicialComplex(
        [delta.vertices[p] for p in positions],
        [_reindex(f & smask, positions) for f in delta.facets],
    )


def deletion(delta: SimplicialComplex, x) -> SimplicialComplex:
    v = delta.vertex_id(x)
    return restriction(delta, [i for i in range(delta.nvertices) if i != v])


def link(delta: SimplicialComplex, x) -> SimplicialComplex:
    """Link of ``x``, on the vertex list without ``x``."""
    v = delta.vertex_id(x)
    bit = 1 << v
    positions = [i for i in range(delta.nvertices) if i != v]
    return SimplicialComplex(
        [delta.vertices[p] for p in positions],
        [_reindex(f & ~bit, positions) for f in delta.facets if f & bit],
    )


def star(delta: SimplicialComplex, x) -> SimplicialComplex:
    bit = 1 << delta.vertex_id(x)
    return SimplicialComplex(delta.vertices, [f for f in delta.facets if f & bit])


def lift(delta: SimplicialComplex, vertices: Sequence[str]) -> SimplicialComplex:
    """The same faces viewed on a larger vertex list."""
    vertices = tuple(vertices)
    try:
        where = [vertices.index(v) for v in delta.vertices]
    except ValueError as exc:
        raise InputError(f"cannot lift {delta.vertices} into {vertices}") from exc
    return SimplicialComplex(
        vertices, [mask_of(where[i] for i in bits(f)) for f in delta.facets]
    )


def is_cone(delta: SimplicialComplex) -> Optional[int]:
    """Lowest vertex id lying in every facet, or ``None``."""
    if delta.is_void:
        raise VoidComplexError("cone test on the void complex")
    common = delta.full_mask
    for f in delta.facets:
        common &= f
    return bits(common)[0] if common else None


def dimension(delta: SimplicialComplex) -> int:
    if delta.is_void:
        raise VoidComplexError("the void complex has no dimension")
    return max(popcount(f) for f in delta.facets) - 1


def is_pure(delta: SimplicialComplex) -> bool:
    if delta.is_void:
        raise VoidComplexError("purity of the void complex is undefined")
    return len({popcount(f) for f in delta.facets}) == 1


@dataclass(frozen=True)
class Shedding:
    """Witness tree for vertex-decomposability.

    ``vertex is None`` marks a simplex leaf; otherwise ``link`` and
    ``deletion`` are the witnesses for the two subcomplexes at ``vertex``.
    """

    vertex: Optional[str] = None
    link: Optional["Shedding"] = None
    deletion: Optional["Shedding"] = None

    def to_json(self):
        if self.vertex is None:
            return "simplex"
        return {
            "vertex": self.vertex,
            "link": self.link.to_json(),
            "deletion": self.deletion.to_json(),
        }


@dataclass(frozen=True)
class VertexDecomposition:
    decomposable: bool
    witness: Optional[Shedding] = None

    def __bool__(self):
        return self.decomposable


def is_vertex_decomposable(delta: SimplicialComplex, memo: Optional[dict] = None) -> VertexDecomposition:
    """Exhaustive shedding-vertex search, memoised on facet sets.

    The empty complex counts as the (-1)-simplex and is decomposable.
    ``memo`` may be passed to share work between calls on complexes with the
    same vertex list; it is keyed by frozen facet masks.
    """
    if delta.is_void:
        raise VoidComplexError("vertex-decomposability of the void complex is undefined")
    if memo is None:
        memo = {}
    names = delta.vertices

    def search(facets):
        key = frozenset(facets)
        hit = memo.get(key)
        if hit is not None:
            return hit
        sizes = {popcount(f) for f in facets}
        if len(sizes) != 1:
            result = False
        elif len(facets) == 1:
            result = Shedding()
        else:
            (size,) = sizes
            result = False
            used = 0
            for f in facets:
                used |= f
            for v in bits(used):
                bit = 1 << v
                if all(f & bit for f in facets):
                    continue  # deletion would drop a dimension
                lk = [f & ~bit for f in facets if f & bit]
                dl = maximal([f & ~bit for f in facets])
                if any(popcount(f) != size for f in dl):
                    continue
                lk_w = search(tuple(sorted(lk)))
                if lk_w is False:
                    continue
                dl_w = search(tuple(dl))
                if dl_w is False:
                    continue
                result = Shedding(names[v], lk_w, dl_w)
                break
        memo[key] = result
        return result

    w = search(delta.facets)
    if w is False:
        return VertexDecomposition(False)
    return VertexDecomposition(True, w)
