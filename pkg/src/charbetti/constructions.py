"""Whiskers, coned complexes, bipartite ideals from complexes, and the RP^2 instance."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ._bits import bits, mask_of
from .betti import BettiTable, QUOTIENT
from .complex import SimplicialComplex, is_subcomplex, sr_ideal, union
from .errors import ConstructionError, InputError
from .homology import HomologyGroup, homology_groups_Z
from .ideal import Bipartition, Monomial, MonomialIdeal, bipartition, extend


def _fresh_names(existing, prefix, count):
    names = [f"{prefix}{k}" for k in range(1, count + 1)]
    clash = set(names) & set(existing)
    if clash:
        raise ConstructionError(f"new variable names collide with existing ones: {sorted(clash)}")
    return names


def whisker(I: MonomialIdeal, x, y_new: str = "y") -> MonomialIdeal:
    """``(I R[y], x y)``."""
    v = I.var_id(x)
    if y_new in I.ring:
        raise ConstructionError(f"variable {y_new!r} already in the ring")
    ring = I.ring + (y_new,)
    return MonomialIdeal(ring, I.gens + (Monomial({v: 1, len(I.ring): 1}),))


def whisker_all(I: MonomialIdeal, prefix: str = "y") -> MonomialIdeal:
    """``I S + (x_1 y_1, ..., x_n y_n)`` with fresh ``y_k`` named ``{prefix}k``."""
    n = I.nvars
    ring = I.ring + tuple(_fresh_names(I.ring, prefix, n))
    whiskers = [Monomial({v: 1, n + v: 1}) for v in range(n)]
    return MonomialIdeal(ring, I.gens + tuple(whiskers))


# -- coning ---------------------------------------------------------------------


def _check_cover(gamma: SimplicialComplex, covers: Sequence[SimplicialComplex]):
    if gamma.is_void:
        raise ConstructionError("cannot cone the void complex")
    for j, c in enumerate(covers, 1):
        if c.vertices != gamma.vertices:
            raise ConstructionError(f"cover {j} lives on {c.vertices}, not {gamma.vertices}")
        if not is_subcomplex(c, gamma):
            raise ConstructionError(f"cover {j} is not a subcomplex")
    whole = SimplicialComplex(gamma.vertices, [f for c in covers for f in c.facets])
    if whole != gamma:
        missing = [gamma.names(f) for f in gamma.facets if not whole.contains(f)]
        raise ConstructionError(f"covers miss the facets {missing}")


def coning_faces(gamma: SimplicialComplex, covers: Sequence[SimplicialComplex], prefix: str = "y"):
    """Vertex list of the coned complex and ``{sigma: Y_sigma}`` for every face of
    ``gamma``, where ``Y_sigma`` holds the bits of the ``y_j`` whose cover
    contains ``sigma``."""
    _check_cover(gamma, covers)
    n = gamma.nvertices
    vertices = gamma.vertices + tuple(_fresh_names(gamma.vertices, prefix, len(covers)))
    family = {}
    for sigma in gamma.faces():
        y = 0
        for j, c in enumerate(covers):
            if c.contains(sigma):
                y |= 1 << (n + j)
        family[sigma] = y
    return vertices, family


def cone_tilde(gamma: SimplicialComplex, covers: Sequence[SimplicialComplex], prefix: str = "y") -> SimplicialComplex:
    """``{sigma ∪ tau : sigma in gamma, tau ⊆ {y_j : sigma in covers[j]}}``."""
    vertices, family = coning_faces(gamma, covers, prefix)
    return SimplicialComplex(vertices, [s | y for s, y in family.items()])


def facet_covers(gamma: SimplicialComplex) -> list:
    """One cover per facet: the closure of that facet."""
    return [SimplicialComplex(gamma.vertices, [f]) for f in gamma.facets]


# -- bipartite ideals ------------------------------------------------------------


@dataclass(frozen=True)
class BipartiteInstance:
    gamma: SimplicialComplex
    G: tuple  # frozensets of vertex ids of gamma
    y_names: tuple
    delta_prime: SimplicialComplex
    delta: SimplicialComplex
    ideal: MonomialIdeal
    ideal_gamma: MonomialIdeal

    def provenance(self) -> dict:
        return {
            y: sorted(self.gamma.vertices[v] for v in g)
            for y, g in zip(self.y_names, self.G)
        }


def bipartite_from_complex(
    gamma: SimplicialComplex,
    G: Optional[Sequence] = None,
    y_names: Optional[Sequence[str]] = None,
) -> BipartiteInstance:
    """Build ``Δ'``, ``Δ = Δ' ∪ simplex(V1)``, its ideal and the extension of ``I_Γ``.

    ``G`` defaults to the complements of the facets of ``gamma`` in facet order.
    """
    if gamma.is_void:
        raise ConstructionError("gamma must not be void")
    full = gamma.full_mask
    if G is None:
        gmasks = [full & ~f for f in gamma.facets]
    else:
        gmasks = [gamma.mask(g) for g in G]
    for j, g in enumerate(gmasks, 1):
        if not gamma.contains(full & ~g):
            raise ConstructionError(
                f"G_{j} = {list(gamma.names(g))}: its complement is not a face of gamma"
            )
    realised = {full & ~g for g in gmasks}
    for f in gamma.facets:
        if f not in realised:
            raise ConstructionError(
                f"facet {list(gamma.names(f))} is not the complement of any G_j"
            )
    m = len(gmasks)
    if y_names is None:
        y_names = _fresh_names(gamma.vertices, "y", m)
    y_names = tuple(y_names)
    if len(y_names) != m:
        raise ConstructionError(f"need {m} new vertex names, got {len(y_names)}")
    if set(y_names) & set(gamma.vertices):
        raise ConstructionError("new vertex names collide with gamma's vertices")
    n = gamma.nvertices
    vertices = gamma.vertices + y_names
    facets = []
    for sigma in gamma.faces():
        y = 0
        for j, g in enumerate(gmasks):
            if sigma & g == 0:
                y |= 1 << (n + j)
        facets.append(sigma | y)
    delta_prime = SimplicialComplex(vertices, facets)
    delta = union(delta_prime, SimplicialComplex(vertices, [full]))
    return BipartiteInstance(
        gamma=gamma,
        G=tuple(frozenset(bits(g)) for g in gmasks),
        y_names=y_names,
        delta_prime=delta_prime,
        delta=delta,
        ideal=sr_ideal(delta),
        ideal_gamma=extend(sr_ideal(gamma), vertices),
    )


def edge_ideal_of_G(instance: BipartiteInstance) -> MonomialIdeal:
    """``(x_i y_j : x_i in G_j)`` on the instance's ring."""
    n = instance.gamma.nvertices
    ring = instance.gamma.vertices + instance.y_names
    gens = [Monomial({x: 1, n + j: 1}) for j, g in enumerate(instance.G) for x in g]
    return MonomialIdeal(ring, gens)


@dataclass(frozen=True)
class BipartiteRecovery:
    gamma: SimplicialComplex
    x_names: tuple
    y_names: tuple
    G: tuple  # frozensets of ids into x_names


def bipartite_to_complex(I: MonomialIdeal, partition: Optional[Bipartition] = None) -> BipartiteRecovery:
    """Recover the complex on ``V1`` whose facets are ``V1 \\ G_j`` for the
    inclusion-minimal ``G_j``."""
    if partition is None:
        partition = bipartition(I)
    V1, V2 = partition.V1, partition.V2
    for g in I.gens:
        s = g.support
        if not (len(s & set(V1)) == 1 and len(s & set(V2)) == 1):
            raise InputError(f"generator {g.format(I.ring)} does not straddle the partition")
    pos = {v: k for k, v in enumerate(V1)}
    G = tuple(frozenset(pos[x] for x in gj) for gj in partition.G)
    x_names = tuple(I.ring[v] for v in V1)
    full = (1 << len(V1)) - 1
    gm = [mask_of(g) for g in G]
    minimal = [g for g in gm if not any(h != g and h & g == h for h in gm)]
    gamma = SimplicialComplex(x_names, [full & ~g for g in minimal])
    return BipartiteRecovery(gamma, x_names, tuple(I.ring[v] for v in V2), G)


@dataclass(frozen=True)
class ShiftVerdict:
    rows: tuple  # (i, H_{i+1}(delta), H_i(gamma))

    @property
    def mismatches(self) -> tuple:
        return tuple(r for r in self.rows if r[1] != r[2])

    @property
    def ok(self) -> bool:
        return not self.mismatches


def homology_shift_check(gamma: SimplicialComplex, delta: SimplicialComplex) -> ShiftVerdict:
    """Compare ``H~_{i+1}(delta; ZZ)`` with ``H~_i(gamma; ZZ)`` for all ``i >= 0``."""
    hd = homology_groups_Z(delta)
    hg = homology_groups_Z(gamma)
    top = max([k for k in hg] + [k - 1 for k in hd] + [0])
    zero = HomologyGroup()
    rows = tuple((i, hd.get(i + 1, zero), hg.get(i, zero)) for i in range(top + 1))
    return ShiftVerdict(rows)


# -- the minimal triangulation of RP^2 -------------------------------------------

RP2_VERTICES = ("x1", "x2", "x3", "x4", "x5", "x6")
RP2_FACETS = (
    "x4 x5 x6", "x3 x5 x6", "x2 x4 x6", "x1 x3 x6", "x1 x2 x6",
    "x1 x4 x5", "x2 x3 x5", "x1 x2 x5", "x2 x3 x4", "x1 x3 x4",
)
RP2_NONFACES = (
    "x1 x2 x3", "x1 x2 x4", "x1 x3 x5", "x2 x4 x5", "x3 x4 x5",
    "x2 x3 x6", "x1 x4 x6", "x3 x4 x6", "x1 x5 x6", "x2 x5 x6",
)
# quotient convention, {(i, j): beta_{i,j}(R/I)}
RP2_TABLE_CHAR2 = {(0, 0): 1, (1, 3): 10, (2, 4): 15, (3, 5): 6, (3, 6): 1, (4, 6): 1}
RP2_TABLE_CHAR0 = {(0, 0): 1, (1, 3): 10, (2, 4): 15, (3, 5): 6}


@dataclass(frozen=True)
class ReisnerInstance:
    complex: SimplicialComplex
    ideal: MonomialIdeal
    table_char2: BettiTable
    table_char0: BettiTable


def rp2_complex() -> SimplicialComplex:
    return SimplicialComplex.from_faces(RP2_VERTICES, [f.split() for f in RP2_FACETS])


def rp2_ideal() -> MonomialIdeal:
    ids = {v: k for k, v in enumerate(RP2_VERTICES)}
    return MonomialIdeal(
        RP2_VERTICES, (Monomial({ids[v]: 1 for v in g.split()}) for g in RP2_NONFACES)
    )


def reisner_instance() -> ReisnerInstance:
    return ReisnerInstance(
        rp2_complex(),
        rp2_ideal(),
        BettiTable(QUOTIENT, RP2_TABLE_CHAR2),
        BettiTable(QUOTIENT, RP2_TABLE_CHAR0),
    )
