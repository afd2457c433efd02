"""Random instance generators and independent checkers shared by the tests."""

import random

from charbetti._bits import popcount
from charbetti.complex import (
    SimplicialComplex,
    deletion,
    dimension,
    is_pure,
    link,
)
from charbetti.ideal import Monomial, MonomialIdeal


def names(prefix, n):
    return [f"{prefix}{k}" for k in range(1, n + 1)]


def random_squarefree_ideal(rng, n, max_gens=5, max_deg=None):
    ring = names("x", n)
    max_deg = max_deg or n
    gens = []
    for _ in range(rng.randint(0, max_gens)):
        k = rng.randint(1, max_deg)
        gens.append(Monomial({v: 1 for v in rng.sample(range(n), k)}))
    return MonomialIdeal(ring, gens)


def random_monomial_ideal(rng, n, max_exp=2, max_gens=4, min_gens=1):
    ring = names("x", n)
    gens = []
    for _ in range(rng.randint(min_gens, max_gens)):
        m = {v: rng.randint(0, max_exp) for v in range(n)}
        if not any(m.values()):
            m[rng.randrange(n)] = 1
        gens.append(Monomial(m))
    return MonomialIdeal(ring, gens)


def random_complex(rng, n, max_facets=5, ghost_ok=True):
    verts = names("v", n)
    facets = []
    for _ in range(rng.randint(1, max_facets)):
        k = rng.randint(0, n)
        facets.append(sum(1 << v for v in rng.sample(range(n), k)))
    return SimplicialComplex(verts, facets)


def random_primary_ideal(rng, nbase=3, max_exp=3):
    """Primary to a random nonempty set of variables."""
    ring = names("x", nbase)
    prime = rng.sample(range(nbase), rng.randint(1, nbase))
    gens = [Monomial({v: rng.randint(1, max_exp)}) for v in prime]
    for _ in range(rng.randint(0, 3)):
        gens.append(Monomial({v: rng.randint(0, max_exp) for v in prime}))
    gens = [g for g in gens if g.degree]
    return MonomialIdeal(ring, gens)


def suspension(delta):
    verts = delta.vertices + ("north", "south")
    n = delta.nvertices
    return SimplicialComplex(verts, [f | 1 << n for f in delta.facets] + [f | 1 << (n + 1) for f in delta.facets])


def cone(delta, apex="apex"):
    verts = delta.vertices + (apex,)
    return SimplicialComplex(verts, [f | 1 << delta.nvertices for f in delta.facets])


def verify_shedding(delta, w):
    """Check a vertex-decomposability witness using the complex-level operations."""
    if not is_pure(delta):
        return False
    if w.vertex is None:
        return len(delta.facets) == 1
    d = dimension(delta)
    lk, dl = link(delta, w.vertex), deletion(delta, w.vertex)
    if lk.is_void or dl.is_void:
        return False
    return (
        dimension(lk) == d - 1
        and dimension(dl) == d
        and verify_shedding(lk, w.link)
        and verify_shedding(dl, w.deletion)
    )


def all_faces_brute(delta):
    """Faces by testing every subset of the vertex set."""
    return sorted(
        (m for m in range(1 << delta.nvertices) if any(m & f == m for f in delta.facets)),
        key=lambda m: (popcount(m), m),
    )


def rng(seed):
    return random.Random(seed)


def brute_vertex_decomposable(delta):
    """Straight from the definition, no memo and no pruning."""
    if not is_pure(delta):
        return False
    if len(delta.facets) == 1:
        return True
    d = dimension(delta)
    for x in delta.vertices:
        lk, dl = link(delta, x), deletion(delta, x)
        if lk.is_void or dl.is_void:
            continue
        if dimension(lk) != d - 1 or not is_pure(dl) or dimension(dl) != d:
            continue
        if brute_vertex_decomposable(lk) and brute_vertex_decomposable(dl):
            return True
    return False
