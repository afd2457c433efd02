import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charbetti.betti import char_dependence_scan, powers_report
from charbetti.complex import (
    SimplicialComplex,
    intersection,
    is_cone,
    lift,
    restriction,
    sr_complex,
    sr_ideal,
)
from charbetti.constructions import (
    RP2_FACETS,
    RP2_TABLE_CHAR2,
    bipartite_from_complex,
    bipartite_to_complex,
    cone_tilde,
    edge_ideal_of_G,
    facet_covers,
    homology_shift_check,
    reisner_instance,
    rp2_complex,
    rp2_ideal,
    whisker,
    whisker_all,
)
from charbetti.errors import ConstructionError, NotBipartiteError
from charbetti.homology import HomologyGroup, coning_matching, homology_groups_Z
from charbetti.ideal import (
    Bipartition,
    Monomial,
    MonomialIdeal,
    ideal_sum,
    intersect,
    polarize,
    power_split,
)

from helpers import random_complex, random_squarefree_ideal, rng

HOLLOW = SimplicialComplex.from_faces(
    ("x1", "x2", "x3"), [["x1", "x2"], ["x2", "x3"], ["x1", "x3"]]
)


def gens(I):
    return sorted(I.format_gens())


def test_whisker():
    I = MonomialIdeal(("x1", "x2"), [Monomial({0: 1, 1: 1})])
    assert gens(whisker(I, "x1")) == ["x1*x2", "x1*y"]
    assert gens(whisker(MonomialIdeal(("x1",)), "x1")) == ["x1*y"]
    with pytest.raises(ConstructionError):
        whisker(I, "x1", "x2")


def test_whisker_all():
    J = whisker_all(rp2_ideal())
    assert J.ring == rp2_ideal().ring + ("y1", "y2", "y3", "y4", "y5", "y6")
    assert len(J.gens) == 16
    zero = whisker_all(MonomialIdeal(("x1", "x2")))
    assert gens(zero) == ["x1*y1", "x2*y2"]


def test_whisker_all_is_a_polarization():
    I = rp2_ideal()
    squares = MonomialIdeal(I.ring, [Monomial({v: 2}) for v in range(I.nvars)])
    pol = polarize(ideal_sum(I, squares)).ideal
    rename = {f"x{k}_1": f"x{k}" for k in range(1, 7)} | {f"x{k}_2": f"y{k}" for k in range(1, 7)}
    J = whisker_all(I)
    renamed = MonomialIdeal(
        J.ring, [Monomial({J.ring.index(rename[pol.ring[v]]): e for v, e in g.items}) for g in pol.gens]
    )
    assert renamed == J


def test_cone_tilde_examples():
    point = SimplicialComplex.simplex(["x1"])
    t = cone_tilde(point, [point])
    assert t == SimplicialComplex.simplex(["x1", "y1"])
    assert is_cone(t) is not None
    t = cone_tilde(HOLLOW, facet_covers(HOLLOW))
    assert t.nvertices == 6
    assert all(g.is_zero for g in homology_groups_Z(t).values())
    with pytest.raises(ConstructionError):
        cone_tilde(HOLLOW, [SimplicialComplex(HOLLOW.vertices, [0b011])])
    with pytest.raises(ConstructionError):
        cone_tilde(HOLLOW, [SimplicialComplex.simplex(HOLLOW.vertices)])


def test_empty_cover_members_are_allowed():
    covers = facet_covers(HOLLOW) + [SimplicialComplex.empty(HOLLOW.vertices)]
    m = coning_matching(HOLLOW, covers)
    assert m.verdict.ok


def test_bipartite_hollow_triangle():
    inst = bipartite_from_complex(HOLLOW, [["x3"], ["x2"], ["x1"]])
    assert gens(inst.ideal) == ["x1*y3", "x2*y2", "x3*y1"]
    assert inst.ideal == edge_ideal_of_G(inst)
    rows = homology_shift_check(HOLLOW, inst.delta)
    assert rows.ok
    assert homology_groups_Z(inst.delta)[2] == HomologyGroup(1)
    back = bipartite_to_complex(inst.ideal)
    assert back.gamma == HOLLOW
    assert back.y_names == ("y1", "y2", "y3")


def test_bipartite_default_G_uses_facet_complements():
    inst = bipartite_from_complex(HOLLOW)
    # facets in canonical mask order: x1x2, x1x3, x2x3
    assert inst.G == (frozenset({2}), frozenset({1}), frozenset({0}))
    assert inst.provenance() == {"y1": ["x3"], "y2": ["x2"], "y3": ["x1"]}


def test_bipartite_preconditions():
    with pytest.raises(ConstructionError, match="G_1"):
        bipartite_from_complex(HOLLOW, [[]])
    with pytest.raises(ConstructionError, match="not the complement"):
        bipartite_from_complex(HOLLOW, [["x3"], ["x2"]])
    with pytest.raises(ConstructionError):
        bipartite_from_complex(SimplicialComplex.void(HOLLOW.vertices))
    with pytest.raises(ConstructionError):
        bipartite_from_complex(HOLLOW, y_names=["x1", "b", "c"])


def test_single_edge_recovers_empty_complex():
    I = MonomialIdeal(("x1", "y1"), [Monomial({0: 1, 1: 1})])
    back = bipartite_to_complex(I)
    assert back.gamma == SimplicialComplex.empty(("x1",))


def test_recovery_rejects_non_bipartite():
    tri = sr_ideal(SimplicialComplex.from_faces("abc", [["a"], ["b"], ["c"]]))
    with pytest.raises(NotBipartiteError):
        bipartite_to_complex(tri)


def test_rp2_bipartite_instance():
    gamma = rp2_complex()
    inst = bipartite_from_complex(gamma)
    assert len(inst.ideal.ring) == 16
    assert inst.ideal == edge_ideal_of_G(inst) and len(inst.ideal.gens) == 30
    verdict = homology_shift_check(gamma, inst.delta)
    assert verdict.ok
    assert homology_groups_Z(inst.delta)[2] == HomologyGroup(0, (2,))
    assert bipartite_to_complex(inst.ideal).gamma == gamma


def test_reisner_instance():
    inst = reisner_instance()
    assert len(inst.complex.facets) == 10 and len(inst.ideal.gens) == 10
    assert sr_complex(inst.ideal) == inst.complex
    assert inst.table_char2.entries == RP2_TABLE_CHAR2
    assert inst.table_char2.total_row() == [1, 10, 15, 7, 1]
    assert inst.table_char0.total_row() == [1, 10, 15, 6]
    assert len(RP2_FACETS) == 10


def test_shift_check_on_a_simplex():
    gamma = SimplicialComplex.simplex(("x1", "x2"))
    inst = bipartite_from_complex(gamma)
    verdict = homology_shift_check(gamma, inst.delta)
    assert verdict.ok and all(a.is_zero and b.is_zero for _, a, b in verdict.rows)


# -- properties ---------------------------------------------------------------

seeds = st.integers(0, 2**32 - 1)


def random_instance(r):
    gamma = random_complex(r, r.randint(1, 5), max_facets=4)
    full = gamma.full_mask
    G = [full & ~f for f in gamma.facets]
    # extra G_j whose complement is a face, not necessarily a facet
    faces = gamma.faces()
    for _ in range(r.randint(0, 2)):
        G.append(full & ~r.choice(faces))
    r.shuffle(G)
    return bipartite_from_complex(gamma, [gamma.names(g) for g in G])


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_primary_decomposition_assertions(seed):
    inst = random_instance(rng(seed))
    ring = inst.ideal.ring
    n = inst.gamma.nvertices
    Y = MonomialIdeal(ring, [Monomial({n + j: 1}) for j in range(len(inst.y_names))])
    assert inst.ideal == edge_ideal_of_G(inst)
    assert inst.ideal == intersect(ideal_sum(inst.ideal, inst.ideal_gamma), Y)
    assert sr_ideal(inst.delta_prime) == ideal_sum(inst.ideal, inst.ideal_gamma)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_delta_prime_meets_the_simplex_in_gamma(seed):
    inst = random_instance(rng(seed))
    simplex = SimplicialComplex(inst.delta.vertices, [inst.gamma.full_mask])
    meet = intersection(inst.delta_prime, simplex)
    assert restriction(meet, inst.gamma.vertices) == inst.gamma
    assert restriction(inst.delta_prime, inst.gamma.vertices) == inst.gamma
    assert meet == lift(inst.gamma, inst.delta.vertices)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_homology_shifts_by_one(seed):
    inst = random_instance(rng(seed))
    assert homology_shift_check(inst.gamma, inst.delta).ok


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_bipartite_round_trip(seed):
    inst = random_instance(rng(seed))
    n = inst.gamma.nvertices
    part = Bipartition(tuple(range(n)), tuple(range(n, n + len(inst.y_names))), inst.G)
    back = bipartite_to_complex(inst.ideal, part)
    assert back.gamma == inst.gamma
    # without a given partition, isolated vertices land on the left; when there
    # are none the partition is found automatically
    if all(inst.G) and set().union(*inst.G) == set(range(n)):
        assert bipartite_to_complex(inst.ideal).gamma == inst.gamma


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_coned_complexes_are_contractible(seed):
    r = rng(seed)
    gamma = random_complex(r, r.randint(1, 8), max_facets=5)
    covers = [SimplicialComplex(gamma.vertices, [f]) for f in gamma.facets]
    for _ in range(r.randint(0, 3)):
        covers.append(SimplicialComplex(gamma.vertices, r.sample(list(gamma.faces()), 1)))
    m = coning_matching(gamma, covers)
    assert m.verdict.ok
    assert all(g.is_zero for g in homology_groups_Z(m.complex).values())


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_whiskering_a_quadratic_ideal_keeps_the_verdict(seed):
    r = rng(seed)
    n = r.randint(2, 7)
    I = random_squarefree_ideal(r, n, max_gens=6, max_deg=2)
    I = MonomialIdeal(I.ring, [g for g in I.gens if g.degree == 2])
    x = r.choice(I.ring)
    assert char_dependence_scan(whisker(I, x)).depends == char_dependence_scan(I).depends


def _powers_chain(I):
    """Peel the squares off ``I + (x_1^2, ..., x_n^2)`` one variable at a time."""
    K = ideal_sum(I, MonomialIdeal(I.ring, [Monomial({v: 2}) for v in range(I.nvars)]))
    top = char_dependence_scan(K).depends
    for x in I.ring:
        rep = powers_report(K, x)
        assert rep.consistent
        K = power_split(K, x).J
    assert K == I
    return top


def test_whisker_all_powers_chain():
    I = rp2_ideal()
    dep = _powers_chain(I)
    assert dep == char_dependence_scan(whisker_all(I)).depends == char_dependence_scan(I).depends


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_whisker_all_verdict_matches_base(seed):
    r = rng(seed)
    I = random_squarefree_ideal(r, r.randint(1, 4), max_gens=4)
    if I.is_unit or any(g.degree == 1 for g in I.gens):
        return  # a linear generator already is its own square's divisor
    dep = _powers_chain(I)
    assert dep == char_dependence_scan(whisker_all(I)).depends == char_dependence_scan(I).depends
