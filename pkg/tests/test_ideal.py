from itertools import combinations_with_replacement, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charbetti.constructions import rp2_ideal
from charbetti.errors import (
    InputError,
    NotBipartiteError,
    NotSquarefreeError,
    UndefinedError,
)
from charbetti.ideal import (
    FieldSpec,
    Monomial,
    MonomialIdeal,
    alexander_dual,
    bipartition,
    colon,
    d_of,
    graded_piece,
    ideal_sum,
    intersect,
    is_bipartite,
    is_primary,
    minimalize,
    polarize,
    power_split,
    restrict_to,
    truncate,
)


def mono(**exps):
    """mono(x1=2, x2=1) in the ring x1..x9."""
    return Monomial({int(k[1:]) - 1: e for k, e in exps.items()})


X2 = ("x1", "x2")


def ideal(ring, *gens):
    return MonomialIdeal(ring, gens)


def gens_text(I):
    return I.format_gens()


# a small monomial ideal used throughout
PAPER_EX = ideal(X2, mono(x1=2), mono(x1=1, x2=1), mono(x2=3))


def test_minimalize_drops_multiples():
    assert gens_text(minimalize([mono(x1=1), mono(x1=1, x2=1)], X2)) == ["x1"]
    assert minimalize([], X2).is_zero
    I = minimalize([mono(x1=2), mono(x1=1, x2=1), mono(x2=3), mono(x1=2, x2=1)], X2)
    assert gens_text(I) == ["x1^2", "x1*x2", "x2^3"]


def test_minimalize_rejects_unknown_variable():
    with pytest.raises(InputError):
        minimalize([Monomial({5: 1})], X2)


def test_canonical_order_is_deterministic():
    a = ideal(X2, mono(x2=3), mono(x1=1, x2=1), mono(x1=2))
    assert a == PAPER_EX
    assert a.gens == PAPER_EX.gens


def test_polarize_example():
    pol = polarize(PAPER_EX)
    assert pol.ideal.ring == ("x1_1", "x1_2", "x2_1", "x2_2", "x2_3")
    assert sorted(gens_text(pol.ideal)) == sorted(["x1_1*x1_2", "x1_1*x2_1", "x2_1*x2_2*x2_3"])


def test_polarize_squarefree_renames_only():
    I = ideal(("x1", "x2", "x3"), mono(x1=1, x2=1), mono(x3=1))
    pol = polarize(I)
    assert pol.ideal.ring == ("x1_1", "x2_1", "x3_1")
    assert gens_text(pol.ideal) == ["x3_1", "x1_1*x2_1"]


def test_polarize_pure_power():
    pol = polarize(ideal(("x1",), mono(x1=3)))
    assert gens_text(pol.ideal) == ["x1_1*x1_2*x1_3"]


def test_colon_examples():
    assert gens_text(colon(PAPER_EX, mono(x1=1))) == ["x1", "x2"]
    assert colon(PAPER_EX, Monomial()) == PAPER_EX
    # brute-force division of the ten cubic generators, then minimalized
    got = colon(rp2_ideal(), mono(x1=1))
    assert sorted(gens_text(got)) == sorted(["x2*x3", "x2*x4", "x3*x5", "x4*x6", "x5*x6"])


def test_sum_and_intersect():
    r = ("x1", "x2")
    assert gens_text(intersect(ideal(r, mono(x1=1)), ideal(r, mono(x2=1)))) == ["x1*x2"]
    assert ideal_sum(PAPER_EX, MonomialIdeal(X2)) == PAPER_EX
    ring = ("x1", "x2", "x3", "y1", "y2", "y3")
    I = ideal(ring, Monomial({2: 1, 3: 1}), Monomial({1: 1, 4: 1}))
    Y = ideal(ring, Monomial({3: 1}), Monomial({4: 1}))
    assert intersect(I, Y) == I
    with pytest.raises(InputError):
        ideal_sum(I, PAPER_EX)


def test_restrict_to():
    got = restrict_to(rp2_ideal(), ["x1", "x2", "x3", "x4", "x5"])
    assert sorted(gens_text(got)) == sorted(
        ["x1*x2*x3", "x1*x2*x4", "x1*x3*x5", "x2*x4*x5", "x3*x4*x5"]
    )
    assert got.ring == rp2_ideal().ring
    assert restrict_to(PAPER_EX, X2) == PAPER_EX
    assert restrict_to(PAPER_EX, []).is_zero


def test_graded_piece():
    I = ideal(X2, mono(x1=1), mono(x2=2))
    assert sorted(gens_text(graded_piece(I, 2))) == sorted(["x1*x2", "x1^2", "x2^2"])
    assert graded_piece(rp2_ideal(), 3) == rp2_ideal()
    assert sorted(gens_text(graded_piece(ideal(X2, mono(x1=1)), 3))) == sorted(
        ["x1^3", "x1^2*x2", "x1*x2^2"]
    )
    assert graded_piece(I, 0).is_zero


def test_graded_piece_squarefree_variant():
    I = ideal(("x1", "x2", "x3"), mono(x1=1))
    assert sorted(gens_text(graded_piece(I, 2, squarefree=True))) == ["x1*x2", "x1*x3"]


def _brute_truncation(I, t, top):
    """Minimal elements among monomials of degree <= top that lie in I and have degree >= t."""
    n = I.nvars
    found = []
    for exps in product(range(top + 1), repeat=n):
        m = Monomial.from_exponents(exps)
        if m.degree >= t and m.degree <= top and I.contains(m):
            found.append(m)
    return MonomialIdeal(I.ring, found)


def test_truncate_examples():
    assert gens_text(truncate(ideal(X2, mono(x1=1)), 2)) == ["x1^2", "x1*x2"]
    assert truncate(PAPER_EX, 0) == PAPER_EX
    # every generator is cubic, so I ∩ m^4 is generated by the degree-4 monomials of I
    deg4 = [
        c for c in combinations_with_replacement(range(6), 4)
        if rp2_ideal().contains(Monomial({v: c.count(v) for v in set(c)}))
    ]
    assert len(deg4) == 45
    assert len(truncate(rp2_ideal(), 4).gens) == 45


@pytest.mark.parametrize("t", [0, 1, 2, 3, 4])
def test_truncate_matches_brute_force(t):
    assert truncate(PAPER_EX, t) == _brute_truncation(PAPER_EX, t, 5)


def test_d_of():
    assert d_of(rp2_ideal()) == 3
    assert d_of(ideal(X2, mono(x1=1))) == 1
    assert d_of(PAPER_EX) == 2
    with pytest.raises(UndefinedError):
        d_of(MonomialIdeal(X2))


def _brute_covers(I):
    n = I.nvars
    supports = [g.support_mask for g in I.gens]
    covers = [m for m in range(1 << n) if all(m & s for s in supports)]
    return sorted(m for m in covers if not any(c != m and c & m == c for c in covers))


def test_alexander_dual():
    assert gens_text(alexander_dual(ideal(X2, mono(x1=1, x2=1)))) == ["x1", "x2"]
    ring = ("x1", "x2", "x3", "y1", "y2", "y3")
    B = ideal(ring, Monomial({2: 1, 3: 1}), Monomial({1: 1, 4: 1}), Monomial({0: 1, 5: 1}))
    dual = alexander_dual(B)
    assert sorted(g.support_mask for g in dual.gens) == _brute_covers(B)
    assert len(dual.gens) == 8 and all(g.degree == 3 for g in dual.gens)
    assert alexander_dual(dual) == B


def test_alexander_dual_rejects_degenerate():
    with pytest.raises(NotSquarefreeError):
        alexander_dual(PAPER_EX)
    with pytest.raises(UndefinedError):
        alexander_dual(MonomialIdeal(X2))
    with pytest.raises(UndefinedError):
        alexander_dual(ideal(X2, Monomial()))


def test_is_primary():
    assert is_primary(PAPER_EX) == {0, 1}
    assert is_primary(ideal(X2, mono(x1=1, x2=1))) is None
    I = rp2_ideal()
    squares = MonomialIdeal(I.ring, [Monomial({v: 2}) for v in range(6)])
    assert is_primary(ideal_sum(I, squares)) == set(range(6))


def test_bipartition():
    ring = ("x1", "x2", "x3", "y1", "y2", "y3")
    B = ideal(ring, Monomial({2: 1, 3: 1}), Monomial({1: 1, 4: 1}), Monomial({0: 1, 5: 1}))
    part = bipartition(B)
    assert part.V1 == (0, 1, 2) and part.V2 == (3, 4, 5)
    assert part.G == (frozenset({2}), frozenset({1}), frozenset({0}))
    tri = ideal(("x1", "x2", "x3"), mono(x1=1, x2=1), mono(x2=1, x3=1), mono(x1=1, x3=1))
    with pytest.raises(NotBipartiteError) as err:
        bipartition(tri)
    assert err.value.reason == NotBipartiteError.ODD_CYCLE
    with pytest.raises(NotBipartiteError) as err:
        bipartition(PAPER_EX)
    assert err.value.reason == NotBipartiteError.NOT_QUADRATIC
    assert not is_bipartite(tri)


def test_bipartition_isolated_vertices_go_left():
    I = ideal(("a", "b", "c"), Monomial({1: 1, 2: 1}))
    part = bipartition(I)
    assert part.V1 == (0, 1) and part.V2 == (2,)


def test_power_split():
    s = power_split(PAPER_EX, "x1")
    assert (gens_text(s.J), s.t, gens_text(s.colon)) == (["x1*x2", "x2^3"], 2, ["x1", "x2"])
    s = power_split(ideal(X2, mono(x1=1), mono(x2=1)), 0)
    assert gens_text(s.J) == ["x2"] and s.t == 1 and s.colon.is_unit
    I = rp2_ideal()
    big = ideal_sum(I, MonomialIdeal(I.ring, [Monomial({v: 2}) for v in range(6)]))
    s = power_split(big, "x1")
    expect = ideal_sum(I, MonomialIdeal(I.ring, [Monomial({v: 2}) for v in range(1, 6)]))
    assert s.t == 2 and s.J == expect
    with pytest.raises(InputError):
        power_split(ideal(X2, mono(x1=1, x2=1)), "x1")


def test_field_spec():
    assert FieldSpec(0).characteristic == 0
    assert FieldSpec.parse("7").characteristic == 7
    for bad in (4, 1, -3):
        with pytest.raises(InputError):
            FieldSpec(bad)


# -- properties ------------------------------------------------------------

monomials = st.lists(st.integers(0, 3), min_size=3, max_size=3).map(Monomial.from_exponents)
ideals = st.lists(monomials, min_size=1, max_size=5).map(lambda gs: MonomialIdeal(("x1", "x2", "x3"), gs))
sqfree_ideals = st.lists(st.integers(1, 15), min_size=1, max_size=5).map(
    lambda ms: MonomialIdeal.from_masks(("a", "b", "c", "d"), ms)
)


def _minimal(I):
    return all(not g.divides(h) for g in I.gens for h in I.gens if g != h)


@settings(max_examples=100, deadline=None)
@given(ideals, monomials, st.integers(0, 5))
def test_operations_keep_generators_minimal(I, m, t):
    for J in (I, colon(I, m), truncate(I, t), graded_piece(I, t), ideal_sum(I, colon(I, m)),
              intersect(I, colon(I, m))):
        assert _minimal(J)


@settings(max_examples=100, deadline=None)
@given(ideals)
def test_polarization_depolarizes_bijectively(I):
    pol = polarize(I)
    assert pol.ideal.is_squarefree
    back = {pol.depolarize(g) for g in pol.ideal.gens}
    assert back == set(I.gens)
    assert len(pol.ideal.gens) == len(I.gens)
    assert sorted(g.degree for g in pol.ideal.gens) == sorted(g.degree for g in I.gens)


@settings(max_examples=100, deadline=None)
@given(ideals, st.integers(0, 4))
def test_truncation_is_contained_and_agrees_in_high_degree(I, t):
    T = truncate(I, t)
    assert all(I.contains(g) for g in T.gens)
    for exps in product(range(4), repeat=3):
        m = Monomial.from_exponents(exps)
        if m.degree >= t:
            assert T.contains(m) == I.contains(m)
        else:
            assert not T.contains(m) or t == 0


@settings(max_examples=100, deadline=None)
@given(ideals, monomials)
def test_colon_membership(I, m):
    C = colon(I, m)
    for exps in product(range(4), repeat=3):
        f = Monomial.from_exponents(exps)
        assert C.contains(f) == I.contains(f * m)


@settings(max_examples=100, deadline=None)
@given(sqfree_ideals)
def test_alexander_duality_is_an_involution(I):
    if I.is_unit:
        return
    assert alexander_dual(alexander_dual(I)) == I


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(3, 5)), min_size=1, max_size=6))
def test_bipartition_generators_straddle(edges):
    I = MonomialIdeal.from_masks([f"v{k}" for k in range(6)], [1 << a | 1 << b for a, b in edges])
    part = bipartition(I)
    for g in I.gens:
        s = g.support
        assert len(s & set(part.V1)) == 1 and len(s & set(part.V2)) == 1
