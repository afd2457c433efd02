"""Monomials and monomial ideals.

A :class:`MonomialIdeal` always stores its unique minimal generating set in a
canonical order (degree first, then lex on the exponent vector with larger
exponents of earlier variables first), so equal ideals compare equal and
print identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence

from ._bits import bits, mask_of, minimal_transversals
from .errors import (
    InputError,
    NotBipartiteError,
    NotSquarefreeError,
    UndefinedError,
)


class Monomial:
    """A monomial as a sparse map ``variable id -> exponent`` (exponents >= 1)."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents=None):
        if exponents is None:
            exponents = {}
        elif not isinstance(exponents, dict):
            exponents = dict(exponents)
        items = []
        for v, e in exponents.items():
            if not isinstance(v, int) or v < 0:
                raise InputError(f"bad variable id {v!r}")
            if not isinstance(e, int) or e < 0:
                raise InputError(f"bad exponent {e!r} for variable {v}")
            if e:
                items.append((v, e))
        self._items = tuple(sorted(items))
        self._hash = hash(self._items)

    @classmethod
    def from_exponents(cls, exps: Sequence[int]) -> "Monomial":
        return cls({i: e for i, e in enumerate(exps) if e})

    @classmethod
    def from_mask(cls, mask: int) -> "Monomial":
        return cls({i: 1 for i in bits(mask)})

    @property
    def items(self):
        return self._items

    def exponent(self, v: int) -> int:
        for w, e in self._items:
            if w == v:
                return e
        return 0

    def as_dict(self) -> dict:
        return dict(self._items)

    def dense(self, n: int) -> tuple:
        out = [0] * n
        for v, e in self._items:
            out[v] = e
        return tuple(out)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self._items)

    @property
    def support(self) -> frozenset:
        return frozenset(v for v, _ in self._items)

    @property
    def support_mask(self) -> int:
        return mask_of(v for v, _ in self._items)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self._items)

    def divides(self, other: "Monomial") -> bool:
        d = other.as_dict()
        return all(d.get(v, 0) >= e for v, e in self._items)

    def __mul__(self, other: "Monomial") -> "Monomial":
        d = self.as_dict()
        for v, e in other._items:
            d[v] = d.get(v, 0) + e
        return Monomial(d)

    def lcm(self, other: "Monomial") -> "Monomial":
        d = self.as_dict()
        for v, e in other._items:
            d[v] = max(d.get(v, 0), e)
        return Monomial(d)

    def gcd(self, other: "Monomial") -> "Monomial":
        d = other.as_dict()
        return Monomial({v: min(e, d[v]) for v, e in self._items if v in d})

    def quotient(self, other: "Monomial") -> "Monomial":
        """``self / gcd(self, other)``."""
        d = other.as_dict()
        return Monomial({v: max(e - d.get(v, 0), 0) for v, e in self._items})

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial({dict(self._items)!r})"

    def format(self, ring: Sequence[str]) -> str:
        if not self._items:
            return "1"
        parts = []
        for v, e in self._items:
            parts.append(ring[v] if e == 1 else f"{ring[v]}^{e}")
        return "*".join(parts)


ONE = Monomial()


def _sort_key(m: Monomial, n: int):
    return (m.degree, tuple(-e for e in m.dense(n)))


class MonomialIdeal:
    """A monomial ideal in ``k[ring]`` given by its minimal generators."""

    __slots__ = ("ring", "gens", "_hash")

    def __init__(self, ring: Sequence[str], gens: Iterable[Monomial] = ()):
        ring = tuple(ring)
        if len(set(ring)) != len(ring):
            raise InputError(f"duplicate variable names in ring {ring}")
        n = len(ring)
        gens = set(gens)
        for g in gens:
            for v, _ in g.items:
                if v >= n:
                    raise InputError(f"unknown variable id {v} (ring has {n} variables)")
        if ONE in gens:
            kept = [ONE]
        else:
            # sort by degree so a divisor is always seen before its multiples
            kept = []
            for g in sorted(gens, key=lambda m: _sort_key(m, n)):
                if not any(h.divides(g) for h in kept):
                    kept.append(g)
        self.ring = ring
        self.gens = tuple(sorted(kept, key=lambda m: _sort_key(m, n)))
        self._hash = hash((self.ring, self.gens))

    @classmethod
    def from_masks(cls, ring: Sequence[str], masks: Iterable[int]) -> "MonomialIdeal":
        return cls(ring, (Monomial.from_mask(m) for m in masks))

    @classmethod
    def from_exponents(cls, ring, exps: Iterable[Sequence[int]]) -> "MonomialIdeal":
        return cls(ring, (Monomial.from_exponents(e) for e in exps))

    @property
    def nvars(self) -> int:
        return len(self.ring)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == (ONE,)

    @property
    def is_squarefree(self) -> bool:
        return all(g.is_squarefree for g in self.gens)

    def masks(self) -> list:
        """Generator supports as bit masks; requires a squarefree ideal."""
        if not self.is_squarefree:
            raise NotSquarefreeError("ideal is not squarefree")
        return [g.support_mask for g in self.gens]

    def var_id(self, x) -> int:
        if isinstance(x, int):
            if not 0 <= x < self.nvars:
                raise InputError(f"unknown variable id {x}")
            return x
        try:
            return self.ring.index(x)
        except ValueError:
            raise InputError(f"unknown variable {x!r}") from None

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)

    __contains__ = contains

    def max_degree(self) -> int:
        return max((g.degree for g in self.gens), default=0)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.ring == other.ring
            and self.gens == other.gens
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"MonomialIdeal({list(self.ring)}, [{', '.join(self.format_gens())}])"

    def format_gens(self) -> list:
        return [g.format(self.ring) for g in self.gens]


def minimalize(gens: Iterable[Monomial], ring: Sequence[str]) -> MonomialIdeal:
    return MonomialIdeal(ring, gens)


def variable(ring: Sequence[str], x) -> Monomial:
    ring = tuple(ring)
    v = x if isinstance(x, int) else ring.index(x)
    return Monomial({v: 1})


def maximal_ideal_power(ring: Sequence[str], t: int) -> MonomialIdeal:
    n = len(ring)
    return MonomialIdeal(ring, _monomials_of_degree(range(n), t))


def _monomials_of_degree(variables, k):
    for combo in combinations_with_replacement(variables, k):
        d = {}
        for v in combo:
            d[v] = d.get(v, 0) + 1
        yield Monomial(d)


def _same_ring(I: MonomialIdeal, J: MonomialIdeal):
    if I.ring != J.ring:
        raise InputError(f"ring mismatch: {I.ring} vs {J.ring}")


@dataclass(frozen=True)
class Polarization:
    ideal: MonomialIdeal
    # new variable index -> (original variable id, copy number starting at 1)
    provenance: tuple

    def depolarize(self, m: Monomial) -> Monomial:
        d = {}
        for v, _ in m.items:
            orig, _j = self.provenance[v]
            d[orig] = d.get(orig, 0) + 1
        return Monomial(d)


def polarize(I: MonomialIdeal) -> Polarization:
    top = [0] * I.nvars
    for g in I.gens:
        for v, e in g.items:
            top[v] = max(top[v], e)
    provenance = []
    index = {}
    names = []
    for v, a in enumerate(top):
        for j in range(1, a + 1):
            index[v, j] = len(provenance)
            provenance.append((v, j))
            names.append(f"{I.ring[v]}_{j}")
    if len(set(names)) != len(names):
        raise InputError(f"polarized variable names collide: {names}")
    new_gens = []
    for g in I.gens:
        new_gens.append(Monomial({index[v, j]: 1 for v, e in g.items for j in range(1, e + 1)}))
    return Polarization(MonomialIdeal(names, new_gens), tuple(provenance))


def colon(I: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    return MonomialIdeal(I.ring, (g.quotient(m) for g in I.gens))


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return MonomialIdeal(I.ring, I.gens + J.gens)


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return MonomialIdeal(I.ring, (g.lcm(h) for g in I.gens for h in J.gens))


def extend(I: MonomialIdeal, ring: Sequence[str]) -> MonomialIdeal:
    """Extension of ``I`` to a ring whose variables include ``I.ring`` (by name)."""
    ring = tuple(ring)
    try:
        where = [ring.index(x) for x in I.ring]
    except ValueError as exc:
        raise InputError(f"cannot extend {I.ring} into {ring}") from exc
    return MonomialIdeal(ring, (Monomial({where[v]: e for v, e in g.items}) for g in I.gens))


def restrict_to(I: MonomialIdeal, W: Iterable) -> MonomialIdeal:
    """``(I ∩ k[W])R``: generators supported inside ``W``, same ambient ring."""
    keep = {I.var_id(x) for x in W}
    return MonomialIdeal(I.ring, (g for g in I.gens if g.support <= keep))


def graded_piece(I: MonomialIdeal, t: int, squarefree: bool = False) -> MonomialIdeal:
    """Minimal generators of ``(I_t)R``.

    With ``squarefree=True`` only squarefree multipliers coprime to each
    generator are used, i.e. the degree-``t`` piece in the squarefree
    (Stanley-Reisner) sense.
    """
    if t < 0:
        raise InputError("t must be >= 0")
    out = []
    for g in I.gens:
        k = t - g.degree
        if k < 0:
            continue
        if squarefree:
            free = [v for v in range(I.nvars) if v not in g.support]
            out.extend(g * Monomial({v: 1 for v in c}) for c in combinations(free, k))
        else:
            out.extend(g * m for m in _monomials_of_degree(range(I.nvars), k))
    return MonomialIdeal(I.ring, out)


def truncate(I: MonomialIdeal, t: int) -> MonomialIdeal:
    """``I ∩ m^t``."""
    if t < 0:
        raise InputError("t must be >= 0")
    if t == 0:
        return I
    return intersect(I, maximal_ideal_power(I.ring, t))


def d_of(I: MonomialIdeal) -> int:
    """Least degree of a minimal generator."""
    if I.is_zero:
        raise UndefinedError("d(I) is undefined for the zero ideal")
    return I.gens[0].degree


def alexander_dual(I: MonomialIdeal) -> MonomialIdeal:
    if not I.is_squarefree:
        raise NotSquarefreeError("Alexander dual needs a squarefree ideal")
    if I.is_zero or I.is_unit:
        raise UndefinedError("Alexander dual of the zero or unit ideal is not supported")
    return MonomialIdeal.from_masks(I.ring, minimal_transversals(I.masks()))


def is_primary(I: MonomialIdeal):
    """Variable ids of the associated prime if ``I`` is primary, else ``None``."""
    if I.is_unit:
        return None
    pure = {g.items[0][0] for g in I.gens if len(g.items) == 1}
    if all(g.support <= pure for g in I.gens):
        return frozenset(pure)
    return None


@dataclass(frozen=True)
class Bipartition:
    """``V1``/``V2`` as ascending variable ids; ``G[j]`` is the set of
    ``x`` in ``V1`` with ``x * V2[j]`` a generator."""

    V1: tuple
    V2: tuple
    G: tuple


def bipartition(I: MonomialIdeal) -> Bipartition:
    """2-colour the generator graph of a quadratic squarefree ideal.

    Within each connected component the lowest variable id lands in ``V1``;
    variables in no generator also go to ``V1``.
    """
    adj = {v: set() for v in range(I.nvars)}
    for g in I.gens:
        if g.degree != 2 or not g.is_squarefree:
            raise NotBipartiteError(
                NotBipartiteError.NOT_QUADRATIC, g.format(I.ring)
            )
        a, b = (v for v, _ in g.items)
        adj[a].add(b)
        adj[b].add(a)
    color = {}
    for start in range(I.nvars):
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    raise NotBipartiteError(
                        NotBipartiteError.ODD_CYCLE,
                        f"{I.ring[u]} and {I.ring[w]} share a side",
                    )
    V1 = tuple(v for v in range(I.nvars) if color[v] == 0)
    V2 = tuple(v for v in range(I.nvars) if color[v] == 1)
    G = tuple(frozenset(x for x in V1 if x in adj[y]) for y in V2)
    return Bipartition(V1, V2, G)


def is_bipartite(I: MonomialIdeal) -> bool:
    try:
        bipartition(I)
    except NotBipartiteError:
        return False
    return True


@dataclass(frozen=True)
class PowerSplit:
    J: MonomialIdeal
    t: int
    colon: MonomialIdeal


def power_split(I: MonomialIdeal, x) -> PowerSplit:
    """Write ``I = (J, x^t)`` minimally and return ``J``, ``t`` and ``(I : x)``."""
    v = I.var_id(x)
    powers = [g.exponent(v) for g in I.gens if g.support == {v}]
    if not powers:
        raise InputError(f"no power of {I.ring[v]} lies in the ideal")
    t = min(powers)
    J = MonomialIdeal(I.ring, (g for g in I.gens if g.exponent(v) < t))
    return PowerSplit(J, t, colon(I, Monomial({v: 1})))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (``characteristic == 0``) or the prime field of order p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, int) or (c != 0 and not _is_prime(c)):
            raise InputError(f"characteristic must be 0 or a prime, got {c!r}")

    @classmethod
    def parse(cls, text) -> "FieldSpec":
        try:
            return cls(int(text))
        except ValueError:
            raise InputError(f"bad characteristic {text!r}") from None

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"ZZ/{self.characteristic}"


QQ = FieldSpec(0)
