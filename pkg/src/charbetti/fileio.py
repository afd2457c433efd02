"""Text and JSON formats for ideals, complexes, covers and Betti tables.

Ideal text::

    ring x1 x2 x3
    x1^2*x2
    x3

Complex text (``()`` is the empty facet, so ``vertices a`` followed by a
single ``()`` line is the complex ``{∅}``; no facet lines means void)::

    vertices x1 x2 x3
    x1 x2
    x3

Blank lines and ``#`` comments are ignored in both.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .betti import BettiTable
from .complex import SimplicialComplex
from .errors import InputError, ParseError
from .ideal import Monomial, MonomialIdeal

_POWER = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


def _content_lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_monomial(text: str, ring, line=None, source=None) -> Monomial:
    index = {v: k for k, v in enumerate(ring)}
    text = text.replace(" ", "")
    if text == "1":
        return Monomial()
    exps = {}
    for part in text.split("*"):
        m = _POWER.match(part)
        if not m:
            raise ParseError(f"bad monomial factor {part!r}", line, source)
        name, e = m.group(1), int(m.group(2) or 1)
        if name not in index:
            raise ParseError(f"unknown variable {name!r}", line, source)
        if e < 0:
            raise ParseError(f"negative exponent in {part!r}", line, source)
        exps[index[name]] = exps.get(index[name], 0) + e
    return Monomial(exps)


def parse_ideal(text: str, source=None) -> MonomialIdeal:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty ideal file (expected a 'ring' line)", None, source)
    no, head = lines[0]
    words = head.split()
    if words[0] != "ring":
        raise ParseError("first line must start with 'ring'", no, source)
    ring = tuple(words[1:])
    if len(set(ring)) != len(ring):
        raise ParseError("duplicate variable names", no, source)
    gens = [parse_monomial(line, ring, no, source) for no, line in lines[1:]]
    return MonomialIdeal(ring, gens)


def format_ideal(I: MonomialIdeal) -> str:
    lines = ["ring " + " ".join(I.ring)]
    lines.extend(I.format_gens())
    return "\n".join(lines) + "\n"


def ideal_to_json(I: MonomialIdeal) -> dict:
    return {
        "vars": list(I.ring),
        "gens": [[[I.ring[v], e] for v, e in g.items] for g in I.gens],
    }


def ideal_from_json(data) -> MonomialIdeal:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        ring = tuple(data["vars"])
        index = {v: k for k, v in enumerate(ring)}
        gens = []
        for g in data["gens"]:
            exps = {}
            for name, e in g:
                exps[index[name]] = exps.get(index[name], 0) + int(e)
            gens.append(Monomial(exps))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed ideal JSON: {exc!r}") from None
    return MonomialIdeal(ring, gens)


def parse_complex(text: str, source=None) -> SimplicialComplex:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty complex file (expected a 'vertices' line)", None, source)
    no, head = lines[0]
    words = head.split()
    if words[0] != "vertices":
        raise ParseError("first line must start with 'vertices'", no, source)
    vertices = tuple(words[1:])
    if len(set(vertices)) != len(vertices):
        raise ParseError("duplicate vertex names", no, source)
    index = {v: k for k, v in enumerate(vertices)}
    facets = []
    for no, line in lines[1:]:
        if line == "()":
            facets.append(0)
            continue
        mask = 0
        for name in line.split():
            if name not in index:
                raise ParseError(f"unknown vertex {name!r}", no, source)
            mask |= 1 << index[name]
        facets.append(mask)
    return SimplicialComplex(vertices, facets)


def format_complex(delta: SimplicialComplex) -> str:
    lines = ["vertices " + " ".join(delta.vertices)]
    for f in delta.facets:
        names = delta.names(f)
        lines.append(" ".join(names) if names else "()")
    return "\n".join(lines) + "\n"


def complex_to_json(delta: SimplicialComplex) -> dict:
    return {"vertices": list(delta.vertices), "facets": [list(f) for f in delta.facet_names()]}


def complex_from_json(data) -> SimplicialComplex:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return SimplicialComplex.from_faces(data["vertices"], data["facets"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed complex JSON: {exc!r}") from None


def covers_from_json(data, gamma: SimplicialComplex) -> list:
    """``{"covers": [[facet, ...], ...]}`` with facets as vertex-name lists."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return [SimplicialComplex.from_faces(gamma.vertices, c) for c in data["covers"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed covers JSON: {exc!r}") from None


def g_sets_from_json(data) -> list:
    """``{"G": [[vertex, ...], ...]}``."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return [list(g) for g in data["G"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed G-sets JSON: {exc!r}") from None


def _is_json(path: Path, text: str) -> bool:
    return path.suffix == ".json" or text.lstrip().startswith("{")


def read_ideal(path) -> MonomialIdeal:
    path = Path(path)
    text = path.read_text()
    if _is_json(path, text):
        return ideal_from_json(_load_json(text, path))
    return parse_ideal(text, source=str(path))


def read_complex(path) -> SimplicialComplex:
    path = Path(path)
    text = path.read_text()
    if _is_json(path, text):
        return complex_from_json(_load_json(text, path))
    return parse_complex(text, source=str(path))


def read_betti(path) -> BettiTable:
    path = Path(path)
    return BettiTable.from_json(_load_json(path.read_text(), path))


def _load_json(text, path):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, str(path)) from None
