"""Algebra definition files and constructor specs.

A definition file is a single JSON document with optional sections:

    "lie":      one presentation or a list: {"name", "basis", "constants",
                "form"} with basis entries [name, "even"|"odd"], constants
                as triples [i, j, [[m, "p/q"], ...]], form a matrix of
                "p/q" strings,
    "algebra":  a constructor spec string (see below),
    "currents": {"name": expression, ...},
    "elements": {"name": expression, ...}.

Constructor specs name built-in families with parameters, e.g.
"affine:sl2@k", "betagamma:1", "tau:1"; "A * B" builds tensor products.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .coefficients import parse_ratfunc
from .constructions import (
    affine,
    bc_system,
    beta_gamma,
    free_fermion,
    heisenberg,
    heisenberg_pairs,
    symplectic_fermion,
    tau_embedding,
    sigma_embedding,
)
from .core import VAError, VAPresentation
from .expressions import parse_element
from .lie import LieError, LiePresentation, builtin_lie, lie_from_constants


class DefinitionError(VAError):
    pass


def parse_lie_section(doc: dict) -> LiePresentation:
    try:
        basis = [(entry[0], entry[1]) for entry in doc["basis"]]
        constants = [
            (int(i), int(j), [(int(m), Fraction(v)) for m, v in pairs])
            for i, j, pairs in doc.get("constants", [])
        ]
        form = [[Fraction(v) for v in row] for row in doc["form"]]
    except (KeyError, IndexError, ValueError) as exc:
        raise DefinitionError(f"malformed lie section: {exc}") from exc
    return lie_from_constants(
        basis,
        [(i, j, pairs) for i, j, pairs in constants],
        form,
        name=doc.get("name", "lie"),
    )


_RANK_BUILDERS = {
    "heisenberg": heisenberg,
    "freefermion": free_fermion,
    "bc": bc_system,
    "betagamma": beta_gamma,
    "sympfermion": symplectic_fermion,
    "hpairs": heisenberg_pairs,
}


def build_algebra(spec: str, lie_table=None, param="k") -> VAPresentation:
    """Build a presentation from a constructor spec string."""
    parts = [p.strip() for p in spec.split("*")]
    built = [_build_atom(p, lie_table, param) for p in parts if p]
    if not built:
        raise DefinitionError("empty algebra spec")
    out = built[0]
    for nxt in built[1:]:
        out = out.tensor(nxt)
    return out


def _build_atom(spec: str, lie_table, param) -> VAPresentation:
    if ":" not in spec:
        raise DefinitionError(f"bad constructor spec {spec!r}")
    head, arg = spec.split(":", 1)
    head = head.strip()
    arg = arg.strip()
    if head == "affine":
        if "@" in arg:
            lie_name, level = arg.split("@", 1)
        else:
            lie_name, level = arg, "k"
        lie = None
        if lie_table and lie_name in lie_table:
            lie = lie_table[lie_name]
        else:
            try:
                lie = builtin_lie(lie_name)
            except LieError as exc:
                raise DefinitionError(str(exc)) from exc
        return affine(lie, parse_ratfunc(level, param), param=param)
    if head == "tau":
        return tau_embedding(int(arg), param=param).target
    if head == "sigma":
        return sigma_embedding(int(arg), param=param).target
    if head in _RANK_BUILDERS:
        return _RANK_BUILDERS[head](int(arg), param=param)
    raise DefinitionError(f"unknown constructor {head!r}")


class Definition:
    def __init__(self, algebra, lie_table, currents, elements):
        self.algebra = algebra
        self.lie_table = lie_table
        self.currents = currents
        self.elements = elements

    def lookup(self, name):
        if name in self.currents:
            return self.currents[name]
        if name in self.elements:
            return self.elements[name]
        return None


def load_definition(path_or_doc) -> Definition:
    if isinstance(path_or_doc, (str, bytes)):
        with open(path_or_doc) as fh:
            doc = json.load(fh)
    else:
        doc = path_or_doc
    lie_table = {}
    lie_section = doc.get("lie")
    if lie_section:
        if isinstance(lie_section, dict):
            lie_section = [lie_section]
        for entry in lie_section:
            lp = parse_lie_section(entry)
            lie_table[lp.name] = lp
    spec = doc.get("algebra")
    if not spec:
        raise DefinitionError('definition file needs an "algebra" section')
    if isinstance(spec, dict):
        spec = spec.get("spec", "")
    algebra = build_algebra(spec, lie_table)
    currents = {}
    for name, text in (doc.get("currents") or {}).items():
        currents[name] = parse_element(algebra, text)
    elements = {}
    for name, text in (doc.get("elements") or {}).items():
        elements[name] = parse_element(algebra, text)
    return Definition(algebra, lie_table, currents, elements)
