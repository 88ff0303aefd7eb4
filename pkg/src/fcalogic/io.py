"""File formats: Burmeister-style context files, model/algebra JSON, DOT export.

Context files (`.cxt`)::

    B
    <blank>
    <|G|>
    <|M|>
    <blank>
    <|G| object names, one per line (may contain spaces)>
    <|M| attribute names>
    <|G| rows of '.'/'X', each exactly |M| wide>

Model JSON::

    {"objects": [...], "attributes": [...],
     "incidence": [["g","m"], ...],
     "j_relation": [["g","m"], ...],        # optional; present => generalized
     "valuation": {"p@1": ["g1"], "r@2": ["m1"]}}

Valuation keys carry the sort suffix used by the formula grammar.

Algebra JSON::

    {"carrier": [...names...], "meet": [[i]], "join": [[i]],
     "negation": [i], "opposition": [i], "top": i, "bottom": i}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .concepts import ConceptLattice
from .context import S1, S2, FormalContext
from .dba import FiniteAlgebra
from .errors import DuplicateNameError, MalformedInputError
from .formula import Atom
from .semantics import ContextModel, GeneralizedModel


# -- Burmeister context files -----------------------------------------------------

def loads_cxt(text: str) -> FormalContext:
    lines = text.split("\n")

    def get(i: int, what: str) -> str:
        if i >= len(lines):
            raise MalformedInputError(f"line {i + 1}: missing {what}")
        return lines[i]

    if get(0, "header").strip() != "B":
        raise MalformedInputError("line 1: expected header 'B'")
    if get(1, "blank line").strip():
        raise MalformedInputError("line 2: expected a blank line")
    try:
        n_g = int(get(2, "object count").strip())
        n_m = int(get(3, "attribute count").strip())
    except ValueError:
        raise MalformedInputError("line 3/4: counts must be integers") from None
    if n_g < 0 or n_m < 0:
        raise MalformedInputError("line 3/4: counts must be non-negative")
    if get(4, "blank line").strip():
        raise MalformedInputError("line 5: expected a blank line")
    base = 5
    objects = [get(base + i, f"object name {i + 1}") for i in range(n_g)]
    attributes = [get(base + n_g + j, f"attribute name {j + 1}") for j in range(n_m)]
    pairs = []
    for i in range(n_g):
        lineno = base + n_g + n_m + i
        row = get(lineno, f"incidence row {i + 1}")
        if len(row) != n_m:
            raise MalformedInputError(
                f"line {lineno + 1}: row has width {len(row)}, expected {n_m}")
        for j, ch in enumerate(row):
            if ch == "X":
                pairs.append((objects[i], attributes[j]))
            elif ch != ".":
                raise MalformedInputError(
                    f"line {lineno + 1}: illegal character {ch!r} in incidence row")
    for extra in lines[base + n_g + n_m + n_g:]:
        if extra.strip():
            raise MalformedInputError("trailing non-blank content after incidence rows")
    return FormalContext(objects, attributes, pairs)


def dumps_cxt(context: FormalContext) -> str:
    rows = []
    for i in range(len(context.objects)):
        mask = context.row(i)
        rows.append("".join("X" if mask >> j & 1 else "."
                            for j in range(len(context.attributes))))
    parts = (["B", "", str(len(context.objects)), str(len(context.attributes)), ""]
             + list(context.objects) + list(context.attributes) + rows)
    return "\n".join(parts) + "\n"


def load_cxt(path) -> FormalContext:
    return loads_cxt(Path(path).read_text(encoding="utf-8"))


def save_cxt(context: FormalContext, path) -> None:
    Path(path).write_text(dumps_cxt(context), encoding="utf-8")


# -- model JSON ----------------------------------------------------------------------

def _atom_from_key(key: str) -> Atom:
    name, sep, suffix = key.partition("@")
    if not sep or suffix not in ("1", "2") or not name:
        raise MalformedInputError(
            f"valuation key {key!r} must look like name@1 or name@2")
    return Atom(name, S1 if suffix == "1" else S2)


def _pairs(raw, what: str) -> list[tuple[str, str]]:
    if not isinstance(raw, list):
        raise MalformedInputError(f"{what} must be a list of [object, attribute] pairs")
    out = []
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 2
                and all(isinstance(x, str) for x in entry)):
            raise MalformedInputError(f"{what} entry {entry!r} is not a string pair")
        out.append((entry[0], entry[1]))
    return out


def model_from_dict(data: dict) -> Union[ContextModel, GeneralizedModel]:
    if not isinstance(data, dict):
        raise MalformedInputError("model document must be a JSON object")
    for key in ("objects", "attributes", "incidence"):
        if key not in data:
            raise MalformedInputError(f"model document lacks {key!r}")
    objects = data["objects"]
    attributes = data["attributes"]
    if not (isinstance(objects, list) and all(isinstance(x, str) for x in objects)):
        raise MalformedInputError("objects must be a list of strings")
    if not (isinstance(attributes, list) and all(isinstance(x, str) for x in attributes)):
        raise MalformedInputError("attributes must be a list of strings")
    incidence = _pairs(data["incidence"], "incidence")
    raw_val = data.get("valuation", {})
    if not isinstance(raw_val, dict):
        raise MalformedInputError("valuation must be an object")
    valuation = {}
    for key, members in raw_val.items():
        if not (isinstance(members, list) and all(isinstance(x, str) for x in members)):
            raise MalformedInputError(f"valuation of {key!r} must be a list of ids")
        valuation[_atom_from_key(key)] = tuple(members)
    if "j_relation" in data:
        j_pairs = _pairs(data["j_relation"], "j_relation")
        return GeneralizedModel(objects, attributes, incidence, j_pairs, valuation)
    context = FormalContext(objects, attributes, incidence)
    return ContextModel(context, valuation)


def model_to_dict(model: Union[ContextModel, GeneralizedModel]) -> dict:
    if isinstance(model, GeneralizedModel):
        i_pairs = model.i_pairs()
        j_pairs = model.j_pairs()
    else:
        i_pairs = model.context.incidence_pairs()
        j_pairs = None
    val = {}
    for atom, members in model.valuation_sets().items():
        key = f"{atom.name}@{'1' if atom.sort == S1 else '2'}"
        val[key] = sorted(members.members)
    doc = {
        "objects": list(model.objects),
        "attributes": list(model.attributes),
        "incidence": [list(p) for p in i_pairs],
        "valuation": val,
    }
    if j_pairs is not None:
        doc["j_relation"] = [list(p) for p in j_pairs]
    return doc


def load_model_json(path) -> Union[ContextModel, GeneralizedModel]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from None
    return model_from_dict(data)


def save_model_json(model, path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2, sort_keys=True)
                          + "\n", encoding="utf-8")


# -- algebra JSON ---------------------------------------------------------------------

def algebra_to_dict(alg: FiniteAlgebra) -> dict:
    return {
        "carrier": list(alg.names),
        "meet": alg.meet.tolist(),
        "join": alg.join.tolist(),
        "negation": alg.neg.tolist(),
        "opposition": alg.opp.tolist(),
        "top": alg.top,
        "bottom": alg.bottom,
    }


def algebra_from_dict(data: dict) -> FiniteAlgebra:
    if not isinstance(data, dict):
        raise MalformedInputError("algebra document must be a JSON object")
    for key in ("carrier", "meet", "join", "negation", "opposition", "top", "bottom"):
        if key not in data:
            raise MalformedInputError(f"algebra document lacks {key!r}")
    names = tuple(data["carrier"])
    return FiniteAlgebra(names, np.array(data["meet"]), np.array(data["join"]),
                         np.array(data["negation"]), np.array(data["opposition"]),
                         int(data["top"]), int(data["bottom"]))


def load_algebra_json(path) -> FiniteAlgebra:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from None
    return algebra_from_dict(data)


# -- lattice export --------------------------------------------------------------------

def lattice_to_dict(lattice: ConceptLattice) -> dict:
    return {
        "kind": lattice.kind,
        "concepts": [{"extent": list(c.extent), "intent": list(c.intent)}
                     for c in lattice.concepts],
        "covers": [list(edge) for edge in lattice.cover_pairs()],
    }


def lattice_to_dot(lattice: ConceptLattice) -> str:
    def label(c):
        return "{" + ",".join(c.extent) + "}|{" + ",".join(c.intent) + "}"

    lines = ["digraph lattice {", "  rankdir=BT;"]
    for i, c in enumerate(lattice.concepts):
        lines.append(f'  n{i} [label="{label(c)}"];')
    for i, j in lattice.cover_pairs():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- workspace ---------------------------------------------------------------------------

@dataclass
class Workspace:
    """Named contexts, models, formulas, and proofs; names unique per kind."""

    contexts: dict = field(default_factory=dict)
    models: dict = field(default_factory=dict)
    formulas: dict = field(default_factory=dict)
    proofs: dict = field(default_factory=dict)

    def _add(self, table: dict, kind: str, name: str, value):
        if name in table:
            raise DuplicateNameError(f"{kind} named {name!r} already loaded")
        table[name] = value
        return value

    def add_context(self, name: str, context: FormalContext):
        return self._add(self.contexts, "context", name, context)

    def add_model(self, name: str, model):
        return self._add(self.models, "model", name, model)

    def add_formula(self, name: str, formula):
        return self._add(self.formulas, "formula", name, formula)

    def add_proof(self, name: str, proof):
        return self._add(self.proofs, "proof", name, proof)
