"""Hilbert-style proof checking for the KB, KF, and BM systems.

A proof is a numbered list of lines `n. <formula> ; <justification>`.
Justifications are `PL` (propositional tautology), an axiom-schema name,
`MP i j`, or `UG_<rule> i`.  Schema instances are recognized by structural
unification of metavariables against whole subformulas; PL is decided by a
truth table over the formula's modal-free skeleton (modal subformulas are
treated as opaque letters).

Axiom schemata (argument sorts in brackets):

    K_box_o   [o](a -> b) -> ([o]a -> [o]b)             a, b : s1
    K_box_p   [p](a -> b) -> ([p]a -> [p]b)             a, b : s2
    Dual_o    <o>a <-> ~[o]~a                           a : s1
    Dual_p    <p>a <-> ~[p]~a                           a : s2
    Adj_o     a -> [p]<o>a                               a : s1
    Adj_p     a -> [o]<p>a                               a : s2
    K_win_o   [[o]](a & ~b) -> ([[o]]~a -> [[o]]~b)     a, b : s1
    K_win_p   [[p]](a & ~b) -> ([[p]]~a -> [[p]]~b)     a, b : s2
    B_o       a -> [[p]][[o]]a                           a : s1
    B_p       a -> [[o]][[p]]a                           a : s2
    N_o       N_o(a,b) & N_o(a->c, b->d) -> N_o(c,d)     a..d : s1
    N_p       likewise for sort s2
    U_o       [U_o]a -> [U_o][U_p][U_o]a                 a : s1
    U_p       [U_p]a -> [U_p][U_o][U_p]a                 a : s2

Rules: `MP i j` (modus ponens), `UG_box_o i` / `UG_box_p i` (from a derive
box-a), `UG_win_o i` / `UG_win_p i` (from ~a derive window-a).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .context import S1, S2
from .errors import FcaError, MalformedInputError
from .formula import (And, Atom, Bottom, Formula, Iff, Implies, Modal, Not,
                      Or, Top, _Binary, box_o, box_p, dia_o, dia_p, n_op,
                      u_op, walk, win_o, win_p)
from .parser import parse


@dataclass(frozen=True)
class MVar(Formula):
    """Schema metavariable; stands for an arbitrary formula of its sort."""

    name: str
    sort: str


def match(schema: Formula, f: Formula,
          subst: Optional[dict] = None) -> Optional[dict]:
    """Unify `schema` against `f`; returns the substitution or None."""
    if subst is None:
        subst = {}
    if isinstance(schema, MVar):
        if schema.sort != f.sort:
            return None
        bound = subst.get(schema)
        if bound is None:
            subst[schema] = f
            return subst
        return subst if bound == f else None
    if type(schema) is not type(f):
        return None
    if isinstance(schema, (Atom, Top, Bottom)):
        return subst if schema == f else None
    if isinstance(schema, Not):
        return match(schema.child, f.child, subst)
    if isinstance(schema, _Binary):
        subst = match(schema.left, f.left, subst)
        if subst is None:
            return None
        return match(schema.right, f.right, subst)
    assert isinstance(schema, Modal)
    if schema.op != f.op:
        return None
    return match(schema.child, f.child, subst)


# -- propositional tautology check ----------------------------------------------

MAX_PL_LETTERS = 16


def _skeleton_letters(f: Formula) -> list[Formula]:
    letters = []
    seen = set()

    def visit(node: Formula):
        if isinstance(node, (Not,)):
            visit(node.child)
        elif isinstance(node, _Binary):
            visit(node.left)
            visit(node.right)
        elif isinstance(node, (Top, Bottom)):
            pass
        else:  # Atom, Modal, MVar: opaque
            if node not in seen:
                seen.add(node)
                letters.append(node)

    visit(f)
    return letters


def is_tautology(f: Formula) -> bool:
    """Truth-table over the modal-free skeleton of `f`."""
    letters = _skeleton_letters(f)
    if len(letters) > MAX_PL_LETTERS:
        raise FcaError(f"PL check over {len(letters)} distinct subformulas "
                       f"exceeds the {MAX_PL_LETTERS}-letter cap")
    index = {node: i for i, node in enumerate(letters)}

    def value(node: Formula, row: int) -> bool:
        if isinstance(node, Top):
            return True
        if isinstance(node, Bottom):
            return False
        if isinstance(node, Not):
            return not value(node.child, row)
        if isinstance(node, And):
            return value(node.left, row) and value(node.right, row)
        if isinstance(node, Or):
            return value(node.left, row) or value(node.right, row)
        if isinstance(node, Implies):
            return (not value(node.left, row)) or value(node.right, row)
        if isinstance(node, Iff):
            return value(node.left, row) == value(node.right, row)
        return bool(row >> index[node] & 1)

    return all(value(f, row) for row in range(1 << len(letters)))


# -- axiom schemata ----------------------------------------------------------------

def _mv(name: str, sort: str) -> MVar:
    return MVar(name, sort)


def _build_schemas() -> dict[str, Formula]:
    a1, b1, c1, d1 = (_mv(n, S1) for n in "abcd")
    a2, b2, c2, d2 = (_mv(n, S2) for n in "abcd")
    return {
        "K_box_o": Implies(box_o(Implies(a1, b1)), Implies(box_o(a1), box_o(b1))),
        "K_box_p": Implies(box_p(Implies(a2, b2)), Implies(box_p(a2), box_p(b2))),
        "Dual_o": Iff(dia_o(a1), Not(box_o(Not(a1)))),
        "Dual_p": Iff(dia_p(a2), Not(box_p(Not(a2)))),
        "Adj_o": Implies(a1, box_p(dia_o(a1))),
        "Adj_p": Implies(a2, box_o(dia_p(a2))),
        "K_win_o": Implies(win_o(And(a1, Not(b1))),
                           Implies(win_o(Not(a1)), win_o(Not(b1)))),
        "K_win_p": Implies(win_p(And(a2, Not(b2))),
                           Implies(win_p(Not(a2)), win_p(Not(b2)))),
        "B_o": Implies(a1, win_p(win_o(a1))),
        "B_p": Implies(a2, win_o(win_p(a2))),
        "N_o": Implies(And(n_op("o", a1, b1),
                           n_op("o", Implies(a1, c1), Implies(b1, d1))),
                       n_op("o", c1, d1)),
        "N_p": Implies(And(n_op("p", a2, b2),
                           n_op("p", Implies(a2, c2), Implies(b2, d2))),
                       n_op("p", c2, d2)),
        "U_o": Implies(u_op("o", a1), u_op("o", u_op("p", u_op("o", a1)))),
        "U_p": Implies(u_op("p", a2), u_op("p", u_op("o", u_op("p", a2)))),
    }


SCHEMAS = _build_schemas()

UG_RULES = ("UG_box_o", "UG_box_p", "UG_win_o", "UG_win_p")

SYSTEMS = {
    "KB": {
        "axioms": ("K_box_o", "K_box_p", "Dual_o", "Dual_p", "Adj_o", "Adj_p"),
        "rules": ("MP", "UG_box_o", "UG_box_p"),
        "styles": frozenset({"box", "diamond"}),
        "bases": frozenset({"I"}),
    },
    "KF": {
        "axioms": ("K_win_o", "K_win_p", "B_o", "B_p"),
        "rules": ("MP", "UG_win_o", "UG_win_p"),
        "styles": frozenset({"window", "window_dual"}),
        "bases": frozenset({"I"}),
    },
    "BM": {
        "axioms": ("K_box_o", "K_box_p", "Dual_o", "Dual_p", "Adj_o", "Adj_p",
                   "K_win_o", "K_win_p", "B_o", "B_p", "N_o", "N_p", "U_o", "U_p"),
        "rules": ("MP", "UG_box_o", "UG_box_p", "UG_win_o", "UG_win_p"),
        "styles": frozenset({"box", "diamond", "window", "window_dual"}),
        "bases": frozenset({"I", "C"}),
    },
}


def _language_violation(f: Formula, system: str) -> Optional[str]:
    spec = SYSTEMS[system]
    for node in walk(f):
        if isinstance(node, Modal):
            op = node.op
            if op.grade is not None or op.weight is not None:
                return f"{system} has no graded or weighted operators"
            if op.style not in spec["styles"] or op.base not in spec["bases"]:
                return (f"operator (style={op.style}, base={op.base}) "
                        f"is not in the {system} language")
    return None


# -- proofs -----------------------------------------------------------------------

@dataclass(frozen=True)
class Justification:
    kind: str                       # 'PL', schema name, 'MP', or a UG rule
    refs: tuple[int, ...] = ()      # 1-based line numbers


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Proof:
    lines: tuple[ProofLine, ...]


@dataclass(frozen=True)
class LineReport:
    ok: bool
    message: str


@dataclass(frozen=True)
class ProofVerdict:
    accepted: bool
    reports: tuple[LineReport, ...]

    @property
    def first_failure(self) -> Optional[int]:
        for i, rep in enumerate(self.reports, start=1):
            if not rep.ok:
                return i
        return None


_LINE_RE = re.compile(r"^\s*(\d+)\.\s*(.*?)\s*;\s*(\S+)((?:\s+\d+)*)\s*$")


def parse_proof(text: str, sort_env: Optional[dict] = None) -> Proof:
    """Parse the line-oriented proof format; `#` starts a comment line."""
    lines = []
    for raw in text.splitlines():
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _LINE_RE.match(raw)
        if not m:
            raise MalformedInputError(f"malformed proof line: {raw!r}")
        number = int(m.group(1))
        if number != len(lines) + 1:
            raise MalformedInputError(
                f"line numbered {number} appears in position {len(lines) + 1}")
        formula = parse(m.group(2), sort_env)
        kind = m.group(3)
        refs = tuple(int(tok) for tok in m.group(4).split())
        lines.append(ProofLine(formula, Justification(kind, refs)))
    if not lines:
        raise MalformedInputError("empty proof")
    return Proof(tuple(lines))


def _check_line(proof: Proof, n: int, system: str) -> LineReport:
    line = proof.lines[n - 1]
    f = line.formula
    just = line.justification
    spec = SYSTEMS[system]
    problem = _language_violation(f, system)
    if problem:
        return LineReport(False, problem)

    def earlier(ref: int) -> Optional[Formula]:
        if not 1 <= ref < n:
            return None
        return proof.lines[ref - 1].formula

    if just.kind == "PL":
        if is_tautology(f):
            return LineReport(True, "tautology")
        return LineReport(False, "not a propositional tautology")
    if just.kind in SCHEMAS:
        if just.kind not in spec["axioms"]:
            return LineReport(False, f"axiom {just.kind} is not part of {system}")
        if match(SCHEMAS[just.kind], f) is not None:
            return LineReport(True, f"instance of {just.kind}")
        return LineReport(False, f"not an instance of schema {just.kind}")
    if just.kind == "MP":
        if len(just.refs) != 2:
            return LineReport(False, "MP takes two line references")
        left, right = (earlier(r) for r in just.refs)
        if left is None or right is None:
            return LineReport(False, "MP references a missing or later line")
        for minor, major in ((left, right), (right, left)):
            if isinstance(major, Implies) and major.left == minor and major.right == f:
                return LineReport(True, "modus ponens")
        return LineReport(False, "MP premises do not yield this line")
    if just.kind in UG_RULES:
        if just.kind not in spec["rules"]:
            return LineReport(False, f"rule {just.kind} is not part of {system}")
        if len(just.refs) != 1:
            return LineReport(False, f"{just.kind} takes one line reference")
        prem = earlier(just.refs[0])
        if prem is None:
            return LineReport(False, f"{just.kind} references a missing or later line")
        want_sort = S1 if just.kind.endswith("_o") else S2
        if just.kind.startswith("UG_box"):
            ok = (isinstance(f, Modal) and f.op.style == "box" and f.op.base == "I"
                  and f.op.grade is None and f.op.weight is None
                  and f.child == prem and prem.sort == want_sort)
            return (LineReport(True, "necessitation") if ok
                    else LineReport(False, "conclusion is not box of the premise"))
        ok = (isinstance(f, Modal) and f.op.style == "window" and f.op.base == "I"
              and f.op.grade is None and f.op.weight is None
              and isinstance(prem, Not) and f.child == prem.child
              and f.child.sort == want_sort)
        return (LineReport(True, "window generalization") if ok
                else LineReport(False,
                                "conclusion is not window of the negated premise"))
    return LineReport(False, f"unknown justification {just.kind!r}")


def check_proof(proof: Proof, system: str) -> ProofVerdict:
    """Check every line; the verdict carries a per-line report."""
    if system not in SYSTEMS:
        raise MalformedInputError(f"unknown system {system!r}")
    reports = tuple(_check_line(proof, n, system)
                    for n in range(1, len(proof.lines) + 1))
    return ProofVerdict(all(r.ok for r in reports), reports)
