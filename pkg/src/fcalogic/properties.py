"""Graded-logic relation characterization and weighted (in)validity experiments.

The graded characterization compares atom-free graded formulas against direct
relational checks (partial function, function, injective/surjective/bijective
function) for the incidence relation and its complement.

The weighted side packages the explicit counter-model constructions that
refute the naive weighted generalizations, plus the positive laws that do
survive (threshold monotonicity and the weight-1 antitone rules).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .context import S1, S2, FormalContext
from .errors import ParamRangeError
from .formula import (And, Atom, Formula, Iff, Implies, Not, Or, box_o, box_p,
                      dia_o, dia_p, win_o, win_p, Top)
from .fuzz import random_formula
from .semantics import ContextModel, satisfies, truth_set


@dataclass(frozen=True)
class RelationFlags:
    partial_function: bool
    function: bool
    injective: bool    # injective function
    surjective: bool   # surjective function
    bijective: bool


def relation_class(context: FormalContext, base: str = "I") -> RelationFlags:
    """Direct relational checks on the incidence relation or its complement."""
    ctx = context if base == "I" else context.complement()
    row_sizes = [ctx.row(i).bit_count() for i in range(len(ctx.objects))]
    col_sizes = [ctx.col(j).bit_count() for j in range(len(ctx.attributes))]
    partial = all(s <= 1 for s in row_sizes)
    function = all(s == 1 for s in row_sizes)
    injective = function and all(s <= 1 for s in col_sizes)
    surjective = function and all(s >= 1 for s in col_sizes)
    bijective = function and all(s == 1 for s in col_sizes)
    return RelationFlags(partial, function, injective, surjective, bijective)


def _exact_one_dia_p(base: str) -> Formula:
    return dia_p(Top(S2), base=base, grade=1, exact=True)


def _exact_one_dia_o(base: str) -> Formula:
    return dia_o(Top(S1), base=base, grade=1, exact=True)


def _clauses():
    """(clause letter, base, flag name, formulas that must be globally true)."""
    out = []
    for base in ("I", "C"):
        out.append(("a", base, "partial_function",
                    (Not(dia_p(Top(S2), base=base, grade=1)),)))
        out.append(("b", base, "function", (_exact_one_dia_p(base),)))
        letter = {"I": {"inj": "c", "sur": "e", "bij": "g"},
                  "C": {"inj": "d", "sur": "f", "bij": "h"}}[base]
        out.append((letter["inj"], base, "injective",
                    (_exact_one_dia_p(base), Not(dia_o(Top(S1), base=base, grade=1)))))
        out.append((letter["sur"], base, "surjective",
                    (_exact_one_dia_p(base), dia_o(Top(S1), base=base, grade=0))))
        out.append((letter["bij"], base, "bijective",
                    (_exact_one_dia_o(base), _exact_one_dia_p(base))))
    return out


@dataclass(frozen=True)
class ClauseResult:
    clause: str
    relation: str          # "I" or "complement"
    formulas_hold: bool
    relational: bool

    @property
    def agree(self) -> bool:
        return self.formulas_hold == self.relational


@dataclass(frozen=True)
class CharacterizationReport:
    results: tuple[ClauseResult, ...]

    @property
    def all_agree(self) -> bool:
        return all(r.agree for r in self.results)


def graded_characterization_check(context: FormalContext) -> CharacterizationReport:
    """Per clause: global truth of the graded formulas vs the relational check."""
    model = ContextModel(context, {})
    flags = {"I": relation_class(context, "I"),
             "C": relation_class(context, "complement")}
    results = []
    for clause, base, flag, formulas in _clauses():
        holds = all(
            truth_set(model, f).members == frozenset(context.universe(f.sort))
            for f in formulas)
        relational = getattr(flags[base], flag)
        results.append(ClauseResult(clause, "I" if base == "I" else "complement",
                                    holds, relational))
    return CharacterizationReport(tuple(results))


# -- weighted counterexamples -------------------------------------------------------

COUNTEREXAMPLE_KINDS = ("box_dia_U", "contingency", "nested_box", "iff_definability")


@dataclass(frozen=True)
class Counterexample:
    model: ContextModel
    formula: Formula
    world: str

    def verify(self) -> bool:
        """True iff the target formula is indeed false at the designated world."""
        return not satisfies(self.model, self.world, self.formula)


def _frac(x, name: str) -> Fraction:
    try:
        return Fraction(x)
    except (TypeError, ValueError):
        raise ParamRangeError(f"{name} must be a rational, got {x!r}") from None


def _ceil(f: Fraction) -> int:
    return -((-f.numerator) // f.denominator)


def _floor(f: Fraction) -> int:
    return f.numerator // f.denominator


def weighted_counterexample(kind: str, c=None, d=None, e=None,
                            search_bound: int = 8) -> Optional[Counterexample]:
    """Build the refuting model for one of the weighted non-validity results.

    Sizes are the smallest integers satisfying the constructions' bounds.
    `iff_definability` searches contingency counts up to `search_bound` and
    returns None when no refutation exists in that box (in particular for
    the excepted weights 0,0 and 1,1).
    """
    if kind == "box_dia_U":
        return _box_dia_u(c, d, e)
    if kind == "contingency":
        return _contingency(c, d, e)
    if kind == "nested_box":
        return _nested_box(c, d)
    if kind == "iff_definability":
        return _iff_definability(c, d, search_bound)
    raise ParamRangeError(f"unknown counterexample kind {kind!r}")


def _checked(model: ContextModel, formula: Formula, world: str) -> Counterexample:
    ce = Counterexample(model, formula, world)
    if not ce.verify():
        raise ParamRangeError("construction failed to falsify its target formula")
    return ce


def _box_dia_u(c, d, e) -> Counterexample:
    c = _frac(c, "c")
    d = _frac(d, "d")
    if not (0 < c <= 1 and 0 < d <= 1):
        raise ParamRangeError("box_dia_U needs c, d in (0, 1]")
    bounds = [1 + 1 / d]
    if e is not None:
        e = _frac(e, "e")
        if not 0 <= e < 1:
            raise ParamRangeError("box_dia_U needs e in [0, 1)")
        bounds.append(1 / (1 - e))
    n = max(2, max(_ceil(b) for b in bounds))
    objects = tuple(f"g{i}" for i in range(n))
    ctx = FormalContext(objects, ("m0",), [(g, "m0") for g in objects])
    model = ContextModel(ctx, {Atom("p", S1): ("g0",), Atom("q", S1): ("g0",)})
    p, q = Atom("p", S1), Atom("q", S1)
    target = Implies(p, dia_p(box_o(p, weight=d), weight=c))
    if e is not None:
        second = Implies(q, box_p(dia_o(q, weight=e), weight=c))
        target = And(target, second)
    return _checked(model, target, "g0")


def _contingency(c, d, e) -> Counterexample:
    c = _frac(c, "c")
    d = _frac(d, "d")
    e = _frac(e, "e")
    if not (0 <= c < 1 and 0 <= d < 1 and 0 < e <= 1):
        raise ParamRangeError("contingency needs c, d in [0, 1) and e in (0, 1]")
    k4 = _floor(1 / e - 1) + 1            # strictly above 1/e - 1
    k3 = _ceil(k4 * d / (1 - d))
    a = ("a0",)
    bs = tuple(f"b{i}" for i in range(k3))
    cs = tuple(f"c{i}" for i in range(k4))
    objects = a + bs + cs
    incidence = [(g, "m0") for g in a + bs]
    ctx = FormalContext(objects, ("m0",), incidence)
    model = ContextModel(ctx, {Atom("p", S1): a, Atom("q", S1): bs})
    p, q = Atom("p", S1), Atom("q", S1)
    target = Implies(win_o(And(p, Not(q)), weight=c),
                     Implies(win_o(Not(p), weight=d), win_o(Not(q), weight=e)))
    return _checked(model, target, "m0")


def _nested_box(c, d) -> Counterexample:
    c = _frac(c, "c")
    d = _frac(d, "d")
    if not 0 < c <= 1:
        raise ParamRangeError("nested_box needs c in (0, 1]")
    if not 0 < d < 1:
        # at d = 1 the empty-denominator convention validates the target,
        # so no refuting model of this shape exists
        raise ParamRangeError("nested_box needs d in (0, 1)")
    n = max(_floor(1 / d) + 1, _ceil(1 / (1 - d)), 2)
    extras = tuple(f"h{i}" for i in range(n - 1))
    objects = ("g0", "g1") + extras
    attributes = ("m0", "m1")
    incidence = [("g0", "m0"), ("g1", "m0")]
    incidence += [(g, "m1") for g in objects if g != "g0"]
    ctx = FormalContext(objects, attributes, incidence)
    p_true = tuple(g for g in objects if g != "g1")
    model = ContextModel(ctx, {Atom("p", S1): p_true})
    p = Atom("p", S1)
    target = Implies(p, win_p(win_o(p, weight=d), weight=c))
    return _checked(model, target, "g0")


def _iff_definability(c, d, search_bound: int) -> Optional[Counterexample]:
    c = _frac(c, "c")
    d = _frac(d, "d")
    if not (0 <= c <= 1 and 0 <= d <= 1):
        raise ParamRangeError("iff_definability needs c, d in [0, 1]")
    p = Atom("p", S1)
    target = Iff(win_o(p, weight=c), box_o(Not(p), base="C", weight=d))
    for k1 in range(search_bound + 1):
        for k3 in range(search_bound + 1):
            for k4 in range(search_bound + 1):
                xs = tuple(f"x{i}" for i in range(k1))   # p-objects related to m0
                ys = tuple(f"y{i}" for i in range(k3))   # p-objects unrelated
                zs = tuple(f"z{i}" for i in range(k4))   # non-p objects unrelated
                objects = xs + ys + zs
                ctx = FormalContext(objects, ("m0",), [(g, "m0") for g in xs])
                model = ContextModel(ctx, {p: xs + ys})
                if not satisfies(model, "m0", target):
                    return Counterexample(model, target, "m0")
    return None


# -- weighted positive laws ------------------------------------------------------------

_BOX_STYLE_OPS = (
    lambda f, w: box_o(f, weight=w),
    lambda f, w: win_o(f, weight=w),
    lambda f, w: box_o(f, base="C", weight=w),
    lambda f, w: win_o(f, base="C", weight=w),
)
_BOX_STYLE_OPS_P = (
    lambda f, w: box_p(f, weight=w),
    lambda f, w: win_p(f, weight=w),
    lambda f, w: box_p(f, base="C", weight=w),
    lambda f, w: win_p(f, base="C", weight=w),
)


@dataclass(frozen=True)
class SuiteReport:
    checks: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def weighted_validity_suite(models: Sequence[ContextModel], c, d,
                            seed: int = 0) -> SuiteReport:
    """Monotonicity (higher threshold implies lower) and weight-1 antitone rules."""
    c = _frac(c, "c")
    d = _frac(d, "d")
    if not (0 <= d <= c <= 1):
        raise ParamRangeError("suite needs rationals 0 <= d <= c <= 1")
    rng = random.Random(seed)
    one = Fraction(1)
    checks = 0
    violations = []
    for mi, model in enumerate(models):
        for sort, ops in ((S1, _BOX_STYLE_OPS), (S2, _BOX_STYLE_OPS_P)):
            phi = random_formula(rng, sort, 2)
            for oi, op in enumerate(ops):
                checks += 1
                strong = truth_set(model, op(phi, c)).members
                weak = truth_set(model, op(phi, d)).members
                if not strong <= weak:
                    violations.append(
                        f"model {mi}: monotonicity fails for op {oi} sort {sort}")
            # weight-1 antitone rule on a propositionally valid implication
            psi = random_formula(rng, sort, 2)
            lo, hi = And(phi, psi), Or(phi, psi)
            for oi, op in enumerate(ops[1::2]):  # window-style operators
                checks += 1
                lhs = truth_set(model, op(hi, one)).members
                rhs = truth_set(model, op(lo, one)).members
                if not lhs <= rhs:
                    violations.append(
                        f"model {mi}: weight-1 antitone fails for op {oi} sort {sort}")
    return SuiteReport(checks, tuple(violations))
