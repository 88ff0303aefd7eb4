"""Two-sorted modal formulas.

The AST is a small family of frozen dataclasses.  Every node has a
well-defined sort; modal operators flip it (o-direction maps object formulas
to attribute formulas, p-direction the other way).  Ill-sorted trees are
rejected at construction.

Core constructors are box and window over the incidence relation; diamonds,
window duals, complement-relation ("overline") boxes and windows, exact-count
diamonds, and the N/U operators are sugar handled by `desugar`.  The one
exception: *weighted* complement-relation operators are core, because no
boolean combination of incidence-relation weighted operators expresses them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from .context import S1, S2, SORTS, opposite
from .errors import SortError, TranslationError

DIRECTIONS = ("o", "p")
BASES = ("I", "C")  # incidence relation, or its complement (overline)
STYLES = ("box", "diamond", "window", "window_dual")


@dataclass(frozen=True)
class ModalDescriptor:
    """Shape of one modal operator: direction, style, base, optional grade or weight."""

    direction: str
    style: str
    base: str = "I"
    grade: Optional[int] = None
    weight: Optional[Fraction] = None
    exact: bool = False

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise SortError(f"unknown direction {self.direction!r}")
        if self.style not in STYLES:
            raise SortError(f"unknown style {self.style!r}")
        if self.base not in BASES:
            raise SortError(f"unknown base {self.base!r}")
        if self.grade is not None and self.weight is not None:
            raise SortError("at most one of grade/weight may be set")
        if self.grade is not None and (not isinstance(self.grade, int) or self.grade < 0):
            raise SortError(f"grade must be a natural number, got {self.grade!r}")
        if self.weight is not None:
            w = Fraction(self.weight)
            if not 0 <= w <= 1:
                raise SortError(f"weight must lie in [0,1], got {w}")
            object.__setattr__(self, "weight", w)
        if self.exact:
            if self.style != "diamond":
                raise SortError("exact-count marker requires diamond style")
            if self.grade is None or self.grade < 1:
                raise SortError("exact-count marker requires grade >= 1")

    @property
    def operand_sort(self) -> str:
        return S1 if self.direction == "o" else S2

    @property
    def result_sort(self) -> str:
        return opposite(self.operand_sort)


class Formula:
    """Base class; concrete nodes are the dataclasses below."""

    sort: str


@dataclass(frozen=True)
class Atom(Formula):
    name: str
    sort: str

    def __post_init__(self):
        if self.sort not in SORTS:
            raise SortError(f"unknown sort {self.sort!r} for atom {self.name!r}")


@dataclass(frozen=True)
class Top(Formula):
    sort: str

    def __post_init__(self):
        if self.sort not in SORTS:
            raise SortError(f"unknown sort {self.sort!r}")


@dataclass(frozen=True)
class Bottom(Formula):
    sort: str

    def __post_init__(self):
        if self.sort not in SORTS:
            raise SortError(f"unknown sort {self.sort!r}")


@dataclass(frozen=True)
class Not(Formula):
    child: Formula

    @property
    def sort(self) -> str:
        return self.child.sort


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    def __post_init__(self):
        if self.left.sort != self.right.sort:
            raise SortError(
                f"{type(self).__name__} needs equal-sorted children, "
                f"got {self.left.sort} and {self.right.sort}")

    @property
    def sort(self) -> str:
        return self.left.sort


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Implies(_Binary):
    pass


class Iff(_Binary):
    pass


@dataclass(frozen=True)
class Modal(Formula):
    op: ModalDescriptor
    child: Formula

    def __post_init__(self):
        if self.child.sort != self.op.operand_sort:
            raise SortError(
                f"{self.op.direction}-modality takes a {self.op.operand_sort} operand, "
                f"got sort {self.child.sort}")

    @property
    def sort(self) -> str:
        return self.op.result_sort


def sort_of(f: Formula) -> str:
    return f.sort


# -- construction helpers ----------------------------------------------------

GradeOrWeight = Union[int, Fraction, None]


def _modal(direction: str, style: str, f: Formula, base: str = "I",
           grade: Optional[int] = None, weight=None, exact: bool = False) -> Modal:
    w = None if weight is None else Fraction(weight)
    return Modal(ModalDescriptor(direction, style, base, grade, w, exact), f)


def box_o(f, base="I", grade=None, weight=None):
    return _modal("o", "box", f, base, grade, weight)


def box_p(f, base="I", grade=None, weight=None):
    return _modal("p", "box", f, base, grade, weight)


def dia_o(f, base="I", grade=None, weight=None, exact=False):
    return _modal("o", "diamond", f, base, grade, weight, exact)


def dia_p(f, base="I", grade=None, weight=None, exact=False):
    return _modal("p", "diamond", f, base, grade, weight, exact)


def win_o(f, base="I", grade=None, weight=None):
    return _modal("o", "window", f, base, grade, weight)


def win_p(f, base="I", grade=None, weight=None):
    return _modal("p", "window", f, base, grade, weight)


def wdual_o(f, base="I", grade=None, weight=None):
    return _modal("o", "window_dual", f, base, grade, weight)


def wdual_p(f, base="I", grade=None, weight=None):
    return _modal("p", "window_dual", f, base, grade, weight)


def n_op(direction: str, f: Formula, g: Formula) -> Formula:
    """Binary N operator: box f and window not-g, same direction."""
    return And(_modal(direction, "box", f), _modal(direction, "window", Not(g)))


def u_op(direction: str, f: Formula) -> Formula:
    """Universal-flavoured U operator: N applied to (f, f)."""
    return n_op(direction, f, f)


# -- traversal ---------------------------------------------------------------

def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Not):
        return (f.child,)
    if isinstance(f, _Binary):
        return (f.left, f.right)
    if isinstance(f, Modal):
        return (f.child,)
    return ()


def walk(f: Formula) -> Iterator[Formula]:
    yield f
    for c in children(f):
        yield from walk(c)


def atoms_of(f: Formula) -> frozenset[Atom]:
    return frozenset(n for n in walk(f) if isinstance(n, Atom))


def depth(f: Formula) -> int:
    kids = children(f)
    return 1 + max((depth(c) for c in kids), default=0) if kids else 0


# -- desugaring ----------------------------------------------------------------

def desugar(f: Formula) -> Formula:
    """Rewrite to core constructors.

    Eliminates diamonds, window duals, exact-count markers, and ungraded /
    graded complement-base operators.  Weighted complement-base box/window
    survive (they are independent primitives).  Idempotent and sort-preserving.
    """
    if isinstance(f, (Atom, Top, Bottom)):
        return f
    if isinstance(f, Not):
        return Not(desugar(f.child))
    if isinstance(f, _Binary):
        return type(f)(desugar(f.left), desugar(f.right))
    assert isinstance(f, Modal)
    op, child = f.op, f.child
    if op.exact:
        # exactly-n diamond: more-than-(n-1) and not more-than-n
        lower = Modal(ModalDescriptor(op.direction, "diamond", op.base, op.grade - 1), child)
        upper = Modal(ModalDescriptor(op.direction, "diamond", op.base, op.grade), child)
        return And(desugar(lower), Not(desugar(upper)))
    if op.style == "diamond":
        inner = Modal(ModalDescriptor(op.direction, "box", op.base, op.grade, op.weight),
                      Not(child))
        return Not(desugar(inner))
    if op.style == "window_dual":
        inner = Modal(ModalDescriptor(op.direction, "window", op.base, op.grade, op.weight),
                      Not(child))
        return Not(desugar(inner))
    if op.base == "C" and op.weight is None:
        # overline box = window of the negation, and vice versa
        flip = "window" if op.style == "box" else "box"
        inner = Modal(ModalDescriptor(op.direction, flip, "I", op.grade), Not(child))
        return desugar(inner)
    return Modal(op, desugar(child))


# -- translations ---------------------------------------------------------------

def translate_rho(f: Formula) -> Formula:
    """Window-to-box translation; defined on the window-only fragment.

    Windows become boxes of the negated translation; booleans and atoms map
    homomorphically.  Rejects boxes, grades, and weights in the input.
    """
    g = desugar(f)
    return _rho(g)


def _rho(f: Formula) -> Formula:
    if isinstance(f, (Atom, Top, Bottom)):
        return f
    if isinstance(f, Not):
        return Not(_rho(f.child))
    if isinstance(f, _Binary):
        return type(f)(_rho(f.left), _rho(f.right))
    assert isinstance(f, Modal)
    op = f.op
    if op.style != "window" or op.base != "I" or op.grade is not None or op.weight is not None:
        raise TranslationError(
            "rho is defined on the window-only fragment; "
            f"found {op.style} (base {op.base}, grade {op.grade}, weight {op.weight})")
    return Modal(ModalDescriptor(op.direction, "box"), Not(_rho(f.child)))


def translate_tau(f: Formula) -> Formula:
    """Embed an unweighted formula into the weighted language: weight 1 everywhere."""
    g = desugar(f)
    return _tau(g)


def _tau(f: Formula) -> Formula:
    if isinstance(f, (Atom, Top, Bottom)):
        return f
    if isinstance(f, Not):
        return Not(_tau(f.child))
    if isinstance(f, _Binary):
        return type(f)(_tau(f.left), _tau(f.right))
    assert isinstance(f, Modal)
    op = f.op
    if op.grade is not None or op.weight is not None:
        raise TranslationError("tau expects a grade/weight-free formula")
    return Modal(ModalDescriptor(op.direction, op.style, op.base, None, Fraction(1)),
                 _tau(f.child))
