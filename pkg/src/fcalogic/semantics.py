"""Model checking for two-sorted modal formulas.

Two model classes share one evaluator:

* `ContextModel` — a formal context plus a two-sorted valuation.  Window
  operators read the complement of the incidence relation as their second
  relation.
* `GeneralizedModel` — explicit relations I and J with I ∪ J total.  Boxes
  use I, windows use J.

Graded operators always count against I or its set complement (the two
coincide with J exactly on context-based structure).  Weighted operators are
defined for context-based structure only; on a generalized model they demand
I ∩ J = ∅.  A weighted threshold test with an empty denominator evaluates to
true (vacuous reading, matching the ungraded operator on an empty
neighborhood).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .context import S1, S2, FormalContext, SortedSet, opposite
from .errors import (BudgetExceededError, MalformedInputError, SortError,
                     UnsupportedCombinationError)
from .formula import (Atom, Bottom, Formula, Iff, Implies, Modal, Not, Or,
                      Top, _Binary, And, atoms_of)

DEFAULT_BUDGET = 2 ** 20

AtomKey = Union[Atom, tuple[str, str]]


def _atom_key(key: AtomKey) -> Atom:
    if isinstance(key, Atom):
        return key
    name, sort = key
    return Atom(name, sort)


class _BaseModel:
    """Shared plumbing: universes, neighborhood masks, valuation masks."""

    def __init__(self, objects, attributes, i_pairs, valuation):
        self._objects = tuple(objects)
        self._attributes = tuple(attributes)
        self._oidx = {g: i for i, g in enumerate(self._objects)}
        self._aidx = {m: j for j, m in enumerate(self._attributes)}
        self._gfull = (1 << len(self._objects)) - 1
        self._mfull = (1 << len(self._attributes)) - 1
        self._i_rows = [0] * len(self._objects)
        self._i_cols = [0] * len(self._attributes)
        for g, m in i_pairs:
            gi, mj = self._windex(S1, g), self._windex(S2, m)
            self._i_rows[gi] |= 1 << mj
            self._i_cols[mj] |= 1 << gi
        self._val: dict[Atom, int] = {}
        for key, members in dict(valuation or {}).items():
            atom = _atom_key(key)
            mask = 0
            for w in members:
                mask |= 1 << self._windex(atom.sort, w)
            self._val[atom] = mask

    def _windex(self, sort: str, w: str) -> int:
        idx = self._oidx if sort == S1 else self._aidx
        if w not in idx:
            raise MalformedInputError(f"unknown {sort} world {w!r}")
        return idx[w]

    @property
    def objects(self) -> tuple[str, ...]:
        return self._objects

    @property
    def attributes(self) -> tuple[str, ...]:
        return self._attributes

    def universe(self, sort: str) -> tuple[str, ...]:
        return self._objects if sort == S1 else self._attributes

    def full_mask(self, sort: str) -> int:
        return self._gfull if sort == S1 else self._mfull

    def valuation_sets(self) -> dict[Atom, SortedSet]:
        out = {}
        for atom, mask in self._val.items():
            uni = self.universe(atom.sort)
            out[atom] = SortedSet(atom.sort,
                                  frozenset(uni[i] for i in range(len(uni))
                                            if mask >> i & 1))
        return out

    def ids_of(self, sort: str, mask: int) -> tuple[str, ...]:
        uni = self.universe(sort)
        return tuple(uni[i] for i in range(len(uni)) if mask >> i & 1)

    # relations seen by the evaluator; subclasses fill these in
    def i_neigh(self, sort: str, w: int) -> int:
        """I-neighborhood of world `w` of sort `sort` (mask over the other sort)."""
        return self._i_rows[w] if sort == S1 else self._i_cols[w]

    def j_neigh(self, sort: str, w: int) -> int:
        raise NotImplementedError

    def weighted_ok(self) -> bool:
        return True


class ContextModel(_BaseModel):
    """A formal context with a valuation."""

    def __init__(self, context: FormalContext,
                 valuation: Mapping[AtomKey, Iterable[str]] = ()):
        super().__init__(context.objects, context.attributes,
                         context.incidence_pairs(), valuation)
        self._context = context

    @property
    def context(self) -> FormalContext:
        return self._context

    def j_neigh(self, sort: str, w: int) -> int:
        full = self._mfull if sort == S1 else self._gfull
        return ~self.i_neigh(sort, w) & full

    def with_valuation(self, valuation) -> "ContextModel":
        return ContextModel(self._context, valuation)

    def __repr__(self):
        return f"ContextModel({self._context!r}, atoms={len(self._val)})"


class GeneralizedModel(_BaseModel):
    """Two relations I, J over the same universes; I ∪ J must be total.

    `require_total=False` admits partial relational structures (used when
    carving out generated substructures, which need not stay total).
    """

    def __init__(self, objects, attributes, i_pairs, j_pairs,
                 valuation: Mapping[AtomKey, Iterable[str]] = (),
                 require_total: bool = True):
        super().__init__(objects, attributes, i_pairs, valuation)
        self._j_rows = [0] * len(self._objects)
        self._j_cols = [0] * len(self._attributes)
        for g, m in j_pairs:
            gi, mj = self._windex(S1, g), self._windex(S2, m)
            self._j_rows[gi] |= 1 << mj
            self._j_cols[mj] |= 1 << gi
        if require_total and not self.is_total():
            missing = self.missing_pairs()[:3]
            raise MalformedInputError(
                f"I and J do not cover the full rectangle; first misses: {missing}")

    def is_total(self) -> bool:
        return all(self._i_rows[i] | self._j_rows[i] == self._mfull
                   for i in range(len(self._objects)))

    def missing_pairs(self) -> list[tuple[str, str]]:
        out = []
        for i, g in enumerate(self._objects):
            gap = ~(self._i_rows[i] | self._j_rows[i]) & self._mfull
            for j, m in enumerate(self._attributes):
                if gap >> j & 1:
                    out.append((g, m))
        return out

    def overlap_pairs(self) -> list[tuple[str, str]]:
        out = []
        for i, g in enumerate(self._objects):
            both = self._i_rows[i] & self._j_rows[i]
            for j, m in enumerate(self._attributes):
                if both >> j & 1:
                    out.append((g, m))
        return out

    def i_pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple((g, m) for i, g in enumerate(self._objects)
                     for j, m in enumerate(self._attributes)
                     if self._i_rows[i] >> j & 1)

    def j_pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple((g, m) for i, g in enumerate(self._objects)
                     for j, m in enumerate(self._attributes)
                     if self._j_rows[i] >> j & 1)

    def j_neigh(self, sort: str, w: int) -> int:
        return self._j_rows[w] if sort == S1 else self._j_cols[w]

    def weighted_ok(self) -> bool:
        return all(self._i_rows[i] & self._j_rows[i] == 0
                   for i in range(len(self._objects)))

    def __repr__(self):
        return (f"GeneralizedModel({len(self._objects)}x{len(self._attributes)}, "
                f"total={self.is_total()})")


Model = Union[ContextModel, GeneralizedModel]


# -- evaluation -----------------------------------------------------------------

def _ratio_at_least(num: int, den: int, c: Fraction) -> bool:
    if den == 0:
        return True
    return num * c.denominator >= c.numerator * den


def _eval(model: _BaseModel, f: Formula) -> int:
    if isinstance(f, Atom):
        try:
            return model._val[f]
        except KeyError:
            raise MalformedInputError(
                f"valuation does not cover atom {f.name}@{f.sort}") from None
    if isinstance(f, Top):
        return model.full_mask(f.sort)
    if isinstance(f, Bottom):
        return 0
    if isinstance(f, Not):
        return ~_eval(model, f.child) & model.full_mask(f.sort)
    if isinstance(f, And):
        return _eval(model, f.left) & _eval(model, f.right)
    if isinstance(f, Or):
        return _eval(model, f.left) | _eval(model, f.right)
    if isinstance(f, Implies):
        full = model.full_mask(f.sort)
        return (~_eval(model, f.left) & full) | _eval(model, f.right)
    if isinstance(f, Iff):
        full = model.full_mask(f.sort)
        return ~(_eval(model, f.left) ^ _eval(model, f.right)) & full
    assert isinstance(f, Modal)
    return _eval_modal(model, f)


def _eval_modal(model: _BaseModel, f: Modal) -> int:
    op = f.op
    a = _eval(model, f.child)
    child_sort = op.operand_sort
    result_sort = op.result_sort
    child_full = model.full_mask(child_sort)
    n_worlds = len(model.universe(result_sort))
    if op.weight is not None and not model.weighted_ok():
        raise UnsupportedCombinationError(
            "weighted operators need a context-based model "
            "(generalized model has overlapping I and J)")
    out = 0
    for w in range(n_worlds):
        ni = model.i_neigh(result_sort, w)
        if op.weight is not None or op.grade is not None:
            nc = ~ni & child_full  # set complement of the I-neighborhood
        if op.grade is not None:
            n = op.grade
            if op.style == "box":
                base_n = ni if op.base == "I" else nc
                holds = (base_n & ~a & child_full).bit_count() <= n
            elif op.style == "window":
                base_n = nc if op.base == "I" else ni
                holds = (base_n & a).bit_count() <= n
            elif op.style == "diamond":
                base_n = ni if op.base == "I" else nc
                k = (base_n & a).bit_count()
                holds = k == n if op.exact else k > n
            else:  # window_dual
                base_n = nc if op.base == "I" else ni
                holds = (base_n & ~a & child_full).bit_count() > n
        elif op.weight is not None:
            c = op.weight
            if op.style == "box":
                base_n = ni if op.base == "I" else nc
                holds = _ratio_at_least((base_n & a).bit_count(),
                                        base_n.bit_count(), c)
            elif op.style == "window":
                base_n = ni if op.base == "I" else nc
                holds = _ratio_at_least((base_n & a).bit_count(),
                                        a.bit_count(), c)
            elif op.style == "diamond":
                base_n = ni if op.base == "I" else nc
                nota = ~a & child_full
                holds = not _ratio_at_least((base_n & nota).bit_count(),
                                            base_n.bit_count(), c)
            else:  # window_dual
                base_n = ni if op.base == "I" else nc
                nota = ~a & child_full
                holds = not _ratio_at_least((base_n & nota).bit_count(),
                                            nota.bit_count(), c)
        else:
            nj = model.j_neigh(result_sort, w)
            if op.style == "box":
                rel = ni if op.base == "I" else nj
                holds = rel & ~a & child_full == 0
            elif op.style == "window":
                rel = nj if op.base == "I" else ni
                holds = a & rel == 0
            elif op.style == "diamond":
                rel = ni if op.base == "I" else nj
                holds = rel & a != 0
            else:  # window_dual
                rel = nj if op.base == "I" else ni
                holds = (~a & child_full) & rel != 0
        if holds:
            out |= 1 << w
    return out


def truth_set(model: Model, f: Formula) -> SortedSet:
    """The set of worlds of the formula's sort where it holds."""
    mask = _eval(model, f)
    uni = model.universe(f.sort)
    return SortedSet(f.sort, frozenset(uni[i] for i in range(len(uni))
                                       if mask >> i & 1))


def satisfies(model: Model, world: str, f: Formula) -> bool:
    w = model._windex(f.sort, world)
    return bool(_eval(model, f) >> w & 1)


# -- frame-level enumeration ------------------------------------------------------

def _valuation_space(context: FormalContext, formulas: Sequence[Formula]):
    """Sorted atom list and the size of the full valuation space."""
    atoms = sorted({a for f in formulas for a in atoms_of(f)},
                   key=lambda a: (a.sort, a.name))
    bits = sum(len(context.universe(a.sort)) for a in atoms)
    return atoms, bits


def _valuations(context: FormalContext, atoms, bits):
    """All valuations in binary-counter order over the lexicographic atom list."""
    widths = [len(context.universe(a.sort)) for a in atoms]
    for counter in range(1 << bits):
        val = {}
        shift = 0
        for atom, width in zip(atoms, widths):
            mask = counter >> shift & ((1 << width) - 1)
            val[atom] = context.ids_of(atom.sort, mask)
            shift += width
        yield val


def find_countermodel(context: FormalContext, f: Formula,
                      bound: int = DEFAULT_BUDGET
                      ) -> Optional[tuple[ContextModel, str]]:
    """First (valuation, world) falsifying `f` on some model over `context`."""
    atoms, bits = _valuation_space(context, [f])
    if 1 << bits > bound:
        raise BudgetExceededError(1 << bits, bound)
    full = context.full_mask(f.sort)
    uni = context.universe(f.sort)
    for val in _valuations(context, atoms, bits):
        model = ContextModel(context, val)
        mask = _eval(model, f)
        if mask != full:
            gap = ~mask & full
            world = uni[(gap & -gap).bit_length() - 1]
            return model, world
    return None


def frame_valid(context: FormalContext, f: Formula,
                bound: int = DEFAULT_BUDGET) -> bool:
    """True iff `f` holds at every world under every valuation over `context`."""
    return find_countermodel(context, f, bound) is None


def local_consequence(context: FormalContext, premises: Sequence[Formula],
                      f: Formula, bound: int = DEFAULT_BUDGET) -> bool:
    """True iff every world satisfying all premises satisfies `f`, under all valuations."""
    premises = list(premises)
    for p in premises:
        if p.sort != f.sort:
            raise SortError("premises and conclusion must share a sort")
    atoms, bits = _valuation_space(context, premises + [f])
    if 1 << bits > bound:
        raise BudgetExceededError(1 << bits, bound)
    full = context.full_mask(f.sort)
    for val in _valuations(context, atoms, bits):
        model = ContextModel(context, val)
        prem = full
        for p in premises:
            prem &= _eval(model, p)
        if prem & ~_eval(model, f) & full:
            return False
    return True
