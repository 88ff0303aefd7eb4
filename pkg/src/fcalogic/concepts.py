"""Concept structures over a formal context.

Three concept kinds are enumerated as fixpoints of their closure operators:

    formal    extents closed under derive-derive        intent = derive(extent)
    property  extents closed under poss_o then nec_p    intent = poss_o(extent)
    object    intents closed under poss_p then nec_o    extent = poss_p(intent)

Each kind yields a complete lattice; the uniform order is extent inclusion.
Two enumeration routes are kept: a naive subset scan and a lectic
(NextClosure-style) enumeration; they must agree wherever both run.

Semiconcepts relax the fixpoint equations to one side, protoconcepts to
closure agreement; both carry algebras whose tables feed the dba module.

The "logical" variants replace sets by formulas and set equality by frame
validity of biconditionals; property/object readings there use the
complement-base modalities so that all three kinds live over one context.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .context import S1, S2, FormalContext, SortedSet
from .dba import FiniteAlgebra
from .errors import MalformedInputError, SortError
from .formula import (And, Formula, Iff, Implies, Modal, ModalDescriptor, Not,
                      Or, box_o, box_p, dia_o, dia_p, win_o, win_p)
from .semantics import DEFAULT_BUDGET, frame_valid

KINDS = ("formal", "property", "object")

NAIVE_LIMIT = 12  # naive subset scan up to this universe size


@dataclass(frozen=True)
class Concept:
    extent: tuple[str, ...]
    intent: tuple[str, ...]
    kind: str


def _closure_ops(context: FormalContext, kind: str):
    """Returns (seed sort, closure on that side, completion to the other side)."""
    if kind == "formal":
        clos = lambda a: context.derive_mask(S2, context.derive_mask(S1, a))
        other = lambda a: context.derive_mask(S1, a)
        return S1, clos, other
    if kind == "property":
        clos = lambda a: context.approx_mask("nec_p", context.approx_mask("poss_o", a))
        other = lambda a: context.approx_mask("poss_o", a)
        return S1, clos, other
    if kind == "object":
        clos = lambda b: context.approx_mask("nec_o", context.approx_mask("poss_p", b))
        other = lambda b: context.approx_mask("poss_p", b)
        return S2, clos, other
    raise MalformedInputError(f"unknown concept kind {kind!r}")


def _pairs_from_seeds(context: FormalContext, kind: str,
                      seeds: Iterable[int]) -> list[tuple[int, int]]:
    side, _clos, other = _closure_ops(context, kind)
    if side == S1:
        return [(a, other(a)) for a in seeds]
    return [(other(b), b) for b in seeds]


def _enumerate_naive(context: FormalContext, kind: str) -> list[tuple[int, int]]:
    side, clos, _other = _closure_ops(context, kind)
    seeds = [a for a in context.subsets(side) if clos(a) == a]
    return _pairs_from_seeds(context, kind, seeds)


def _enumerate_next_closure(context: FormalContext, kind: str) -> list[tuple[int, int]]:
    """Lectic enumeration of closure fixpoints over the declared order."""
    side, clos, _other = _closure_ops(context, kind)
    n = len(context.universe(side))
    seeds = []
    current = clos(0)
    seeds.append(current)
    while True:
        nxt = None
        for i in reversed(range(n)):
            if current >> i & 1:
                continue
            candidate = clos((current & ((1 << i) - 1)) | (1 << i))
            # lectic successor test: no new element below position i
            if candidate & ~current & ((1 << i) - 1) == 0:
                nxt = candidate
                break
        if nxt is None:
            break
        current = nxt
        seeds.append(current)
    return _pairs_from_seeds(context, kind, seeds)


class ConceptLattice:
    """All concepts of one kind, ordered by extent inclusion."""

    def __init__(self, context: FormalContext, kind: str,
                 pairs: Sequence[tuple[int, int]]):
        self.context = context
        self.kind = kind
        self._pairs = sorted(set(pairs))
        self._index = {p: i for i, p in enumerate(self._pairs)}
        self.concepts = tuple(
            Concept(context.ids_of(S1, a), context.ids_of(S2, b), kind)
            for a, b in self._pairs)

    def __len__(self) -> int:
        return len(self.concepts)

    def __iter__(self):
        return iter(self.concepts)

    def extent_mask(self, i: int) -> int:
        return self._pairs[i][0]

    def intent_mask(self, i: int) -> int:
        return self._pairs[i][1]

    def index_of(self, concept: Concept) -> int:
        a = self.context.mask_of(SortedSet(S1, frozenset(concept.extent)))
        b = self.context.mask_of(SortedSet(S2, frozenset(concept.intent)))
        try:
            return self._index[(a, b)]
        except KeyError:
            raise MalformedInputError("concept does not belong to this lattice") from None

    def leq(self, i: int, j: int) -> bool:
        a, b = self._pairs[i][0], self._pairs[j][0]
        return a & ~b == 0

    def top_index(self) -> int:
        return max(range(len(self)), key=lambda i: self._pairs[i][0].bit_count())

    def bottom_index(self) -> int:
        return min(range(len(self)), key=lambda i: self._pairs[i][0].bit_count())

    def meet_join(self, i: int, j: int) -> tuple[int, int]:
        """Indices of glb and lub under extent inclusion."""
        ctx = self.context
        (a1, b1), (a2, b2) = self._pairs[i], self._pairs[j]
        if self.kind == "formal":
            ma = a1 & a2
            meet = (ma, ctx.derive_mask(S1, ma))
            jb = b1 & b2
            join = (ctx.derive_mask(S2, jb), jb)
        elif self.kind == "property":
            ma = a1 & a2
            meet = (ma, ctx.approx_mask("poss_o", ma))
            jb = b1 | b2
            join = (ctx.approx_mask("nec_p", jb), jb)
        else:
            mb = b1 & b2
            meet = (ctx.approx_mask("poss_p", mb), mb)
            ja = a1 | a2
            join = (ja, ctx.approx_mask("nec_o", ja))
        return self._index[meet], self._index[join]

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Hasse edges (i covered by j) via transitive reduction of the order."""
        n = len(self)
        below = [[self.leq(i, j) and i != j for j in range(n)] for i in range(n)]
        covers = []
        for i in range(n):
            for j in range(n):
                if below[i][j] and not any(below[i][k] and below[k][j]
                                           for k in range(n)):
                    covers.append((i, j))
        return covers


def enumerate_concepts(context: FormalContext, kind: str) -> ConceptLattice:
    """Naive scan on small seed universes, lectic enumeration beyond."""
    side, _clos, _other = _closure_ops(context, kind)
    if len(context.universe(side)) <= NAIVE_LIMIT:
        pairs = _enumerate_naive(context, kind)
    else:
        pairs = _enumerate_next_closure(context, kind)
    return ConceptLattice(context, kind, pairs)


def lattice_ops(lattice: ConceptLattice, c1: Concept, c2: Concept
                ) -> tuple[Concept, Concept]:
    """Meet and join of two member concepts (kind mismatch is an error)."""
    if c1.kind != lattice.kind or c2.kind != lattice.kind:
        raise SortError("concept kind does not match the lattice")
    i, j = lattice.index_of(c1), lattice.index_of(c2)
    mi, ji = lattice.meet_join(i, j)
    return lattice.concepts[mi], lattice.concepts[ji]


# -- the three classical correspondences ------------------------------------------------

@dataclass(frozen=True)
class MapCheck:
    name: str
    bijection: bool
    order_ok: bool
    sizes: tuple[int, int]
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.bijection and self.order_ok


@dataclass(frozen=True)
class IsoReport:
    checks: tuple[MapCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _check_map(name: str, src: ConceptLattice, dst: ConceptLattice,
               image: Callable[[int, int], tuple[int, int]],
               order_reversing: bool) -> MapCheck:
    violations = []
    mapped = []
    dst_pairs = set(dst._pairs)
    for a, b in src._pairs:
        pair = image(a, b)
        mapped.append(pair)
        if pair not in dst_pairs:
            violations.append(f"image of ({a:#x},{b:#x}) is not a {dst.kind} concept")
    bijection = (not violations and len(set(mapped)) == len(mapped)
                 and len(mapped) == len(dst))
    order_ok = True
    for i in range(len(mapped)):
        for j in range(len(mapped)):
            fwd = src._pairs[i][0] & ~src._pairs[j][0] == 0
            img = mapped[i][0] & ~mapped[j][0] == 0
            want = (mapped[j][0] & ~mapped[i][0] == 0) if order_reversing else img
            if fwd != want:
                order_ok = False
                violations.append(f"order violated between concepts {i} and {j}")
                break
        if not order_ok:
            break
    return MapCheck(name, bijection, order_ok, (len(src), len(dst)),
                    tuple(violations))


def verify_isomorphisms(context: FormalContext) -> IsoReport:
    """The formal/property/object correspondences through the complemented context."""
    comp = context.complement()
    gfull = context.full_mask(S1)
    mfull = context.full_mask(S2)
    b_k = enumerate_concepts(context, "formal")
    p_k = enumerate_concepts(context, "property")
    o_k = enumerate_concepts(context, "object")
    p_comp = enumerate_concepts(comp, "property")
    o_comp = enumerate_concepts(comp, "object")
    checks = (
        _check_map("formal->property(complement)", b_k, p_comp,
                   lambda a, b: (a, ~b & mfull), order_reversing=False),
        _check_map("property->object", p_k, o_k,
                   lambda a, b: (~a & gfull, ~b & mfull), order_reversing=True),
        _check_map("formal->object(complement)", b_k, o_comp,
                   lambda a, b: (~a & gfull, b), order_reversing=True),
    )
    return IsoReport(checks)


# -- pair classification ------------------------------------------------------------------

def classify_pair(context: FormalContext, extent: SortedSet,
                  intent: SortedSet) -> frozenset[str]:
    """All structure flags the pair (extent, intent) satisfies."""
    if extent.sort != S1 or intent.sort != S2:
        raise SortError("classify_pair takes an s1 extent and an s2 intent")
    a = context.mask_of(extent)
    b = context.mask_of(intent)
    da = context.derive_mask(S1, a)       # common attributes of the extent
    db = context.derive_mask(S2, b)       # common objects of the intent
    flags = set()
    if da == b:
        flags.add("left_semiconcept")
    if db == a:
        flags.add("right_semiconcept")
    if flags:
        flags.add("semiconcept")
    if da == b and db == a:
        flags.add("formal_concept")
    if context.derive_mask(S2, da) == db:
        flags.add("protoconcept")
    poss_o = context.approx_mask("poss_o", a)
    nec_o = context.approx_mask("nec_o", a)
    poss_p_b = context.approx_mask("poss_p", b)
    nec_p_b = context.approx_mask("nec_p", b)
    if poss_o == b and nec_p_b == a:
        flags.add("property_concept")
    if nec_o == b:
        flags.add("object_left_semiconcept")
    if poss_p_b == a:
        flags.add("object_right_semiconcept")
    if nec_o == b or poss_p_b == a:
        flags.add("object_semiconcept")
    if nec_o == b and poss_p_b == a:
        flags.add("object_concept")
    if context.approx_mask("poss_p", nec_o) == poss_p_b:
        flags.add("object_protoconcept")
    return frozenset(flags)


# -- semiconcept and protoconcept algebras -----------------------------------------------

def _pair_name(context: FormalContext, a: int, b: int) -> str:
    ext = ",".join(context.ids_of(S1, a))
    inn = ",".join(context.ids_of(S2, b))
    return "({" + ext + "},{" + inn + "})"


def _pairs_algebra(context: FormalContext,
                   carrier: list[tuple[int, int]]) -> FiniteAlgebra:
    ctx = context
    gfull = ctx.full_mask(S1)
    mfull = ctx.full_mask(S2)
    index = {p: i for i, p in enumerate(carrier)}

    def meet(p, q):
        a = p[0] & q[0]
        return index[(a, ctx.derive_mask(S1, a))]

    def join(p, q):
        b = p[1] & q[1]
        return index[(ctx.derive_mask(S2, b), b)]

    def neg(p):
        a = ~p[0] & gfull
        return index[(a, ctx.derive_mask(S1, a))]

    def opp(p):
        b = ~p[1] & mfull
        return index[(ctx.derive_mask(S2, b), b)]

    n = len(carrier)
    mt = np.zeros((n, n), dtype=np.int64)
    jn = np.zeros((n, n), dtype=np.int64)
    ng = np.zeros(n, dtype=np.int64)
    op = np.zeros(n, dtype=np.int64)
    for i, p in enumerate(carrier):
        ng[i] = neg(p)
        op[i] = opp(p)
        for j, q in enumerate(carrier):
            mt[i, j] = meet(p, q)
            jn[i, j] = join(p, q)
    top = index[(ctx.derive_mask(S2, 0), 0)]
    bottom = index[(0, ctx.derive_mask(S1, 0))]
    names = tuple(_pair_name(ctx, a, b) for a, b in carrier)
    return FiniteAlgebra(names, mt, jn, ng, op, top, bottom)


def semiconcept_pairs(context: FormalContext) -> list[tuple[int, int]]:
    pairs = {(a, context.derive_mask(S1, a)) for a in context.subsets(S1)}
    pairs |= {(context.derive_mask(S2, b), b) for b in context.subsets(S2)}
    return sorted(pairs)


def protoconcept_pairs(context: FormalContext) -> list[tuple[int, int]]:
    out = []
    for a in context.subsets(S1):
        closed = context.derive_mask(S2, context.derive_mask(S1, a))
        for b in context.subsets(S2):
            if context.derive_mask(S2, b) == closed:
                out.append((a, b))
    return sorted(out)


def semiconcept_algebra(context: FormalContext) -> FiniteAlgebra:
    return _pairs_algebra(context, semiconcept_pairs(context))


def protoconcept_algebra(context: FormalContext) -> FiniteAlgebra:
    return _pairs_algebra(context, protoconcept_pairs(context))


# -- logical (formula-level) concepts ------------------------------------------------------

LOGICAL_KINDS = ("formal", "property", "object",
                 "semiconcept", "left_semiconcept", "right_semiconcept",
                 "property_semiconcept", "object_semiconcept",
                 "protoconcept", "property_protoconcept", "object_protoconcept")


def _obox_p(f):
    return box_p(f, base="C")


def _obox_o(f):
    return box_o(f, base="C")


def _odia_o(f):
    return dia_o(f, base="C")


def _odia_p(f):
    return dia_p(f, base="C")


def _logical_conditions(kind: str, phi: Formula, psi: Formula) -> list[Formula]:
    left = Iff(win_o(phi), psi)        # intent equation of the window reading
    right = Iff(phi, win_p(psi))       # extent equation
    p_left = Iff(_odia_o(phi), psi)
    p_right = Iff(phi, _obox_p(psi))
    o_left = Iff(_obox_o(phi), psi)
    o_right = Iff(phi, _odia_p(psi))
    if kind == "formal":
        return [right, left]
    if kind == "property":
        return [p_right, p_left]
    if kind == "object":
        return [o_right, o_left]
    if kind == "left_semiconcept":
        return [left]
    if kind == "right_semiconcept":
        return [right]
    if kind == "protoconcept":
        return [Iff(win_o(phi), win_o(win_p(psi)))]
    if kind == "property_protoconcept":
        return [Iff(_odia_o(phi), _odia_o(_obox_p(psi)))]
    if kind == "object_protoconcept":
        return [Iff(_odia_p(_obox_o(phi)), _odia_p(psi))]
    raise MalformedInputError(f"unknown logical concept kind {kind!r}")


def logical_concept_check(context: FormalContext, phi: Formula, psi: Formula,
                          kind: str, bound: int = DEFAULT_BUDGET) -> bool:
    """Frame-validity test of the kind's defining biconditionals."""
    if phi.sort != S1 or psi.sort != S2:
        raise SortError("logical concepts pair an s1 formula with an s2 formula")
    if kind == "semiconcept":
        return (logical_concept_check(context, phi, psi, "left_semiconcept", bound)
                or logical_concept_check(context, phi, psi, "right_semiconcept", bound))
    if kind == "property_semiconcept":
        return (frame_valid(context, Iff(_odia_o(phi), psi), bound)
                or frame_valid(context, Iff(phi, _obox_p(psi)), bound))
    if kind == "object_semiconcept":
        return (frame_valid(context, Iff(_obox_o(phi), psi), bound)
                or frame_valid(context, Iff(phi, _odia_p(psi)), bound))
    return all(frame_valid(context, cond, bound)
               for cond in _logical_conditions(kind, phi, psi))


def logical_lattice_ops(context: FormalContext,
                        pair1: tuple[Formula, Formula],
                        pair2: tuple[Formula, Formula],
                        kind: str, bound: int = DEFAULT_BUDGET
                        ) -> tuple[tuple[Formula, Formula], tuple[Formula, Formula]]:
    """Meet and join formula pairs; both are checked to remain concepts of `kind`."""
    if kind not in ("formal", "property", "object"):
        raise MalformedInputError(f"no lattice operations for kind {kind!r}")
    for pair in (pair1, pair2):
        if not logical_concept_check(context, pair[0], pair[1], kind, bound):
            raise MalformedInputError(
                f"input pair is not a logical {kind} concept of this context")
    (phi1, psi1), (phi2, psi2) = pair1, pair2
    ext = And(phi1, phi2)
    if kind == "formal":
        meet = (ext, win_o(ext))
        inn = And(psi1, psi2)
        join = (win_p(inn), inn)
    elif kind == "property":
        meet = (ext, _odia_o(ext))
        inn = Or(psi1, psi2)
        join = (_obox_p(inn), inn)
    else:
        inn = And(psi1, psi2)
        meet = (_odia_p(inn), inn)
        ext_j = Or(phi1, phi2)
        join = (ext_j, _obox_o(ext_j))
    for pair in (meet, join):
        if not logical_concept_check(context, pair[0], pair[1], kind, bound):
            raise MalformedInputError(
                f"lattice operation left the logical {kind} concepts (engine bug)")
    return meet, join


def logical_equivalent(context: FormalContext,
                       pair1: tuple[Formula, Formula],
                       pair2: tuple[Formula, Formula],
                       kind: str, bound: int = DEFAULT_BUDGET) -> bool:
    """Concept equivalence over the context.

    Extent-formula equivalence for the concept kinds and left semiconcepts,
    intent-side for right semiconcepts, both sides for plain semiconcepts.
    """
    extents = frame_valid(context, Iff(pair1[0], pair2[0]), bound)
    if kind == "right_semiconcept":
        return frame_valid(context, Iff(pair1[1], pair2[1]), bound)
    if kind == "semiconcept":
        return extents and frame_valid(context, Iff(pair1[1], pair2[1]), bound)
    return extents
