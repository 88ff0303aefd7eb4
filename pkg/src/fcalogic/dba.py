"""Finite double Boolean algebras: axiom audit, Boolean parts, characterization.

A `FiniteAlgebra` is an explicit carrier with tables for the two binary
operations (written `meet`/`join`), the two unary ones (`neg`/`opp`), and
the constants `top`/`bottom`.  The derived operations are

    vee(x, y)   = neg(meet(neg x, neg y))
    wedge(x, y) = opp(join(opp x, opp y))

The audit checks the 23 defining axioms (eleven a/b pairs plus the mixed
idempotent law) and reports, per axiom, either PASS or the first witnessing
tuple in carrier order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ClosureViolationError, MalformedInputError


def _as_table(value, n: int, shape2: bool) -> np.ndarray:
    arr = np.asarray(value, dtype=np.int64)
    want = (n, n) if shape2 else (n,)
    if arr.shape != want:
        raise MalformedInputError(f"operation table has shape {arr.shape}, wanted {want}")
    if n and (arr.min() < 0 or arr.max() >= n):
        raise MalformedInputError("operation table indexes outside the carrier")
    return arr


@dataclass(frozen=True)
class FiniteAlgebra:
    """Carrier plus operation tables; elements are referred to by index."""

    names: tuple[str, ...]
    meet: np.ndarray
    join: np.ndarray
    neg: np.ndarray
    opp: np.ndarray
    top: int
    bottom: int

    def __post_init__(self):
        n = len(self.names)
        object.__setattr__(self, "meet", _as_table(self.meet, n, True))
        object.__setattr__(self, "join", _as_table(self.join, n, True))
        object.__setattr__(self, "neg", _as_table(self.neg, n, False))
        object.__setattr__(self, "opp", _as_table(self.opp, n, False))
        if not (0 <= self.top < n and 0 <= self.bottom < n):
            raise MalformedInputError("constants must be carrier indices")

    def __len__(self) -> int:
        return len(self.names)

    def vee(self, x, y):
        return self.neg[self.meet[self.neg[x], self.neg[y]]]

    def wedge(self, x, y):
        return self.opp[self.join[self.opp[x], self.opp[y]]]

    def tables_equal(self, other: "FiniteAlgebra") -> bool:
        """Bit-exact table comparison (carriers assumed index-aligned)."""
        return (len(self) == len(other)
                and bool(np.array_equal(self.meet, other.meet))
                and bool(np.array_equal(self.join, other.join))
                and bool(np.array_equal(self.neg, other.neg))
                and bool(np.array_equal(self.opp, other.opp))
                and self.top == other.top and self.bottom == other.bottom)

    def meet_idempotents(self) -> list[int]:
        return [x for x in range(len(self)) if self.meet[x, x] == x]

    def join_idempotents(self) -> list[int]:
        return [x for x in range(len(self)) if self.join[x, x] == x]


# -- axiom audit ------------------------------------------------------------------

def _axiom_checks(alg: FiniteAlgebra):
    """Yield (name, arity, predicate-on-index-grids) in cheap-first order."""
    mt, jn, ng, op = alg.meet, alg.join, alg.neg, alg.opp
    t, b = alg.top, alg.bottom
    vee = alg.vee
    wedge = alg.wedge
    checks = [
        ("9a", 0, lambda: ng[t] == b),
        ("9b", 0, lambda: op[b] == t),
        ("11a", 0, lambda: ng[b] == mt[t, t]),
        ("11b", 0, lambda: op[t] == jn[b, b]),
        ("3a", 1, lambda x: ng[mt[x, x]] == ng[x]),
        ("3b", 1, lambda x: op[jn[x, x]] == op[x]),
        ("8a", 1, lambda x: mt[x, ng[x]] == b),
        ("8b", 1, lambda x: jn[x, op[x]] == t),
        ("12", 1, lambda x: jn[mt[x, x], mt[x, x]] == mt[jn[x, x], jn[x, x]]),
        ("1a", 2, lambda x, y: mt[mt[x, x], y] == mt[x, y]),
        ("1b", 2, lambda x, y: jn[jn[x, x], y] == jn[x, y]),
        ("2a", 2, lambda x, y: mt[x, y] == mt[y, x]),
        ("2b", 2, lambda x, y: jn[x, y] == jn[y, x]),
        ("4a", 2, lambda x, y: mt[x, jn[x, y]] == mt[x, x]),
        ("4b", 2, lambda x, y: jn[x, mt[x, y]] == jn[x, x]),
        ("6a", 2, lambda x, y: mt[x, vee(x, y)] == mt[x, x]),
        ("6b", 2, lambda x, y: jn[x, wedge(x, y)] == jn[x, x]),
        ("7a", 2, lambda x, y: ng[ng[mt[x, y]]] == mt[x, y]),
        ("7b", 2, lambda x, y: op[op[jn[x, y]]] == jn[x, y]),
        ("5a", 3, lambda x, y, z: mt[x, vee(y, z)] == vee(mt[x, y], mt[x, z])),
        ("5b", 3, lambda x, y, z: jn[x, wedge(y, z)] == wedge(jn[x, y], jn[x, z])),
        ("10a", 3, lambda x, y, z: mt[x, mt[y, z]] == mt[mt[x, y], z]),
        ("10b", 3, lambda x, y, z: jn[x, jn[y, z]] == jn[jn[x, y], z]),
    ]
    return checks


DBA_AXIOM_ORDER = ("1a", "1b", "2a", "2b", "3a", "3b", "4a", "4b", "5a", "5b",
                   "6a", "6b", "7a", "7b", "8a", "8b", "9a", "9b", "10a", "10b",
                   "11a", "11b", "12")


@dataclass(frozen=True)
class AxiomResult:
    passed: bool
    witness: Optional[tuple[str, ...]] = None


@dataclass(frozen=True)
class DbaReport:
    axioms: dict

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.axioms.values())

    def failures(self) -> list[str]:
        return [name for name, r in self.axioms.items() if not r.passed]


def _grids(n: int, arity: int):
    idx = np.arange(n)
    if arity == 1:
        return (idx,)
    if arity == 2:
        return (idx[:, None], idx[None, :])
    return (idx[:, None, None], idx[None, :, None], idx[None, None, :])


def _first_witness(alg: FiniteAlgebra, ok: np.ndarray) -> tuple[str, ...]:
    where = np.argwhere(~ok)
    first = tuple(int(i) for i in where[0])
    return tuple(alg.names[i] for i in first)


def check_dba(alg: FiniteAlgebra) -> DbaReport:
    """Audit all 23 axioms; each failure carries its first witness in carrier order."""
    n = len(alg)
    results = {}
    for name, arity, pred in _axiom_checks(alg):
        if arity == 0:
            passed = bool(pred())
            results[name] = AxiomResult(passed, None if passed else ())
            continue
        if n == 0:
            results[name] = AxiomResult(True)
            continue
        ok = np.broadcast_to(pred(*_grids(n, arity)), (n,) * arity)
        if ok.all():
            results[name] = AxiomResult(True)
        else:
            results[name] = AxiomResult(False, _first_witness(alg, ok))
    return DbaReport({name: results[name] for name in DBA_AXIOM_ORDER})


def find_dba_violation(alg: FiniteAlgebra) -> Optional[tuple[str, tuple[str, ...]]]:
    """First failing axiom (cheap arities first), or None if all pass."""
    n = len(alg)
    for name, arity, pred in _axiom_checks(alg):
        if arity == 0:
            if not pred():
                return name, ()
            continue
        if n == 0:
            continue
        ok = np.broadcast_to(pred(*_grids(n, arity)), (n,) * arity)
        if not ok.all():
            return name, _first_witness(alg, ok)
    return None


def is_dba(alg: FiniteAlgebra) -> bool:
    return find_dba_violation(alg) is None


# -- purity / full contextuality -----------------------------------------------------

def is_pure(alg: FiniteAlgebra) -> tuple[bool, tuple[str, ...]]:
    """Every element idempotent for meet or for join; witnesses = offenders."""
    bad = tuple(alg.names[x] for x in range(len(alg))
                if alg.meet[x, x] != x and alg.join[x, x] != x)
    return not bad, bad


def is_fully_contextual(alg: FiniteAlgebra) -> tuple[bool, tuple]:
    """Compatible idempotent pairs have exactly one joint witness."""
    n = len(alg)
    d_meet = alg.meet_idempotents()
    d_join = alg.join_idempotents()
    witnesses: dict[tuple[int, int], list[int]] = {}
    for z in range(n):
        witnesses.setdefault((int(alg.meet[z, z]), int(alg.join[z, z])), []).append(z)
    bad = []
    for y in d_meet:
        for x in d_join:
            if alg.join[y, y] == alg.meet[x, x]:
                zs = witnesses.get((y, x), [])
                if len(zs) != 1:
                    bad.append((alg.names[y], alg.names[x],
                                tuple(alg.names[z] for z in zs)))
    return not bad, tuple(bad)


# -- Boolean parts ------------------------------------------------------------------

BOOLEAN_LAW_ORDER = ("comm_meet", "comm_join", "assoc_meet", "assoc_join",
                     "absorb_meet", "absorb_join", "distrib_meet", "distrib_join",
                     "complement_meet", "complement_join", "identity_meet",
                     "identity_join")


@dataclass(frozen=True)
class BooleanAlgebra:
    """Explicit finite Boolean algebra (tables + constants) with audit."""

    names: tuple[str, ...]
    meet: np.ndarray
    join: np.ndarray
    neg: np.ndarray
    zero: int
    one: int

    def __post_init__(self):
        n = len(self.names)
        object.__setattr__(self, "meet", _as_table(self.meet, n, True))
        object.__setattr__(self, "join", _as_table(self.join, n, True))
        object.__setattr__(self, "neg", _as_table(self.neg, n, False))

    def __len__(self):
        return len(self.names)

    def laws(self) -> dict[str, AxiomResult]:
        n = len(self)
        mt, jn, ng = self.meet, self.join, self.neg
        z, o = self.zero, self.one
        preds = {
            "comm_meet": (2, lambda x, y: mt[x, y] == mt[y, x]),
            "comm_join": (2, lambda x, y: jn[x, y] == jn[y, x]),
            "assoc_meet": (3, lambda x, y, w: mt[x, mt[y, w]] == mt[mt[x, y], w]),
            "assoc_join": (3, lambda x, y, w: jn[x, jn[y, w]] == jn[jn[x, y], w]),
            "absorb_meet": (2, lambda x, y: mt[x, jn[x, y]] == x),
            "absorb_join": (2, lambda x, y: jn[x, mt[x, y]] == x),
            "distrib_meet": (3, lambda x, y, w: mt[x, jn[y, w]] == jn[mt[x, y], mt[x, w]]),
            "distrib_join": (3, lambda x, y, w: jn[x, mt[y, w]] == mt[jn[x, y], jn[x, w]]),
            "complement_meet": (1, lambda x: mt[x, ng[x]] == z),
            "complement_join": (1, lambda x: jn[x, ng[x]] == o),
            "identity_meet": (1, lambda x: mt[x, o] == x),
            "identity_join": (1, lambda x: jn[x, z] == x),
        }
        out = {}
        for name in BOOLEAN_LAW_ORDER:
            arity, pred = preds[name]
            if n == 0:
                out[name] = AxiomResult(True)
                continue
            ok = np.broadcast_to(pred(*_grids(n, arity)), (n,) * arity)
            if ok.all():
                out[name] = AxiomResult(True)
            else:
                where = np.argwhere(~ok)[0]
                out[name] = AxiomResult(False, tuple(self.names[int(i)] for i in where))
        return out

    def is_boolean(self) -> bool:
        return all(r.passed for r in self.laws().values())


@dataclass(frozen=True)
class BooleanPart:
    """One idempotent fragment of a dBa, packaged as a Boolean algebra."""

    algebra: BooleanAlgebra
    indices: tuple[int, ...]   # positions in the parent carrier


def _restrict(alg: FiniteAlgebra, members: Sequence[int], meet_like: bool) -> BooleanPart:
    local = {g: i for i, g in enumerate(members)}
    n = len(members)

    def loc(global_idx: int, what: str) -> int:
        gi = int(global_idx)
        if gi not in local:
            raise ClosureViolationError(
                f"{what} leaves the idempotent part at {alg.names[gi]!r} "
                "(input algebra is corrupt)")
        return local[gi]

    mt = np.zeros((n, n), dtype=np.int64)
    jn = np.zeros((n, n), dtype=np.int64)
    ng = np.zeros(n, dtype=np.int64)
    for i, x in enumerate(members):
        for j, y in enumerate(members):
            if meet_like:
                mt[i, j] = loc(alg.meet[x, y], "meet")
                jn[i, j] = loc(alg.vee(x, y), "vee")
            else:
                mt[i, j] = loc(alg.wedge(x, y), "wedge")
                jn[i, j] = loc(alg.join[x, y], "join")
        ng[i] = loc(alg.neg[x] if meet_like else alg.opp[x], "negation")
    if meet_like:
        zero = loc(alg.bottom, "bottom")
        one = loc(alg.neg[alg.bottom], "neg bottom")
    else:
        zero = loc(alg.opp[alg.top], "opp top")
        one = loc(alg.top, "top")
    names = tuple(alg.names[x] for x in members)
    return BooleanPart(BooleanAlgebra(names, mt, jn, ng, zero, one), tuple(members))


def boolean_parts(alg: FiniteAlgebra) -> tuple[BooleanPart, BooleanPart]:
    """Extract the meet- and join-idempotent fragments with their induced operations."""
    return (_restrict(alg, alg.meet_idempotents(), True),
            _restrict(alg, alg.join_idempotents(), False))


# -- characterization through two Boolean algebras -------------------------------------

@dataclass(frozen=True)
class AdjointMaps:
    """Maps r: A -> B, e: B -> A, r': A -> B', e': B' -> A with re = id, r'e' = id."""

    carrier_names: tuple[str, ...]
    b: BooleanAlgebra
    bp: BooleanAlgebra
    r: np.ndarray
    e: np.ndarray
    rp: np.ndarray
    ep: np.ndarray

    def __post_init__(self):
        n = len(self.carrier_names)
        for attr, size, target in (("r", n, len(self.b)), ("e", len(self.b), n),
                                   ("rp", n, len(self.bp)), ("ep", len(self.bp), n)):
            arr = np.asarray(getattr(self, attr), dtype=np.int64)
            if arr.shape != (size,):
                raise MalformedInputError(f"map {attr} has shape {arr.shape}")
            if size and target and (arr.min() < 0 or arr.max() >= target):
                raise MalformedInputError(f"map {attr} exits its codomain")
            object.__setattr__(self, attr, arr)
        if not np.array_equal(self.r[self.e], np.arange(len(self.b))):
            raise MalformedInputError("r after e is not the identity on B")
        if not np.array_equal(self.rp[self.ep], np.arange(len(self.bp))):
            raise MalformedInputError("r' after e' is not the identity on B'")


def build_from_booleans(maps: AdjointMaps) -> FiniteAlgebra:
    """Assemble the algebra whose operations are routed through B and B'."""
    r, e, rp, ep = maps.r, maps.e, maps.rp, maps.ep
    meet = e[maps.b.meet[r[:, None], r[None, :]]]
    join = ep[maps.bp.join[rp[:, None], rp[None, :]]]
    neg = e[maps.b.neg[r]]
    opp = ep[maps.bp.neg[rp]]
    return FiniteAlgebra(maps.carrier_names, meet, join, neg, opp,
                         int(ep[maps.bp.one]), int(e[maps.b.zero]))


@dataclass(frozen=True)
class CharacterizationReport:
    commute: AxiomResult          # (a) er e'r' = e'r' er
    absorb_meet: AxiomResult      # (b) first equation
    absorb_join: AxiomResult      # (b) second equation
    top_to_one: AxiomResult       # (c) r(e'(1')) = 1
    bottom_to_zero: AxiomResult   # (c) r'(e(0)) = 0'
    retract_cover: AxiomResult    # (d) er(x) = x or e'r'(x) = x

    @property
    def dba_conditions(self) -> bool:
        return all(r.passed for r in (self.commute, self.absorb_meet,
                                      self.absorb_join, self.top_to_one,
                                      self.bottom_to_zero))

    @property
    def pure_conditions(self) -> bool:
        return self.dba_conditions and self.retract_cover.passed


def check_characterization(maps: AdjointMaps) -> CharacterizationReport:
    """Evaluate the four map conditions pointwise over the carrier."""
    r, e, rp, ep = maps.r, maps.e, maps.rp, maps.ep
    names = maps.carrier_names
    n = len(names)

    def result(ok: np.ndarray, arity: int) -> AxiomResult:
        ok = np.broadcast_to(ok, (n,) * arity) if n else np.ones((0,) * arity, bool)
        if ok.all():
            return AxiomResult(True)
        first = np.argwhere(~ok)[0]
        return AxiomResult(False, tuple(names[int(i)] for i in first))

    commute = result(e[r[ep[rp]]] == ep[rp[e[r]]], 1)
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    lhs1 = e[maps.b.meet[r[x], r[ep[maps.bp.join[rp[x], rp[y]]]]]]
    absorb_meet = result(lhs1 == e[r[x]], 2)
    lhs2 = ep[maps.bp.join[rp[x], rp[e[maps.b.meet[r[x], r[y]]]]]]
    absorb_join = result(lhs2 == ep[rp[x]], 2)
    c1 = bool(r[ep[maps.bp.one]] == maps.b.one)
    c2 = bool(rp[e[maps.b.zero]] == maps.bp.zero)
    top_to_one = AxiomResult(c1, None if c1 else ())
    bottom_to_zero = AxiomResult(c2, None if c2 else ())
    retract = result((e[r] == np.arange(n)) | (ep[rp] == np.arange(n)), 1)
    return CharacterizationReport(commute, absorb_meet, absorb_join,
                                  top_to_one, bottom_to_zero, retract)


def canonical_maps_from_dba(alg: FiniteAlgebra) -> AdjointMaps:
    """B = meet-idempotents, B' = join-idempotents, r(x) = x meet x, inclusions back."""
    left, right = boolean_parts(alg)
    pos_b = {g: i for i, g in enumerate(left.indices)}
    pos_bp = {g: i for i, g in enumerate(right.indices)}
    try:
        r = np.array([pos_b[int(alg.meet[x, x])] for x in range(len(alg))],
                     dtype=np.int64)
        rp = np.array([pos_bp[int(alg.join[x, x])] for x in range(len(alg))],
                      dtype=np.int64)
    except KeyError as exc:
        raise ClosureViolationError(
            f"squaring does not land in the idempotent part at index {exc}") from None
    e = np.array(left.indices, dtype=np.int64)
    ep = np.array(right.indices, dtype=np.int64)
    return AdjointMaps(alg.names, left.algebra, right.algebra, r, e, rp, ep)
