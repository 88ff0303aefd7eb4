"""Finite formal contexts and the set-level operators built on them.

A context is a triple (objects, attributes, incidence).  Subsets of either
universe are represented internally as bit masks over the fixed declaration
order, so every operator is deterministic and outputs can always be rendered
in canonical order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import MalformedInputError, SortError

S1 = "s1"  # object sort
S2 = "s2"  # attribute sort

SORTS = (S1, S2)

APPROX_KINDS = ("poss_o", "nec_o", "poss_p", "nec_p")


def opposite(sort: str) -> str:
    return S2 if sort == S1 else S1


@dataclass(frozen=True)
class SortedSet:
    """A subset of one universe, tagged with its sort."""

    sort: str
    members: frozenset = frozenset()

    def __post_init__(self):
        if self.sort not in SORTS:
            raise SortError(f"unknown sort {self.sort!r}")
        object.__setattr__(self, "members", frozenset(self.members))

    def __contains__(self, item: str) -> bool:
        return item in self.members

    def __len__(self) -> int:
        return len(self.members)


class FormalContext:
    """Immutable two-sorted incidence structure.

    `objects` and `attributes` are duplicate-free id sequences; `incidence`
    is any iterable of (object, attribute) pairs drawn from them.
    """

    def __init__(self, objects: Iterable[str], attributes: Iterable[str],
                 incidence: Iterable[tuple[str, str]]):
        self._objects = tuple(objects)
        self._attributes = tuple(attributes)
        if len(set(self._objects)) != len(self._objects):
            raise MalformedInputError("duplicate object ids")
        if len(set(self._attributes)) != len(self._attributes):
            raise MalformedInputError("duplicate attribute ids")
        self._oidx = {g: i for i, g in enumerate(self._objects)}
        self._aidx = {m: i for i, m in enumerate(self._attributes)}
        rows = [0] * len(self._objects)
        cols = [0] * len(self._attributes)
        for g, m in incidence:
            if g not in self._oidx:
                raise MalformedInputError(f"incidence references unknown object {g!r}")
            if m not in self._aidx:
                raise MalformedInputError(f"incidence references unknown attribute {m!r}")
            rows[self._oidx[g]] |= 1 << self._aidx[m]
            cols[self._aidx[m]] |= 1 << self._oidx[g]
        self._rows = tuple(rows)  # per object: mask over attributes
        self._cols = tuple(cols)  # per attribute: mask over objects
        self._gfull = (1 << len(self._objects)) - 1
        self._mfull = (1 << len(self._attributes)) - 1

    # -- basic accessors ---------------------------------------------------

    @property
    def objects(self) -> tuple[str, ...]:
        return self._objects

    @property
    def attributes(self) -> tuple[str, ...]:
        return self._attributes

    def universe(self, sort: str) -> tuple[str, ...]:
        return self._objects if sort == S1 else self._attributes

    def incidence_pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple((g, m) for i, g in enumerate(self._objects)
                     for j, m in enumerate(self._attributes)
                     if self._rows[i] >> j & 1)

    def has(self, g: str, m: str) -> bool:
        return bool(self._rows[self._object_index(g)] >> self._attribute_index(m) & 1)

    def _object_index(self, g: str) -> int:
        try:
            return self._oidx[g]
        except KeyError:
            raise MalformedInputError(f"unknown object {g!r}") from None

    def _attribute_index(self, m: str) -> int:
        try:
            return self._aidx[m]
        except KeyError:
            raise MalformedInputError(f"unknown attribute {m!r}") from None

    def __eq__(self, other) -> bool:
        return (isinstance(other, FormalContext)
                and self._objects == other._objects
                and self._attributes == other._attributes
                and self._rows == other._rows)

    def __hash__(self) -> int:
        return hash((self._objects, self._attributes, self._rows))

    def __repr__(self) -> str:
        return (f"FormalContext({len(self._objects)}x{len(self._attributes)}, "
                f"|I|={sum(r.bit_count() for r in self._rows)})")

    # -- mask plumbing -----------------------------------------------------

    def full_mask(self, sort: str) -> int:
        return self._gfull if sort == S1 else self._mfull

    def mask_of(self, s: SortedSet) -> int:
        idx = self._oidx if s.sort == S1 else self._aidx
        mask = 0
        for w in s.members:
            if w not in idx:
                raise MalformedInputError(f"{w!r} is not in the {s.sort} universe")
            mask |= 1 << idx[w]
        return mask

    def set_of(self, sort: str, mask: int) -> SortedSet:
        uni = self.universe(sort)
        return SortedSet(sort, frozenset(uni[i] for i in range(len(uni)) if mask >> i & 1))

    def ids_of(self, sort: str, mask: int) -> tuple[str, ...]:
        """Members of `mask` in canonical (declaration) order."""
        uni = self.universe(sort)
        return tuple(uni[i] for i in range(len(uni)) if mask >> i & 1)

    def row(self, g_index: int) -> int:
        return self._rows[g_index]

    def col(self, m_index: int) -> int:
        return self._cols[m_index]

    def subsets(self, sort: str) -> Iterator[int]:
        """All subset masks of one universe, in binary-counter order."""
        return iter(range(self.full_mask(sort) + 1))

    # -- operators (mask level) ---------------------------------------------

    def derive_mask(self, sort: str, mask: int) -> int:
        """Galois derivation: common attributes of a set of objects, or dually."""
        if sort == S1:
            out = self._mfull
            for i in range(len(self._objects)):
                if mask >> i & 1:
                    out &= self._rows[i]
            return out
        out = self._gfull
        for j in range(len(self._attributes)):
            if mask >> j & 1:
                out &= self._cols[j]
        return out

    def approx_mask(self, kind: str, mask: int) -> int:
        if kind == "poss_o":
            return sum(1 << j for j in range(len(self._attributes)) if self._cols[j] & mask)
        if kind == "nec_o":
            return sum(1 << j for j in range(len(self._attributes))
                       if self._cols[j] & ~mask & self._gfull == 0)
        if kind == "poss_p":
            return sum(1 << i for i in range(len(self._objects)) if self._rows[i] & mask)
        if kind == "nec_p":
            return sum(1 << i for i in range(len(self._objects))
                       if self._rows[i] & ~mask & self._mfull == 0)
        raise MalformedInputError(f"unknown approximation kind {kind!r}")

    # -- operators (public, SortedSet level) ---------------------------------

    def derive(self, s: SortedSet) -> SortedSet:
        return self.set_of(opposite(s.sort), self.derive_mask(s.sort, self.mask_of(s)))

    def approx(self, kind: str, s: SortedSet) -> SortedSet:
        if kind not in APPROX_KINDS:
            raise MalformedInputError(f"unknown approximation kind {kind!r}")
        want = S1 if kind in ("poss_o", "nec_o") else S2
        if s.sort != want:
            raise SortError(f"{kind} takes a {want} set, got {s.sort}")
        return self.set_of(opposite(s.sort), self.approx_mask(kind, self.mask_of(s)))

    def neighborhoods(self, w: str) -> SortedSet:
        """Incidence row of an object or column of an attribute."""
        if w in self._oidx:
            return self.set_of(S2, self._rows[self._oidx[w]])
        if w in self._aidx:
            return self.set_of(S1, self._cols[self._aidx[w]])
        raise MalformedInputError(f"unknown world id {w!r}")

    def complement(self) -> FormalContext:
        """Same universes, complemented incidence."""
        pairs = [(g, m) for i, g in enumerate(self._objects)
                 for j, m in enumerate(self._attributes)
                 if not self._rows[i] >> j & 1]
        return FormalContext(self._objects, self._attributes, pairs)


def complement_context(context: FormalContext) -> FormalContext:
    return context.complement()
