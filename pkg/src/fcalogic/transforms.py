"""Model-level constructions: complementation, the disjoint-copy construction,
bounded morphisms, and generated submodels.

The disjoint-copy construction doubles a generalized model into one whose two
relations are disjoint (hence context-based up to naming), together with the
fold map back; the fold is a surjective bounded morphism, so satisfaction is
preserved world-by-world.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Union

from .context import S1, S2, FormalContext
from .errors import MalformedInputError
from .formula import Formula
from .fuzz import BM_FEATURES, random_formula
from .semantics import ContextModel, GeneralizedModel, truth_set
from .formula import translate_rho

PRIME = "'"  # reserved marker for the disjoint copy


@dataclass(frozen=True)
class TwoSortedMap:
    """Total maps on both universes of a source model."""

    f_s1: dict
    f_s2: dict

    def apply(self, sort: str, w: str) -> str:
        table = self.f_s1 if sort == S1 else self.f_s2
        return table[w]


def complement_model(model: ContextModel) -> ContextModel:
    """Same universes and valuation over the complemented context."""
    val = {atom: tuple(sorted(s.members)) for atom, s in model.valuation_sets().items()}
    return ContextModel(model.context.complement(), val)


def rho_correspondence_check(model: ContextModel, f: Formula) -> bool:
    """Truth sets of `f` here and of its box translation on the complemented model agree."""
    return truth_set(model, f) == truth_set(complement_model(model), translate_rho(f))


def as_generalized(model: Union[ContextModel, GeneralizedModel]) -> GeneralizedModel:
    if isinstance(model, GeneralizedModel):
        return model
    ctx = model.context
    comp = ctx.complement()
    val = {atom: tuple(sorted(s.members)) for atom, s in model.valuation_sets().items()}
    return GeneralizedModel(ctx.objects, ctx.attributes, ctx.incidence_pairs(),
                            comp.incidence_pairs(), val)


def disjointify(model: Union[ContextModel, GeneralizedModel]
                ) -> tuple[GeneralizedModel, TwoSortedMap]:
    """Doubled model with disjoint relations, and the fold map back to the input."""
    g = as_generalized(model)
    for w in g.objects + g.attributes:
        if PRIME in w:
            raise MalformedInputError(
                f"id {w!r} contains the reserved copy marker {PRIME!r}")
    if not g.is_total():
        raise MalformedInputError("disjointify needs a total generalized model")
    objects = g.objects + tuple(x + PRIME for x in g.objects)
    attributes = g.attributes + tuple(x + PRIME for x in g.attributes)
    i_set = set(g.i_pairs())
    j_set = set(g.j_pairs())
    i_new, j_new = [], []
    for x in g.objects:
        for y in g.attributes:
            in_i, in_j = (x, y) in i_set, (x, y) in j_set
            if in_i and in_j:
                i_new += [(x, y + PRIME), (x + PRIME, y)]
                j_new += [(x, y), (x + PRIME, y + PRIME)]
            elif in_i:
                i_new += [(x, y), (x, y + PRIME), (x + PRIME, y), (x + PRIME, y + PRIME)]
            else:
                j_new += [(x, y), (x, y + PRIME), (x + PRIME, y), (x + PRIME, y + PRIME)]
    val = {}
    for atom, s in g.valuation_sets().items():
        val[atom] = tuple(sorted(s.members)) + tuple(sorted(w + PRIME for w in s.members))
    doubled = GeneralizedModel(objects, attributes, i_new, j_new, val)
    fold = TwoSortedMap({x: x.rstrip(PRIME) for x in objects},
                        {y: y.rstrip(PRIME) for y in attributes})
    return doubled, fold


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    violation: Optional[str] = None


def is_bounded_morphism(f: TwoSortedMap, src: GeneralizedModel,
                        dst: GeneralizedModel) -> MorphismReport:
    """Atom agreement plus forth and back conditions for both relations.

    Back conditions are checked from both coordinates: o-direction operators
    look from an attribute toward its object neighbors, so attribute-side
    preimage witnesses are required as well.
    """
    for sort, table in ((S1, f.f_s1), (S2, f.f_s2)):
        for w in src.universe(sort):
            if w not in table:
                return MorphismReport(False, f"map undefined on {sort} world {w!r}")
            if table[w] not in dst.universe(sort):
                return MorphismReport(False, f"map sends {w!r} outside the target")
    src_val = src.valuation_sets()
    dst_val = dst.valuation_sets()
    for atom in set(src_val) | set(dst_val):
        s_members = src_val.get(atom, None)
        s_set = s_members.members if s_members else frozenset()
        d_members = dst_val.get(atom, None)
        d_set = d_members.members if d_members else frozenset()
        for w in src.universe(atom.sort):
            if (w in s_set) != (f.apply(atom.sort, w) in d_set):
                return MorphismReport(
                    False, f"atom {atom.name}@{atom.sort} differs at {w!r}")
    rels = (("I", set(src.i_pairs()), set(dst.i_pairs())),
            ("J", set(src.j_pairs()), set(dst.j_pairs())))
    for name, s_rel, d_rel in rels:
        for (x, y) in s_rel:
            if (f.apply(S1, x), f.apply(S2, y)) not in d_rel:
                return MorphismReport(False, f"forth fails for {name} at {(x, y)}")
        for x in src.objects:
            fx = f.apply(S1, x)
            for (gx, my) in d_rel:
                if gx != fx:
                    continue
                if not any((x, y) in s_rel and f.apply(S2, y) == my
                           for y in src.attributes):
                    return MorphismReport(
                        False, f"back fails for {name} at object {x!r} toward {my!r}")
        for y in src.attributes:
            fy = f.apply(S2, y)
            for (gx, my) in d_rel:
                if my != fy:
                    continue
                if not any((x, y) in s_rel and f.apply(S1, x) == gx
                           for x in src.objects):
                    return MorphismReport(
                        False, f"back fails for {name} at attribute {y!r} toward {gx!r}")
    return MorphismReport(True)


def is_surjective(f: TwoSortedMap, src: GeneralizedModel,
                  dst: GeneralizedModel) -> bool:
    return (set(f.f_s1[x] for x in src.objects) == set(dst.objects)
            and set(f.f_s2[y] for y in src.attributes) == set(dst.attributes))


@dataclass(frozen=True)
class SubmodelResult:
    model: GeneralizedModel          # may be non-total; see `total`
    total: bool
    missing_pairs: tuple[tuple[str, str], ...]


def generated_submodel(g: GeneralizedModel, w: str) -> SubmodelResult:
    """Smallest substructure containing `w` closed under alternating I∪J steps.

    Totality of the restriction is reported, not assumed: arbitrary finite
    inputs need not keep I∪J total on the carved-out rectangle.
    """
    if w in g.objects:
        seed_sort = S1
    elif w in g.attributes:
        seed_sort = S2
    else:
        raise MalformedInputError(f"unknown world {w!r}")
    i_set = set(g.i_pairs())
    j_set = set(g.j_pairs())
    rc = i_set | j_set
    objs = {w} if seed_sort == S1 else set()
    atts = {w} if seed_sort == S2 else set()
    changed = True
    while changed:
        changed = False
        for (x, y) in rc:
            if x in objs and y not in atts:
                atts.add(y)
                changed = True
            if y in atts and x not in objs:
                objs.add(x)
                changed = True
    sub_objs = tuple(x for x in g.objects if x in objs)
    sub_atts = tuple(y for y in g.attributes if y in atts)
    i_sub = [(x, y) for (x, y) in i_set if x in objs and y in atts]
    j_sub = [(x, y) for (x, y) in j_set if x in objs and y in atts]
    val = {}
    for atom, s in g.valuation_sets().items():
        keep = objs if atom.sort == S1 else atts
        val[atom] = tuple(sorted(s.members & keep))
    sub = GeneralizedModel(sub_objs, sub_atts, i_sub, j_sub, val,
                           require_total=False)
    missing = tuple(sub.missing_pairs())
    return SubmodelResult(sub, not missing, missing)


def modal_equivalence_suite(src: GeneralizedModel, dst: GeneralizedModel,
                            fold: TwoSortedMap, count: int = 50,
                            seed: int = 0, max_depth: int = 4) -> list[str]:
    """Fuzz check: satisfaction agrees across the map; returns disagreements."""
    rng = random.Random(seed)
    failures = []
    for k in range(count):
        sort = S1 if k % 2 == 0 else S2
        f = random_formula(rng, sort, max_depth, features=BM_FEATURES)
        dst_true = truth_set(dst, f).members
        src_true = truth_set(src, f).members
        for w in src.universe(sort):
            if (w in src_true) != (fold.apply(sort, w) in dst_true):
                failures.append(f"formula #{k} disagrees at {w!r}")
                break
    return failures
