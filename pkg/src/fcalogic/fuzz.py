"""Seeded random generators for contexts, models, and formulas.

Everything takes an explicit `random.Random` so suites are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .context import S1, S2, FormalContext
from .formula import (And, Atom, Bottom, Formula, Iff, Implies, Modal,
                      ModalDescriptor, Not, Or, Top)
from .semantics import ContextModel, GeneralizedModel

FULL_FEATURES = frozenset(
    {"box", "window", "diamond", "window_dual", "overline", "grade", "weight", "exact"})
BM_FEATURES = frozenset({"box", "window", "diamond", "window_dual", "overline"})
KF_FEATURES = frozenset({"window", "window_dual"})
KB_FEATURES = frozenset({"box", "diamond"})

_WEIGHTS = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1))


def random_context(rng: random.Random, max_objects: int = 4, max_attributes: int = 4,
                   density: float = 0.5) -> FormalContext:
    n_g = rng.randint(1, max_objects)
    n_m = rng.randint(1, max_attributes)
    objects = tuple(f"g{i}" for i in range(1, n_g + 1))
    attributes = tuple(f"m{j}" for j in range(1, n_m + 1))
    pairs = [(g, m) for g in objects for m in attributes if rng.random() < density]
    return FormalContext(objects, attributes, pairs)


def random_valuation(rng: random.Random, objects, attributes,
                     s1_atoms=("p", "q"), s2_atoms=("r", "s")):
    val = {}
    for name in s1_atoms:
        val[Atom(name, S1)] = tuple(g for g in objects if rng.random() < 0.5)
    for name in s2_atoms:
        val[Atom(name, S2)] = tuple(m for m in attributes if rng.random() < 0.5)
    return val


def random_context_model(rng: random.Random, max_objects: int = 4,
                         max_attributes: int = 4, density: float = 0.5,
                         s1_atoms=("p", "q"), s2_atoms=("r", "s")) -> ContextModel:
    ctx = random_context(rng, max_objects, max_attributes, density)
    return ContextModel(ctx, random_valuation(rng, ctx.objects, ctx.attributes,
                                              s1_atoms, s2_atoms))


def random_generalized_model(rng: random.Random, max_objects: int = 4,
                             max_attributes: int = 4,
                             s1_atoms=("p", "q"), s2_atoms=("r", "s")
                             ) -> GeneralizedModel:
    n_g = rng.randint(1, max_objects)
    n_m = rng.randint(1, max_attributes)
    objects = tuple(f"g{i}" for i in range(1, n_g + 1))
    attributes = tuple(f"m{j}" for j in range(1, n_m + 1))
    i_pairs, j_pairs = [], []
    for g in objects:
        for m in attributes:
            # totality: every pair lands in I, J, or both
            choice = rng.randrange(3)
            if choice in (0, 2):
                i_pairs.append((g, m))
            if choice in (1, 2):
                j_pairs.append((g, m))
    return GeneralizedModel(objects, attributes, i_pairs, j_pairs,
                            random_valuation(rng, objects, attributes,
                                             s1_atoms, s2_atoms))


def random_formula(rng: random.Random, sort: str, max_depth: int = 4,
                   s1_atoms=("p", "q"), s2_atoms=("r", "s"),
                   features: frozenset = BM_FEATURES) -> Formula:
    """A well-sorted random formula using only the listed modal features."""
    styles = [s for s in ("box", "window", "diamond", "window_dual") if s in features]
    if max_depth <= 0 or (rng.random() < 0.25):
        names = s1_atoms if sort == S1 else s2_atoms
        roll = rng.random()
        if roll < 0.1:
            return Top(sort)
        if roll < 0.2:
            return Bottom(sort)
        return Atom(rng.choice(names), sort)
    kinds = ["not", "and", "or", "implies", "iff"] + (["modal"] * (3 if styles else 0))
    kind = rng.choice(kinds)
    if kind == "not":
        return Not(random_formula(rng, sort, max_depth - 1, s1_atoms, s2_atoms, features))
    if kind in ("and", "or", "implies", "iff"):
        cls = {"and": And, "or": Or, "implies": Implies, "iff": Iff}[kind]
        return cls(random_formula(rng, sort, max_depth - 1, s1_atoms, s2_atoms, features),
                   random_formula(rng, sort, max_depth - 1, s1_atoms, s2_atoms, features))
    direction = "o" if sort == S2 else "p"
    child_sort = S1 if direction == "o" else S2
    style = rng.choice(styles)
    base = "C" if "overline" in features and rng.random() < 0.3 else "I"
    grade = weight = None
    exact = False
    deco = rng.random()
    if "grade" in features and deco < 0.3:
        grade = rng.randint(0, 3)
        if style == "diamond" and "exact" in features and grade >= 1 and rng.random() < 0.4:
            exact = True
    elif "weight" in features and deco < 0.5:
        weight = rng.choice(_WEIGHTS)
    child = random_formula(rng, child_sort, max_depth - 1, s1_atoms, s2_atoms, features)
    return Modal(ModalDescriptor(direction, style, base, grade, weight, exact), child)
