"""Formal contexts, concept algebras, and a two-sorted modal logic engine."""

from .context import S1, S2, FormalContext, SortedSet, complement_context
from .errors import (BudgetExceededError, ClosureViolationError,
                     DuplicateNameError, FcaError, MalformedInputError,
                     ParamRangeError, ParseError, SortError, TranslationError,
                     UnsupportedCombinationError)
from .formula import (And, Atom, Bottom, Formula, Iff, Implies, Modal,
                      ModalDescriptor, Not, Or, Top, desugar, sort_of,
                      translate_rho, translate_tau)
from .parser import parse, unparse
from .semantics import (ContextModel, GeneralizedModel, frame_valid,
                        find_countermodel, local_consequence, satisfies,
                        truth_set)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
