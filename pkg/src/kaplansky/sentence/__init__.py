"""First-order sentences in the language of rings: builders, text form, SMT-LIB, evaluation."""

from .builders import (PROPERTIES, build_property, build_psi_idempotent, build_psi_stable,
                       build_psi_unit, build_psi_zero_divisor)
from .evaluate import evaluate
from .smtlib import emit_smtlib
from .syntax import (ONE, ZERO, Add, And, Equal, Exists, Forall, Formula, Mul, Neg, Not, One, Or,
                     Sentence, SentenceStats, Term, Var, Zero, check_sentence)
from .text import parse_sentence, pretty_print

__all__ = [
    "PROPERTIES", "build_property", "build_psi_idempotent", "build_psi_stable", "build_psi_unit",
    "build_psi_zero_divisor", "evaluate", "emit_smtlib", "ONE", "ZERO", "Add", "And", "Equal",
    "Exists", "Forall", "Formula", "Mul", "Neg", "Not", "One", "Or", "Sentence", "SentenceStats",
    "Term", "Var", "Zero", "check_sentence", "parse_sentence", "pretty_print",
]
