"""First-order logic over graphs with part predicates and distance atoms."""

from .evaluate import Assignment, EvaluationError, Evaluator, evaluate, evaluate_reference
from .local import BasicLocalSentence, eval_basic_local
from .parser import Definitions, FormulaSyntaxError, parse_formula, parse_sentence
from .printer import to_text
from .syntax import (
    And, Bottom, Const, Dist, Edge, Eq, Exists, Forall, Formula, Implies, InSet, Not, Or, Part,
    Top, Var, Xor, free_vars, quantifier_rank, substitute,
)
from .transforms import (
    TransformError, existential_from_models, relativize, relativize_to_set, translate_flip,
)

__all__ = [
    "And", "Assignment", "BasicLocalSentence", "Bottom", "Const", "Definitions", "Dist", "Edge",
    "Eq", "EvaluationError", "Evaluator", "Exists", "Forall", "Formula", "FormulaSyntaxError",
    "Implies", "InSet", "Not", "Or", "Part", "Top", "TransformError", "Var", "Xor",
    "eval_basic_local", "evaluate", "evaluate_reference", "existential_from_models", "free_vars",
    "parse_formula", "parse_sentence", "quantifier_rank", "relativize", "relativize_to_set",
    "substitute", "to_text", "translate_flip",
]
