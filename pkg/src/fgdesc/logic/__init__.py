"""First-order formulas over finite signatures: AST, text format, metrics, evaluation."""
from .evaluate import Evaluator, EvaluationError, UnboundVariable, evaluate, failing_conjunct, naive_holds
from .formula import (FALSE, TRUE, And, Const, Eq, Exists, Forall, Func, Generation, Implies, NameSupply, Not, Or,
                      Power, PowerUpTo, Rel, Relativized, SlpWitness, Var, conj, disj, exists, forall, free_vars, neq,
                      substitute)
from .metrics import LengthReport, alternation, binary_length, length_report, symbol_length
from .sexpr import SIGNATURES, FormulaSyntaxError, Signature, parse, parse_with_signature, render
from .structures import (SignatureMismatch, Structure, group_structure, load_structure, naturals_additive,
                         ring_structure, structure_from_json)

__all__ = [
    "Evaluator", "EvaluationError", "UnboundVariable", "evaluate", "failing_conjunct", "naive_holds",
    "FALSE", "TRUE", "And", "Const", "Eq", "Exists", "Forall", "Func", "Generation", "Implies", "NameSupply",
    "Not", "Or", "Power", "PowerUpTo", "Rel", "Relativized", "SlpWitness", "Var", "conj", "disj", "exists",
    "forall", "free_vars", "neq", "substitute", "LengthReport", "alternation", "binary_length", "length_report",
    "symbol_length", "SIGNATURES", "FormulaSyntaxError", "Signature", "parse", "parse_with_signature", "render",
    "SignatureMismatch", "Structure", "group_structure", "load_structure", "naturals_additive", "ring_structure",
    "structure_from_json",
]
