"""Workbench for an untyped lambda calculus with binary fair choice.

Exact distribution semantics under call-by-value and call-by-name
(iterated small-step brackets and fuel-bounded big-step), divergence
brackets, continuation-passing translations simulating each strategy in
the other, programming encodings, digit-oracle expressiveness bridges,
and a seeded Monte Carlo sampler.
"""

from .bigstep import eval_big, eval_big_cbn, eval_big_cbv
from .dist import Dyadic, MassError, SubDist, combine, from_value, leq, mass
from .reduction import CBN, CBV, step, step_cbn, step_cbv
from .smallstep import (
    Bracket,
    FrontierCapError,
    OpenTermError,
    approximate,
    divergence_bracket,
    upper_bound,
)
from .syntax import (
    Abs,
    App,
    Choice,
    ParseError,
    Term,
    Var,
    alpha_eq,
    canonicalize,
    free_vars,
    is_value,
    parse,
    print_term,
    substitute,
)

__all__ = [
    "Abs",
    "App",
    "Bracket",
    "CBN",
    "CBV",
    "Choice",
    "Dyadic",
    "FrontierCapError",
    "MassError",
    "OpenTermError",
    "ParseError",
    "SubDist",
    "Term",
    "Var",
    "alpha_eq",
    "approximate",
    "canonicalize",
    "combine",
    "divergence_bracket",
    "eval_big",
    "eval_big_cbn",
    "eval_big_cbv",
    "free_vars",
    "from_value",
    "is_value",
    "leq",
    "mass",
    "parse",
    "print_term",
    "step",
    "step_cbn",
    "step_cbv",
    "substitute",
    "upper_bound",
]
