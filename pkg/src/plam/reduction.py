"""One-step weak reduction, call-by-value and call-by-name.

A step maps a non-value term to its list of successors: one successor
for a beta step or a step inside a context, two (left then right, half
probability each) when a choice between two values fires (call-by-value)
or any choice fires (call-by-name).  Values get None.
"""

from __future__ import annotations

from .syntax import Abs, App, Choice, Term, Var, is_value, substitute

CBV = "cbv"
CBN = "cbn"
STRATEGIES = (CBV, CBN)


class StuckTermError(RuntimeError):
    """No rule applies: a free variable sits in head position."""


def _wrap(succs: list[Term], build) -> list[Term]:
    return [build(s) for s in succs]


def step_cbv(t: Term) -> list[Term] | None:
    """Call-by-value: arguments are evaluated before beta, and both
    branches of a choice are evaluated before the coin is tossed."""
    match t:
        case Var() | Abs():
            return None
        case App(fun, arg):
            if not is_value(fun):
                return _wrap(step_cbv(fun), lambda s: App(s, arg))
            if not is_value(arg):
                return _wrap(step_cbv(arg), lambda s: App(fun, s))
            if isinstance(fun, Abs):
                return [substitute(fun.body, fun.binder, arg)]
            raise StuckTermError(f"variable in head position: {t}")
        case Choice(left, right):
            if not is_value(left):
                return _wrap(step_cbv(left), lambda s: Choice(s, right))
            if not is_value(right):
                return _wrap(step_cbv(right), lambda s: Choice(left, s))
            return [left, right]
    raise TypeError(f"not a term: {t!r}")


def step_cbn(t: Term) -> list[Term] | None:
    """Call-by-name: beta fires with the argument unevaluated, and a
    choice tosses the coin immediately."""
    match t:
        case Var() | Abs():
            return None
        case App(fun, arg):
            if isinstance(fun, Abs):
                return [substitute(fun.body, fun.binder, arg)]
            if isinstance(fun, Var):
                raise StuckTermError(f"variable in head position: {t}")
            return _wrap(step_cbn(fun), lambda s: App(s, arg))
        case Choice(left, right):
            return [left, right]
    raise TypeError(f"not a term: {t!r}")


def step(t: Term, strategy: str) -> list[Term] | None:
    if strategy == CBV:
        return step_cbv(t)
    if strategy == CBN:
        return step_cbn(t)
    raise ValueError(f"unknown strategy {strategy!r}")
