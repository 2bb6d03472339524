"""Fuel-bounded big-step evaluation to exact sub-distributions.

Fuel bounds the derivation height, with the two axioms free: a value
evaluates to its point distribution at any fuel, a non-value at fuel 0
evaluates to the empty sub-distribution.

Call-by-value applications combine the full distributions of both parts
before each beta redex is evaluated, and a call-by-value choice weighs
each side by the other side's total mass (the coin only gets tossed once
both branches have converged).  Call-by-name substitutes the unevaluated
argument and splits a choice in half immediately.

Results are memoized on (term, fuel) within one call; that cannot change
any result because evaluation is pure.
"""

from __future__ import annotations

from .dist import Dyadic, HALF, SubDist, combine, from_value
from .reduction import CBN, CBV
from .smallstep import OpenTermError
from .syntax import Abs, App, Choice, Term, is_value, substitute


def eval_big(t: Term, strategy: str, fuel: int) -> SubDist:
    if strategy not in (CBV, CBN):
        raise ValueError(f"unknown strategy {strategy!r}")
    if t.free_names:
        raise OpenTermError(t)
    memo: dict[tuple[Term, int], SubDist] = {}

    def go(t: Term, fuel: int) -> SubDist:
        if is_value(t):
            return from_value(t)
        if fuel == 0:
            return SubDist()
        key = (t, fuel)
        cached = memo.get(key)
        if cached is not None:
            return cached
        match t:
            case App(fun, arg):
                d = go(fun, fuel - 1)
                if strategy == CBV:
                    e = go(arg, fuel - 1)
                    parts = [
                        (
                            d.get(f) * e.get(v),
                            go(substitute(f.body, f.binder, v), fuel - 1),
                        )
                        for f in d.support()
                        if isinstance(f, Abs)
                        for v in e.support()
                    ]
                else:
                    parts = [
                        (
                            d.get(f),
                            go(substitute(f.body, f.binder, arg), fuel - 1),
                        )
                        for f in d.support()
                        if isinstance(f, Abs)
                    ]
                result = combine(parts)
            case Choice(left, right):
                d = go(left, fuel - 1)
                e = go(right, fuel - 1)
                if strategy == CBV:
                    result = combine(
                        [(HALF * e.mass(), d), (HALF * d.mass(), e)]
                    )
                else:
                    result = combine([(HALF, d), (HALF, e)])
            case _:
                raise TypeError(f"not a term: {t!r}")
        memo[key] = result
        return result

    return go(t, fuel)


def eval_big_cbv(t: Term, fuel: int) -> SubDist:
    return eval_big(t, CBV, fuel)


def eval_big_cbn(t: Term, fuel: int) -> SubDist:
    return eval_big(t, CBN, fuel)
