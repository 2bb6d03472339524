"""Iterated small-step evaluation to exact distribution brackets.

The engine runs synchronous expansion rounds over a frontier of pending
terms.  Each round steps every pending term once, splitting mass in half
at a fired choice and merging alpha-equivalent results; terms that have
become values move into the lower approximant.  After `fuel` rounds the
pending mass is the residual, so lower mass + residual = 1 exactly.

Divergence brackets: the upper bound is 1 minus the converged mass; the
lower bound counts frontier mass sitting on states whose forward closure
is finite and value-free (every self-loop like Omega qualifies).  Terms
that diverge while growing forever get lower bound 0; that limitation is
deliberate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dist import Dyadic, ONE, SubDist, ZERO
from .reduction import step
from .syntax import Term, is_value, size

DEFAULT_FRONTIER_CAP = 100_000
DEFAULT_CLOSURE_LIMIT = 500


class FrontierCapError(RuntimeError):
    def __init__(self, cap: int, round_no: int, count: int):
        super().__init__(
            f"frontier grew to {count} distinct states in round {round_no}, "
            f"exceeding the cap of {cap}; raise frontier_cap to continue"
        )
        self.cap = cap
        self.round_no = round_no
        self.count = count


class OpenTermError(ValueError):
    def __init__(self, t: Term):
        names = ", ".join(sorted(t.free_names))
        super().__init__(f"term has free variables: {names}")


@dataclass(frozen=True)
class Bracket:
    """Exact evaluation state after a fuel-bounded run."""

    lower: SubDist
    residual: Dyadic
    fuel: int
    strategy: str

    def upper_bound(self, v: Term) -> Dyadic:
        """Best upper bound for the limit probability of value v."""
        return self.lower.get(v) + self.residual


def upper_bound(bracket: Bracket, v: Term) -> Dyadic:
    return bracket.upper_bound(v)


def _run(t, strategy, fuel, frontier_cap):
    lower: dict[Term, Dyadic] = {}
    frontier: dict[Term, Dyadic] = {}

    def put(table, term, mass):
        prev = table.get(term)
        table[term] = mass if prev is None else prev + mass

    put(lower if is_value(t) else frontier, t, ONE)

    for round_no in range(1, fuel + 1):
        if not frontier:
            break
        fresh: dict[Term, Dyadic] = {}
        for term, mass in frontier.items():
            succs = step(term, strategy)
            share = mass.half() if len(succs) == 2 else mass
            for s in succs:
                put(lower if is_value(s) else fresh, s, share)
        if len(fresh) > frontier_cap:
            raise FrontierCapError(frontier_cap, round_no, len(fresh))
        frontier = fresh

    return lower, frontier


def approximate(
    t: Term,
    strategy: str,
    fuel: int,
    frontier_cap: int = DEFAULT_FRONTIER_CAP,
) -> Bracket:
    """Exact lower approximant and residual after `fuel` rounds."""
    if t.free_names:
        raise OpenTermError(t)
    lower, frontier = _run(t, strategy, fuel, frontier_cap)
    residual = ZERO
    for m in frontier.values():
        residual = residual + m
    return Bracket(SubDist(lower), residual, fuel, strategy)


def _certified_divergent(
    start: Term, strategy: str, limit: int, divergent: set, escaping: set
) -> bool:
    """True when start's forward closure is finite, value-free and fully
    explored within `limit` states."""
    if start in divergent:
        return True
    if start in escaping:
        return False
    # states in a finite closure cycle, so their sizes stay bounded; a
    # successor far larger than the start is evidence of unbounded growth
    # and is treated as a budget miss rather than chased further
    size_bound = 2 * size(start) + 64
    seen = {start}
    queue = [start]
    closed = True
    while queue:
        if len(seen) > limit:
            closed = False
            break
        term = queue.pop()
        if term in divergent:
            continue
        if is_value(term) or size(term) > size_bound:
            closed = False
            break
        for s in step(term, strategy):
            if s not in seen:
                seen.add(s)
                queue.append(s)
    if closed:
        divergent.update(seen)
        return True
    # a value was reachable (or the budget ran out): refuse to certify this
    # start state, but say nothing about the other states visited
    escaping.add(start)
    return False


def divergence_bracket(
    t: Term,
    strategy: str,
    fuel: int,
    frontier_cap: int = DEFAULT_FRONTIER_CAP,
    closure_limit: int = DEFAULT_CLOSURE_LIMIT,
) -> tuple[Dyadic, Dyadic]:
    """Exact (lower, upper) bounds on the probability of divergence."""
    if t.free_names:
        raise OpenTermError(t)
    lower_approx, frontier = _run(t, strategy, fuel, frontier_cap)
    converged = ZERO
    for m in lower_approx.values():
        converged = converged + m
    upper = ONE - converged

    certified = ZERO
    divergent: set[Term] = set()
    escaping: set[Term] = set()
    for term, mass in frontier.items():
        if _certified_divergent(term, strategy, closure_limit, divergent, escaping):
            certified = certified + mass
    return certified, upper
