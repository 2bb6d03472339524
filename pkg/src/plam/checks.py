"""Corpus-driven property suites behind the `check` CLI subcommand.

Each suite yields one PASS/FAIL outcome per corpus term.  Corpus files
hold one term per line; '--' comments and blank lines are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import cps
from .bigstep import eval_big
from .dist import ONE
from .reduction import CBN, CBV
from .smallstep import DEFAULT_FRONTIER_CAP, approximate, divergence_bracket
from .syntax import Term, parse


@dataclass(frozen=True)
class CheckOutcome:
    term_text: str
    status: str  # "PASS" | "FAIL"
    detail: str

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


def load_corpus(path: str) -> list[tuple[str, Term]]:
    entries = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            text = line.split("--", 1)[0].strip()
            if text:
                entries.append((text, parse(text)))
    return entries


def run_duality_suite(
    corpus, fuel: int = 50, frontier_cap: int = DEFAULT_FRONTIER_CAP
) -> list[CheckOutcome]:
    """Mass conservation and the divergence bracket inequalities, both
    strategies, all exact."""
    outcomes = []
    for text, term in corpus:
        problems = []
        for strategy in (CBV, CBN):
            bracket = approximate(term, strategy, fuel, frontier_cap)
            if bracket.lower.mass() + bracket.residual != ONE:
                problems.append(f"{strategy}: mass+residual != 1")
            low, up = divergence_bracket(term, strategy, fuel, frontier_cap)
            if low > up:
                problems.append(f"{strategy}: divergence lower > upper")
            if bracket.lower.mass() + low > ONE:
                problems.append(f"{strategy}: converged mass + divergence lower > 1")
            if up != ONE - bracket.lower.mass():
                problems.append(f"{strategy}: divergence upper mismatch")
        outcomes.append(
            CheckOutcome(text, "FAIL" if problems else "PASS", "; ".join(problems))
        )
    return outcomes


def run_bigsmall_suite(
    corpus,
    fuel: int = 50,
    max_big_fuel: int = 400,
    frontier_cap: int = DEFAULT_FRONTIER_CAP,
) -> list[CheckOutcome]:
    """Small-step versus big-step: exact equality once both stabilize,
    and big-step domination at doubled fuel otherwise."""
    outcomes = []
    for text, term in corpus:
        problems = []
        for strategy in (CBV, CBN):
            small = approximate(term, strategy, fuel, frontier_cap)
            big = eval_big(term, strategy, 2 * fuel)
            if not small.lower.leq(big):
                problems.append(f"{strategy}: big-step at 2*fuel does not dominate")
            if not small.residual:
                stabilized = None
                big_fuel = 1
                while big_fuel <= max_big_fuel:
                    candidate = eval_big(term, strategy, big_fuel)
                    if candidate.mass() == small.lower.mass():
                        stabilized = candidate
                        break
                    big_fuel *= 2
                if stabilized is None:
                    problems.append(f"{strategy}: big-step never caught up")
                elif stabilized != small.lower:
                    problems.append(f"{strategy}: stabilized results differ")
        outcomes.append(
            CheckOutcome(text, "FAIL" if problems else "PASS", "; ".join(problems))
        )
    return outcomes


def run_simulation_suite(
    corpus, fuel: int = 500, frontier_cap: int = DEFAULT_FRONTIER_CAP
) -> list[CheckOutcome]:
    """Both continuation-passing simulations; PASS covers exact equality
    at stabilization and bracket overlap otherwise."""
    outcomes = []
    for text, term in corpus:
        problems = []
        for name, checker in (
            ("v-by-n", cps.check_simulation_v_by_n),
            ("n-by-v", cps.check_simulation_n_by_v),
        ):
            report = checker(term, fuel, frontier_cap)
            if report.status == "FAIL":
                problems.append(f"{name}: {report.detail}")
        outcomes.append(
            CheckOutcome(text, "FAIL" if problems else "PASS", "; ".join(problems))
        )
    return outcomes
