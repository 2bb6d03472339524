"""Distributions over naturals as digit oracles, and the two bridges
between oracles and terms.

An oracle answers approx(a, n): the first n binary digits (truncated
expansion; probability 1 is all ones by convention) of the probability
of outcome a.  soundness_approx reads such digits off a term by running
it until the residual is small enough.  split peels half of an oracle's
mass into a finite dyadic tree plus a remainder oracle; iterating that
(completeness_approx) builds a term whose distribution approaches the
oracle's from below, gaining one bit of mass per round.
"""

from __future__ import annotations

import math
import subprocess
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .dist import Dyadic, HALF, ONE, ZERO
from .encodings import MFDT, OMEGA, decode_nat, encode_nat, fdt_from_dist
from .reduction import CBV
from .smallstep import DEFAULT_FRONTIER_CAP, approximate
from .syntax import Abs, App, Choice, Term, Var


class OracleError(RuntimeError):
    pass


class DistOracle:
    """Base class: subclasses implement approx(a, n) -> n-digit string."""

    def approx(self, a: int, n: int) -> str:
        raise NotImplementedError

    def lower_bound(self, a: int, n: int) -> Dyadic:
        """Dyadic lower bound on the probability of a, from n digits."""
        if n == 0:
            return ZERO
        return Dyadic(int(self.approx(a, n), 2), n)


class FractionOracle(DistOracle):
    """Closed-form oracle for an exactly known probability function."""

    def __init__(self, prob: Callable[[int], Fraction]):
        self.prob = prob

    def approx(self, a: int, n: int) -> str:
        p = Fraction(self.prob(a))
        if not 0 <= p <= 1:
            raise OracleError(f"probability of {a} is {p}, outside [0, 1]")
        if p == 1:
            return "1" * n
        return "".join(
            str((p.numerator << k) // p.denominator % 2)
            for k in range(1, n + 1)
        )


def oracle_from_dyadics(d: Mapping[int, Dyadic]) -> DistOracle:
    table = {a: m.as_fraction() for a, m in d.items()}
    return FractionOracle(lambda a: table.get(a, Fraction(0)))


def geometric_oracle() -> DistOracle:
    return FractionOracle(lambda a: Fraction(1, 2 ** (a + 1)))


class SubprocessOracle(DistOracle):
    """Line protocol: write 'a n', read back the n-digit bitstring."""

    def __init__(self, command: list[str]):
        self.proc = subprocess.Popen(
            command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            bufsize=1,
        )

    def approx(self, a: int, n: int) -> str:
        if self.proc.poll() is not None:
            raise OracleError("oracle process has exited")
        self.proc.stdin.write(f"{a} {n}\n")
        self.proc.stdin.flush()
        line = self.proc.stdout.readline().strip()
        if len(line) != n or set(line) - {"0", "1"}:
            raise OracleError(f"bad oracle answer {line!r} for {a} {n}")
        return line

    def close(self):
        if self.proc.poll() is None:
            self.proc.stdin.close()
            self.proc.wait(timeout=10)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def soundness_approx(
    t: Term,
    a: int,
    n: int,
    fuel_schedule: Iterable[int] = (16, 32, 64, 128, 256, 512, 1024),
    frontier_cap: int = DEFAULT_FRONTIER_CAP,
) -> str | None:
    """First n binary digits of the probability of numeral a in t's
    call-by-value run.

    Evaluates t under growing fuel until the residual drops below 2^-n,
    then reads the digits off the lower approximant; returns None when
    the schedule is exhausted first.  Rejects terms whose converged
    support contains non-numerals.
    """
    threshold = Dyadic(1, n) if n else ZERO
    for fuel in fuel_schedule:
        bracket = approximate(t, CBV, fuel, frontier_cap)
        if bracket.residual < threshold or (not bracket.residual and not n):
            for v in bracket.lower.support():
                if decode_nat(v) is None:
                    raise OracleError(f"non-numeral in support: {v}")
            return bracket.lower.get(encode_nat(a)).digits(n)
    return None


def split(oracle: DistOracle, budget: int = 64) -> tuple[Term, DistOracle]:
    """Peel off half the oracle's mass as a finite dyadic tree.

    Queries outcomes in dovetail order until the certified lower bounds
    reach 1/2, trims them to a sub-distribution summing exactly 1, and
    returns the tree together with the remainder oracle for 2*D - pd.
    The identity D = 1/2 pd(tree) + 1/2 remainder holds exactly.
    """
    bounds: dict[int, Dyadic] = {}
    for r in range(1, budget + 1):
        total = ZERO
        for a in range(r):
            bounds[a] = oracle.lower_bound(a, r)
            total = total + bounds[a]
        if total >= HALF:
            break
    else:
        raise OracleError(
            f"split budget of {budget} rounds exhausted before half the "
            "mass was certified"
        )

    peeled: dict[int, Dyadic] = {}
    allocated = ZERO
    for a in sorted(bounds):
        room = ONE - allocated
        if not room:
            break
        take = bounds[a] + bounds[a]  # 2 * lower bound <= 2 * D(a)
        if take > room:
            take = room
        if take:
            peeled[a] = take
            allocated = allocated + take
    return fdt_from_dist(peeled), _RemainderOracle(oracle, peeled, budget)


class _RemainderOracle(DistOracle):
    """Digits of 2*D(a) - e(a), derived from the base oracle's digits.

    The base digits at precision m pin D(a) inside [t, t + 2^-m], so the
    target value sits in an interval of width 2^-(m-1); m grows until the
    first n digits are the same across the whole interval.
    """

    def __init__(self, base: DistOracle, peeled: Mapping[int, Dyadic], budget: int):
        self.base = base
        self.peeled = dict(peeled)
        self.budget = budget

    def approx(self, a: int, n: int) -> str:
        if n == 0:
            return ""
        e = self.peeled.get(a, ZERO).as_fraction()
        boundary = 1 - Fraction(1, 2**n)
        for m in range(n + 2, n + 2 + self.budget):
            t = self.base.lower_bound(a, m).as_fraction()
            lo = max(Fraction(0), 2 * t - e)
            hi = min(Fraction(1), 2 * t + Fraction(1, 2 ** (m - 1)) - e)
            if lo >= boundary:
                # everything in [1 - 2^-n, 1] shares the all-ones prefix
                return "1" * n
            if math.floor(lo * 2**n) == math.floor(hi * 2**n):
                return format(math.floor(lo * 2**n), f"0{n}b")
        raise OracleError(
            f"digits of remainder at {a} undetermined within precision budget"
        )


def completeness_approx(
    oracle: DistOracle, rounds: int, budget: int = 64
) -> tuple[Term, Dyadic]:
    """Term whose call-by-value run lies pointwise below the oracle's
    distribution with total mass at least 1 - 2^-rounds (the returned
    guarantee).

    Each round splits off a tree L and chains
    ((\\s. MFDT L) (+) (\\s. <rest>)) (\\s. s), bottoming out at OMEGA.
    """
    trees: list[Term] = []
    current = oracle
    for _ in range(rounds):
        tree, current = split(current, budget)
        trees.append(tree)
    term: Term = OMEGA
    for tree in reversed(trees):
        term = App(
            Choice(Abs("s", App(MFDT, tree)), Abs("s", term)),
            Abs("s", Var("s")),
        )
    return term, ONE - Dyadic(1, rounds)
