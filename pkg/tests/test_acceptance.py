"""Acceptance gate: one test per release criterion, exact tolerances.

Every criterion pins its own seed, so reruns exercise the identical
workload.  Time budgets are asserted where a criterion carries one.
"""

import random
import time
from fractions import Fraction
from importlib import resources

from helpers import deterministic_steps_to, random_fdt, random_term, random_value
from plam.bigstep import eval_big
from plam.checks import load_corpus, run_simulation_suite
from plam.cps import (
    check_simulation_n_by_v,
    check_simulation_v_by_n,
    colon_n,
    colon_v,
    cps_n_to_v,
    cps_v_to_n,
)
from plam.dist import HALF, ONE, ZERO, Dyadic, SubDist, from_value
from plam.encodings import (
    GEO,
    H,
    MFDT,
    decode_nat,
    encode_nat,
    fdt_from_dist,
    pd,
    run_mfdt,
)
from plam.expressiveness import (
    completeness_approx,
    geometric_oracle,
    oracle_from_dyadics,
    soundness_approx,
)
from plam.reduction import CBN, CBV, STRATEGIES, step
from plam.sampler import estimate
from plam.smallstep import approximate, divergence_bracket
from plam.syntax import Abs, App, Var, parse, size

SEED = 20260822


def _bundled(name):
    with resources.as_file(resources.files("plam").joinpath(f"data/{name}")) as p:
        return load_corpus(str(p))


def _random_corpus(count=500, max_size=40):
    rng = random.Random(SEED)
    return [random_term(rng, max_size) for _ in range(count)]


def _within_4_sigma(freq: Fraction, p: Fraction, samples: int) -> bool:
    # |freq - p| <= 4 * sqrt(p (1-p) / samples), compared without floats
    diff = freq - p
    return diff * diff * samples <= 16 * p * (1 - p)


def test_c1_golden_terms_evaluate_exactly():
    started = time.monotonic()
    identity = parse("\\x. x")

    bracket = approximate(parse("(\\x. x) (\\x. x)"), CBV, 50)
    assert bracket.lower == from_value(identity) and bracket.residual == ZERO

    omega = parse("OMEGA")
    assert approximate(omega, CBV, 50).lower == SubDist()
    assert divergence_bracket(omega, CBV, 1) == (ONE, ONE)
    assert divergence_bracket(omega, CBN, 1) == (ONE, ONE)

    mixed = parse("OMEGA (+) \\x. x")
    assert approximate(mixed, CBV, 50).lower == SubDist()
    assert approximate(mixed, CBN, 50).lower == SubDist({identity: HALF})

    xor_program = parse("(\\x. XOR x x) (TT (+) FF)")
    cbv = approximate(xor_program, CBV, 50)
    assert cbv.lower == from_value(parse("FF")) and cbv.residual == ZERO
    cbn = approximate(xor_program, CBN, 50)
    assert cbn.lower == SubDist({parse("TT"): HALF, parse("FF"): HALF})
    assert cbn.residual == ZERO

    elapsed = time.monotonic() - started
    assert elapsed < 5.0
    print(f"C1 PASS: golden corpus exact in {elapsed:.2f}s")


def test_c2_conservation_and_divergence_duality_on_random_terms():
    started = time.monotonic()
    for t in _random_corpus():
        for strategy in sorted(STRATEGIES):
            bracket = approximate(t, strategy, 50)
            low, up = divergence_bracket(t, strategy, 50)
            assert bracket.lower.mass() + bracket.residual == ONE
            assert low <= up
            assert up == bracket.residual
            assert bracket.lower.mass() + low <= ONE
    elapsed = time.monotonic() - started
    assert elapsed < 60.0
    print(f"C2 PASS: 500 random terms conserved mass in {elapsed:.1f}s")


def test_c3_big_step_agrees_with_small_step():
    # stabilized corpus terms: exact equality at matching fuel
    for text, t in _bundled("terminating.l"):
        for strategy in sorted(STRATEGIES):
            small = approximate(t, strategy, 50)
            assert small.residual == ZERO, text
            big_fuel = 1
            while big_fuel <= 400:
                big = eval_big(t, strategy, big_fuel)
                if big == small.lower:
                    break
                big_fuel *= 2
            else:
                raise AssertionError(f"no matching big-step fuel for {text}")
    # random corpus: doubling the fuel always dominates
    for t in _random_corpus():
        for strategy in sorted(STRATEGIES):
            assert approximate(t, strategy, 12).lower.leq(eval_big(t, strategy, 24))
    print("C3 PASS: big-step matches small-step, zero tolerance")


def test_c4_continuation_translations_simulate_both_directions():
    started = time.monotonic()
    outcomes = run_simulation_suite(_bundled("terminating.l"), fuel=500)
    assert all(o.passed for o in outcomes)
    assert all(o.status == "PASS" for o in outcomes)

    for _, t in _bundled("diverging.l"):
        for fuel in (0, 1, 4, 16, 64, 128):
            assert check_simulation_v_by_n(t, fuel).status != "FAIL"
            assert check_simulation_n_by_v(t, fuel).status != "FAIL"
    elapsed = time.monotonic() - started
    assert elapsed < 120.0
    print(f"C4 PASS: simulations exact or bracket-consistent in {elapsed:.1f}s")


def test_c5_translated_terms_administratively_reduce_to_their_colon_form():
    rng = random.Random(SEED)
    for _ in range(100):
        m = random_term(rng, 15)
        k = random_value(rng, 10)
        bound = 10 * size(m)
        steps = deterministic_steps_to(
            App(cps_v_to_n(m), k), colon_v(m, k), CBN, bound
        )
        assert steps is not None and steps <= bound
        steps = deterministic_steps_to(
            App(cps_n_to_v(m), k), colon_n(m, k), CBV, bound
        )
        assert steps is not None and steps <= bound
    print("C5 PASS: 100 random translation pairs reach their colon form")


def test_c6_recursion_and_tree_encodings_behave_exactly():
    # the loop head unfolds in exactly two deterministic steps
    rng = random.Random(SEED)
    for _ in range(50):
        v = random_value(rng, 12)
        first = step(App(H, v), CBV)
        second = step(first[0], CBV)
        assert len(first) == 1 and len(second) == 1
        assert second[0] == App(v, Abs("z", App(App(H, v), Var("z"))))

    # tree runner recovers the denoted distribution exactly
    for _ in range(100):
        tree = random_fdt(rng, 6)
        bracket = run_mfdt(tree, 2000)
        assert bracket.residual == ZERO
        assert bracket.lower == pd(tree)

    # geometric program: first eight outcomes, exact masses and residual
    bracket = approximate(GEO, CBV, 80)
    assert bracket.lower == SubDist(
        {encode_nat(n): Dyadic(1, n + 1) for n in range(8)}
    )
    assert bracket.residual == Dyadic(1, 8)
    print("C6 PASS: loop unfolding, tree recovery, geometric prefix all exact")


def test_c7_oracle_pipelines_round_trip():
    # building a term from the geometric oracle: guaranteed mass reached
    term, guarantee = completeness_approx(geometric_oracle(), rounds=5)
    assert guarantee == ONE - Dyadic(1, 5)
    bracket = approximate(term, CBV, 400)
    assert bracket.lower.mass() >= Dyadic(31, 5)
    for v, m in bracket.lower.items():
        a = decode_nat(v)
        assert a is not None
        assert m.as_fraction() <= Fraction(1, 2 ** (a + 1))

    # reading digits back from built terms: three digits, exact
    finite_dists = [
        {0: HALF, 1: HALF},
        {0: HALF, 1: Dyadic(1, 2), 2: Dyadic(1, 2)},
        {3: ONE},
        {0: Dyadic(1, 3), 1: Dyadic(1, 3), 2: Dyadic(1, 3), 5: Dyadic(5, 3)},
    ]
    for d in finite_dists:
        oracle = oracle_from_dyadics(d)
        t = App(MFDT, fdt_from_dist(d))
        for a in list(d) + [max(d) + 1]:
            assert soundness_approx(t, a, 3) == oracle.approx(a, 3)
    print("C7 PASS: completeness mass bound and 3-digit soundness round-trip")


def test_c8_sampler_matches_the_exact_semantics():
    started = time.monotonic()
    geo = estimate(GEO, CBV, 100_000, 2000, SEED)
    assert geo.timeouts == 0
    for n in range(8):
        p = Fraction(1, 2 ** (n + 1))
        assert _within_4_sigma(geo.frequency(encode_nat(n)), p, geo.samples)

    mixed = estimate(parse("OMEGA (+) \\x. x"), CBN, 2000, 200, 7)
    assert _within_4_sigma(mixed.timeout_rate, Fraction(1, 2), mixed.samples)
    elapsed = time.monotonic() - started
    assert elapsed < 30.0
    print(f"C8 PASS: sampled frequencies within 4 sigma in {elapsed:.1f}s")
