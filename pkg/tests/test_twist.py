import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from twistflip import (
    Chain,
    CrossPoint,
    DisjointComponent,
    MultiCurve,
    NullHomotopic,
    StandardizationFailed,
    TwistCurve,
    build_twist_curve,
    example_surface,
    oracle_realize,
    select_power,
    standardize,
    twist_power,
    unit_twist_step,
)
from twistflip.generate import short_curves
from twistflip.simplify import twist_candidates
from twistflip.twist import is_isolating, tighten, twist_length

import farey
from corpus import SURFACE_NAMES, _short

TORUS = example_surface("S1_1")
DELTA_0 = farey.weights(*farey.SLOPE_0)  # (0, 1, 1)
DELTA_INF = farey.weights(*farey.SLOPE_INF)  # (1, 0, 1)


def test_homology_weights_are_realised_by_single_curves():
    for x in range(-6, 7):
        for y in range(0, 7):
            if (x, y) == (0, 0) or gcd(x, y) != 1:
                continue
            real = oracle_realize(TORUS, farey.weights(x, y))
            assert len(real.components()) == 1


# -- building twist curves ----------------------------------------------------


@pytest.mark.parametrize("k", [3, 5, 8, 13, 20])
def test_slope_blocks_give_short_twist_curves(k):
    gamma = (k, 1, k + 1)
    cands = list(twist_candidates(TORUS, gamma))
    assert cands
    for cand in cands:
        assert isinstance(cand, TwistCurve)
        assert max(cand.weights) <= 2 and sum(cand.weights) <= 6
        assert len(oracle_realize(TORUS, cand.weights).components()) == 1
    best = cands[0]
    k_best = select_power(TORUS, gamma, best.weights)
    assert twist_power(TORUS, gamma, best.weights, k_best).total <= 6


@pytest.mark.parametrize("m", [2, 3, 17, 2**40])
def test_parallel_copies_give_a_disjoint_component(m):
    T = TORUS.flip(2)
    gamma = tuple(m * x for x in (1, 1, 0))
    cand = next(iter(twist_candidates(T, gamma)))
    assert isinstance(cand, DisjointComponent)
    assert cand.delta.weights == (1, 1, 0) and cand.multiplicity == m


def test_backtracking_loop_is_null_homotopic():
    pts = (CrossPoint(2, 0, 1), CrossPoint(2, 0, -1), CrossPoint(2, 0, 1))
    with pytest.raises(NullHomotopic):
        build_twist_curve(TORUS, (1, 1, 2), Chain(pts), 2)
    assert tighten([(0, 1), (1, 1), (1, -1), (0, -1)]) == []
    assert tighten([(0, 1), (1, 1), (0, -1)]) == [(1, 1)]


# -- standard position ---------------------------------------------------------


def test_standardize_examples():
    assert standardize(TORUS, DELTA_0).flips == ()
    std = standardize(TORUS, (1, 1, 2))
    assert len(std.flips) <= 2
    assert sum(std.push((1, 1, 2))) == 2
    S = example_surface("S0_4")
    for c in short_curves(S):
        try:
            std = standardize(S, c)
        except StandardizationFailed:
            continue
        assert len(std.flips) <= 6 and sum(std.push(c)) == 2
        assert tuple(std.pull(std.push(c))) == c


def test_curves_with_an_empty_side_are_refused():
    S = example_surface("S1_2")
    isolating = [c for c in short_curves(S) if is_isolating(S, c)]
    assert isolating
    with pytest.raises(StandardizationFailed):
        standardize(S, isolating[0])


def test_unit_step_examples():
    std = standardize(TORUS, DELTA_0)
    a = std.annulus
    gamma = DELTA_INF
    up, down = unit_twist_step(a, gamma, 1), unit_twist_step(a, gamma, -1)
    assert tuple(up) == farey.weights(*farey.twist(farey.SLOPE_INF, farey.SLOPE_0, 1))
    assert tuple(down) == farey.weights(*farey.twist(farey.SLOPE_INF, farey.SLOPE_0, -1))
    assert {tuple(up), tuple(down)} == {(1, 1, 2), (1, 1, 0)}
    assert unit_twist_step(a, unit_twist_step(a, gamma, 1), -1) == list(gamma)
    # a disjoint curve does not move
    assert unit_twist_step(a, DELTA_0, 1) == list(DELTA_0)


# -- powers --------------------------------------------------------------------


@pytest.mark.parametrize("k", [0, 1, -1, 7, -300, 2**32 + 5, -(2**64), 2**64])
def test_twist_power_matches_homology(k):
    got = twist_power(TORUS, DELTA_INF, DELTA_0, k).weights
    assert got == farey.weights(*farey.twist(farey.SLOPE_INF, farey.SLOPE_0, k))
    if k > 0:
        assert got == (1, k, k + 1)


def test_disjoint_curves_are_fixed():
    for k in (1, -5, 2**64):
        assert twist_power(TORUS, (3, 0, 3), DELTA_INF, k).weights == (3, 0, 3)


def test_select_power_examples():
    k = 2**40
    gamma = (1, k, k + 1)
    best = select_power(TORUS, gamma, DELTA_0)
    assert abs(best) == k
    assert twist_power(TORUS, gamma, DELTA_0, best).weights == DELTA_INF
    assert select_power(TORUS, (0, 2, 2), DELTA_0) == 0
    assert select_power(TORUS, DELTA_INF, DELTA_0) == 0


def test_twist_length():
    assert twist_length(2, 2**40) == 41
    assert twist_length(2, 6) == 3
    assert twist_length(2, 0) == 1


# -- properties ----------------------------------------------------------------


def _random_state(rng, name, scale):
    T, curves, _, twistable = _short(name)
    w = [0] * T.zeta
    for c in rng.sample(list(curves), 2):
        m = rng.randint(1, scale)
        w = [x + m * y for x, y in zip(w, c)]
    delta, std = rng.choice(twistable)
    w = list(twist_power(T, w, delta, rng.randint(-40, 40), standardization=std).weights)
    delta, std = rng.choice(twistable)
    return T, w, delta, std


@given(st.sampled_from(SURFACE_NAMES), st.integers(0, 2**32), st.integers(-200, 200), st.integers(-200, 200))
def test_group_action(name, seed, a, b):
    T, w, delta, std = _random_state(random.Random(seed), name, 10**4)
    ab = twist_power(T, w, delta, a + b, standardization=std).weights
    stepwise = twist_power(T, twist_power(T, w, delta, a, standardization=std), delta, b, standardization=std)
    assert stepwise.weights == ab


@given(st.sampled_from(SURFACE_NAMES), st.integers(0, 2**32), st.integers(-(2**64), 2**64))
def test_inverse_power(name, seed, k):
    T, w, delta, std = _random_state(random.Random(seed), name, 10**6)
    there = twist_power(T, w, delta, k, standardization=std)
    MultiCurve.validated(T, there.weights)
    assert twist_power(T, there, delta, -k, standardization=std).weights == tuple(w)


def test_fast_path_equals_literal_steps():
    rng = random.Random(99)
    for n in range(1000):
        T, w, delta, std = _random_state(rng, SURFACE_NAMES[n % 4], 10 ** rng.randint(1, 5))
        k = rng.randint(-64, 64)
        x = std.push(w)
        for _ in range(abs(k)):
            x = unit_twist_step(std.annulus, x, 1 if k > 0 else -1)
        assert twist_power(T, w, delta, k, standardization=std).weights == tuple(std.pull(x))


def test_increments_become_constant_multiples_of_the_twist_curve():
    rng = random.Random(3)
    for n in range(200):
        T, w, delta, std = _random_state(rng, SURFACE_NAMES[n % 4], 50)
        for d in (1, -1):
            seq = [twist_power(T, w, delta, d * k, standardization=std).weights for k in range(200, 206)]
            diffs = {tuple(b - a for a, b in zip(p, q)) for p, q in zip(seq, seq[1:])}
            assert len(diffs) == 1
            (inc,) = diffs
            ratios = {i // c for i, c in zip(inc, delta) if c}
            assert all(i >= 0 for i in inc) and len(ratios) == 1
            assert all(i == 0 for i, c in zip(inc, delta) if not c)
            assert tuple(next(iter(ratios)) * c for c in delta) == inc


@settings(max_examples=40)
@given(st.sampled_from(SURFACE_NAMES), st.integers(0, 2**32))
def test_select_power_agrees_with_a_scan(name, seed):
    T, w, delta, std = _random_state(random.Random(seed), name, 20)
    totals = {k: twist_power(T, w, delta, k, standardization=std).total for k in range(-200, 201)}
    k = select_power(T, w, delta, bound=200, standardization=std)
    best = min(totals.values())
    if best < totals[0]:
        assert totals[k] == best
    else:
        assert k == 0


def test_late_stabilisation_is_handled():
    # differences can take dozens of steps to settle; jumps must not start early
    rng = random.Random(8)
    latest = 0
    for n in range(100):
        T, w, delta, std = _random_state(rng, SURFACE_NAMES[n % 4], 10**6)
        x = std.push(w)
        seq = [x]
        for _ in range(120):
            seq.append(unit_twist_step(std.annulus, seq[-1], 1))
        diffs = [tuple(b - a for a, b in zip(p, q)) for p, q in zip(seq, seq[1:])]
        settled = next(i for i in range(len(diffs)) if len(set(diffs[i:])) == 1)
        latest = max(latest, settled)
        for k in (3, 10, 40, 119):
            assert twist_power(T, w, delta, k, standardization=std).weights == tuple(std.pull(seq[k]))
    assert latest > 3
