"""Deterministic random multicurves shared by the test suites.

Three sources are mixed:

* rejection sampling of raw weight vectors (small surfaces only),
* non-negative combinations of short curves pushed through random flips,
* single short curves pushed through random flips and small twists. These
  are connected by construction.
"""

import random
from dataclasses import dataclass
from functools import lru_cache

from hypothesis import assume
from hypothesis import strategies as st

from twistflip.classify import vertex_links
from twistflip.coords import flip_value
from twistflip.generate import short_curves
from twistflip.surfaces import example_surface
from twistflip.twist import is_isolating, standardize, twist_power

SURFACE_NAMES = ("S1_1", "S0_4", "S1_2", "S2_1")


@dataclass(frozen=True)
class Case:
    surface: str
    triangulation: object
    weights: tuple
    connected: object  # True when connected by construction, else None
    origin: str


def admissible(T, w):
    for tri in T.triangles:
        a, b, c = (w[x if x >= 0 else ~x] for x in tri)
        if (a + b + c) % 2 or a > b + c or b > a + c or c > a + b:
            return False
    return all(x >= 0 for x in w)


@lru_cache(maxsize=None)
def _short(name):
    T = example_surface(name)
    curves = short_curves(T)
    twistable = []
    for c in curves:
        if is_isolating(T, c):
            continue
        twistable.append((c, standardize(T, c)))
    return T, tuple(curves), tuple(vertex_links(T)), tuple(twistable)


def _random_flips(rng, T, w, count):
    w = list(w)
    for _ in range(count):
        e = rng.choice(T.flippable_edges())
        w[e] = flip_value(T, w, e)
        T = T.flip(e)
    return T, w


def rejection_sample(rng, name, max_total):
    T = example_surface(name)
    bound = max_total // T.zeta
    while True:
        w = [rng.randint(0, bound) for _ in range(T.zeta)]
        if admissible(T, w) and sum(w) <= max_total:
            return Case(name, T, tuple(w), None, "rejection")


def combination(rng, name, max_total):
    T0, curves, links, _ = _short(name)
    while True:
        w = [0] * T0.zeta
        pool = list(curves) + list(links)
        for c in rng.sample(pool, rng.randint(1, 3)):
            m = rng.randint(1, 40)
            w = [x + m * y for x, y in zip(w, c)]
        T, w = _random_flips(rng, T0, w, rng.randint(0, 30))
        if 0 < sum(w) <= max_total:
            return Case(name, T, tuple(w), None, "combination")


def curve_image(rng, name, max_total):
    T0, curves, _, twistable = _short(name)
    while True:
        w = list(rng.choice(curves))
        for _ in range(rng.randint(0, 3)):
            delta, std = rng.choice(twistable)
            k = rng.randint(-6, 6)
            w = list(twist_power(T0, w, delta, k, standardization=std).weights)
        T, w = _random_flips(rng, T0, w, rng.randint(0, 40))
        if sum(w) <= max_total:
            return Case(name, T, tuple(w), True, "image")


@lru_cache(maxsize=None)
def corpus(n=10_000, seed=2024, max_total=5000):
    """``n`` cases spread evenly over the four surfaces."""
    rng = random.Random(seed)
    out = []
    for i in range(n):
        name = SURFACE_NAMES[i % len(SURFACE_NAMES)]
        r = rng.random()
        if name in ("S1_1", "S0_4") and r < 0.25:
            out.append(rejection_sample(rng, name, max_total))
        elif r < 0.6:
            out.append(combination(rng, name, max_total))
        else:
            out.append(curve_image(rng, name, max_total))
    return tuple(out)


# -- hypothesis strategies ---------------------------------------------------


@st.composite
def multicurves(draw, surfaces=SURFACE_NAMES, max_total=5000, flips=30):
    """``(T, weights)`` with ``T`` a random flip of a catalogue surface."""
    name = draw(st.sampled_from(surfaces))
    T0, curves, links, _ = _short(name)
    pool = list(curves) + list(links)
    picks = draw(st.lists(st.tuples(st.sampled_from(pool), st.integers(1, 30)), min_size=1, max_size=3))
    w = [0] * T0.zeta
    for c, m in picks:
        w = [x + m * y for x, y in zip(w, c)]
    T = T0
    for _ in range(draw(st.integers(0, flips))):
        e = draw(st.sampled_from(T.flippable_edges()))
        w[e] = flip_value(T, w, e)
        T = T.flip(e)
    assume(sum(w) <= max_total)
    return T, tuple(w)


@st.composite
def triangulations(draw, surfaces=SURFACE_NAMES, flips=30):
    T = example_surface(draw(st.sampled_from(surfaces)))
    for _ in range(draw(st.integers(0, flips))):
        T = T.flip(draw(st.sampled_from(T.flippable_edges())))
    return T
