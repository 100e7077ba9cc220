"""Random hard instances built from random flips and large twist powers."""

import random
from dataclasses import dataclass, field
from itertools import product

from .coords import MultiCurve, flip_value
from .errors import StandardizationFailed
from .oracle import oracle_realize
from .classify import vertex_links
from .surfaces import example_surface
from .twist import standardize, twist_power

__all__ = ["Instance", "PRNG_NAME", "random_instance", "short_curves"]

PRNG_NAME = "MT19937 (Python random.Random)"


def _admissible(T, w):
    for tri in T.triangles:
        a, b, c = (w[x if x >= 0 else ~x] for x in tri)
        if (a + b + c) % 2 or a > b + c or b > a + c or c > a + b:
            return False
    return True


def short_curves(T, max_weight=2):
    """Connected non-peripheral curves with every edge weight at most ``max_weight``."""
    links = set(vertex_links(T))
    out = []
    for w in product(range(max_weight + 1), repeat=T.zeta):
        if not any(w) or w in links or not _admissible(T, w):
            continue
        if len(oracle_realize(T, w).components()) == 1:
            out.append(w)
    return out


@dataclass
class Instance:
    triangulation: object
    curve: MultiCurve
    seed_curve: tuple
    provenance: dict = field(default_factory=dict)


def random_instance(surface="S2_1", seed=0, moves=50, max_power=2**30, twist_probability=0.5):
    """Push a short seed curve through ``moves`` random flips and twist powers.

    Twist curves are short curves of the current triangulation that admit a
    standard annulus; ``|k|`` is drawn uniformly from ``1 .. max_power``.
    """
    rng = random.Random(seed)
    T = example_surface(surface) if isinstance(surface, str) else surface
    catalogue = {}

    def curves_of(S):
        key = S.key()
        if key not in catalogue:
            catalogue[key] = short_curves(S)
        return catalogue[key]

    seed_curve = rng.choice(curves_of(T))
    w = list(seed_curve)
    recipe = []
    for _ in range(moves):
        if rng.random() < twist_probability:
            options = curves_of(T)
            for delta in rng.sample(options, len(options)):
                try:
                    std = standardize(T, delta)
                except StandardizationFailed:
                    continue
                k = rng.randint(1, max_power) * rng.choice((1, -1))
                w = list(twist_power(T, w, delta, k, standardization=std).weights)
                recipe.append({"twist": list(delta), "power": str(k)})
                break
        else:
            e = rng.choice(T.flippable_edges())
            w[e] = flip_value(T, w, e)
            T = T.flip(e)
            recipe.append({"flip": e})
    provenance = {
        "prng": PRNG_NAME,
        "seed": seed,
        "surface": surface if isinstance(surface, str) else None,
        "moves": moves,
        "max_power": str(max_power),
        "seed_curve": list(seed_curve),
        "recipe": recipe,
    }
    return Instance(T, MultiCurve.validated(T, w), tuple(seed_curve), provenance)
