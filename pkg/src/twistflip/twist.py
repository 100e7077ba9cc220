"""Dehn twists acting on normal coordinates.

A twist curve is first flipped into *standard position*: it crosses exactly
two edges once each, and the two triangles it passes through form an annulus
around it. In that position a single twist is one flip of an annulus edge
followed by a swap of edge labels that returns to the same triangle list.
The flip formula is therefore the only arithmetic used.

Powers are computed by running unit steps until the weight vector moves by
a constant increment, then jumping ahead along that line as far as a single
branch of the flip formula provably stays in force. Every jump is also
checked by undoing one step from where it lands.
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from .coords import MultiCurve, flip_value
from .errors import NullHomotopic, StandardizationFailed
from .oracle import oracle_realize
from .surface import label

__all__ = [
    "Annulus",
    "DisjointComponent",
    "TwistCurve",
    "TwistMove",
    "TwistStandardization",
    "build_twist_curve",
    "select_power",
    "standardize",
    "is_isolating",
    "tighten",
    "twist_power",
    "unit_twist_step",
]


@dataclass(frozen=True)
class TwistCurve:
    delta: MultiCurve
    provenance: tuple = ()

    @property
    def weights(self):
        return self.delta.weights


@dataclass(frozen=True)
class DisjointComponent:
    """A block that closes up on itself: ``multiplicity`` parallel copies of ``delta``."""

    delta: MultiCurve
    multiplicity: int


@dataclass(frozen=True)
class TwistMove:
    delta: tuple
    power: int

    @property
    def length(self):
        return twist_length(sum(self.delta), self.power)


def twist_length(delta_total, power):
    """Flip-twist graph length ``ceil(log2(i(delta, T) + |k|))``."""
    n = delta_total + abs(power)
    return (n - 1).bit_length() if n > 1 else 0


# -- building the twist curve ------------------------------------------------


def tighten(path):
    """Cancel backtracks ``(e, s), (e, -s)`` in a cyclic crossing sequence."""
    out = []
    for step in path:
        if out and out[-1] == (step[0], -step[1]):
            out.pop()
        else:
            out.append(step)
    while len(out) >= 2 and out[0] == (out[-1][0], -out[-1][1]):
        out.pop(0)
        out.pop()
    return out


def _cyclic_match(a, b):
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = b + b
    n = len(a)
    if any(doubled[i:i + n] == a for i in range(n)):
        return True
    rev = [(e, -s) for e, s in reversed(b)]
    doubled = rev + rev
    return any(doubled[i:i + n] == a for i in range(n))


def _single_realization(T, weights, path):
    real = oracle_realize(T, weights)
    comps = real.components()
    if len(comps) != 1:
        return False
    return _cyclic_match(list(path), [(e, s) for e, _, s in comps[0]])


def _copies_in_class(T, weights, edge, side, types):
    from .tracer import block_partition

    part = block_partition(T, weights, edge, side, len(types) - 1)
    return sum(b.width for b in part.blocks if b.types == types)


def build_twist_curve(T, gamma, chain, j, block_width=1):
    """Loop following ``chain`` from ``p_0`` to ``p_j``, closed along e_max.

    Returns :class:`DisjointComponent` when ``p_j == p_0``; then ``delta`` is a
    component of ``gamma`` and its multiplicity is read off the block width.
    Raises :class:`NullHomotopic` if the loop tightens to nothing and
    ``ValueError`` if it is not a simple closed curve.
    """
    points = chain.points
    if points[j].type != points[0].type:
        raise ValueError("p_j and p_0 have different types")
    path = tighten([p.type for p in points[:j]])
    if not path:
        raise NullHomotopic("loop tightens to a point")
    weights = [0] * T.zeta
    for e, _ in path:
        weights[e] += 1
    try:
        delta = MultiCurve.validated(T, weights)
    except ValueError:
        raise ValueError("loop is not admissible") from None
    if not _single_realization(T, weights, path):
        raise ValueError("loop is not a simple closed curve")
    if points[j] == points[0]:
        types = chain.types
        per_copy = _copies_in_class(T, weights, points[0].edge, points[0].side, types)
        if per_copy == 0 or block_width % per_copy:
            raise ValueError("block width is not a whole number of copies")
        return DisjointComponent(delta, block_width // per_copy)
    return TwistCurve(delta, tuple(points[: j + 1]))


# -- standard position -------------------------------------------------------


@dataclass(frozen=True)
class Annulus:
    """Two triangles forming an annulus around a weight-two curve.

    Direction +1 flips the annulus edge whose partner occupies sides ``s1``
    and ``s3`` of its square; on the catalogue torus it sends the homology
    class ``x`` to ``x + <x, a> a`` with ``<u, v> = u_x v_y - u_y v_x``.

    ``steps[d]`` for ``d = +1 / -1`` is ``(edge to flip, relabel)`` where
    ``relabel[new label] = (old label, sign)`` maps the flipped triangle list
    back onto the standard one.
    """

    triangulation: object
    edges: tuple
    steps: dict = field(hash=False, compare=False)


@dataclass(frozen=True)
class TwistStandardization:
    flips: tuple
    path: tuple = field(repr=False)  # triangulations T_0 .. T_n
    annulus: Annulus = field(repr=False)

    @property
    def triangulation(self):
        return self.path[-1]

    def push(self, weights):
        w = list(weights)
        for T, e in zip(self.path, self.flips):
            w[e] = flip_value(T, w, e)
        return w

    def pull(self, weights):
        w = list(weights)
        for T, e in zip(reversed(self.path[1:]), reversed(self.flips)):
            w[e] = flip_value(T, w, e)
        return w


def _find_relabel(T_std, T_flipped, a, b):
    target = T_std.key()
    for (la, lb), (sa, sb) in product(((a, b), (b, a)), product((1, -1), repeat=2)):
        mapping = {a: la if sa > 0 else ~la, b: lb if sb > 0 else ~lb}
        if mapping == {a: a, b: b}:
            continue
        if T_flipped.relabel(mapping).key() == target:
            return {a: (la, sa), b: (lb, sb)}
    return None


def _annulus(T, w):
    heavy = [e for e, x in enumerate(w) if x]
    if sorted(w[e] for e in heavy) != [1, 1]:
        return None
    a, b = heavy
    if not (T.is_flippable(a) and T.is_flippable(b)):
        return None
    s1, s2, s3, s4 = T.square_frame(a).sides
    if {label(s1), label(s3)} == {b}:
        order = ((1, a), (-1, b))
    elif {label(s2), label(s4)} == {b}:
        # mirror image: flipping a twists the other way
        order = ((1, b), (-1, a))
    else:
        return None  # the curve encircles a puncture
    steps = {}
    for direction, pivot in order:
        relabel = _find_relabel(T, T.flip(pivot), a, b)
        if relabel is None:
            return None
        steps[direction] = (pivot, relabel)
    return Annulus(T, (a, b), steps)


def _greedy_step(T, w):
    best = None
    for e in T.flippable_edges():
        new = flip_value(T, w, e)
        if new < w[e] and (best is None or new - w[e] < best[1]):
            best = (e, new - w[e])
    return best


def _ball_search(T, w, radius, max_nodes):
    """Shortest flip path to a lighter position or an annulus, within ``radius``."""
    total = sum(w)
    start = (T, tuple(w))
    seen = {(T.key(), start[1])}
    queue = deque([(T, tuple(w), ())])
    while queue:
        S, x, path = queue.popleft()
        if len(path) >= radius:
            continue
        for e in S.flippable_edges():
            y = list(x)
            y[e] = flip_value(S, x, e)
            S2 = S.flip(e)
            key = (S2.key(), tuple(y))
            if key in seen:
                continue
            seen.add(key)
            if sum(y) < total or (sum(y) == 2 and _annulus(S2, y)):
                return path + (e,)
            if len(seen) > max_nodes:
                return None
            queue.append((S2, tuple(y), path + (e,)))
    return None


def is_isolating(T, delta):
    """True when one side of ``delta`` holds no puncture.

    Then every edge has both ends on the other side, so the algebraic
    intersection with every edge vanishes; the converse holds because the
    edges span relative homology.
    """
    w = tuple(delta.weights if hasattr(delta, "weights") else delta)
    real = oracle_realize(T, w)
    signed = [0] * T.zeta
    for cycle in real.components():
        for e, _, side in cycle:
            signed[e] += side
    return not any(signed)


def standardize(T, delta, radius=6, max_nodes=200_000):
    """Flip ``delta`` into an annulus of two triangles.

    Raises :class:`StandardizationFailed` for curves with a puncture-free side,
    which never meet two edges once each, and when the bounded search gives up.
    """
    w = list(delta.weights if hasattr(delta, "weights") else delta)
    if sum(w) < 2:
        raise StandardizationFailed("twist curve must have total weight at least 2", T, w)
    if is_isolating(T, w):
        raise StandardizationFailed("one side of the twist curve holds no puncture", T, w)
    path = [T]
    flips = []
    while True:
        S = path[-1]
        if sum(w) == 2:
            annulus = _annulus(S, w)
            if annulus is not None:
                return TwistStandardization(tuple(flips), tuple(path), annulus)
        step = _greedy_step(S, w)
        if step is not None:
            moves = (step[0],)
        else:
            moves = _ball_search(S, w, radius, max_nodes)
            if moves is None:
                raise StandardizationFailed(
                    f"no standard position within {radius} flips of total weight {sum(w)}", S, tuple(w)
                )
        for e in moves:
            S = path[-1]
            w[e] = flip_value(S, w, e)
            path.append(S.flip(e))
            flips.append(e)


# -- unit steps and powers ---------------------------------------------------


def unit_twist_step(annulus, weights, direction):
    """One twist in standard position: flip, then restore the annulus labels."""
    pivot, relabel = annulus.steps[1 if direction > 0 else -1]
    w = list(weights)
    w[pivot] = flip_value(annulus.triangulation, w, pivot)
    out = list(w)
    for new, (old, _) in relabel.items():
        out[old] = w[new]
    return out


def _admissible(T, w):
    if any(x < 0 for x in w):
        return False
    for tri in T.triangles:
        a, b, c = (w[label(x)] for x in tri)
        if (a + b + c) % 2 or a > b + c or b > a + c or c > a + b:
            return False
    return True


def _switch(annulus, direction):
    """Linear form whose sign picks the branch of the flip formula for one step."""
    pivot, _ = annulus.steps[direction]
    s1, s2, s3, s4 = (label(x) for x in annulus.triangulation.square_frame(pivot).sides)
    return lambda x: x[s1] + x[s3] - x[s2] - x[s4]


def _straight_run(g, q1, q2, d, remaining):
    """Steps that can be skipped from ``q2 + d``, or 0.

    One step ``F`` is affine on each closed side of ``g = 0``. If ``q1`` and
    ``q2 = q1 + d`` share a side and ``F(q2) = q2 + d`` then ``F`` fixes ``d``
    on that side, so ``F(q2 + t d) = q2 + (t + 1) d`` while ``q2 + t d`` stays
    there; ``g`` is linear in ``t``, which bounds the run exactly.
    """
    g1, g2, gd = g(q1), g(q2), g(d)
    for sigma in (1, -1):
        if sigma * g1 >= 0 and sigma * g2 >= 0:
            break
    else:
        return 0
    if sigma * gd >= 0:
        return remaining
    last = (sigma * g2) // (-sigma * gd)  # q2 + t d stays on the side for t <= last
    return max(0, min(remaining, last - 1))


def _iterate(annulus, w, steps, direction):
    """``steps`` unit twists, jumping once three equal differences are seen."""
    T = annulus.triangulation
    g = _switch(annulus, direction)
    history = [list(w)]
    remaining = steps
    while remaining > 0:
        if len(history) >= 4:
            q0, q1, q2, q3 = history[-4:]
            d = [x - y for x, y in zip(q3, q2)]
            if d == [x - y for x, y in zip(q2, q1)] == [x - y for x, y in zip(q1, q0)]:
                jump = _straight_run(g, q1, q2, d, remaining)
                if jump > 1:
                    cand = [x + jump * dx for x, dx in zip(q3, d)]
                    back = unit_twist_step(annulus, cand, -direction)
                    if _admissible(T, cand) and back == [x - dx for x, dx in zip(cand, d)]:
                        remaining -= jump
                        history = [cand]
                        continue
        history.append(unit_twist_step(annulus, history[-1], direction))
        history = history[-4:]
        remaining -= 1
    return history[-1]


def twist_power(T, gamma, delta, k, standardization=None):
    """Coordinates of ``gamma`` after ``k`` twists along ``delta`` (``T`` stays fixed)."""
    weights = gamma.weights if hasattr(gamma, "weights") else tuple(gamma)
    if k == 0:
        return MultiCurve(T, weights)
    std = standardization or standardize(T, delta)
    w = std.push(weights)
    w = _iterate(std.annulus, w, abs(k), 1 if k > 0 else -1)
    return MultiCurve(T, std.pull(w))


def select_power(T, gamma, delta, bound=None, standardization=None):
    """Power minimising the total weight over ``|k| <= bound``; 0 if nothing beats k = 0.

    Assumes the total is unimodal along the twist orbit: bracket by doubling,
    then ternary search inside the bracket.
    """
    weights = gamma.weights if hasattr(gamma, "weights") else tuple(gamma)
    if bound is None:
        bound = sum(weights)
    if bound <= 0:
        return 0
    std = standardization or standardize(T, delta)
    pushed = std.push(weights)
    annulus = std.annulus
    cache = {}

    def f(k):
        if k not in cache:
            if k == 0:
                cache[k] = sum(weights)
            else:
                cache[k] = sum(std.pull(_iterate(annulus, pushed, abs(k), 1 if k > 0 else -1)))
        return cache[k]

    base = f(0)
    if f(1) < base:
        sgn = 1
    elif f(-1) < base:
        sgn = -1
    else:
        return 0
    lo, hi = 0, 1
    while hi < bound and f(sgn * min(2 * hi, bound)) < f(sgn * hi):
        lo, hi = hi, min(2 * hi, bound)
    hi = min(2 * hi, bound)
    # minimum of a unimodal function on [lo, hi]
    while hi - lo > 2:
        m1 = lo + (hi - lo) // 3
        m2 = hi - (hi - lo) // 3
        if f(sgn * m1) <= f(sgn * m2):
            hi = m2
        else:
            lo = m1
    best = min(range(lo, hi + 1), key=lambda k: (f(sgn * k), k))
    return sgn * best if f(sgn * best) < base else 0


