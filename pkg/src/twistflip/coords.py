"""Multicurves in normal coordinates.

A multicurve is stored as its vector of edge weights ``w[e] = i(gamma, e)``.
Inside a triangle with side weights ``(w0, w1, w2)`` the corner coordinate at
the end of side ``i`` counts the arcs cutting that corner::

    x_i = (w_i + w_{i+1} - w_{i+2}) / 2

and admissibility means every corner coordinate is a non-negative integer.
All arithmetic is on Python ints, so weights of any bit-size are exact.
"""

from .errors import InadmissibleResult, MultiCurveError, ParityViolation, TriangleInequalityViolation
from .surface import label

__all__ = [
    "MultiCurve",
    "add_scaled",
    "corner_coordinates",
    "flip_value",
    "flip_weights",
    "format_curve",
    "is_simple",
    "parse_curve",
    "subtract_scaled",
    "total_intersection",
    "validate_multicurve",
]


def _triangle_corners(T, w, t):
    a, b, c = (w[label(x)] for x in T.triangles[t])
    return ((a + b - c) // 2, (b + c - a) // 2, (c + a - b) // 2)


def _check_triangle(T, w, t):
    a, b, c = (w[label(x)] for x in T.triangles[t])
    if (a + b + c) % 2:
        raise ParityViolation(f"triangle {t} has odd weight sum {a} + {b} + {c}", triangle=t)
    if a > b + c or b > a + c or c > a + b:
        raise TriangleInequalityViolation(f"triangle {t} violates the triangle inequality with sides {a}, {b}, {c}", triangle=t)


def corner_coordinates(T, weights):
    """Corner coordinates per triangle; entry ``i`` sits at the end of side ``i``."""
    return [_triangle_corners(T, weights, t) for t in range(T.num_triangles)]


def flip_value(T, w, e):
    """New weight of the diagonal after flipping ``e`` (raises NotFlippable)."""
    s1, s2, s3, s4 = T.square_frame(e).sides
    return max(w[label(s1)] + w[label(s3)], w[label(s2)] + w[label(s4)]) - w[e]


class MultiCurve:
    """A validated weight vector on a fixed triangulation."""

    __slots__ = ("triangulation", "weights", "_corners")

    def __init__(self, triangulation, weights, corners=None):
        self.triangulation = triangulation
        self.weights = tuple(weights)
        self._corners = corners

    @classmethod
    def validated(cls, triangulation, weights):
        weights = tuple(int(x) for x in weights)
        if len(weights) != triangulation.zeta:
            raise MultiCurveError(f"expected {triangulation.zeta} weights, got {len(weights)}")
        for e, x in enumerate(weights):
            if x < 0:
                raise MultiCurveError(f"weight of edge {e} is negative")
        for t in range(triangulation.num_triangles):
            _check_triangle(triangulation, weights, t)
        return cls(triangulation, weights)

    def __repr__(self):
        return f"MultiCurve({list(self.weights)})"

    def __eq__(self, other):
        return isinstance(other, MultiCurve) and self.weights == other.weights and self.triangulation == other.triangulation

    def __hash__(self):
        return hash(self.weights)

    def __getitem__(self, e):
        return self.weights[e]

    @property
    def corners(self):
        if self._corners is None:
            self._corners = corner_coordinates(self.triangulation, self.weights)
        return self._corners

    @property
    def total(self):
        return sum(self.weights)

    @property
    def zeta(self):
        return self.triangulation.zeta

    @property
    def is_simple(self):
        return self.total <= 2 * self.zeta

    @property
    def is_empty(self):
        return not any(self.weights)

    def max_edge(self):
        """Heaviest edge, lowest label on ties, and its weight."""
        best = max(self.weights)
        return self.weights.index(best), best

    def flip(self, e):
        T = self.triangulation
        frame = T.square_frame(e)
        w = list(self.weights)
        w[e] = flip_value(T, w, e)
        T2 = T.flip(e)
        corners = None
        if self._corners is not None:
            corners = list(self._corners)
            for t in frame.triangles:
                corners[t] = _triangle_corners(T2, w, t)
        return MultiCurve(T2, w, corners)


def validate_multicurve(T, weights):
    return MultiCurve.validated(T, weights)


def flip_weights(T, gamma, e):
    """Weights of ``gamma`` on ``T.flip(e)``; ``gamma`` is a MultiCurve or a weight vector."""
    if not isinstance(gamma, MultiCurve):
        gamma = MultiCurve(T, gamma)
    return gamma.flip(e)


def total_intersection(gamma):
    weights = gamma.weights if isinstance(gamma, MultiCurve) else gamma
    return sum(weights)


def is_simple(T, gamma):
    return total_intersection(gamma) <= 2 * T.zeta


def _combine(gamma, delta, m, sign):
    if m < 0:
        raise ValueError("scale factor must be non-negative")
    T = gamma.triangulation
    w = [g + sign * m * d for g, d in zip(gamma.weights, delta.weights)]
    try:
        return MultiCurve.validated(T, w)
    except MultiCurveError as exc:
        raise InadmissibleResult(f"combination is not a multicurve: {exc}", triangle=exc.triangle) from None


def add_scaled(gamma, delta, m):
    return _combine(gamma, delta, m, 1)


def subtract_scaled(gamma, delta, m):
    return _combine(gamma, delta, m, -1)


def parse_curve(text, T=None):
    """Parse a ``curve: w0 w1 ...`` record; validates against ``T`` when given."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line.startswith("curve:"):
            try:
                weights = [int(tok) for tok in line[6:].split()]
            except ValueError:
                raise MultiCurveError(f"non-integer weight in {raw!r}") from None
            if T is None:
                return weights
            return MultiCurve.validated(T, weights)
    raise MultiCurveError("no 'curve:' record found")


def format_curve(gamma):
    weights = gamma.weights if isinstance(gamma, MultiCurve) else gamma
    return "curve: " + " ".join(str(x) for x in weights) + "\n"
