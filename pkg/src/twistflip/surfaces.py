"""A small catalogue of triangulated punctured surfaces."""

from .surface import parse_triangulation

_CATALOGUE = {
    # square torus: bottom/top = 0, right/left = 1, diagonal = 2
    "S1_1": "tri: +0 +1 +2\ntri: -0 -1 -2\n",
    "S0_3": "tri: +0 +1 +2\ntri: -0 -2 -1\n",
    "S0_4": "tri: +2 -3 -1\ntri: +5 +3 -0\ntri: -4 -5 +0\ntri: +4 -2 +1\n",
    "S1_2": "tri: -2 +4 -1\ntri: -4 +1 +5\ntri: -3 +2 -0\ntri: -5 +3 +0\n",
    "S2_1": "tri: +4 +0 +2\ntri: -8 -4 +3\ntri: -3 +1 +7\ntri: -6 -1 -7\ntri: +5 +6 +8\ntri: -0 -2 -5\n",
}

SURFACES = tuple(_CATALOGUE)


def example_surface(name):
    """Triangulation by catalogue name, e.g. ``"S1_1"`` or ``"S2_1"``."""
    try:
        return parse_triangulation(_CATALOGUE[name])
    except KeyError:
        raise KeyError(f"unknown surface {name!r}; choose from {', '.join(SURFACES)}") from None


def slope_weights(x, y):
    """Weights on ``S1_1`` of the simple closed curve with homology class ``(x, y)``.

    Edge 0 carries class (1, 0), edge 1 carries (0, 1) and the diagonal
    carries (1, 1); the weight of an edge is the absolute determinant.
    """
    return (abs(y), abs(x), abs(x - y))
