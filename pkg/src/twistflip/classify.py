"""Reading off the components of a short multicurve.

Once the total weight is at most ``2 * zeta`` the curve is small enough to
draw every strand explicitly, so everything here goes through
:func:`twistflip.oracle.oracle_realize`.
"""

from collections import Counter
from dataclasses import dataclass, field

from .coords import flip_value
from .errors import NotSimple
from .oracle import DEFAULT_CAP, oracle_realize
from .surface import label
from .twist import twist_power

__all__ = [
    "ComponentReport",
    "algebraic_intersection",
    "analyse",
    "decompose",
    "is_peripheral",
    "vertex_links",
]


@dataclass
class ComponentReport:
    components: list = field(default_factory=list)  # [(weights, multiplicity)]
    peripheral: list = field(default_factory=list)
    algebraic: list = field(default_factory=list)  # per component, per edge

    @property
    def connected(self):
        return len(self.components) == 1 and self.components[0][1] == 1

    def signature(self):
        """Shape of the multicurve: sorted ``(multiplicity, peripheral)`` pairs."""
        return sorted((m, p) for (_, m), p in zip(self.components, self.peripheral))

    def to_json(self):
        return {
            "connected": self.connected,
            "components": [
                {
                    "weights": list(w),
                    "multiplicity": str(m),
                    "peripheral": p,
                    "algebraic": a,
                }
                for (w, m), p, a in zip(self.components, self.peripheral, self.algebraic)
            ],
        }


def vertex_links(T):
    """Weight vector of the loop around each puncture."""
    links = []
    for orbit in T.vertex_orbits():
        w = [0] * T.zeta
        for t, i in orbit:
            tri = T.triangles[t]
            w[label(tri[i])] += 1
            w[label(tri[i - 1])] += 1
        links.append(tuple(x // 2 for x in w))
    return links


def is_peripheral(T, component):
    weights = tuple(component.weights if hasattr(component, "weights") else component)
    return weights in vertex_links(T)


def _orient(real, weights):
    """Realise a single component and return it in its canonical direction."""
    cycles = real.components()
    if len(cycles) != 1:
        raise ValueError(f"expected one component, found {len(cycles)}")
    cycle = cycles[0]
    start = min((e, i) for e, i, _ in cycle)
    cur = start + (1,)
    out = []
    for _ in range(len(cycle)):
        out.append(cur)
        cur = real.step(cur)
    return out


def algebraic_intersection(T, component, edge, orientation=1):
    """Signed crossings of the oriented component with the oriented edge.

    The component is oriented by leaving its lowest crossing point towards
    the triangle holding that edge's "+" side; a crossing counts +1 when it
    moves into the triangle holding ``+edge``. ``orientation=-1`` uses the
    opposite direction.
    """
    weights = tuple(component.weights if hasattr(component, "weights") else component)
    if not any(weights):
        return 0
    cycle = _orient(oracle_realize(T, weights), weights)
    return orientation * sum(side for e, _, side in cycle if e == edge)


def decompose(T, gamma):
    """Components of a short multicurve with their multiplicities.

    Anything the oracle can draw is accepted, so parallel copies of a simple
    curve work even when their total exceeds ``2 * zeta``.
    """
    weights = tuple(gamma.weights if hasattr(gamma, "weights") else gamma)
    if sum(weights) > DEFAULT_CAP:
        raise NotSimple(f"total weight {sum(weights)} exceeds the drawing cap {DEFAULT_CAP}")
    real = oracle_realize(T, weights)
    counts = Counter(real.component_weights(c) for c in real.components())
    report = ComponentReport()
    for comp in sorted(counts):
        report.components.append((comp, counts[comp]))
        report.peripheral.append(is_peripheral(T, comp))
        report.algebraic.append([algebraic_intersection(T, comp, e) for e in range(T.zeta)])
    return report


def _pull_back(history, index, weights):
    """Coordinates on the initial triangulation of a curve seen after move ``index``."""
    w = list(weights)
    for T_before, move in reversed(history[:index]):
        if move.kind == "flip":
            T_after = T_before.flip(move.edge)
            w[move.edge] = flip_value(T_after, w, move.edge)
        elif move.kind == "twist":
            w = list(twist_power(T_before, w, move.delta, -move.curve_power).weights)
    return tuple(w)


def analyse(result):
    """Components of the *original* curve of a simplification result.

    Extracted components and the components of the final short curve are
    pulled back to the initial triangulation. Peripherality is read off
    where each component is short; algebraic intersections are taken with
    the edges of the triangulation the component was short on.
    """
    history = []
    T = result.initial_triangulation
    for move in result.log.moves:
        history.append((T, move))
        if move.kind == "flip":
            T = T.flip(move.edge)
    pieces = Counter()
    info = {}
    for idx, (T_at, move) in enumerate(history):
        if move.kind == "extract":
            key = _pull_back(history, idx, move.delta)
            pieces[key] += move.multiplicity
            info.setdefault(key, (T_at, move.delta))
    final = decompose(result.triangulation, result.curve)
    for (comp, mult) in final.components:
        key = _pull_back(history, len(history), comp)
        pieces[key] += mult
        info.setdefault(key, (result.triangulation, comp))
    report = ComponentReport()
    for key in sorted(pieces):
        T_short, short = info[key]
        report.components.append((key, pieces[key]))
        report.peripheral.append(is_peripheral(T_short, short))
        report.algebraic.append([algebraic_intersection(T_short, short, e) for e in range(T_short.zeta)])
    return report
