"""Explicit strand diagrams for small multicurves.

This module materialises every crossing point and every normal arc, and
builds its answers by plain enumeration. It shares no code with the
tracer's index arithmetic, so it is used as the ground truth in tests and
for post-simplification analysis where the total weight is small.
"""

from .errors import CapExceeded
from .surface import label

__all__ = ["DEFAULT_CAP", "Realization", "oracle_flip_weight", "oracle_realize"]

DEFAULT_CAP = 10**4


def _triangle_arcs(T, w, t):
    """Explicit arcs of triangle ``t`` as pairs ``((occ, local), (occ, local))``.

    The ``r``-th arc (counted from the vertex) around the corner at the end of
    side ``i`` joins local position ``w_i - 1 - r`` on side ``i`` with local
    position ``r`` on side ``i + 1``.
    """
    tri = T.triangles[t]
    ws = [w[label(x)] for x in tri]
    arcs = []
    for i in range(3):
        j = (i + 1) % 3
        count = (ws[i] + ws[j] - ws[(i + 2) % 3]) // 2
        for r in range(count):
            arcs.append(((tri[i], ws[i] - 1 - r), (tri[j], r)))
    return arcs


def _to_index(w, occ, local):
    e = label(occ)
    return (e, local) if occ >= 0 else (e, w[e] - 1 - local)


class Realization:
    """All crossing points with their two neighbours.

    ``link[(e, i, side)]`` is the point reached from point ``(e, i)`` by
    moving to ``side``, returned as ``(e2, i2, side2)`` where ``side2`` is the
    direction of continued travel.
    """

    def __init__(self, T, weights):
        self.triangulation = T
        self.weights = tuple(weights)
        w = self.weights
        self.link = {}
        for t in range(T.num_triangles):
            for (o1, l1), (o2, l2) in _triangle_arcs(T, w, t):
                p1, p2 = _to_index(w, o1, l1), _to_index(w, o2, l2)
                # entering the triangle holding occurrence o means side = sign(o)
                side1 = 1 if o1 >= 0 else -1
                side2 = 1 if o2 >= 0 else -1
                self.link[p1 + (side1,)] = p2 + (-side2,)
                self.link[p2 + (side2,)] = p1 + (-side1,)

    @property
    def points(self):
        return [(e, i) for e, n in enumerate(self.weights) for i in range(n)]

    def step(self, point):
        return self.link[point]

    def components(self):
        """Closed strands, each a list of ``(edge, index, side)`` in travel order."""
        seen = set()
        cycles = []
        for e, i in self.points:
            if (e, i) in seen:
                continue
            cycle = []
            cur = (e, i, 1)
            while (cur[0], cur[1]) not in seen:
                seen.add((cur[0], cur[1]))
                cycle.append(cur)
                cur = self.link[cur]
            cycles.append(cycle)
        return cycles

    def component_weights(self, cycle):
        w = [0] * len(self.weights)
        for e, _, _ in cycle:
            w[e] += 1
        return tuple(w)

    def recount(self):
        w = [0] * len(self.weights)
        for e, _ in self.points:
            w[e] += 1
        return tuple(w)

    def chain(self, edge, index, side, length):
        cur = (edge, index, side)
        out = [cur]
        for _ in range(length):
            cur = self.link[cur]
            out.append(cur)
        return out

    def blocks(self, edge, side, length):
        """Point-level partition of ``edge`` into maximal runs with equal type-sequences."""
        runs = []
        for i in range(self.weights[edge]):
            types = tuple((e, s) for e, _, s in self.chain(edge, i, side, length))
            if runs and runs[-1][2] == types:
                runs[-1][1] = i + 1
            else:
                runs.append([i, i + 1, types])
        return [tuple(r) for r in runs]


def oracle_realize(T, gamma, cap=DEFAULT_CAP):
    weights = gamma.weights if hasattr(gamma, "weights") else tuple(gamma)
    if sum(weights) > cap:
        raise CapExceeded(f"total weight {sum(weights)} exceeds oracle cap {cap}")
    return Realization(T, weights)


def oracle_flip_weight(T, gamma, e, cap=DEFAULT_CAP):
    """Weight of the new diagonal, by rerouting strands through the square.

    Every strand segment inside the square runs between two boundary sides.
    The new diagonal separates ``{s1, s4}`` from ``{s2, s3}``, and a segment
    crosses it exactly when its ends lie in different groups.
    """
    weights = gamma.weights if hasattr(gamma, "weights") else tuple(gamma)
    if sum(weights) > cap:
        raise CapExceeded(f"total weight {sum(weights)} exceeds oracle cap {cap}")
    frame = T.square_frame(e)
    t1, t2 = frame.triangles
    group = {0: "A", 1: "B", 2: "B", 3: "A"}  # s1, s2, s3, s4

    def side_names(t, center):
        tri = T.triangles[t]
        k = tri.index(center)
        return {(k + 1) % 3: (0 if t == t1 else 2), (k + 2) % 3: (1 if t == t1 else 3)}

    # per triangle: arcs keyed by their endpoint on the diagonal, plus corner arcs
    through = {}
    crossings = 0
    for t, center in ((t1, e), (t2, ~e)):
        names = side_names(t, center)
        tri = T.triangles[t]
        for (o1, l1), (o2, l2) in _triangle_arcs(T, weights, t):
            k1, k2 = tri.index(o1), tri.index(o2)
            if o1 == center or o2 == center:
                local, other = (l1, k2) if o1 == center else (l2, k1)
                idx = local if center >= 0 else weights[e] - 1 - local
                through.setdefault(idx, []).append(names[other])
            elif group[names[k1]] != group[names[k2]]:
                crossings += 1
    for ends in through.values():
        a, b = ends
        if group[a] != group[b]:
            crossings += 1
    return crossings
