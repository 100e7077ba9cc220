"""Tracing the crossing points of a multicurve with the edges.

Points on edge ``e`` are indexed ``0 .. w_e - 1`` along the edge's intrinsic
orientation (counterclockwise in the triangle holding ``+e``). A point's
``side`` is +1 when the curve continues into the triangle holding ``+e`` and
-1 when it continues into the triangle holding ``-e``; the pair
``(edge, side)`` is the point's *type*.

:func:`next_point` and :func:`chain` work one point at a time.
:func:`block_partition` follows whole index intervals instead, so its cost
depends on the bit-size of the weights rather than their magnitude.
"""

from dataclasses import dataclass, field

from .errors import EmptyEdge
from .surface import label

__all__ = [
    "Block",
    "BlockPartition",
    "Chain",
    "CrossPoint",
    "block_partition",
    "chain",
    "first_return",
    "insulation",
    "max_edge",
    "next_point",
]


@dataclass(frozen=True, order=True)
class CrossPoint:
    edge: int
    index: int
    side: int = 1

    @property
    def type(self):
        return (self.edge, self.side)

    def reversed(self):
        return CrossPoint(self.edge, self.index, -self.side)


def _weights(gamma):
    return gamma.weights if hasattr(gamma, "weights") else gamma


def _exit(T, w, occ, local):
    """Follow the arc entering the triangle of ``occ`` at ccw-position ``local``."""
    t, i = T.where(occ)
    tri = T.triangles[t]
    prev, nxt = tri[i - 1], tri[(i + 1) % 3]
    w_prev, w_i, w_next = w[label(prev)], w[label(occ)], w[label(nxt)]
    start_corner = (w_prev + w_i - w_next) // 2
    if local < start_corner:
        return prev, w_prev - 1 - local
    return nxt, w_i - 1 - local


def next_point(T, gamma, p):
    """The point adjacent to ``p`` across the triangle on ``p.side``."""
    w = _weights(gamma)
    width = w[p.edge]
    if width == 0:
        raise EmptyEdge(f"edge {p.edge} carries no points")
    if not 0 <= p.index < width:
        raise IndexError(f"index {p.index} outside edge {p.edge} of weight {width}")
    occ = p.edge if p.side > 0 else ~p.edge
    local = p.index if occ >= 0 else width - 1 - p.index
    out, out_local = _exit(T, w, occ, local)
    e2 = label(out)
    index = out_local if out >= 0 else w[e2] - 1 - out_local
    return CrossPoint(e2, index, -1 if out >= 0 else 1)


@dataclass(frozen=True)
class Chain:
    points: tuple

    @property
    def types(self):
        return tuple(p.type for p in self.points)

    @property
    def first_return(self):
        return first_return(self.types)


def first_return(types):
    """Lexicographically smallest ``(i, j)`` with equal types, or None."""
    seen = {}
    best = None
    for j, tp in enumerate(types):
        if tp in seen:
            cand = (seen[tp], j)
            if best is None or cand < best:
                best = cand
        else:
            seen[tp] = j
    return best


def chain(T, gamma, q, length=None):
    """``q`` followed by ``length`` (default ``2 * zeta``) adjacent points."""
    if length is None:
        length = 2 * T.zeta
    points = [q]
    for _ in range(length):
        points.append(next_point(T, gamma, points[-1]))
    return Chain(tuple(points))


def insulation(p, gamma):
    """Number of points guaranteed on each side of ``p`` along its edge."""
    width = _weights(gamma)[p.edge]
    return min(p.index, width - 1 - p.index)


def max_edge(gamma):
    w = list(_weights(gamma))
    best = max(w)
    return w.index(best), best


def _interval_insulation(lo, hi, width):
    mid = (width - 1) // 2
    best = 0
    for x in {min(max(mid, lo), hi - 1), min(max(mid + 1, lo), hi - 1)}:
        best = max(best, min(x, width - 1 - x))
    return best


@dataclass
class Block:
    """A maximal interval ``[lo, hi)`` of e_max points with one chain type-sequence.

    ``maps[i] = (s, t)`` sends a base index ``x`` to the index ``s * x + t`` of
    ``p_i`` on ``types[i][0]``.
    """

    lo: int
    hi: int
    types: tuple
    maps: tuple = field(repr=False)
    insulation: int = 0

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def first_return(self):
        return first_return(self.types)

    def point(self, i, x):
        s, t = self.maps[i]
        edge, side = self.types[i]
        return CrossPoint(edge, s * x + t, side)

    def returns_to_itself(self):
        """True when ``p_j == p_0`` for the first-return pair ``(0, j)``."""
        fr = self.first_return
        return fr is not None and fr[0] == 0 and self.maps[fr[1]] == (1, 0)


@dataclass
class BlockPartition:
    edge: int
    side: int
    weight: int
    blocks: list

    def __len__(self):
        return len(self.blocks)

    def block_of(self, index):
        for block in self.blocks:
            if block.lo <= index < block.hi:
                return block
        raise IndexError(index)

    def to_json(self):
        return {
            "edge": self.edge,
            "coorientation": self.side,
            "weight": str(self.weight),
            "blocks": [
                {
                    "interval": [str(b.lo), str(b.hi)],
                    "width": str(b.width),
                    "insulation": str(b.insulation),
                    "types": [[e, s] for e, s in b.types],
                    "first_return": list(b.first_return) if b.first_return else None,
                    "returns_to_itself": b.returns_to_itself(),
                }
                for b in self.blocks
            ],
        }


def block_partition(T, gamma, edge, side=1, length=None):
    """Partition the points of ``edge`` by the type-sequence of their chains.

    Each piece carries an affine map from base index to current index; a step
    through a triangle splits a piece at most once, at the corner count.
    """
    w = _weights(gamma)
    width = w[edge]
    if width == 0:
        raise EmptyEdge(f"edge {edge} carries no points")
    if length is None:
        length = 2 * T.zeta
    # piece: (lo, hi, s, t, types, maps) with current index = s * x + t
    pieces = [(0, width, 1, 0, ((edge, side),), ((1, 0),))]
    for _ in range(length):
        refined = []
        for lo, hi, s, t, types, maps in pieces:
            e, sd = types[-1]
            occ = e if sd > 0 else ~e
            if occ >= 0:
                ls, lt = s, t
            else:
                ls, lt = -s, w[e] - 1 - t
            tri_t, i = T.where(occ)
            tri = T.triangles[tri_t]
            prev, nxt = tri[i - 1], tri[(i + 1) % 3]
            w_prev, w_i, w_next = w[label(prev)], w[label(occ)], w[label(nxt)]
            corner = (w_prev + w_i - w_next) // 2
            # local < corner exits through prev
            if ls > 0:
                cut = corner - lt
                low_part, high_part = (lo, min(hi, cut)), (max(lo, cut), hi)
                parts = ((low_part, prev, w_prev), (high_part, nxt, w_i))
            else:
                cut = lt - corner + 1
                low_part, high_part = (lo, min(hi, cut)), (max(lo, cut), hi)
                parts = ((low_part, nxt, w_i), (high_part, prev, w_prev))
            for (a, b), out, c in parts:
                if a >= b:
                    continue
                # exit local = c - 1 - local
                es, et = -ls, c - 1 - lt
                e2 = label(out)
                if out < 0:
                    es, et = -es, w[e2] - 1 - et
                new_type = (e2, -1 if out >= 0 else 1)
                refined.append((a, b, es, et, types + (new_type,), maps + ((es, et),)))
        pieces = refined
    pieces.sort(key=lambda piece: piece[0])
    blocks = [
        Block(lo, hi, types, maps, _interval_insulation(lo, hi, width)) for lo, hi, _, _, types, maps in pieces
    ]
    return BlockPartition(edge, side, width, blocks)
