"""Combinatorial ideal triangulations of orientable punctured surfaces.

A triangulation is a list of triangles. Each triangle is a counterclockwise
triple of *occurrences*: an occurrence of edge label ``e`` is the integer
``e`` (the "+" side) or ``~e`` (the "-" side). Every label must occur exactly
once with each sign, which makes orientability a syntactic property: the two
triangles meeting along an edge traverse it in opposite directions.

The "+" occurrence fixes the intrinsic orientation of an edge: it points in
the counterclockwise direction of the triangle holding ``+e``.
"""

from dataclasses import dataclass

from .errors import NotFlippable, TriangulationError

__all__ = [
    "EdgeRef",
    "SquareFrame",
    "Triangulation",
    "build_triangulation",
    "flip_triangulation",
    "format_occurrence",
    "format_triangulation",
    "label",
    "parse_occurrence",
    "parse_triangulation",
    "square_frame",
    "vertex_orbits",
]


def label(occ):
    """Edge label of an occurrence."""
    return occ if occ >= 0 else ~occ


def sign(occ):
    return 1 if occ >= 0 else -1


def parse_occurrence(token):
    """Parse ``+3`` / ``-3`` (also accepts plain ints in the ``~e`` convention)."""
    if isinstance(token, int):
        return token
    token = token.strip()
    if len(token) < 2 or token[0] not in "+-" or not token[1:].isdigit():
        raise TriangulationError(f"bad edge token {token!r}: expected +N or -N")
    value = int(token[1:])
    return value if token[0] == "+" else ~value


def format_occurrence(occ):
    return f"+{occ}" if occ >= 0 else f"-{~occ}"


@dataclass(frozen=True)
class EdgeRef:
    """The two incidences of an edge label as ``(triangle, slot, sign)`` triples."""

    label: int
    incidences: tuple

    @property
    def flippable(self):
        return self.incidences[0][0] != self.incidences[1][0]


@dataclass(frozen=True)
class SquareFrame:
    """The square around a flippable edge.

    ``sides`` are the four boundary occurrences read counterclockwise,
    starting from the slot after ``+e`` in the triangle holding ``+e``.
    Opposite pairs are ``(s1, s3)`` and ``(s2, s4)``.
    """

    edge: int
    sides: tuple
    triangles: tuple  # (index holding +e, index holding -e)

    @property
    def opposite_pairs(self):
        s1, s2, s3, s4 = self.sides
        return (s1, s3), (s2, s4)


class Triangulation:
    """An immutable ideal triangulation."""

    __slots__ = ("triangles", "zeta", "_where", "_orbits")

    def __init__(self, triangles):
        triangles = tuple(tuple(parse_occurrence(x) for x in tri) for tri in triangles)
        _validate(triangles)
        self._setup(triangles)

    @classmethod
    def _trusted(cls, triangles):
        self = cls.__new__(cls)
        self._setup(triangles)
        return self

    def _setup(self, triangles):
        self.triangles = triangles
        self.zeta = len(triangles) * 3 // 2
        where = [None] * (2 * self.zeta)
        for t, tri in enumerate(triangles):
            for i, occ in enumerate(tri):
                where[_slot_key(occ)] = (t, i)
        self._where = where
        self._orbits = None

    def __repr__(self):
        body = ", ".join("(" + ",".join(format_occurrence(x) for x in tri) + ")" for tri in self.triangles)
        return f"Triangulation([{body}])"

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        """Rotation- and order-independent identity of the triangle list."""
        return tuple(sorted(_canonical_rotation(tri) for tri in self.triangles))

    # -- basic queries ------------------------------------------------------

    @property
    def num_triangles(self):
        return len(self.triangles)

    @property
    def euler_characteristic(self):
        return self.num_triangles - self.zeta

    @property
    def num_vertices(self):
        return len(self.vertex_orbits())

    @property
    def genus(self):
        # closed-up surface: V - E + F = 2 - 2g
        return (2 - (self.num_vertices - self.zeta + self.num_triangles)) // 2

    def where(self, occ):
        """``(triangle index, slot)`` of an occurrence."""
        return self._where[_slot_key(occ)]

    def side(self, t, i):
        return self.triangles[t][i % 3]

    def edge_ref(self, e):
        t0, i0 = self.where(e)
        t1, i1 = self.where(~e)
        return EdgeRef(e, ((t0, i0, 1), (t1, i1, -1)))

    def is_flippable(self, e):
        return self.where(e)[0] != self.where(~e)[0]

    def flippable_edges(self):
        return [e for e in range(self.zeta) if self.is_flippable(e)]

    # -- moves --------------------------------------------------------------

    def square_frame(self, e):
        t1, i1 = self.where(e)
        t2, i2 = self.where(~e)
        if t1 == t2:
            raise NotFlippable(e)
        a, b = self.triangles[t1], self.triangles[t2]
        sides = (a[(i1 + 1) % 3], a[(i1 + 2) % 3], b[(i2 + 1) % 3], b[(i2 + 2) % 3])
        return SquareFrame(e, sides, (t1, t2))

    def flip(self, e):
        frame = self.square_frame(e)
        s1, s2, s3, s4 = frame.sides
        t1, t2 = frame.triangles
        triangles = list(self.triangles)
        triangles[t1] = (e, s2, s3)
        triangles[t2] = (~e, s4, s1)
        return Triangulation._trusted(tuple(triangles))

    def relabel(self, mapping):
        """Apply a signed relabeling ``{old occurrence: new occurrence}`` given on "+" sides."""

        def image(occ):
            if occ >= 0:
                return mapping.get(occ, occ)
            return ~mapping.get(~occ, ~occ)

        return Triangulation._trusted(tuple(tuple(image(x) for x in tri) for tri in self.triangles))

    # -- punctures ----------------------------------------------------------

    def vertex_orbits(self):
        """Corner cycles, one per puncture.

        Corner ``(t, i)`` is the vertex at the start of side ``i`` of
        triangle ``t``. The gluing map sends it across side ``i`` to the
        corner at the end of the matching occurrence.
        """
        if self._orbits is None:
            seen = set()
            orbits = []
            for t in range(self.num_triangles):
                for i in range(3):
                    if (t, i) in seen:
                        continue
                    orbit = []
                    corner = (t, i)
                    while corner not in seen:
                        seen.add(corner)
                        orbit.append(corner)
                        corner = self._next_corner(corner)
                    orbits.append(orbit)
            self._orbits = orbits
        return self._orbits

    def _next_corner(self, corner):
        t, i = corner
        t2, j = self.where(~self.triangles[t][i])
        return (t2, (j + 1) % 3)


def _slot_key(occ):
    return 2 * occ if occ >= 0 else 2 * (~occ) + 1


def _canonical_rotation(tri):
    return min(tri[i:] + tri[:i] for i in range(3))


def _validate(triangles):
    if not triangles:
        raise TriangulationError("triangulation needs at least one triangle")
    for tri in triangles:
        if len(tri) != 3:
            raise TriangulationError(f"triangle {tri} does not have three sides")
    slots = 3 * len(triangles)
    if slots % 2:
        raise TriangulationError(f"{len(triangles)} triangles give {slots} sides; 3 * triangles must equal 2 * zeta")
    zeta = slots // 2
    seen = {}
    for t, tri in enumerate(triangles):
        for occ in tri:
            if occ in seen:
                raise TriangulationError(f"occurrence {format_occurrence(occ)} appears twice")
            if label(occ) >= zeta:
                raise TriangulationError(f"edge label {label(occ)} out of range 0..{zeta - 1}")
            seen[occ] = t
    for e in range(zeta):
        for occ in (e, ~e):
            if occ not in seen:
                raise TriangulationError(f"occurrence {format_occurrence(occ)} of label {e} is missing")
    if zeta % 3 or zeta < 3:
        raise TriangulationError(f"zeta = {zeta} must be a positive multiple of 3")
    parent = list(range(len(triangles)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(zeta):
        a, b = find(seen[e]), find(seen[~e])
        parent[a] = b
    if len({find(t) for t in range(len(triangles))}) != 1:
        raise TriangulationError("triangles glue to a disconnected surface")


def build_triangulation(gluing):
    """Validated :class:`Triangulation` from a list of signed triples."""
    return Triangulation(gluing)


def square_frame(T, e):
    return T.square_frame(e)


def flip_triangulation(T, e):
    return T.flip(e)


def vertex_orbits(T):
    return T.vertex_orbits()


def parse_triangulation(text):
    """Parse the ``tri: +a +b +c`` line format."""
    triangles = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("tri:"):
            if line.startswith("curve:"):
                continue
            raise TriangulationError(f"line {lineno}: expected 'tri:' record, got {raw!r}")
        tokens = line[4:].split()
        if len(tokens) != 3:
            raise TriangulationError(f"line {lineno}: a triangle needs exactly three edges")
        try:
            triangles.append(tuple(parse_occurrence(tok) for tok in tokens))
        except TriangulationError as exc:
            raise TriangulationError(f"line {lineno}: {exc}") from None
    return Triangulation(triangles)


def format_triangulation(T):
    return "".join("tri: " + " ".join(format_occurrence(x) for x in tri) + "\n" for tri in T.triangles)
