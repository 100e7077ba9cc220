import pytest
from hypothesis import given, strategies as st

from twistflip import (
    NotFlippable,
    Triangulation,
    TriangulationError,
    build_triangulation,
    example_surface,
    flip_triangulation,
    format_triangulation,
    parse_triangulation,
    square_frame,
    vertex_orbits,
)
from twistflip.surfaces import SURFACES

from corpus import triangulations

TORUS = [(0, 1, 2), (~0, ~1, ~2)]
SPHERE3 = [(0, 1, 2), (~0, ~2, ~1)]
FOLDED = [(0, ~0, 1), (~1, 2, ~2)]


def brute_force_vertices(triangles):
    """Punctures by gluing corners with union-find, independent of the library."""
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    slot = {}
    for t, tri in enumerate(triangles):
        for i, occ in enumerate(tri):
            slot[occ] = (t, i)
    for t, tri in enumerate(triangles):
        for i, occ in enumerate(tri):
            # the edge runs from the corner at slot i to the corner at slot i+1;
            # its other side runs the opposite way
            u, j = slot[~occ]
            parent.setdefault((t, i), (t, i))
            a, b = find((t, i)), find((u, (j + 1) % 3))
            parent[a] = b
    return len({find((t, i)) for t in range(len(triangles)) for i in range(3)})


def test_two_triangle_gluings_and_their_punctures():
    torus = build_triangulation(TORUS)
    sphere = build_triangulation(SPHERE3)
    assert (torus.zeta, torus.euler_characteristic) == (3, -1)
    assert (sphere.zeta, sphere.euler_characteristic) == (3, -1)
    # equal reversal of both triangles glues a torus with one puncture
    assert torus.num_vertices == brute_force_vertices(TORUS) == 1
    assert torus.genus == 1
    # reversing only the second triangle gives three punctures and genus 0
    assert sphere.num_vertices == brute_force_vertices(SPHERE3) == 3
    assert sphere.genus == 0


def test_catalogue_topology():
    expected = {"S1_1": (1, 1), "S0_3": (0, 3), "S0_4": (0, 4), "S1_2": (1, 2), "S2_1": (2, 1)}
    for name in SURFACES:
        T = example_surface(name)
        assert (T.genus, T.num_vertices) == expected[name]
        assert T.num_vertices == brute_force_vertices(T.triangles)


@pytest.mark.parametrize(
    "gluing, fragment",
    [
        ([(0, 1, 1)], r"2 \* zeta"),
        ([(0, 1, 2), (~0, ~1, ~1)], "twice"),
        ([(0, 1, 2), (~0, ~1, ~3)], "out of range"),
        ([(0, 1, 2), (~0, ~1, ~2), (3, 4, 5), (~3, ~4, ~5)], "disconnected"),
        ([(0, ~0, 1, 2)], "three"),
        ([], "at least one"),
    ],
)
def test_invalid_gluings_are_rejected(gluing, fragment):
    with pytest.raises(TriangulationError, match=fragment):
        build_triangulation(gluing)


def test_square_frame_walks_slots_after_the_edge():
    T = build_triangulation(SPHERE3)
    assert square_frame(T, 0).sides == (1, 2, ~2, ~1)
    assert square_frame(T, 1).sides == (2, 0, ~0, ~2)
    assert square_frame(T, 0).opposite_pairs == ((1, ~2), (2, ~1))


def test_folded_triangle_is_not_flippable():
    T = build_triangulation(FOLDED)
    assert [T.is_flippable(e) for e in range(3)] == [False, True, False]
    with pytest.raises(NotFlippable):
        square_frame(T, 0)
    with pytest.raises(NotFlippable):
        flip_triangulation(T, 2)
    orbits = vertex_orbits(T)
    assert sorted(len(o) for o in orbits) == [1, 1, 4]
    # closing the punctures gives a sphere: V - E + F = 2
    assert len(orbits) - T.zeta + T.num_triangles == 2


def test_flip_places_new_edge_next_to_s2():
    T = example_surface("S1_1")
    s1, s2, s3, s4 = square_frame(T, 0).sides
    F = flip_triangulation(T, 0)
    assert sorted(map(sorted, F.triangles)) == sorted(map(sorted, [(0, s2, s3), (~0, s4, s1)]))
    t, _ = F.where(0)
    assert s2 in F.triangles[t]


def test_vertex_orbits_on_the_torus():
    orbits = vertex_orbits(example_surface("S1_1"))
    assert len(orbits) == 1 and len(orbits[0]) == 6


def test_text_round_trip_with_comments():
    text = "# torus\n\ntri: +0 +1 +2   # first\ntri: -0 -1 -2\ncurve: 1 1 2\n"
    T = parse_triangulation(text)
    assert T == build_triangulation(TORUS)
    assert parse_triangulation(format_triangulation(T)) == T
    with pytest.raises(TriangulationError):
        parse_triangulation("tri: 0 +1 +2\ntri: -0 -1 -2\n")
    with pytest.raises(TriangulationError):
        parse_triangulation("triangle: +0 +1 +2\n")


@given(triangulations(), st.data())
def test_flip_preserves_invariants(T, data):
    e = data.draw(st.sampled_from(T.flippable_edges()))
    F = T.flip(e)
    assert F.zeta == T.zeta
    assert F.num_triangles == T.num_triangles
    assert F.num_vertices == T.num_vertices
    occurrences = sorted(x for tri in F.triangles for x in tri)
    assert occurrences == sorted(list(range(T.zeta)) + [~e for e in range(T.zeta)])
    # revalidating through the public constructor checks connectivity
    assert Triangulation(F.triangles) == F
    # flipping back restores the triangle list once e is reoriented
    assert F.flip(e).relabel({e: ~e}) == T


@given(triangulations(), st.data())
def test_square_frame_sides_are_the_four_other_slots(T, data):
    e = data.draw(st.sampled_from(T.flippable_edges()))
    frame = square_frame(T, e)
    t1, t2 = frame.triangles
    others = [x for x in T.triangles[t1] if x != e] + [x for x in T.triangles[t2] if x != ~e]
    assert sorted(frame.sides) == sorted(others)
    assert square_frame(T, e) == frame
