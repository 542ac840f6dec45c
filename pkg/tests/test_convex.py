import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circsep.convex import (Location, chain_between, circle_polygon_disjoint, classify_pair,
                            contains_point, distance_point, distance_point_linear,
                            extreme_vertex, internal_tangents, make_polygon, PolygonAngles,
                            separating_line)
from circsep.errors import PointNotOutside
from circsep.geom import Circle, dist, dist_point_line, dist_point_segment, Segment

from helpers import random_polygon

SQ = make_polygon([(0, 0.5), (2, 0.5), (2, 1.5), (0, 1.5)])
UNIT = make_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def area2(Q):
    vs = Q.vertices
    return sum(vs[i - 1][0] * vs[i][1] - vs[i][0] * vs[i - 1][1] for i in range(len(vs)))


def test_make_polygon_keeps_ccw_square():
    assert SQ.m == 4 and area2(SQ) > 0


def test_make_polygon_reorients_cw_input():
    Q = make_polygon([(0, 0.5), (0, 1.5), (2, 1.5), (2, 0.5)])
    assert area2(Q) > 0 and set(Q.vertices) == set(SQ.vertices)


def test_make_polygon_drops_collinear_vertex():
    Q = make_polygon([(0, 0), (1, 0), (2, 0), (1, 1)])
    assert set(Q.vertices) == {(0.0, 0.0), (2.0, 0.0), (1.0, 1.0)}


@pytest.mark.parametrize("p,want", [
    ((0.5, 0.5), Location.INSIDE), ((2, 2), Location.OUTSIDE), ((1, 0.5), Location.BOUNDARY),
])
def test_contains_point_unit_square(p, want):
    assert contains_point(UNIT, p) is want


def test_distance_point_examples():
    d, f = distance_point(SQ, (1, -0.75))
    assert d == pytest.approx(1.25) and f.kind == "edge" and SQ.edge(f.index) == Segment((0, 0.5), (2, 0.5))
    d, f = distance_point(SQ, (3, 0.5))
    assert d == pytest.approx(1.0) and f.kind == "vertex" and SQ.vertex(f.index) == (2, 0.5)
    with pytest.raises(PointNotOutside):
        distance_point(SQ, (1, 1))


def test_extreme_vertex_examples():
    sq = make_polygon([(0, 0), (2, 0), (2, 2), (0, 2)])
    assert sq.vertex(extreme_vertex(sq, (0, 1)))[1] == 2
    tri = make_polygon([(0, 0), (4, 0), (2, 3)])
    i = extreme_vertex(tri, (0, -1))
    assert tri.vertex(i) in ((0, 0), (4, 0))
    assert i == min(j for j in range(3) if tri.vertex(j)[1] == 0)
    seg = make_polygon([(0, 0), (2, 0)])
    assert seg.vertex(extreme_vertex(seg, (1, 0))) == (2, 0)


def _left_of(line, pts, tol=1e-9):
    return all(dist_point_line(p, line) >= -tol for p in pts)


def _right_of(line, pts, tol=1e-9):
    return all(dist_point_line(p, line) <= tol for p in pts)


def test_separating_line_between_segment_and_square():
    A = make_polygon([(0, 0), (2, 0)])
    line = separating_line(A, SQ)
    assert line is not None and _left_of(line, A.vertices) and _right_of(line, SQ.vertices)


def test_separating_line_absent_on_overlap():
    B = make_polygon([(0.5, 0.5), (1.5, 0.5), (1.5, 1.5), (0.5, 1.5)])
    assert separating_line(UNIT, B) is None


def test_separating_line_through_single_contact():
    B = make_polygon([(1, 1), (2, 1), (2, 2), (1, 2)])
    line = separating_line(UNIT, B)
    assert line is not None
    assert abs(dist_point_line((1, 1), line)) <= 1e-12
    assert _left_of(line, UNIT.vertices) and _right_of(line, B.vertices)


def test_internal_tangents_segment_and_square():
    A = make_polygon([(0, 0), (2, 0)])
    L, L2, q, q2 = internal_tangents(A, SQ)
    assert {q, q2} == {(2.0, 0.5), (0.0, 0.5)}
    for line in (L, L2):
        assert abs(dist_point_line(q, line)) < 1e-12 or abs(dist_point_line(q2, line)) < 1e-12


def test_internal_tangents_from_a_point():
    B = make_polygon([(1, 1), (2, 1), (2, 2), (1, 2)])
    _, _, q, q2 = internal_tangents(make_polygon([(0, 0)]), B)
    # the two vertices seen at extreme angles from the origin
    angs = {v: math.atan2(v[1], v[0]) for v in B.vertices}
    assert {q, q2} == {min(angs, key=angs.get), max(angs, key=angs.get)}


def test_internal_tangents_to_a_point_meet_there():
    A = make_polygon([(0, 0), (2, 0)])
    L, L2, q, q2 = internal_tangents(A, make_polygon([(1, 3)]))
    assert q == q2 == (1, 3) and L.anchor == L2.anchor == (1, 3)


def test_chain_between_single_edge():
    assert chain_between(SQ, (2, 0.5), (0, 0.5)) == [(2, 0.5), (0, 0.5)]


def test_chain_between_same_point():
    assert chain_between(SQ, (2, 0.5), (2, 0.5)) == [(2, 0.5)]


def test_chain_between_hexagon_antipodes():
    hexa = make_polygon([(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(6)])
    q, q2 = hexa.vertex(0), hexa.vertex(3)
    # clockwise walk by hand: 0, 5, 4, 3
    want = [hexa.vertex(i) for i in (0, 5, 4, 3)]
    assert chain_between(hexa, q, q2) == want


def test_circle_polygon_disjoint_examples():
    assert circle_polygon_disjoint(Circle((1, 0), 1), make_polygon([(0, 1), (2, 1), (2, 2), (0, 2)]))
    assert not circle_polygon_disjoint(Circle((1, 0), 1), SQ)
    assert circle_polygon_disjoint(Circle((10, 10), 1), UNIT)


def test_translated_polygon_matches_explicit_copy():
    rng = random.Random(3)
    for m in (5, 700):
        Q = random_polygon(rng, (0, 0), 1.0, m)
        T = Q.translated(2.5, -1.0)
        E = make_polygon([(x + 2.5, y - 1.0) for x, y in Q.vertices])
        assert list(T.vertices) == list(E.vertices)
        assert T.scale == E.scale
        assert (T.as_array() == E.as_array()).all()
        p = (7.0, 3.0)
        assert distance_point(T, p) == distance_point(E, p)


seeds = st.integers(0, 10 ** 6)


@given(seeds, st.integers(3, 40))
def test_fast_queries_agree_with_scans(seed, m):
    rng = random.Random(seed)
    Q = random_polygon(rng, (rng.uniform(-1, 1), rng.uniform(-1, 1)), rng.uniform(0.1, 3), m)
    for k in range(10):
        p = (rng.uniform(-5, 5), rng.uniform(-5, 5))
        inside = all((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) > 0
                     for a, b in (Q.edge(i) for i in range(m)))
        where = contains_point(Q, p)
        assert where is (Location.INSIDE if inside else Location.OUTSIDE)
        if not inside:
            d, _ = distance_point(Q, p)
            assert d == pytest.approx(min(dist_point_segment(p, Q.edge(i)) for i in range(m)), abs=1e-12)
            assert d == pytest.approx(distance_point_linear(Q, p)[0], abs=1e-12)
        u = (math.cos(seed + k), math.sin(seed + k))
        best = max(v[0] * u[0] + v[1] * u[1] for v in Q.vertices)
        v = Q.vertex(extreme_vertex(Q, u))
        assert v[0] * u[0] + v[1] * u[1] == pytest.approx(best, abs=1e-12)


@given(seeds, st.integers(3, 24), st.integers(3, 24))
def test_classification_and_tangents_against_brute_force(seed, ma, mb):
    rng = random.Random(seed)
    A = random_polygon(rng, (0, 0), 1.0, ma)
    ang = rng.uniform(0, 2 * math.pi)
    d = rng.uniform(0.5, 4.0)
    B = random_polygon(rng, (d * math.cos(ang), d * math.sin(ang)), rng.uniform(0.1, 2.0), mb)
    where, _ = classify_pair(PolygonAngles(A), B)
    # brute force: a separating axis among the edge normals
    def separated():
        for P1, P2 in ((A, B), (B, A)):
            for i in range(P1.m):
                a, b = P1.edge(i)
                n = (b[1] - a[1], a[0] - b[0])
                if min((v[0] - a[0]) * n[0] + (v[1] - a[1]) * n[1] for v in P2.vertices) > 1e-9:
                    return True
        return False
    if where is Location.OUTSIDE:
        assert separated()
        L, L2, q, q2 = internal_tangents(A, B)
        for line in (L, L2):
            assert _left_of(line, A.vertices) and _right_of(line, B.vertices)
        assert abs(dist_point_line(q, L)) < 1e-9 and abs(dist_point_line(q2, L2)) < 1e-9
    elif where is Location.INSIDE:
        assert not separated()
