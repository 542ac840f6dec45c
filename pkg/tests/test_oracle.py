import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circsep.convex import make_polygon
from circsep.engine import Status
from circsep.errors import DegenerateTriangle
from circsep.geom import Circle, dist
from circsep.oracle import brute_fpvd, brute_mec, brute_min_separating_circle, candidate_circles

from helpers import circle_anywhere, point_anywhere, random_points, random_polygon

TWO = [(0.0, 0.0), (2.0, 0.0)]


def test_point_above_segment():
    res = brute_min_separating_circle(TWO, (1.0, 0.5))
    assert dist(res.circle.center, (1.0, -0.75)) <= 1e-9
    assert res.circle.radius == pytest.approx(1.25, abs=1e-9)


def test_square_above_segment():
    Q = make_polygon([(0, 0.5), (2, 0.5), (2, 1.5), (0, 1.5)])
    res = brute_min_separating_circle(TWO, Q)
    assert dist(res.circle.center, (1.0, -0.75)) <= 1e-9
    assert res.circle.radius == pytest.approx(1.25, abs=1e-9)
    assert dist(res.tangency, (1.0, 0.5)) <= 1e-9


def test_tangent_square_keeps_the_enclosing_circle():
    Q = make_polygon([(0, 1), (2, 1), (2, 2), (0, 2)])
    res = brute_min_separating_circle(TWO, Q)
    assert res.trivial_mec
    assert res.circle == Circle((1.0, 0.0), 1.0)


def test_overlap_has_no_circle():
    Q = make_polygon([(1, 1), (3, 1), (3, 2), (1, 2)])
    res = brute_min_separating_circle([(0, 0), (4, 0), (2, 3)], Q)
    assert res.status is Status.NO_SEPARATING_CIRCLE


def test_triangle_has_one_node():
    nodes = brute_fpvd([(0, 0), (4, 0), (2, 3)])
    assert len(nodes) == 1
    assert dist(nodes[0].position, (2.0, 5.0 / 6.0)) <= 1e-12


def test_square_has_one_degree_four_node():
    nodes = brute_fpvd([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert len(nodes) == 1
    assert dist(nodes[0].position, (0.5, 0.5)) <= 1e-12
    assert len(nodes[0].defining_sites) == 4


def test_collinear_points_are_rejected():
    with pytest.raises(DegenerateTriangle):
        brute_fpvd([(0, 0), (1, 1), (2, 2)])


def test_brute_mec_single_point():
    assert brute_mec([(3, 4)]) == Circle((3.0, 4.0), 0.0)


def test_candidates_pass_through_their_sites():
    rng = random.Random(3)
    P = random_points(rng, 12)
    Q = random_polygon(rng, (3.0, 0.0), 0.5, 5)
    for cand in candidate_circles(P, Q):
        c, r = cand.circle
        for k in cand.witness[0]:
            assert abs(dist(c, P[k]) - r) <= 1e-9 * max(r, 1.0)


def _query(rng, kind):
    if kind == "polygon":
        a = point_anywhere(rng)
        return random_polygon(rng, a, rng.uniform(0.05, 1.0), rng.randint(3, 8))
    return circle_anywhere(rng) if kind == "circle" else point_anywhere(rng)


@pytest.mark.parametrize("kind", ["polygon", "circle", "point"])
@given(seed=st.integers(0, 10 ** 6))
def test_never_smaller_than_enclosing_circle(kind, seed):
    rng = random.Random(seed)
    P = random_points(rng, rng.randint(2, 30))
    res = brute_min_separating_circle(P, _query(rng, kind))
    if res.circle is not None:
        assert res.circle.radius >= brute_mec(P).radius * (1 - 1e-12)


@given(st.integers(0, 10 ** 6))
def test_winner_is_unique(seed):
    rng = random.Random(seed)
    P = random_points(rng, rng.randint(3, 30))
    Q = _query(rng, "polygon")
    cands = candidate_circles(P, Q)
    if len(cands) < 2:
        return
    best = min(c.circle.radius for c in cands)
    winners = [c.circle for c in cands if c.circle.radius <= best * (1 + 1e-9)]
    assert all(dist(w.center, winners[0].center) <= 1e-7 * best for w in winners)
