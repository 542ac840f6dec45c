"""Instance generators shared by the tests."""
import math
import random

from circsep import convex as cx
from circsep.convex import Location, classify_pair, make_polygon
from circsep.hull import convex_hull
from circsep.geom import Circle, dist


def random_points(rng: random.Random, n: int, lo: float = -1.0, hi: float = 1.0):
    return [(rng.uniform(lo, hi), rng.uniform(lo, hi)) for _ in range(n)]


def random_polygon(rng: random.Random, center, radius: float, m: int):
    """Convex m-gon inscribed in a circle; angles jittered around an even spacing."""
    while True:
        ph = rng.random()
        angs = [(i + 0.8 * rng.random() + ph) * 2 * math.pi / m for i in range(m)]
        Q = make_polygon([(center[0] + radius * math.cos(a), center[1] + radius * math.sin(a))
                          for a in angs])
        if Q.m == m:
            return Q


def polygon_outside(rng: random.Random, T, m: int):
    """Random m-gon strictly disjoint from the hull of the tree's sites."""
    while True:
        a = rng.uniform(0, 2 * math.pi)
        d = rng.uniform(0.2, 4.0) * 1.5
        Q = random_polygon(rng, (d * math.cos(a), d * math.sin(a)), rng.uniform(0.05, 1.5), m)
        where, _ = classify_pair(T.hull_angles, Q)
        if where is Location.OUTSIDE:
            return Q


def circle_anywhere(rng: random.Random):
    a = rng.uniform(0, 2 * math.pi)
    d = rng.uniform(0.2, 4.0) * 1.5
    return Circle((d * math.cos(a), d * math.sin(a)), rng.uniform(0.01, 1.5))


def point_anywhere(rng: random.Random):
    a = rng.uniform(0, 2 * math.pi)
    d = rng.uniform(0.2, 4.0) * 1.5
    return (d * math.cos(a), d * math.sin(a))


def same_answer(res, ref, rel: float = 1e-6) -> bool:
    """Status equal and, when separating, radius and centre within ``rel``."""
    if res.status is not ref.status:
        return False
    if ref.circle is None:
        return res.circle is None
    r = ref.circle.radius
    return (abs(res.circle.radius - r) <= rel * r
            and dist(res.circle.center, ref.circle.center) <= rel * r)


def apex_polygon(rng, T):
    """Polygon whose internal tangents with the hull both touch the same vertex."""
    H = T.hull
    while True:
        q = point_anywhere(rng)
        if cx.contains_point(H, q) is not Location.OUTSIDE:
            continue
        tg = cx.tangents_from_point(H.vertex, H.m, H.interior, q)
        if tg is None:
            continue
        d = [((q[0] - H.vertex(i)[0]), (q[1] - H.vertex(i)[1])) for i in tg]
        d = [(x / math.hypot(x, y), y / math.hypot(x, y)) for x, y in d]
        pts = [q]
        for al in (0.25, 0.5, 0.75):
            s = rng.uniform(0.3, 1.0)
            pts.append((q[0] + s * (al * d[0][0] + (1 - al) * d[1][0]),
                        q[1] + s * (al * d[0][1] + (1 - al) * d[1][1])))
        Q = make_polygon(convex_hull(pts)[0])
        if Q.m >= 3:
            return q, Q


# acceptance outcomes, printed again at the end of the run
ACCEPTANCE = {}


def record(number: int, ok: bool, detail: str) -> str:
    line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE[number] = line
    return line
