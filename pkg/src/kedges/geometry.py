"""Exact predicates and straight-line drawings of point sets.

Coordinates are ints or :class:`fractions.Fraction`; no floating point is
ever used in a predicate.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations

from .drawing import Crossing, DrawingSpec, edge_key
from .errors import DegeneratePointSet


def orient(a, b, c) -> int:
    """Sign of the turn a -> b -> c (+1 counterclockwise)."""
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def cross(p, q):
    return p[0] * q[1] - p[1] * q[0]


def _half(v) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(a, b) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


def ccw_sort(center, targets: dict) -> list:
    """Keys of ``targets`` (label -> point) sorted by direction angle around ``center``."""
    dirs = {k: (p[0] - center[0], p[1] - center[1]) for k, p in targets.items()}
    return sorted(dirs, key=cmp_to_key(lambda a, b: _angle_cmp(dirs[a], dirs[b])))


def canonical_rotation(rot) -> tuple:
    """Rotate a cyclic sequence so it starts at its smallest element."""
    rot = list(rot)
    if not rot:
        return ()
    i = rot.index(min(rot))
    return tuple(rot[i:] + rot[:i])


def segment_crossings(points: dict, segments) -> dict:
    """Proper intersections among straight ``segments`` (pairs of point labels).

    Returns ``{segment: [(t, other, sign), ...]}`` sorted by the rational
    parameter ``t`` along the segment from its lower endpoint. ``sign`` is
    the orientation of the two direction vectors, which matches the
    crossing-sign convention of :mod:`kedges.drawing`. Callers must ensure
    no three points are collinear.
    """
    segs = [edge_key(*s) for s in segments]
    out = {s: [] for s in segs}
    for e, f in combinations(segs, 2):
        if set(e) & set(f):
            continue
        a, b = points[e[0]], points[e[1]]
        c, d = points[f[0]], points[f[1]]
        if orient(a, b, c) * orient(a, b, d) >= 0 or orient(c, d, a) * orient(c, d, b) >= 0:
            continue
        de = (b[0] - a[0], b[1] - a[1])
        df = (d[0] - c[0], d[1] - c[1])
        den = cross(de, df)
        ac = (c[0] - a[0], c[1] - a[1])
        t = Fraction(cross(ac, df), den)
        s = Fraction(cross(ac, de), den)
        sign = 1 if den > 0 else -1
        out[e].append((t, f, sign))
        out[f].append((s, e, -sign))
    for s in segs:
        out[s].sort()
    return out


def check_general_position(points: dict) -> None:
    """Raise :class:`DegeneratePointSet` unless no three points are collinear
    and no three segments pass through a common crossing."""
    labels = sorted(points)
    for a, b, c in combinations(labels, 3):
        if points[a] == points[b] or points[b] == points[c] or points[a] == points[c]:
            raise DegeneratePointSet("coincident points", (a, b, c))
        if orient(points[a], points[b], points[c]) == 0:
            raise DegeneratePointSet(f"points {a}, {b}, {c} are collinear", (a, b, c))
    if len(labels) == 2 and points[labels[0]] == points[labels[1]]:
        raise DegeneratePointSet("coincident points", tuple(labels))
    xs = segment_crossings(points, combinations(labels, 2))
    for e, recs in xs.items():
        for (t1, f1, _), (t2, f2, _) in zip(recs, recs[1:]):
            if t1 == t2:
                raise DegeneratePointSet(f"edges {e}, {f1}, {f2} are concurrent", (e, f1, f2))


def assemble_spec(rotations: dict, crossing_lists: dict, metadata=None) -> DrawingSpec:
    """Turn per-edge ordered ``(other, sign)`` lists into a :class:`DrawingSpec`."""
    pos = {}
    for e, recs in crossing_lists.items():
        for p, (f, _) in enumerate(recs):
            pos[(e, f)] = p
    crossings = {
        e: tuple(Crossing(f, pos[(f, e)], sg) for f, sg in recs)
        for e, recs in crossing_lists.items()
    }
    return DrawingSpec(
        tuple(rotations),
        {v: canonical_rotation(r) for v, r in rotations.items()},
        crossings,
        metadata or {},
    )


def from_points(points, metadata=None) -> DrawingSpec:
    """Straight-line drawing of K_n on ``points``.

    ``points`` is a sequence (labels 0..n-1) or a mapping label -> (x, y).
    """
    if not isinstance(points, dict):
        points = dict(enumerate(points))
    points = {k: (Fraction(p[0]), Fraction(p[1])) for k, p in points.items()}
    check_general_position(points)
    labels = sorted(points)
    xs = segment_crossings(points, combinations(labels, 2))
    lists = {e: [(f, sg) for _, f, sg in recs] for e, recs in xs.items()}
    rotations = {
        v: ccw_sort(points[v], {w: points[w] for w in labels if w != v}) for v in labels
    }
    return assemble_spec(rotations, lists, metadata)


def circle_point(t) -> tuple[Fraction, Fraction]:
    """Rational point on the unit circle; increasing ``t`` runs counterclockwise."""
    t = Fraction(t)
    den = 1 + t * t
    return ((1 - t * t) / den, 2 * t / den)
