"""Generators for drawings of K_n: convex, random rectilinear, 2-page book and
Hill's cylindrical drawings."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .drawing import DrawingSpec, edge_key
from .errors import BudgetExhausted, ConstructionDegeneracy, DegenerateChords, DegeneratePointSet
from .geometry import assemble_spec, check_general_position, circle_point, from_points, segment_crossings

TOP, BOTTOM = "top", "bottom"


def harary_hill(n: int) -> int:
    return (n // 2) * ((n - 1) // 2) * ((n - 2) // 2) * ((n - 3) // 2) // 4


def convex_abscissae(n: int) -> list[int]:
    """Abscissae x_1 < ... < x_n whose parabola points (x, x^2) have no three
    concurrent diagonals. Starts from 1..n, which works up to n = 8."""
    for p in (1, 101, 103, 107, 109, 113, 127):
        xs = [i * p + (i ** 3 % p if p > 1 else 0) for i in range(1, n + 1)]
        try:
            check_general_position(dict(enumerate((x, x * x) for x in xs)))
        except DegeneratePointSet:
            continue
        return xs
    raise ConstructionDegeneracy(f"no concurrency-free parabola abscissae for n={n}")


def gen_convex(n: int) -> DrawingSpec:
    """Straight-line K_n on parabola points (x, x^2); C(n, 4) crossings."""
    if n < 3:
        raise ValueError("n must be at least 3")
    return from_points([(x, x * x) for x in convex_abscissae(n)], {"generator": "convex", "n": n})


def gen_random(n: int, seed: int, grid: int = 1 << 16) -> DrawingSpec:
    """Random rectilinear K_n on integer grid points, resampled until in general position."""
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = random.Random(seed)
    while True:
        pts = [(rng.randrange(grid), rng.randrange(grid)) for _ in range(n)]
        try:
            check_general_position(dict(enumerate(pts)))
        except DegeneratePointSet:
            continue
        return from_points(pts, {"generator": "random", "n": n, "seed": seed})


# --------------------------------------------------------------------------
# chords of a disk

def _chord_layer(order, chords, t_values):
    """Crossing lists for straight chords between points on a circle.

    ``order`` lists vertex labels counterclockwise, ``t_values`` the circle
    parameters used to place them. Returns ``{chord: [(other, sign), ...]}``
    ordered from the chord's lower endpoint.
    """
    pts = {v: circle_point(t) for v, t in zip(order, t_values)}
    xs = segment_crossings(pts, chords)
    for e, recs in xs.items():
        for (t1, f1, _), (t2, f2, _) in zip(recs, recs[1:]):
            if t1 == t2:
                raise DegenerateChords(f"chords {e}, {f1}, {f2} are concurrent")
    return {e: [(f, sg) for _, f, sg in recs] for e, recs in xs.items()}


def _chord_layer_any(order, chords):
    """Like :func:`_chord_layer`, trying parameter sets until no three chords concur."""
    k = len(order)
    for attempt in range(64):
        ts = [Fraction(i) + Fraction(1, 7 + i * i + attempt * (i + 3)) for i in range(k)]
        shift = Fraction(k - 1, 2)
        try:
            return _chord_layer(order, chords, [t - shift for t in ts])
        except DegenerateChords:
            continue
    raise DegenerateChords("could not place chords without concurrency")


def _after(order, v):
    """The other labels of the cyclic ``order`` counterclockwise starting after ``v``."""
    i = order.index(v)
    return order[i + 1:] + order[:i]


def _negate(layer):
    return {e: [(f, -sg) for f, sg in recs] for e, recs in layer.items()}


def gen_twopage(n: int, pages) -> DrawingSpec:
    """2-page book drawing with spine order 0..n-1.

    ``pages`` maps each edge to :data:`TOP` or :data:`BOTTOM` (or is a
    sequence aligned with the lexicographic edge order, truthy = bottom).
    Top chords run inside the spine circle, bottom chords outside it; the
    outside is drawn as the reflection of an inside picture, which reverses
    orientation.
    """
    edges = list(combinations(range(n), 2))
    if not isinstance(pages, dict):
        pages = list(pages)
        if len(pages) != len(edges):
            raise ValueError("page assignment must cover every edge")
        pages = {e: (BOTTOM if p else TOP) for e, p in zip(edges, pages)}
    pages = {edge_key(*e): p for e, p in pages.items()}
    if set(pages) != set(edges) or not set(pages.values()) <= {TOP, BOTTOM}:
        raise ValueError("page assignment must map every edge to 'top' or 'bottom'")
    order = list(range(n))
    top = [e for e in edges if pages[e] == TOP]
    bottom = [e for e in edges if pages[e] == BOTTOM]
    lists = {e: [] for e in edges}
    lists.update(_chord_layer_any(order, top))
    lists.update(_negate(_chord_layer_any(order, bottom)))
    rotations = {}
    for v in order:
        nxt = _after(order, v)
        inside = [w for w in nxt if pages[edge_key(v, w)] == TOP]
        outside = [w for w in reversed(nxt) if pages[edge_key(v, w)] == BOTTOM]
        rotations[v] = inside + outside
    meta = {"generator": "twopage", "n": n,
            "pages": "".join("1" if pages[e] == BOTTOM else "0" for e in edges)}
    return assemble_spec(rotations, lists, meta)


def twopage_crossings(n: int, pages) -> int:
    """Interleaved same-page edge pairs; independent of any planarization."""
    edges = list(combinations(range(n), 2))
    if not isinstance(pages, dict):
        pages = {e: (BOTTOM if p else TOP) for e, p in zip(edges, pages)}
    count = 0
    for (i, j), (k, l) in combinations(edges, 2):
        if pages[(i, j)] == pages[(k, l)] and (i < k < j < l or k < i < l < j):
            count += 1
    return count


def search_twopage_optimal(n: int, budget: int = 200_000, seed: int = 0) -> dict:
    """Hill climbing with restarts over page assignments.

    Returns the first assignment with H(n) crossings. ``budget`` bounds the
    number of single-edge flips applied; when it runs out
    :class:`BudgetExhausted` carries the best assignment seen.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    edges = list(combinations(range(n), 2))
    idx = {e: i for i, e in enumerate(edges)}
    m = len(edges)
    conflicts = [[] for _ in range(m)]
    for (i, j), (k, l) in combinations(edges, 2):
        if i < k < j < l or k < i < l < j:
            conflicts[idx[(i, j)]].append(idx[(k, l)])
            conflicts[idx[(k, l)]].append(idx[(i, j)])
    target = harary_hill(n)
    rng = random.Random(seed)
    best, best_cost = None, None
    flips = 0
    while flips < budget:
        side = [rng.random() < 0.5 for _ in range(m)]
        same = [sum(side[g] == side[e] for g in conflicts[e]) for e in range(m)]
        cost = sum(same) // 2
        stall = 0
        while flips < budget:
            if best_cost is None or cost < best_cost:
                best, best_cost = list(side), cost
            if cost == target:
                return {e: (BOTTOM if side[i] else TOP) for i, e in enumerate(edges)}
            # gain of flipping e: same-page conflicts become cross-page and vice versa
            gains = [len(conflicts[e]) - 2 * same[e] for e in range(m)]
            low = min(gains)
            if low > 0 or (low == 0 and stall > 4 * m):
                break
            stall = stall + 1 if low == 0 else 0
            choice = rng.choice([e for e in range(m) if gains[e] == low])
            side[choice] = not side[choice]
            for g in conflicts[choice]:
                same[g] += 1 if side[g] == side[choice] else -1
            same[choice] = len(conflicts[choice]) - same[choice]
            cost += low
            flips += 1
    raise BudgetExhausted(
        f"no assignment with H({n}) = {target} crossings within budget",
        best={e: (BOTTOM if best[i] else TOP) for i, e in enumerate(edges)},
        best_cost=best_cost,
    )


# --------------------------------------------------------------------------
# cylindrical drawings

def _wrap(x: Fraction) -> Fraction:
    """Representative of ``x`` (in turns) in [-1/2, 1/2)."""
    return (x + Fraction(1, 2)) % 1 - Fraction(1, 2)


def _annulus_layer(outer_angle, inner_angle):
    """Crossings among annulus curves, each linear in (angle, radius).

    Curves run from an outer vertex at parameter s = 0 to an inner vertex at
    s = 1 along the shorter angular arc. In (angle, s) coordinates they are
    straight, and (angle, s) is orientation preserving in the plane since
    s grows as the radius shrinks.
    """
    curves = []
    for o, a in outer_angle.items():
        for i, b in inner_angle.items():
            curves.append(((o, i), a, _wrap(b - a)))
    hits = {c[0]: [] for c in curves}
    for (e, a1, d1), (f, a2, d2) in combinations(curves, 2):
        if set(e) & set(f) or d1 == d2:
            continue
        found = []
        for z in (-1, 0, 1):
            s = (a2 - a1 + z) / (d1 - d2)
            if 0 < s < 1:
                found.append(s)
        if len(found) > 1:
            raise ConstructionDegeneracy(f"annulus curves {e} and {f} cross twice")
        if found:
            sign = 1 if d1 > d2 else -1
            hits[e].append((found[0], f, sign))
            hits[f].append((found[0], e, -sign))
    for e, recs in hits.items():
        recs.sort()
        for (s1, f1, _), (s2, f2, _) in zip(recs, recs[1:]):
            if s1 == s2:
                raise ConstructionDegeneracy(f"curves {e}, {f1}, {f2} are concurrent")
    deltas = {e: d for e, _, d in curves}
    return {e: [(f, sg) for _, f, sg in recs] for e, recs in hits.items()}, deltas


def gen_cylindrical(n: int, offset: Fraction | None = None) -> DrawingSpec:
    """Hill's cylindrical drawing: H(n) crossings.

    Vertices 0..a-1 sit on the outer circle at angles k/a (turns), vertices
    a..n-1 on the inner circle at k/b + offset, with a = ceil(n/2) and
    b = floor(n/2). Inner-clique chords lie inside the inner circle,
    outer-clique chords outside the outer circle, and the remaining edges
    cross the annulus. ``offset`` defaults to the first of a fixed list of
    rationals that yields no coincident crossings.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    a, b = (n + 1) // 2, n // 2
    base = Fraction(1, 2 * a * b + 1)
    offsets = [Fraction(offset)] if offset is not None else [base * j for j in (1, 3, 5, 7)]
    # symmetric placements force triple points whatever the offset, so the
    # angles also get a jitter far below the angular resolution 1/(2ab)
    for jitter in (Fraction(0), base / 1000, base / 997, base / 10007):
        for phi in offsets:
            try:
                return _cylindrical(n, a, b, phi, jitter)
            except ConstructionDegeneracy:
                continue
    raise ConstructionDegeneracy(f"no usable inner offset for n={n}")


def _cylindrical(n, a, b, phi, jitter=Fraction(0)):
    outer = list(range(a))
    inner = list(range(a, n))
    outer_angle = {o: Fraction(k, a) + jitter * k * k for k, o in enumerate(outer)}
    inner_angle = {v: Fraction(k, b) + phi + jitter * (k * k * k + 1) / (n * n) for k, v in enumerate(inner)}

    lists = {e: [] for e in combinations(range(n), 2)}
    lists.update(_chord_layer_any(inner, list(combinations(inner, 2))))
    lists.update(_negate(_chord_layer_any(outer, list(combinations(outer, 2)))))
    annulus, deltas = _annulus_layer(outer_angle, inner_angle)
    lists.update(annulus)

    rotations = {}
    for o in outer:
        # counterclockwise from the tangent: inward darts, then outward chords
        inward = sorted(inner, key=lambda i: -deltas[(o, i)])
        rotations[o] = inward + list(reversed(_after(outer, o)))
    for i in inner:
        outward = sorted(outer, key=lambda o: -deltas[(o, i)])
        rotations[i] = _after(inner, i) + outward
    meta = {"generator": "cylindrical", "n": n, "offset": str(phi), "jitter": str(jitter)}
    return assemble_spec(rotations, lists, meta)
