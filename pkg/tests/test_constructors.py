from fractions import Fraction
from itertools import combinations, product
from math import comb

import pytest
from hypothesis import given, strategies as st

from kedges.constructors import (
    BOTTOM,
    TOP,
    convex_abscissae,
    gen_convex,
    gen_cylindrical,
    gen_random,
    gen_twopage,
    harary_hill,
    search_twopage_optimal,
    twopage_crossings,
)
from kedges.drawing import build, validate_goodness
from kedges.errors import BudgetExhausted, DegeneratePointSet
from kedges.geometry import check_general_position, circle_point, from_points

from oracles import convex_quadrilaterals

H_VALUES = {5: 1, 6: 3, 7: 9, 8: 18, 9: 36, 10: 60, 11: 100, 12: 150}


def test_from_points_triangle():
    spec = from_points([(0, 0), (1, 0), (0, 1)])
    assert spec.n == 3 and spec.crossing_count == 0


def test_from_points_convex_four():
    spec = from_points([(i, i * i) for i in range(1, 5)])
    assert spec.crossing_count == 1
    # labels 0..3: the crossing pair is the two diagonals
    assert [c.edge for c in spec.crossings[(0, 2)]] == [(1, 3)]


def test_from_points_convex_five():
    assert from_points([(i, i * i) for i in range(1, 6)]).crossing_count == 5


def test_collinear_rejected_with_witness():
    with pytest.raises(DegeneratePointSet) as exc:
        from_points([(0, 0), (1, 1), (2, 2), (0, 5)])
    assert set(exc.value.witness) == {0, 1, 2}


def test_concurrent_diagonals_rejected():
    # regular-hexagon-like configuration with three diagonals through the origin
    pts = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)]
    with pytest.raises(DegeneratePointSet):
        check_general_position(dict(enumerate(pts)))


def test_parabola_abscissae():
    assert convex_abscissae(8) == list(range(1, 9))
    xs = convex_abscissae(10)
    assert xs == sorted(xs)


@pytest.mark.parametrize("n", range(3, 11))
def test_convex_count(n):
    spec = gen_convex(n)
    assert spec.crossing_count == comb(n, 4)
    assert validate_goodness(build(spec)).ok


def test_convex_k5_excess():
    assert gen_convex(5).crossing_count - harary_hill(5) == 4


@pytest.mark.parametrize("n", range(3, 13))
def test_cylindrical_count(n):
    spec = gen_cylindrical(n)
    assert spec.crossing_count == harary_hill(n)
    assert validate_goodness(build(spec)).ok


def test_cylindrical_metadata_is_exact():
    meta = gen_cylindrical(9).metadata
    assert Fraction(meta["offset"]) > 0 and isinstance(meta["jitter"], str)


def test_twopage_opposite_diagonals():
    pages = {e: TOP for e in combinations(range(4), 2)}
    pages[(1, 3)] = BOTTOM
    assert gen_twopage(4, pages).crossing_count == 0 == harary_hill(4)


def test_twopage_single_page_is_convex():
    assert gen_twopage(5, [False] * 10).crossing_count == 5


@given(st.integers(4, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))))
def test_twopage_count_matches_interleaving(case):
    n, pages = case
    spec = gen_twopage(n, pages)
    D = build(spec)
    assert D.crossing_count == twopage_crossings(n, pages)
    mirrored = gen_twopage(n, [not p for p in pages])
    assert mirrored.crossing_count == spec.crossing_count


def _exhaustive_twopage_min(n):
    edges = list(combinations(range(n), 2))
    idx = {e: i for i, e in enumerate(edges)}
    pairs = [(idx[a], idx[b]) for a, b in combinations(edges, 2)
             if a[0] < b[0] < a[1] < b[1] or b[0] < a[0] < b[1] < a[1]]
    best = None
    for mask in range(1 << (len(edges) - 1)):  # fix the page of the last edge by symmetry
        c = sum(1 for i, j in pairs if ((mask >> i) ^ (mask >> j)) & 1 == 0)
        best = c if best is None else min(best, c)
    return best


@pytest.mark.parametrize("n", [5, 6])
def test_search_matches_exhaustive(n):
    pages = search_twopage_optimal(n)
    assert twopage_crossings(n, pages) == _exhaustive_twopage_min(n) == harary_hill(n)


def test_search_n9():
    pages = search_twopage_optimal(9)
    assert twopage_crossings(9, pages) == 36
    assert gen_twopage(9, pages).crossing_count == 36


def test_search_budget():
    with pytest.raises(BudgetExhausted) as exc:
        search_twopage_optimal(10, budget=3)
    assert exc.value.best is not None and exc.value.best_cost >= harary_hill(10)


def test_random_deterministic():
    assert gen_random(5, 42) == gen_random(5, 42)
    assert gen_random(5, 42).drawing_id() == gen_random(5, 42).drawing_id()


@given(st.integers(0, 2**64 - 1))
def test_random_k5_range(seed):
    c = gen_random(5, seed).crossing_count
    assert harary_hill(5) <= c <= comb(5, 4)


def test_random_k3():
    assert gen_random(3, 9).crossing_count == 0


@given(st.integers(4, 9), st.integers(0, 10**9))
def test_random_matches_convex_quadrilateral_count(n, seed):
    import random

    rng = random.Random(seed)
    pts = [(rng.randrange(1 << 16), rng.randrange(1 << 16)) for _ in range(n)]
    try:
        spec = from_points(pts)
    except DegeneratePointSet:
        return
    assert spec.crossing_count == convex_quadrilaterals(pts)


def test_circle_points_are_exact():
    for t in (Fraction(-3, 2), 0, Fraction(1, 7), 5):
        x, y = circle_point(t)
        assert x * x + y * y == 1


@pytest.mark.parametrize("n,h", sorted(H_VALUES.items()) + [(13, 225), (3, 0), (4, 0)])
def test_harary_hill(n, h):
    assert harary_hill(n) == h
