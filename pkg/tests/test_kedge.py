from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kedges.constructors import gen_convex, gen_cylindrical, gen_random, gen_twopage, search_twopage_optimal
from kedges.drawing import build, delete_vertex
from kedges.errors import RecursionViolation
from kedges.kedge import (
    KEdgeProfile,
    check_cr_identity,
    check_incident_pair_lemmas,
    check_invariant_face_independence,
    check_recursion,
    check_vertex_pattern,
    cr_from_triple,
    double_cumulate,
    invariant_stats,
    k_value,
    kvalue_table,
    lower_bound_predicate,
    profile,
    side_count_check,
    triple_cumulate,
    triple_table,
    vertex_triple_value,
)
from kedges.geometry import from_points

from oracles import brute_E, brute_E3, brute_k_value, outer_face


def k3():
    return build(from_points([(0, 0), (1, 0), (0, 1)]))


def twopage_opt(n):
    return build(gen_twopage(n, search_twopage_optimal(n)))


small_drawings = st.one_of(
    st.builds(lambda n, s: gen_random(n, s), st.integers(4, 8), st.integers(0, 10**6)),
    st.builds(gen_cylindrical, st.integers(4, 9)),
    st.builds(gen_convex, st.integers(4, 8)),
)


# --- k-values --------------------------------------------------------------

def test_k3_values():
    D = k3()
    for f in D.faces:
        for e in D.edges:
            assert k_value(D, e, f.id) == 0


def test_convex_k5_values():
    D = build(gen_convex(5))
    F = outer_face(D)
    assert k_value(D, (0, 1), F) == 0      # hull edge
    assert k_value(D, (0, 4), F) == 0      # hull edge closing the parabola
    assert k_value(D, (0, 2), F) == 1      # diagonal
    assert k_value(D, (2, 0), F) == 1      # orientation does not matter


@given(small_drawings, st.data())
def test_k_values_match_flood_fill(spec, data):
    D = build(spec)
    F = data.draw(st.sampled_from([f.id for f in D.faces]))
    for e in D.edges:
        assert k_value(D, e, F) == brute_k_value(D, e, F)


@given(small_drawings)
def test_vertex_pattern(spec):
    D = build(spec)
    for f in D.faces:
        assert check_vertex_pattern(D, f.id).ok


# --- profiles ----------------------------------------------------------------

def test_profile_convex_k5_outer():
    D = build(gen_convex(5))
    p = profile(D, outer_face(D))
    assert p.E == (5, 5) and p.E3[0] == 5 and p.cr == 5 and p.H == 1 and p.m == 0


def test_profile_k3():
    D = k3()
    p = profile(D, D.faces[0].id)
    assert p.E == (3,) and p.E2 == (3,) and p.E3 == (3,)


@given(st.lists(st.integers(0, 50), min_size=1, max_size=7))
def test_triple_cumulation_two_ways(E):
    # C(k+2-i, 2) weights equal double cumulation applied twice with a shift
    E2 = double_cumulate(E)
    via_e2 = [sum(E2[i] for i in range(k + 1)) for k in range(len(E))]
    assert triple_cumulate(E) == via_e2 == brute_E3(E)


@given(small_drawings, st.data())
def test_profile_matches_brute_force(spec, data):
    D = build(spec)
    F = data.draw(st.sampled_from([f.id for f in D.faces]))
    p = profile(D, F)
    assert list(p.E) == brute_E(D, F)
    assert sum(p.E) == comb(D.n, 2)


# --- crossing identity ---------------------------------------------------------

def test_cr_identity_convex_k5():
    D = build(gen_convex(5))
    check_cr_identity(D)
    assert all(row[0] == 5 for row in triple_table(D))


def test_cr_identity_cylindrical_k7():
    D = build(gen_cylindrical(7))
    assert D.crossing_count == 9
    check_cr_identity(D)
    assert all(row[1] == 15 for row in triple_table(D))


def test_cr_identity_twopage_k6():
    D = twopage_opt(6)
    assert D.crossing_count == 3
    check_cr_identity(D)
    assert all(row[1] + row[0] == 18 for row in triple_table(D))


@given(small_drawings)
def test_cr_identity_everywhere(spec):
    D = build(spec)
    if D.n >= 5:
        assert check_cr_identity(D).ok
        E3 = triple_table(D)
        assert len({cr_from_triple(D.n, row) for row in E3}) == 1


def test_lower_bound_predicate():
    D = build(gen_convex(5))
    assert all(lower_bound_predicate(profile(D, f.id)) for f in D.faces)
    C = build(gen_cylindrical(7))
    p = profile(C, C.faces[0].id)
    assert p.E3[1] == 15 and lower_bound_predicate(p)
    zero = KEdgeProfile("x", 0, 7, (0, 0, 0), (0, 0, 0), (0, 0, 0), 0)
    assert not lower_bound_predicate(zero)


# --- per-vertex values -----------------------------------------------------------

def test_vertex_triple_k3():
    D = k3()
    assert vertex_triple_value(D, 0, D.faces[0].id, 0) == 2


def test_vertex_triple_convex_k5_hull_vertex():
    D = build(gen_convex(5))
    assert vertex_triple_value(D, 0, outer_face(D), 1) == 2 * comb(4, 3)


@given(small_drawings)
def test_vertex_triple_closed_form(spec):
    D = build(spec)
    m = D.n // 2 - 2
    for f in D.faces:
        for v in f.vertices:
            assert vertex_triple_value(D, v, f.id, max(m, 0)) == 2 * comb(max(m, 0) + 3, 3)


# --- invariant edges ---------------------------------------------------------------

def test_invariant_stats_k4():
    D = build(gen_convex(4))
    tr = delete_vertex(D, 0)
    for f in D.faces:
        st_ = invariant_stats(D, 0, f.id)
        assert st_.image_face == tr.face_map[f.id]
        assert all(k_value(tr.subdrawing, e, st_.image_face) == 0 for e in tr.subdrawing.edges)
        was_zero = sum(1 for e in tr.subdrawing.edges if k_value(D, e, f.id) == 0)
        assert st_.I[0] == was_zero


def test_recursion_convex_k5_brute_force():
    D = build(gen_convex(5))
    for v in D.vertices:
        tr = delete_vertex(D, v)
        for f in D.faces:
            check_recursion(D, v, f.id)
            # both sides independently at k = 0
            lhs = brute_E3(brute_E(D, f.id))[0]
            inv = sum(1 for e in tr.subdrawing.edges
                      if brute_k_value(D, e, f.id) == 0
                      and brute_k_value(tr.subdrawing, e, tr.face_map[f.id]) == 0)
            at_v = sum(1 for w in D.vertices if w != v and brute_k_value(D, (v, w), f.id) == 0)
            assert lhs == 0 + at_v + inv


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_recursion_random_k7(seed):
    D = build(gen_random(7, seed))
    for v in D.vertices:
        assert check_recursion(D, v).ok


@given(small_drawings)
def test_recursion_property(spec):
    D = build(spec)
    for v in D.vertices:
        check_recursion(D, v)


def test_recursion_violation_raised(monkeypatch):
    D = build(gen_convex(6))
    check_recursion(D, 0)
    key = ("inv", 0)
    trace, sub, img, before, after = D.memo[key]
    D.memo[key] = (trace, sub, img, before, np.where(after == 0, 1, after))
    with pytest.raises(RecursionViolation) as exc:
        check_recursion(D, 0)
    assert exc.value.vertex == 0


@given(small_drawings)
def test_incident_pair_lemmas(spec):
    D = build(spec)
    assert check_incident_pair_lemmas(D).ok


def test_face_independence_cylindrical_k7():
    D = build(gen_cylindrical(7))
    for v in D.vertices:
        assert check_invariant_face_independence(D, v).ok


@pytest.mark.parametrize("seed", [0, 5])
def test_face_independence_random_k9(seed):
    D = build(gen_random(9, seed))
    for v in D.vertices:
        assert check_invariant_face_independence(D, v).ok


def test_face_independence_not_asserted_for_even_n():
    D = build(gen_convex(6))
    assert check_invariant_face_independence(D, 0).details == {"applicable": False}


# --- side counts ---------------------------------------------------------------------

def test_side_count_convex_k5_adjacent_hull():
    D = build(gen_convex(5))
    v = side_count_check(D, outer_face(D), 0, 1)
    assert v.ok and v.details["j"] == 0 and 0 in v.details["counts"]


def test_side_count_convex_k6_distance_two():
    D = build(gen_convex(6))
    v = side_count_check(D, outer_face(D), 0, 2)
    assert v.ok and v.details["j"] == 1 and 1 in v.details["counts"]


def test_side_count_k3():
    D = k3()
    v = side_count_check(D, D.faces[0].id, 0, 1)
    assert v.ok and v.details["j"] == 0


@given(small_drawings, st.data())
def test_side_count_property(spec, data):
    D = build(spec)
    candidates = [f for f in D.faces if len(f.vertices) >= 2]
    if not candidates:
        return
    f = data.draw(st.sampled_from(candidates))
    u, v = data.draw(st.permutations(sorted(f.vertices)))[:2]
    assert side_count_check(D, f.id, u, v).ok


def test_kvalue_range():
    D = build(gen_random(9, 4))
    t = kvalue_table(D)
    assert t.min() >= 0 and t.max() <= D.n // 2 - 1
