"""Independent slow oracles used by the tests."""

from __future__ import annotations

from itertools import combinations, permutations
from math import comb

from kedges.drawing import delete_vertices, delete_vertex, edge_key, triangle_partition
from kedges.geometry import orient


def brute_k_value(D, e, F):
    """k-value by one flood fill per triangle."""
    u, v = edge_key(*e)
    i = sum(
        1 for w in D.vertices
        if w not in (u, v) and F in triangle_partition(D, u, v, w).left_faces
    )
    return min(i, D.n - 2 - i)


def brute_E(D, F):
    size = max(D.n // 2, 1)
    E = [0] * size
    for e in D.edges:
        E[brute_k_value(D, e, F)] += 1
    return E


def brute_E3(E):
    return [sum(comb(k + 2 - i, 2) * E[i] for i in range(k + 1)) for k in range(len(E))]


def convex_quadrilaterals(points):
    """Number of 4-subsets in convex position: the straight-line crossing count."""
    count = 0
    for quad in combinations(points, 4):
        inside = False
        for p in quad:
            a, b, c = [q for q in quad if q is not p]
            o = [orient(a, b, p), orient(b, c, p), orient(c, a, p)]
            if all(x > 0 for x in o) or all(x < 0 for x in o):
                inside = True
        count += not inside
    return count


def outer_face(D):
    """The unique face incident to the most vertices (the hull face of a convex drawing)."""
    return max(D.faces, key=lambda f: (len(f.vertices), -f.id)).id


class Subs:
    """Subdrawings of D keyed by removed set; plain memo, no search logic."""

    def __init__(self, D):
        self.D = D
        self.cache = {}

    def __call__(self, removed):
        key = frozenset(removed)
        if key not in self.cache:
            if not key:
                self.cache[key] = (self.D, {f.id: f.id for f in self.D.faces})
            else:
                self.cache[key] = delete_vertices(self.D, key)
        return self.cache[key]


def naive_simple(subs, base, F, v, length, forbidden=()):
    """Any simple sequence of ``length`` for v in D - base w.r.t. root face F, by enumeration."""
    sub, fmap = subs(base)
    pool = [u for u in sub.vertices if u != v and u not in forbidden]
    for seq in permutations(pool, length):
        if all(seq[i] in subs(set(base) | set(seq[:i]))[0].face_by_id[
                subs(set(base) | set(seq[:i]))[1][F]].vertices for i in range(length)):
            return seq
    return None


def naive_seq_shell(D, F, k, subs=None):
    subs = subs or Subs(D)
    for order in permutations(D.vertices, k + 1):
        ok = True
        for i, a in enumerate(order):
            sub, fmap = subs(order[:i])
            if a not in sub.face_by_id[fmap[F]].vertices:
                ok = False
                break
            if naive_simple(subs, order[:i], F, a, k - i + 1, forbidden=order[:i + 1]) is None:
                ok = False
                break
        if ok:
            return order
    return None


def naive_pair_sequence(D, v, paired, subs=None):
    subs = subs or Subs(D)
    length = D.n // 2 - 1
    others = [u for u in D.vertices if u != v]
    for seq in permutations(others, length):
        sub0 = D
        if not (sub0.vertex_faces[seq[0]] & sub0.vertex_faces[v]):
            continue
        ok = True
        for j in sorted(paired):
            sub = subs(seq[:j])[0]
            if not (sub.vertex_faces[seq[j]] & sub.vertex_faces[v]):
                ok = False
                break
            tr = delete_vertex(sub, seq[j])
            if seq[j + 1] not in tr.subdrawing.face_by_id[tr.superface].vertices:
                ok = False
                break
        if ok:
            return seq
    return None
