"""k-edges, their cumulated counts, invariant edges and the identities they obey.

Triangle orientations are read off a parity table instead of one flood fill
per triangle: fix a base face and a spanning tree of the dual graph. The
tree path from the base face to a face ``F`` crosses each edge some number
of times; ``F`` and the base face lie on the same side of a triangle exactly
when the path crosses the triangle's three edges an even number of times in
total. :func:`kedges.drawing.triangle_partition` remains the direct route.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import NamedTuple

import numpy as np

from .constructors import harary_hill
from .drawing import PlanarizedDrawing, delete_vertex, edge_key
from .errors import IdentityViolation, RecursionViolation


def kmax(n: int) -> int:
    """Largest possible k-value, floor(n/2) - 1."""
    return n // 2 - 1


def top_index(n: int) -> int:
    """m = floor(n/2) - 2, the top index used by all bounds."""
    return n // 2 - 2


def _weights(size: int, order: int) -> np.ndarray:
    w = np.zeros((size, size), dtype=np.int64)
    for k in range(size):
        for i in range(k + 1):
            w[k, i] = k + 1 - i if order == 2 else comb(k + 2 - i, 2)
    return w


def double_cumulate(values) -> list[int]:
    """sum_{i<=k} (k+1-i) * values[i] for every k."""
    return [sum((k + 1 - i) * values[i] for i in range(k + 1)) for k in range(len(values))]


def triple_cumulate(values) -> list[int]:
    """sum_{i<=k} C(k+2-i, 2) * values[i] for every k."""
    return [sum(comb(k + 2 - i, 2) * values[i] for i in range(k + 1)) for k in range(len(values))]


def at(vec, k: int) -> int:
    """``vec[k]`` with the convention that index -1 reads as 0."""
    return 0 if k < 0 else int(vec[k])


# --------------------------------------------------------------------------
# orientation tables

def _face_parity(D: PlanarizedDrawing) -> np.ndarray:
    """faces x edges table: parity of dual-tree crossings from the base face."""
    table = np.zeros((len(D.faces), len(D.edges)), dtype=np.int64)
    seen = {D.faces[0].id}
    queue = deque([D.faces[0].id])
    while queue:
        f = queue.popleft()
        row = table[D.face_index[f]]
        for d in D.face_by_id[f].darts:
            g = D.face_of[d ^ 1]
            if g not in seen:
                seen.add(g)
                gi = D.face_index[g]
                table[gi] = row
                table[gi, D.seg_edge[d >> 1]] ^= 1
                queue.append(g)
    return table


def _triangles(D: PlanarizedDrawing):
    return list(combinations(D.vertices, 3))


def triangle_left_table(D: PlanarizedDrawing) -> np.ndarray:
    """faces x triangles 0/1 table: is the face left of ``a -> b -> c`` (a < b < c)?"""
    if "left" in D.memo:
        return D.memo["left"]
    tris = _triangles(D)
    nf = len(D.faces)
    if not tris:
        D.memo["left"] = np.zeros((nf, 0), dtype=np.int64)
        return D.memo["left"]
    par = _face_parity(D)
    mask = np.zeros((len(D.edges), len(tris)), dtype=np.int64)
    anchor = np.zeros(len(tris), dtype=np.int64)
    for t, (a, b, c) in enumerate(tris):
        for e in ((a, b), (b, c), (a, c)):
            mask[D.edge_index[e], t] = 1
        anchor[t] = D.face_index[D.face_of[D.path(a, b)[0]]]
    side = (par @ mask) & 1
    left = 1 ^ side ^ side[anchor, np.arange(len(tris))]
    D.memo["left"] = left
    return left


def plus_count_table(D: PlanarizedDrawing) -> np.ndarray:
    """faces x edges table: number of triangles on edge (u, v), u < v, with the face on their left."""
    if "plus" in D.memo:
        return D.memo["plus"]
    left = triangle_left_table(D)
    tris = _triangles(D)
    rank = {v: i for i, v in enumerate(D.vertices)}
    sign = np.zeros((len(tris), len(D.edges)), dtype=np.int64)
    offset = np.zeros(len(D.edges), dtype=np.int64)
    for t, tri in enumerate(tris):
        for u, v in combinations(tri, 2):
            w = next(x for x in tri if x != u and x != v)
            e = D.edge_index[(u, v)]
            # u -> v -> w agrees with the sorted orientation unless w lies between u and v
            if rank[u] < rank[w] < rank[v]:
                sign[t, e] = -1
                offset[e] += 1
            else:
                sign[t, e] = 1
    plus = left @ sign + offset
    D.memo["plus"] = plus
    return plus


def kvalue_table(D: PlanarizedDrawing) -> np.ndarray:
    """faces x edges table of k-values."""
    if "k" not in D.memo:
        plus = plus_count_table(D)
        D.memo["k"] = np.minimum(plus, D.n - 2 - plus)
    return D.memo["k"]


def k_value(D: PlanarizedDrawing, e, F: int) -> int:
    """k-value of edge ``e`` with respect to reference face ``F``."""
    return int(kvalue_table(D)[D.face_index[F], D.edge_index[edge_key(*e)]])


def _histogram(table: np.ndarray, size: int) -> np.ndarray:
    """Row-wise counts of the values 0..size-1 (other values are ignored)."""
    return (table[:, :, None] == np.arange(size)).sum(axis=1)


def kedge_counts(D: PlanarizedDrawing) -> np.ndarray:
    """faces x (floor(n/2)) table of E_k."""
    if "E" not in D.memo:
        D.memo["E"] = _histogram(kvalue_table(D), max(kmax(D.n) + 1, 1))
    return D.memo["E"]


def triple_table(D: PlanarizedDrawing) -> np.ndarray:
    """faces x k table of E^3_k."""
    if "E3" not in D.memo:
        E = kedge_counts(D)
        D.memo["E3"] = E @ _weights(E.shape[1], 3).T
    return D.memo["E3"]


# --------------------------------------------------------------------------
# profiles

@dataclass(frozen=True)
class KEdgeProfile:
    drawing_id: str
    face: int
    n: int
    E: tuple[int, ...]
    E2: tuple[int, ...]
    E3: tuple[int, ...]
    cr: int

    @property
    def m(self) -> int:
        return top_index(self.n)

    @property
    def H(self) -> int:
        return harary_hill(self.n)


def profile(D: PlanarizedDrawing, F: int) -> KEdgeProfile:
    E = [int(x) for x in kedge_counts(D)[D.face_index[F]]]
    if sum(E) != comb(D.n, 2):
        raise IdentityViolation(f"k-edge counts sum to {sum(E)}, not C(n,2)", face=F)
    return KEdgeProfile(
        D.drawing_id, F, D.n, tuple(E),
        tuple(double_cumulate(E)), tuple(triple_cumulate(E)), D.crossing_count,
    )


def profiles(D: PlanarizedDrawing) -> list[KEdgeProfile]:
    return [profile(D, f.id) for f in D.faces]


class Verdict(NamedTuple):
    ok: bool
    name: str
    details: dict


def cr_from_triple(n: int, E3) -> int:
    """Crossing number implied by triple cumulated k-edges."""
    m = top_index(n)
    if n % 2:
        return 2 * at(E3, m) - n * (n - 1) * (n - 3) // 8
    return at(E3, m) + at(E3, m - 1) - n * (n - 1) * (n - 2) // 8


def check_cr_identity(D: PlanarizedDrawing) -> Verdict:
    """cr(D) from the triple cumulated k-edges, at every face.

    Raises :class:`IdentityViolation` on the first face that disagrees.
    """
    E3 = triple_table(D)
    for f in D.faces:
        got = cr_from_triple(D.n, E3[D.face_index[f.id]])
        if got != D.crossing_count:
            raise IdentityViolation(
                f"face {f.id}: identity gives {got}, drawing has {D.crossing_count} crossings",
                face=f.id,
            )
    m = top_index(D.n)
    inv = at(E3[0], m) if D.n % 2 else at(E3[0], m) + at(E3[0], m - 1)
    return Verdict(True, "cr-identity", {"cr": D.crossing_count, "invariant": inv, "faces": len(D.faces)})


def lower_bound_predicate(p: KEdgeProfile) -> bool:
    """Whether the triple cumulated bounds that imply cr(D) >= H(n) hold at this face."""
    n = p.n
    if n % 2:
        h = (n - 1) // 2
        return at(p.E3, h - 2) >= 3 * comb(h + 2, 4)
    h = n // 2
    return at(p.E3, h - 2) >= 3 * comb(h + 2, 4) and at(p.E3, h - 3) >= 3 * comb(h + 1, 4)


def vertex_kvalues(D: PlanarizedDrawing, v: int, F: int) -> dict[int, int]:
    """k-values (w.r.t. ``F``) of the edges at ``v``, keyed by the other endpoint."""
    row = kvalue_table(D)[D.face_index[F]]
    return {w: int(row[D.edge_index[edge_key(v, w)]]) for w in D.vertices if w != v}


def vertex_triple_value(D: PlanarizedDrawing, v: int, F: int, k: int) -> int:
    """E^3_k(D, v): triple cumulated count restricted to the edges at ``v``."""
    return sum(comb(k + 2 - i, 2) for i in vertex_kvalues(D, v, F).values() if i <= k)


# --------------------------------------------------------------------------
# invariant edges

@dataclass(frozen=True)
class InvariantStats:
    drawing_id: str
    vertex: int
    face: int
    image_face: int
    I: tuple[int, ...]
    I2: tuple[int, ...]
    vertex_triple: tuple[int, ...]
    # per surviving vertex w: counts of invariant k-edges at w
    at_vertex: dict

    def cumulated_at(self, w: int) -> list[int]:
        return double_cumulate(self.at_vertex[w])


def _deletion(D: PlanarizedDrawing, v: int):
    key = ("del", v)
    if key not in D.memo:
        D.memo[key] = delete_vertex(D, v)
    return D.memo[key]


def _invariant_tables(D: PlanarizedDrawing, v: int):
    """For every face of D: k-values of surviving edges in D and in D - v."""
    key = ("inv", v)
    if key in D.memo:
        return D.memo[key]
    trace = _deletion(D, v)
    sub = trace.subdrawing
    surv = [D.edge_index[e] for e in sub.edges]
    img = np.array([sub.face_index[trace.face_map[f.id]] for f in D.faces], dtype=np.int64)
    before = kvalue_table(D)[:, surv]
    after = kvalue_table(sub)[img] if sub.edges else np.zeros((len(D.faces), 0), dtype=np.int64)
    D.memo[key] = (trace, sub, img, before, after)
    return D.memo[key]


def invariant_stats(D: PlanarizedDrawing, v: int, F: int) -> InvariantStats:
    trace, sub, img, before, after = _invariant_tables(D, v)
    i = D.face_index[F]
    size = max(kmax(D.n) + 1, 1)
    same = before[i] == after[i]
    I = [int(((before[i] == k) & same).sum()) for k in range(size)]
    at_vertex = {}
    for w in sub.vertices:
        cols = [c for c, e in enumerate(sub.edges) if w in e]
        at_vertex[w] = tuple(
            int(((before[i, cols] == k) & same[cols]).sum()) for k in range(size)
        )
    vt = tuple(vertex_triple_value(D, v, F, k) for k in range(size))
    return InvariantStats(
        D.drawing_id, v, F, trace.face_map[F], tuple(I), tuple(double_cumulate(I)), vt, at_vertex
    )


def check_recursion(D: PlanarizedDrawing, v: int, F: int | None = None) -> Verdict:
    """E3_k(D) = E3_{k-1}(D-v) + E3_k(D,v) + I2_k(D, D-v) for k <= floor(n/2)-2.

    Checks one face, or every face when ``F`` is None. Raises
    :class:`RecursionViolation` on the first mismatch.
    """
    if D.n < 4:
        return Verdict(True, "recursion", {"vertex": v, "checked": 0})
    trace, sub, img, before, after = _invariant_tables(D, v)
    rows = np.arange(len(D.faces)) if F is None else np.array([D.face_index[F]])
    size = kmax(D.n) + 1
    top = top_index(D.n) + 1
    vcols = [D.edge_index[edge_key(v, w)] for w in D.vertices if w != v]
    I = _histogram(np.where(before == after, before, -1)[rows], size)
    I2 = I @ _weights(size, 2).T
    E3v = _histogram(kvalue_table(D)[rows][:, vcols], size) @ _weights(size, 3).T
    E3_sub = triple_table(sub)[img[rows]]
    shifted = np.zeros((len(rows), size), dtype=np.int64)
    width = min(size - 1, E3_sub.shape[1])
    shifted[:, 1:1 + width] = E3_sub[:, :width]
    lhs = triple_table(D)[rows][:, :top]
    rhs = (shifted + E3v + I2)[:, :top]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        r, k = bad[0]
        f = D.faces[rows[r]].id
        raise RecursionViolation(
            f"k={k}, v={v}, face={f}: {int(lhs[r, k])} != {int(rhs[r, k])}", k=int(k), vertex=v, face=f
        )
    checked = lhs.size
    return Verdict(True, "recursion", {"vertex": v, "checked": checked})


def check_invariant_face_independence(D: PlanarizedDrawing, v: int) -> Verdict:
    """For n odd, I2_m(D, D-v) agrees over all faces incident to ``v``."""
    if D.n % 2 == 0:
        return Verdict(True, "invariant-face-independence", {"applicable": False})
    m = top_index(D.n)
    _, _, _, before, after = _invariant_tables(D, v)
    size = kmax(D.n) + 1
    I2 = _histogram(np.where(before == after, before, -1), size) @ _weights(size, 2).T
    values = {f: int(I2[D.face_index[f], m]) for f in sorted(D.vertex_faces[v])}
    ok = len(set(values.values())) <= 1
    return Verdict(ok, "invariant-face-independence", {"applicable": True, "values": values})


def _invariant_at_vertices(D: PlanarizedDrawing, v: int) -> dict:
    """w -> faces x k table of invariant k-edges at w when ``v`` is deleted."""
    key = ("inv_at", v)
    if key not in D.memo:
        _, sub, _, before, after = _invariant_tables(D, v)
        size = max(kmax(D.n) + 1, 1)
        inv = np.where(before == after, before, -1)
        D.memo[key] = {
            w: _histogram(inv[:, [c for c, e in enumerate(sub.edges) if w in e]], size)
            for w in sub.vertices
        }
    return D.memo[key]


def check_incident_pair_lemmas(D: PlanarizedDrawing, F: int | None = None) -> Verdict:
    """For all v, w on face ``F``: deleting v leaves at least floor(n/2)-1 invariant
    edges at w, and their double cumulation is at least C(k+2, 2) for k <= floor(n/2)-2.

    Checks every face when ``F`` is None.
    """
    top = top_index(D.n) + 1
    size = max(kmax(D.n) + 1, 1)
    w2 = _weights(size, 2).T
    need = np.array([comb(k + 2, 2) for k in range(size)])[:top]
    targets = D.faces if F is None else [D.face_by_id[F]]
    failures = []
    for v in D.vertices:
        faces_v = [f for f in targets if v in f.vertices]
        if not faces_v or D.n < 2:
            continue
        at_w = _invariant_at_vertices(D, v)
        for f in faces_v:
            i = D.face_index[f.id]
            for w in sorted(f.vertices):
                if w == v:
                    continue
                counts = at_w[w][i]
                if counts.sum() < D.n // 2 - 1:
                    failures.append(("count", f.id, v, w, int(counts.sum())))
                cum = (counts @ w2)[:top]
                bad = np.nonzero(cum < need)[0]
                if len(bad):
                    k = int(bad[0])
                    failures.append(("cumulated", f.id, v, w, k, int(cum[k])))
    return Verdict(not failures, "incident-pair-lemmas", {"face": F, "failures": failures})


def check_vertex_pattern(D: PlanarizedDrawing, F: int) -> Verdict:
    """Around a vertex on ``F``, edges e_0..e_{n-2} (ccw, starting after the
    corner in F) have k-values min(i, n-2-i)."""
    failures = []
    row = kvalue_table(D)[D.face_index[F]]
    for d in D.face_by_id[F].darts:
        if D.dart_origin[d] >= D.n:
            continue
        v = D.vertices[D.dart_origin[d]]
        got = []
        x = D.sigma[d]
        for _ in range(D.n - 1):
            got.append(int(row[D.seg_edge[x >> 1]]))
            x = D.sigma[x]
        want = [min(i, D.n - 2 - i) for i in range(D.n - 1)]
        if got != want:
            failures.append((v, got))
    return Verdict(not failures, "vertex-pattern", {"face": F, "failures": failures})


def side_count_check(D: PlanarizedDrawing, F: int, u: int, v: int) -> Verdict:
    """Close edge uv by an arc through ``F`` and count vertices on each side.

    For u, v on ``F`` with uv a j-edge the counts are {j, n-2-j}.
    """
    face = D.face_by_id[F]
    if u not in face.vertices or v not in face.vertices:
        raise ValueError(f"vertices {u} and {v} must both lie on face {F}")
    nu, nv = D.node_of_vertex[u], D.node_of_vertex[v]
    orbit = list(face.darts)
    iu = next(i for i, d in enumerate(orbit) if D.dart_origin[d] == nu)
    orbit = orbit[iu:] + orbit[:iu]
    iv = next(i for i, d in enumerate(orbit) if D.dart_origin[d] == nv)
    half_a = set(orbit[:iv])

    def node(d):
        f = D.face_of[d]
        if f != F:
            return f
        return "a" if d in half_a else "b"

    wall = set(D.edge_segments[D.edge_index[edge_key(u, v)]])
    adj = {}
    for s in range(D.segment_count):
        if s in wall:
            continue
        x, y = node(2 * s), node(2 * s + 1)
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set()).add(x)
    side = {"a"}
    queue = deque(["a"])
    while queue:
        x = queue.popleft()
        for y in adj.get(x, ()):
            if y not in side:
                side.add(y)
                queue.append(y)
    if "b" in side:
        raise IdentityViolation(f"closing {u}{v} through face {F} does not separate", face=F)
    others = [x for x in D.vertices if x not in (u, v)]
    count_a = sum(1 for x in others if node(D.out_dart(x, u)) in side)
    j = k_value(D, (u, v), F)
    counts = (count_a, len(others) - count_a)
    return Verdict(count_a in (j, D.n - 2 - j), "side-count", {"j": j, "counts": counts})
