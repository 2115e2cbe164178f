"""Planarized combinatorial embeddings of good drawings of complete graphs.

A drawing is described by a :class:`DrawingSpec`: the counterclockwise
rotation of neighbours around each vertex, and for every edge the ordered
list of crossings met while walking the edge from its lower endpoint to its
higher one. :func:`build` replaces every crossing by a degree-4 node, links
darts into a combinatorial map and traces the faces.

Conventions
-----------
Edge ``(u, w)`` with ``u < w`` and ``c`` crossings is cut into ``c + 1``
segments. Segment ``s`` (global index) owns dart ``2*s``, pointing from the
``u`` side towards ``w``, and its twin ``2*s + 1``. ``sigma[d]`` is the next
dart counterclockwise around the origin of ``d``. Faces lie to the left of
their darts, so the face successor of ``d`` is ``sigma_inv[d ^ 1]``. A face is
identified by the smallest dart id on its boundary.

A crossing record ``(other, q, sign)`` stored at position ``p`` of edge ``e``
says that ``e`` meets ``other`` at position ``q`` of ``other``'s list. With
``sign == +1`` the four darts leave the crossing node in counterclockwise
order ``e forward, other forward, e backward, other backward``; ``-1`` swaps
the two darts of ``other``.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Mapping, NamedTuple

from .errors import (
    DegenerateTriangle,
    GoodnessViolation,
    InconsistentCrossings,
    MalformedSpec,
    NotSphere,
    UnknownVertex,
)

Edge = tuple[int, int]


def edge_key(u: int, w: int) -> Edge:
    return (u, w) if u < w else (w, u)


class Crossing(NamedTuple):
    edge: Edge
    index: int
    sign: int


@dataclass(frozen=True)
class DrawingSpec:
    """Combinatorial description of a drawing of K_n.

    ``vertices`` may be arbitrary distinct integers; subdrawings keep the
    labels of the vertices they retain, so edges keep their identity.
    """

    vertices: tuple[int, ...]
    rotations: Mapping[int, tuple[int, ...]]
    crossings: Mapping[Edge, tuple[Crossing, ...]]
    metadata: Mapping[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        verts = tuple(sorted(self.vertices))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(
            self, "rotations", {v: tuple(r) for v, r in self.rotations.items()}
        )
        cr = {e: () for e in combinations(verts, 2)}
        for e, recs in self.crossings.items():
            cr[edge_key(*e)] = tuple(
                Crossing(edge_key(*r[0]), int(r[1]), int(r[2])) for r in recs
            )
        object.__setattr__(self, "crossings", cr)
        object.__setattr__(self, "metadata", dict(self.metadata))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> list[Edge]:
        return list(combinations(self.vertices, 2))

    @property
    def crossing_count(self) -> int:
        return sum(len(r) for r in self.crossings.values()) // 2

    def canonical(self) -> dict:
        """Plain-data form without metadata, used for hashing and files."""
        return {
            "vertices": list(self.vertices),
            "rotations": {str(v): list(self.rotations[v]) for v in self.vertices},
            "edges": [
                {
                    "u": e[0],
                    "v": e[1],
                    "crossings": [
                        {"edge": list(c.edge), "index": c.index, "sign": c.sign}
                        for c in self.crossings[e]
                    ],
                }
                for e in self.edges
            ],
        }

    def drawing_id(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def restrict(self, keep: Iterable[int]) -> DrawingSpec:
        """Spec of the subdrawing induced by ``keep``; crossing indices are re-packed."""
        keep = set(keep)
        unknown = keep - set(self.vertices)
        if unknown:
            raise UnknownVertex(sorted(unknown)[0])
        rot = {v: tuple(w for w in self.rotations[v] if w in keep) for v in keep}
        kept = {}
        for e in combinations(sorted(keep), 2):
            kept[e] = [c for c in self.crossings[e] if set(c.edge) <= keep]
        # position of each surviving crossing within the surviving list of its edge
        pos = {}
        for e, recs in kept.items():
            for p, c in enumerate(recs):
                pos[(e, c.edge)] = p
        cr = {
            e: tuple(Crossing(c.edge, pos[(c.edge, e)], c.sign) for c in recs)
            for e, recs in kept.items()
        }
        return DrawingSpec(tuple(keep), rot, cr, self.metadata)


class Violation(NamedTuple):
    kind: str
    edges: tuple
    message: str


def check_spec(spec: DrawingSpec) -> Violation | None:
    """First goodness or consistency violation of ``spec``, or ``None``.

    Structural problems (a rotation that is not a permutation of the other
    vertices, unknown edges) raise :class:`MalformedSpec` instead.
    """
    verts = spec.vertices
    vset = set(verts)
    if len(vset) != len(verts):
        raise MalformedSpec("duplicate vertex labels")
    if set(spec.rotations) != vset:
        raise MalformedSpec("rotations must be given for exactly the vertices")
    for v in verts:
        rot = spec.rotations[v]
        if sorted(rot) != sorted(vset - {v}):
            raise MalformedSpec(f"rotation at {v} is not a permutation of the other vertices")
    for e, recs in spec.crossings.items():
        if e[0] not in vset or e[1] not in vset or e[0] == e[1]:
            raise MalformedSpec(f"unknown edge {e}")
        seen = set()
        for c in recs:
            f = c.edge
            if f[0] not in vset or f[1] not in vset or f[0] == f[1]:
                raise MalformedSpec(f"edge {e} lists unknown edge {f}")
            if c.sign not in (1, -1):
                raise MalformedSpec(f"sign of crossing {e} x {f} must be +1 or -1")
            if set(e) & set(f):
                return Violation("adjacent", (e, f), f"adjacent edges {e} and {f} cross")
            if f in seen:
                return Violation("duplicate", (e, f), f"edges {e} and {f} cross more than once")
            seen.add(f)
    for e, recs in spec.crossings.items():
        for p, c in enumerate(recs):
            other = spec.crossings[c.edge]
            if not 0 <= c.index < len(other):
                return Violation(
                    "degree", (e, c.edge),
                    f"crossing {e} x {c.edge} has no partner record (crossing node of degree 3 or less)",
                )
            back = other[c.index]
            if back.edge != e or back.index != p:
                return Violation(
                    "degree", (e, c.edge),
                    f"crossing {e} x {c.edge} is not mirrored on {c.edge} (crossing node of degree 3 or less)",
                )
            if back.sign != -c.sign:
                return Violation(
                    "sign", (e, c.edge), f"crossing {e} x {c.edge} has incompatible signs"
                )
    return None


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple[int, ...]
    vertices: frozenset


class PlanarizedDrawing:
    """A built, validated drawing. Treat as immutable."""

    def __init__(self, spec: DrawingSpec):
        self.spec = spec
        self.memo = {}  # derived read-only tables, filled lazily by other modules
        self.vertices = spec.vertices
        self.n = spec.n
        self.edges = spec.edges
        self.edge_index = {e: i for i, e in enumerate(self.edges)}
        self.node_of_vertex = {v: i for i, v in enumerate(self.vertices)}

        seg_edge = []
        edge_segments = []
        for i, e in enumerate(self.edges):
            start = len(seg_edge)
            seg_edge.extend([i] * (len(spec.crossings[e]) + 1))
            edge_segments.append(range(start, len(seg_edge)))
        self.seg_edge = seg_edge
        self.edge_segments = edge_segments
        nd = 2 * len(seg_edge)

        # crossing nodes, numbered after the vertex nodes in order of first appearance
        cnode = {}
        self.crossing_nodes = []
        for e in self.edges:
            for p, c in enumerate(spec.crossings[e]):
                key = (e, c.edge) if e < c.edge else (c.edge, e)
                if key not in cnode:
                    cnode[key] = self.n + len(self.crossing_nodes)
                    self.crossing_nodes.append(key)
        self.crossing_count = len(self.crossing_nodes)

        origin = [0] * nd
        for i, e in enumerate(self.edges):
            segs = edge_segments[i]
            recs = spec.crossings[e]
            for j, s in enumerate(segs):
                if j == 0:
                    origin[2 * s] = self.node_of_vertex[e[0]]
                else:
                    c = recs[j - 1]
                    origin[2 * s] = cnode[(e, c.edge) if e < c.edge else (c.edge, e)]
                if j == len(recs):
                    origin[2 * s + 1] = self.node_of_vertex[e[1]]
                else:
                    c = recs[j]
                    origin[2 * s + 1] = cnode[(e, c.edge) if e < c.edge else (c.edge, e)]
        self.dart_origin = origin

        sigma = [-1] * nd
        for v in self.vertices:
            ring = [self.out_dart(v, w) for w in spec.rotations[v]]
            for a, b in zip(ring, ring[1:] + ring[:1]):
                sigma[a] = b
        for e in self.edges:
            for p, c in enumerate(spec.crossings[e]):
                if e > c.edge:
                    continue
                f = c.edge
                segs_e = edge_segments[self.edge_index[e]]
                segs_f = edge_segments[self.edge_index[f]]
                e_fwd, e_bwd = 2 * segs_e[p + 1], 2 * segs_e[p] + 1
                f_fwd, f_bwd = 2 * segs_f[c.index + 1], 2 * segs_f[c.index] + 1
                if c.sign > 0:
                    ring = [e_fwd, f_fwd, e_bwd, f_bwd]
                else:
                    ring = [e_fwd, f_bwd, e_bwd, f_fwd]
                for a, b in zip(ring, ring[1:] + ring[:1]):
                    sigma[a] = b
        if -1 in sigma:
            raise InconsistentCrossings("some darts received no rotation successor")
        sigma_inv = [0] * nd
        for a, b in enumerate(sigma):
            sigma_inv[b] = a
        self.sigma = sigma
        self.sigma_inv = sigma_inv

        face_of = [-1] * nd
        faces = []
        for d0 in range(nd):
            if face_of[d0] != -1:
                continue
            orbit = []
            d = d0
            while face_of[d] == -1:
                face_of[d] = d0
                orbit.append(d)
                d = sigma_inv[d ^ 1]
            if d != d0:
                raise NotSphere("face tracing did not close up")
            verts = frozenset(
                self.vertices[origin[x]] for x in orbit if origin[x] < self.n
            )
            faces.append(Face(d0, tuple(orbit), verts))
        if nd == 0:
            faces.append(Face(0, (), frozenset(self.vertices)))
        self.face_of = face_of
        self.faces = faces
        self.face_by_id = {f.id: f for f in faces}
        self.face_index = {f.id: i for i, f in enumerate(faces)}

        vf = {v: set() for v in self.vertices}
        for f in faces:
            for v in f.vertices:
                vf[v].add(f.id)
        self.vertex_faces = {v: frozenset(s) for v, s in vf.items()}

        euler = self.n + self.crossing_count - len(seg_edge) + len(faces)
        if euler != 2:
            raise NotSphere(
                f"Euler characteristic {euler} != 2: rotations and crossing signs "
                "do not describe a drawing on the sphere"
            )

    def __repr__(self):
        return (
            f"PlanarizedDrawing(n={self.n}, crossings={self.crossing_count}, "
            f"faces={len(self.faces)})"
        )

    @property
    def drawing_id(self) -> str:
        return self.spec.drawing_id()

    @property
    def node_count(self) -> int:
        return self.n + self.crossing_count

    @property
    def segment_count(self) -> int:
        return len(self.seg_edge)

    def out_dart(self, u: int, w: int) -> int:
        """Dart leaving vertex ``u`` along edge ``uw``."""
        segs = self.edge_segments[self.edge_index[edge_key(u, w)]]
        return 2 * segs[0] if u < w else 2 * segs[-1] + 1

    def path(self, u: int, w: int) -> list[int]:
        """Darts traversing edge ``uw`` from ``u`` to ``w``."""
        segs = self.edge_segments[self.edge_index[edge_key(u, w)]]
        if u < w:
            return [2 * s for s in segs]
        return [2 * s + 1 for s in reversed(segs)]

    def dart_edge(self, d: int) -> Edge:
        return self.edges[self.seg_edge[d >> 1]]

    def incident(self, v: int, face_id: int) -> bool:
        return face_id in self.vertex_faces[v]


def build(spec: DrawingSpec) -> PlanarizedDrawing:
    """Planarize ``spec``; raises on inconsistent, non-good or non-spherical input."""
    if spec.n < 1:
        raise MalformedSpec("a drawing needs at least one vertex")
    bad = check_spec(spec)
    if bad is not None:
        if bad.kind in ("adjacent", "duplicate"):
            raise GoodnessViolation(bad.message, bad.edges)
        raise InconsistentCrossings(bad.message)
    return PlanarizedDrawing(spec)


def faces(D: PlanarizedDrawing) -> list[Face]:
    return list(D.faces)


class GoodnessReport(NamedTuple):
    ok: bool
    violation: Violation | None = None


def validate_goodness(D: PlanarizedDrawing | DrawingSpec) -> GoodnessReport:
    """Check conditions (1)-(5) of a good drawing on the combinatorial data.

    Accepts a raw spec as well, so that broken input can be diagnosed
    without going through :func:`build`.
    """
    if isinstance(D, DrawingSpec):
        bad = check_spec(D)
        return GoodnessReport(bad is None, bad)
    nd = len(D.sigma)
    for d in range(nd):
        if D.sigma_inv[D.sigma[d]] != d or D.dart_origin[D.sigma[d]] != D.dart_origin[d]:
            return GoodnessReport(False, Violation("rotation", (), f"sigma broken at dart {d}"))
    ring_at = {}
    for d in range(nd):
        ring_at.setdefault(D.dart_origin[d], []).append(d)
    pairs = set()
    for k, (e, f) in enumerate(D.crossing_nodes):
        node = D.n + k
        darts = ring_at.get(node, [])
        if len(darts) != 4:
            return GoodnessReport(
                False, Violation("degree", (e, f), f"crossing node of {e} x {f} has degree {len(darts)}")
            )
        d = darts[0]
        ring = [d, D.sigma[d], D.sigma[D.sigma[d]], D.sigma[D.sigma[D.sigma[d]]]]
        owners = [D.dart_edge(x) for x in ring]
        if owners[0] != owners[2] or owners[1] != owners[3] or owners[0] == owners[1]:
            return GoodnessReport(
                False, Violation("tangency", (e, f), f"edges {e} and {f} touch without crossing")
            )
        if set(e) & set(f):
            return GoodnessReport(False, Violation("adjacent", (e, f), f"adjacent edges {e} and {f} cross"))
        if (e, f) in pairs:
            return GoodnessReport(False, Violation("duplicate", (e, f), f"edges {e} and {f} cross twice"))
        pairs.add((e, f))
    for v in D.vertices:
        if len(ring_at.get(D.node_of_vertex[v], [])) != D.n - 1:
            return GoodnessReport(False, Violation("rotation", (), f"vertex {v} has wrong degree"))
    return GoodnessReport(True, None)


# --------------------------------------------------------------------------
# subdrawings

@dataclass(frozen=True)
class DeletionTrace:
    vertex: int
    subdrawing: PlanarizedDrawing
    face_map: Mapping[int, int]
    superface: int


def face_map_between(D: PlanarizedDrawing, sub: PlanarizedDrawing) -> dict[int, int]:
    """Map every face of ``D`` to the face of the subdrawing ``sub`` containing it.

    ``sub`` must be built from ``D.spec.restrict(...)``. Faces of ``D`` are
    merged across the segments of removed edges; each merged class is then
    named by a surviving segment shared by both planarizations.
    """
    keep = set(sub.vertices)
    parent = {f.id: f.id for f in D.faces}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, e in enumerate(D.edges):
        if e[0] in keep and e[1] in keep:
            continue
        for s in D.edge_segments[i]:
            a, b = find(D.face_of[2 * s]), find(D.face_of[2 * s + 1])
            if a != b:
                parent[a] = b

    if not sub.edges:
        only = sub.faces[0].id
        return {f.id: only for f in D.faces}

    cls_to_sub = {}
    for e in sub.edges:
        big = D.spec.crossings[e]
        alive = [p for p, c in enumerate(big) if set(c.edge) <= keep]
        big_segs = D.edge_segments[D.edge_index[e]]
        small_segs = sub.edge_segments[sub.edge_index[e]]
        for j, s_small in enumerate(small_segs):
            s_big = big_segs[0] if j == 0 else big_segs[alive[j - 1] + 1]
            for side in (0, 1):
                cls = find(D.face_of[2 * s_big + side])
                target = sub.face_of[2 * s_small + side]
                prev = cls_to_sub.setdefault(cls, target)
                if prev != target:
                    raise NotSphere("face classes of a subdrawing are inconsistent")
    return {f.id: cls_to_sub[find(f.id)] for f in D.faces}


def delete_vertices(D: PlanarizedDrawing, removed: Iterable[int]) -> tuple[PlanarizedDrawing, dict[int, int]]:
    """Subdrawing without ``removed`` plus the containing-face map from ``D``."""
    removed = set(removed)
    for v in removed:
        if v not in D.node_of_vertex:
            raise UnknownVertex(v)
    sub = build(D.spec.restrict(v for v in D.vertices if v not in removed))
    return sub, face_map_between(D, sub)


def delete_vertex(D: PlanarizedDrawing, v: int) -> DeletionTrace:
    if v not in D.node_of_vertex:
        raise UnknownVertex(v)
    sub, fmap = delete_vertices(D, [v])
    images = {fmap[f] for f in D.vertex_faces[v]}
    if len(images) != 1:
        raise NotSphere(f"faces around vertex {v} do not merge into one superface")
    return DeletionTrace(v, sub, fmap, images.pop())


# --------------------------------------------------------------------------
# triangles

@dataclass(frozen=True)
class TrianglePartition:
    triangle: tuple[int, int, int]
    left_faces: frozenset
    right_faces: frozenset
    left_vertices: frozenset
    right_vertices: frozenset


def triangle_partition(D: PlanarizedDrawing, u: int, v: int, w: int) -> TrianglePartition:
    """Split faces and vertices by the closed curve ``u -> v -> w -> u``.

    The three edges are pairwise adjacent, so in a good drawing they do not
    cross and the curve is simple. Sides are found by flood fill over the
    dual graph without stepping over curve segments; the left side is the
    one holding the faces left of the curve's darts.
    """
    if len({u, v, w}) != 3:
        raise DegenerateTriangle(f"triangle needs three distinct vertices, got {(u, v, w)}")
    for x in (u, v, w):
        if x not in D.node_of_vertex:
            raise UnknownVertex(x)
    cycle = D.path(u, v) + D.path(v, w) + D.path(w, u)
    wall = {d >> 1 for d in cycle}
    left_seed = {D.face_of[d] for d in cycle}
    right_seed = {D.face_of[d ^ 1] for d in cycle}

    left = set(left_seed)
    queue = deque(left_seed)
    while queue:
        f = queue.popleft()
        for d in D.face_by_id[f].darts:
            if d >> 1 in wall:
                continue
            g = D.face_of[d ^ 1]
            if g not in left:
                left.add(g)
                queue.append(g)
    if left & right_seed:
        raise NotSphere(f"triangle {(u, v, w)} does not separate the sphere")
    right = set(D.face_by_id) - left

    lv, rv = set(), set()
    for x in D.vertices:
        if x in (u, v, w):
            continue
        f = D.face_of[D.out_dart(x, u)]
        (lv if f in left else rv).add(x)
    return TrianglePartition((u, v, w), frozenset(left), frozenset(right), frozenset(lv), frozenset(rv))
