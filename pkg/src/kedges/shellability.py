"""Simple sequences, pair-sequences and the shellability classes built on them.

Every search works against one root drawing and a cache of its subdrawings
keyed by the set of deleted vertices. A face of any subdrawing is carried
around as a face of the root contained in it: containment is transitive, so
the face of ``D - B`` containing a face ``G`` of ``D - A`` (A a subset of B)
is the image of any root face inside ``G``.

Certificates are plain dataclasses. :func:`verify_certificate` re-checks
them from scratch with fresh deletions and never looks at a search cache.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .drawing import PlanarizedDrawing, delete_vertex, delete_vertices
from .errors import BudgetExhausted, MalformedCert, NotOdd

LITERAL, PROOF = "literal", "proof"


class SubdrawingCache:
    """Subdrawings of ``root`` with their containing-face maps from the root."""

    def __init__(self, root: PlanarizedDrawing, budget: int | None = None):
        self.root = root
        self.budget = budget
        self.built = 0
        self._subs = {frozenset(): (root, {f.id: f.id for f in root.faces})}
        self._pre = {}

    def get(self, removed) -> tuple[PlanarizedDrawing, dict[int, int]]:
        key = frozenset(removed)
        if key not in self._subs:
            if self.budget is not None and self.built >= self.budget:
                raise BudgetExhausted(f"subdrawing budget of {self.budget} exhausted")
            self.built += 1
            self._subs[key] = delete_vertices(self.root, key)
        return self._subs[key]

    def image(self, removed, root_face: int) -> int:
        """Face of ``D - removed`` containing the root face."""
        return self.get(removed)[1][root_face]

    def preimage(self, removed, face: int) -> int:
        """Some root face inside ``face`` of ``D - removed`` (smallest id)."""
        key = frozenset(removed)
        if key not in self._pre:
            inv = {}
            for f, g in sorted(self.get(key)[1].items()):
                inv.setdefault(g, f)
            self._pre[key] = inv
        return self._pre[key][face]

    def superface(self, removed, v: int) -> int:
        """Root face standing for f(v) in ``D - removed - v``."""
        return min(self.root.vertex_faces[v])


def _seq_top(n: int) -> int:
    return n // 2 - 2


# --------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class SimpleSequenceCert:
    """Simple sequence ``seq`` of ``vertex`` with reference face ``face`` of the drawing ``drawing_id``."""

    drawing_id: str
    vertex: int
    face: int
    seq: tuple[int, ...]


@dataclass(frozen=True)
class SeqShellCert:
    drawing_id: str
    face: int
    order: tuple[int, ...]
    sequences: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.order) - 1


@dataclass(frozen=True)
class PairSequenceCert:
    """``witnesses`` maps a step j to a face of ``D - {u_0..u_{j-1}}`` on both u_j and the apex."""

    drawing_id: str
    vertex: int
    seq: tuple[int, ...]
    witnesses: tuple[tuple[int, int], ...]
    parity: str = LITERAL


@dataclass(frozen=True)
class SPSCert:
    drawing_id: str
    apex: int
    pair: PairSequenceCert
    shell: SeqShellCert


@dataclass(frozen=True)
class AlternatingCert:
    """Vertex order v_1..v_n; ``steps[i-1]`` certifies v_i inside ``D - {v_{i+1}..v_n}``."""

    drawing_id: str
    order: tuple[int, ...]
    steps: tuple = field(default=())


# --------------------------------------------------------------------------
# simple sequences

class _Searcher:
    """Memoized searches over one root drawing."""

    def __init__(self, D: PlanarizedDrawing, budget: int | None = None):
        self.D = D
        self.cache = SubdrawingCache(D, budget)
        self._simple = {}
        self._shell = {}
        self._pair = {}

    def simple(self, removed: frozenset, root_face: int, v: int, length: int):
        """A simple sequence of ``length`` vertices for ``v`` in ``D - removed``
        whose reference face contains ``root_face``; None if there is none."""
        if length == 0:
            return ()
        key = (removed, root_face, v, length)
        if key in self._simple:
            return self._simple[key]
        sub, fmap = self.cache.get(removed)
        on = sub.face_by_id[fmap[root_face]].vertices
        found = None
        for u in sorted(on):
            if u == v:
                continue
            rest = self.simple(removed | {u}, root_face, v, length - 1)
            if rest is not None:
                found = (u,) + rest
                break
        self._simple[key] = found
        return found

    def shell(self, removed: frozenset, root_face: int, k: int):
        """Remaining vertex order a_i..a_k with simple sequences, given a_0..a_{i-1} = removed."""
        i = len(removed)
        if i > k:
            return ()
        key = (removed, root_face, k)
        if key in self._shell:
            return self._shell[key]
        sub, fmap = self.cache.get(removed)
        on = sub.face_by_id[fmap[root_face]].vertices
        found = None
        for a in sorted(on):
            seq = self.simple(removed, root_face, a, k - i + 1)
            if seq is None:
                continue
            rest = self.shell(removed | {a}, root_face, k)
            if rest is not None:
                found = ((a, seq),) + rest
                break
        self._shell[key] = found
        return found

    def pair(self, removed: tuple, v: int, paired: frozenset, length: int):
        """Extend the pair-sequence prefix ``removed`` of apex ``v`` to ``length`` vertices.

        Returns the remaining vertices and witnesses, or None.
        """
        j = len(removed)
        if j == length:
            return (), ()
        tail = removed[-1] if removed and (j - 1) in paired else None
        key = (frozenset(removed), tail, v, paired, length)
        if key in self._pair:
            return self._pair[key]
        sub, _ = self.cache.get(removed)
        cands = [u for u in sub.vertices if u != v]
        if tail is not None:
            target = self.cache.image(removed, self.cache.superface(removed[:-1], tail))
            cands = [u for u in cands if target in sub.vertex_faces[u]]
        found = None
        for u in cands:
            wit = ()
            if j == 0 or j in paired:
                shared = sub.vertex_faces[u] & sub.vertex_faces[v]
                if not shared:
                    continue
                wit = ((j, min(shared)),)
            rest = self.pair(removed + (u,), v, paired, length)
            if rest is not None:
                found = ((u,) + rest[0], wit + rest[1])
                break
        self._pair[key] = found
        return found


def paired_steps(n: int, parity: str = LITERAL) -> frozenset:
    """Steps j whose vertex must share a face with the apex and whose successor
    must lie on f(u_j).

    ``literal`` uses j in 1..floor(n/2)-3 with n - j odd; ``proof`` also admits
    j = 0, so that for n odd the pairs are (u_0, u_1), (u_2, u_3), ...
    """
    if parity not in (LITERAL, PROOF):
        raise ValueError(f"unknown parity reading {parity!r}")
    lo = 0 if parity == PROOF else 1
    return frozenset(j for j in range(lo, n // 2 - 2) if (n - j) % 2 == 1)


def find_simple_sequence(D: PlanarizedDrawing, v: int, F: int, length: int,
                         _s: _Searcher | None = None) -> SimpleSequenceCert | None:
    if v not in D.face_by_id[F].vertices:
        return None
    s = _s or _Searcher(D)
    seq = s.simple(frozenset(), F, v, length)
    return None if seq is None else SimpleSequenceCert(D.drawing_id, v, F, seq)


def _check_simple(D: PlanarizedDrawing, v: int, F: int, seq, forbidden=()) -> bool:
    if F not in D.face_by_id or v not in D.face_by_id[F].vertices:
        return False
    for i, u in enumerate(seq):
        if u == v or u in forbidden or u not in D.node_of_vertex:
            return False
        if i == 0:
            sub, face = D, F
        else:
            sub, fmap = delete_vertices(D, seq[:i])
            face = fmap[F]
        if u not in sub.face_by_id[face].vertices:
            return False
    return True


def verify_simple_sequence(D: PlanarizedDrawing, cert: SimpleSequenceCert) -> bool:
    _require(D, cert)
    if len(set(cert.seq)) != len(cert.seq) or len(cert.seq) > D.n - 1:
        raise MalformedCert("simple sequence repeats a vertex or is too long")
    return _check_simple(D, cert.vertex, cert.face, cert.seq)


# --------------------------------------------------------------------------
# seq-shellability

def find_seq_shell(D: PlanarizedDrawing, F: int, k: int, budget: int | None = None,
                   _s: _Searcher | None = None) -> SeqShellCert | None:
    """Exhaustive memoized search for a k-seq-shelling with reference face ``F``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k + 1 + 1 > D.n:
        return None
    s = _s or _Searcher(D, budget)
    steps = s.shell(frozenset(), F, k)
    if steps is None:
        return None
    return SeqShellCert(D.drawing_id, F, tuple(a for a, _ in steps), tuple(q for _, q in steps))


def is_seq_shellable(D: PlanarizedDrawing, k: int | None = None,
                     budget: int | None = None) -> tuple[bool, SeqShellCert | None]:
    """Try every face (by id) as reference face; ``k`` defaults to floor(n/2) - 2."""
    if D.n < 4:
        raise ValueError("seq-shellability needs n >= 4")
    k = _seq_top(D.n) if k is None else k
    s = _Searcher(D, budget)
    for f in D.faces:
        if len(f.vertices) < 2:
            continue
        cert = find_seq_shell(D, f.id, k, _s=s)
        if cert is not None:
            return True, cert
    return False, None


def verify_seq_shell(D: PlanarizedDrawing, cert: SeqShellCert) -> bool:
    _require(D, cert)
    order = cert.order
    if len(set(order)) != len(order) or len(cert.sequences) != len(order):
        raise MalformedCert("seq-shell certificate has repeated vertices or a length mismatch")
    if cert.face not in D.face_by_id:
        return False
    k = len(order) - 1
    for i, a in enumerate(order):
        if i == 0:
            sub, face = D, cert.face
        else:
            sub, fmap = delete_vertices(D, order[:i])
            face = fmap[cert.face]
        if a not in sub.face_by_id[face].vertices:
            return False
        seq = cert.sequences[i]
        if len(seq) != k - i + 1 or len(set(seq)) != len(seq):
            return False
        if not _check_simple(sub, a, face, seq, forbidden=order[:i + 1]):
            return False
    return True


# --------------------------------------------------------------------------
# pair-sequences and SPS

def find_pair_sequence(D: PlanarizedDrawing, v: int, parity: str = LITERAL,
                       budget: int | None = None,
                       _s: _Searcher | None = None) -> PairSequenceCert | None:
    """Pair-sequence (u_0..u_{floor(n/2)-2}) of apex ``v``, or None after exhaustive search."""
    if D.n < 5:
        raise ValueError("pair-sequences need n >= 5")
    s = _s or _Searcher(D, budget)
    paired = paired_steps(D.n, parity)
    found = s.pair((), v, paired, D.n // 2 - 1)
    if found is None:
        return None
    return PairSequenceCert(D.drawing_id, v, found[0], found[1], parity)


def verify_pair_sequence(D: PlanarizedDrawing, cert: PairSequenceCert) -> bool:
    _require(D, cert)
    seq, v = cert.seq, cert.vertex
    if len(set(seq)) != len(seq) or v in seq:
        raise MalformedCert("pair-sequence repeats a vertex or contains the apex")
    if len(seq) != D.n // 2 - 1:
        raise MalformedCert(f"pair-sequence must have {D.n // 2 - 1} vertices")
    if any(u not in D.node_of_vertex for u in seq) or v not in D.node_of_vertex:
        return False
    paired = paired_steps(D.n, cert.parity)
    witnesses = dict(cert.witnesses)
    for j in sorted(paired | {0}):
        sub = D if j == 0 else delete_vertices(D, seq[:j])[0]
        face = witnesses.get(j)
        if face is None or face not in sub.face_by_id:
            return False
        if not {seq[j], v} <= sub.face_by_id[face].vertices:
            return False
        if j in paired:
            trace = delete_vertex(sub, seq[j])
            if seq[j + 1] not in trace.subdrawing.face_by_id[trace.superface].vertices:
                return False
    return True


def is_sps(D: PlanarizedDrawing, parity: str = LITERAL,
           budget: int | None = None) -> tuple[bool, SPSCert | None]:
    """Single-pair-seq-shellability: some apex v has a pair-sequence and
    D - v is seq-shellable for its superface f(v)."""
    if D.n % 2 == 0:
        raise NotOdd(f"single-pair-seq-shellability is only defined for odd n, got n={D.n}")
    if D.n < 5:
        raise ValueError("single-pair-seq-shellability needs n >= 5")
    s = _Searcher(D, budget)
    k = _seq_top(D.n - 1)
    for v in D.vertices:
        pair = find_pair_sequence(D, v, parity, _s=s)
        if pair is None:
            continue
        trace = delete_vertex(D, v)
        shell = find_seq_shell(trace.subdrawing, trace.superface, k, budget)
        if shell is not None:
            return True, SPSCert(D.drawing_id, v, pair, shell)
    return False, None


def verify_sps(D: PlanarizedDrawing, cert: SPSCert) -> bool:
    _require(D, cert)
    if D.n % 2 == 0:
        raise NotOdd("single-pair-seq-shellability is only defined for odd n")
    if cert.pair.vertex != cert.apex or cert.pair.drawing_id != D.drawing_id:
        raise MalformedCert("pair-sequence certificate does not belong to the apex")
    if not verify_pair_sequence(D, cert.pair):
        return False
    trace = delete_vertex(D, cert.apex)
    sub = trace.subdrawing
    if cert.shell.drawing_id != sub.drawing_id:
        raise MalformedCert("seq-shell certificate is not for D - apex")
    if cert.shell.face != trace.superface or cert.shell.k != _seq_top(sub.n):
        return False
    return verify_seq_shell(sub, cert.shell)


def inherited_pair_sequence(D: PlanarizedDrawing, cert: SeqShellCert,
                            parity: str = LITERAL) -> PairSequenceCert:
    """Pair-sequence of a_0 read off a (floor(n/2)-1)-seq-shelling: the first
    floor(n/2)-1 vertices of S_0, with the reference face's images as witnesses."""
    length = D.n // 2 - 1
    seq = tuple(cert.sequences[0][:length])
    a0 = cert.order[0]
    wit = []
    for j in sorted(paired_steps(D.n, parity) | {0}):
        fmap = delete_vertices(D, seq[:j])[1] if j else {f.id: f.id for f in D.faces}
        wit.append((j, fmap[cert.face]))
    return PairSequenceCert(D.drawing_id, a0, seq, tuple(wit), parity)


def seq_shell_tail(D: PlanarizedDrawing, cert: SeqShellCert) -> SeqShellCert:
    """The shelling a_1..a_k of D - a_0 with reference face f(a_0)."""
    trace = delete_vertex(D, cert.order[0])
    return SeqShellCert(trace.subdrawing.drawing_id, trace.superface, cert.order[1:], cert.sequences[1:])


# --------------------------------------------------------------------------
# alternating class

def _alt_step_length(i: int) -> int:
    return i // 2 - 1


def is_alternating_class(D: PlanarizedDrawing, parity: str = LITERAL,
                         budget: int | None = None) -> tuple[bool, AlternatingCert | None]:
    """Search a vertex order v_1..v_n where, inside ``D - {v_{i+1}..v_n}``, v_i has
    a pair-sequence (i odd) or a simple sequence for some incident face (i even).

    Steps with i <= 3 need empty sequences and hold vacuously.
    """
    cache = SubdrawingCache(D, budget)
    searchers = {}
    memo = {}

    def searcher(removed):
        if removed not in searchers:
            sub = cache.get(removed)[0]
            searchers[removed] = _Searcher(sub, budget)
        return searchers[removed]

    def step(removed, v):
        sub = cache.get(removed)[0]
        i = sub.n
        length = _alt_step_length(i)
        if length <= 0:
            return ("vacuous",)
        s = searcher(removed)
        if i % 2:
            pair = find_pair_sequence(sub, v, parity, _s=s)
            return None if pair is None else ("pair", pair)
        for f in sorted(sub.vertex_faces[v]):
            simple = find_simple_sequence(sub, v, f, length, _s=s)
            if simple is not None:
                return ("simple", simple)
        return None

    def solve(removed):
        # removed = {v_{i+1}..v_n}; returns steps for v_i down to v_1
        if len(removed) == D.n:
            return ()
        if removed in memo:
            return memo[removed]
        sub = cache.get(removed)[0]
        found = None
        for v in sub.vertices:
            st = step(removed, v)
            if st is None:
                continue
            rest = solve(removed | {v})
            if rest is not None:
                found = ((v, st),) + rest
                break
        memo[removed] = found
        return found

    res = solve(frozenset())
    if res is None:
        return False, None
    res = res[::-1]
    return True, AlternatingCert(D.drawing_id, tuple(v for v, _ in res), tuple(st for _, st in res))


def verify_alternating(D: PlanarizedDrawing, cert: AlternatingCert) -> bool:
    _require(D, cert)
    order = cert.order
    if sorted(order) != list(D.vertices) or len(cert.steps) != len(order):
        raise MalformedCert("alternating certificate must order every vertex once")
    for i in range(1, len(order) + 1):
        v = order[i - 1]
        sub = delete_vertices(D, order[i:])[0] if i < len(order) else D
        step = cert.steps[i - 1]
        length = _alt_step_length(i)
        if length <= 0:
            if tuple(step) != ("vacuous",):
                return False
            continue
        kind, inner = step
        if inner.drawing_id != sub.drawing_id or inner.vertex != v:
            return False
        if i % 2:
            if kind != "pair" or not verify_pair_sequence(sub, inner):
                return False
        else:
            if kind != "simple" or len(inner.seq) != length or not verify_simple_sequence(sub, inner):
                return False
    return True


# --------------------------------------------------------------------------

def _require(D: PlanarizedDrawing, cert) -> None:
    if cert.drawing_id != D.drawing_id:
        raise MalformedCert(
            f"certificate is for drawing {cert.drawing_id}, not {D.drawing_id}"
        )


def verify_certificate(D: PlanarizedDrawing, cert) -> bool:
    """Re-verify any certificate against ``D`` using only fresh deletions."""
    if isinstance(cert, SimpleSequenceCert):
        return verify_simple_sequence(D, cert)
    if isinstance(cert, SeqShellCert):
        return verify_seq_shell(D, cert)
    if isinstance(cert, PairSequenceCert):
        return verify_pair_sequence(D, cert)
    if isinstance(cert, SPSCert):
        return verify_sps(D, cert)
    if isinstance(cert, AlternatingCert):
        return verify_alternating(D, cert)
    raise MalformedCert(f"unknown certificate type {type(cert).__name__}")
