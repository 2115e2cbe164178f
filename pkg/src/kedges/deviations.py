"""k-deviations: how far the k-edge counts of a drawing sit above 3(k+1).

Also the scanner that hunts for faces with Delta3_m < Delta2_m.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .constructors import harary_hill
from .drawing import PlanarizedDrawing, build, delete_vertex
from .errors import IdentityViolation, KEdgesError
from .io import read_drawing
from .kedge import Verdict, _weights, kedge_counts, top_index, triple_table
from .shellability import (
    LITERAL,
    find_pair_sequence,
    find_simple_sequence,
    is_seq_shellable,
)

WORKERS_ENV = "KEDGES_WORKERS"


@dataclass(frozen=True)
class DeviationReport:
    drawing_id: str
    face: int
    n: int
    delta: tuple[int, ...]
    delta2: tuple[int, ...]
    delta3: tuple[int, ...]
    delta_cr: int

    @property
    def m(self) -> int:
        return top_index(self.n)

    @property
    def conjecture_holds(self) -> bool | None:
        """Delta3_m >= Delta2_m; None when m < 0."""
        if self.m < 0:
            return None
        return self.delta3[self.m] >= self.delta2[self.m]


def _delta_tables(D: PlanarizedDrawing):
    """faces x (m+1) tables of Delta, Delta2 and Delta3."""
    if "dev" in D.memo:
        return D.memo["dev"]
    size = max(top_index(D.n) + 1, 0)
    E = kedge_counts(D)[:, :size]
    d = E - 3 * (np.arange(size) + 1)
    d2 = d @ _weights(size, 2).T
    d3 = d @ _weights(size, 3).T
    D.memo["dev"] = (d, d2, d3)
    return D.memo["dev"]


def deviations(D: PlanarizedDrawing, F: int) -> DeviationReport:
    d, d2, d3 = _delta_tables(D)
    i = D.face_index[F]
    return DeviationReport(
        D.drawing_id, F, D.n,
        tuple(int(x) for x in d[i]), tuple(int(x) for x in d2[i]), tuple(int(x) for x in d3[i]),
        D.crossing_count - harary_hill(D.n),
    )


def _dcr_from(n: int, d3) -> int:
    m = top_index(n)
    if n % 2:
        return 2 * int(d3[m])
    return int(d3[m]) + (int(d3[m - 1]) if m >= 1 else 0)


def check_kdev_identities(D: PlanarizedDrawing) -> Verdict:
    """Delta3_k = Delta3_{k-1} + Delta2_k per face, and Delta_cr from Delta3.

    Delta3 is also recomputed as E3_k - 3 C(k+4, 4), independently of the
    cumulation of Delta. Raises :class:`IdentityViolation` on any mismatch.
    """
    if D.n < 5:
        return Verdict(True, "kdev-identities", {"applicable": False})
    d, d2, d3 = _delta_tables(D)
    size = d.shape[1]
    E3 = triple_table(D)[:, :size]
    direct = E3 - np.array([3 * comb(k + 4, 4) for k in range(size)])
    dcr = D.crossing_count - harary_hill(D.n)
    for f in D.faces:
        i = D.face_index[f.id]
        if not np.array_equal(direct[i], d3[i]):
            raise IdentityViolation(f"face {f.id}: Delta3 disagrees with E3 - 3C(k+4,4)", face=f.id)
        for k in range(size):
            prev = int(d3[i, k - 1]) if k else 0
            if int(d3[i, k]) != prev + int(d2[i, k]):
                raise IdentityViolation(f"face {f.id}: Delta3_{k} != Delta3_{k-1} + Delta2_{k}", face=f.id)
        got = _dcr_from(D.n, d3[i])
        if got != dcr:
            raise IdentityViolation(f"face {f.id}: Delta3 gives Delta_cr {got}, drawing has {dcr}", face=f.id)
    return Verdict(True, "kdev-identities", {"applicable": True, "delta_cr": dcr, "faces": len(D.faces)})


def parity_check(D: PlanarizedDrawing) -> Verdict:
    """For n odd, Delta_cr = 2 Delta3_m is even, i.e. cr(D) = H(n) mod 2."""
    if D.n % 2 == 0 or D.n < 5:
        return Verdict(True, "parity", {"applicable": False})
    dcr = D.crossing_count - harary_hill(D.n)
    return Verdict(dcr % 2 == 0, "parity", {"applicable": True, "delta_cr": dcr})


HOLDS, HYPOTHESIS_NOT_MET, LEMMA_VIOLATION = "holds", "hypothesis-not-met", "lemma-violation"


def check_dbgzero(D, F: int | None = None) -> Verdict:
    """If cr(D) >= H(n) and Delta3_m >= Delta2_m at F then Delta3_{m-1} >= 0.

    ``D`` may be a drawing (with face ``F``) or a :class:`DeviationReport`.
    The verdict name is one of ``holds``, ``hypothesis-not-met`` and
    ``lemma-violation``; ``ok`` is False only for the last.
    """
    rep = D if isinstance(D, DeviationReport) else deviations(D, F)
    m = rep.m
    if m < 1:
        raise ValueError("the lemma needs n >= 6 so that m - 1 >= 0")
    hyp = {"cr_at_least_H": rep.delta_cr >= 0, "conjecture": rep.delta3[m] >= rep.delta2[m]}
    details = {"face": rep.face, "delta3_m_minus_1": rep.delta3[m - 1], **hyp}
    if not all(hyp.values()):
        return Verdict(True, HYPOTHESIS_NOT_MET, details)
    if rep.delta3[m - 1] >= 0:
        return Verdict(True, HOLDS, details)
    return Verdict(False, LEMMA_VIOLATION, details)


# --------------------------------------------------------------------------
# conjecture scan

class ScanViolation(NamedTuple):
    file: str
    n: int
    face: int
    delta3_m: int
    delta2_m: int
    cr: int
    H: int


@dataclass
class ScanResult:
    files: int
    violations: list
    errors: list  # (file, message)

    @property
    def clean(self) -> bool:
        return not self.violations and not self.errors


def conjecture_violations(D: PlanarizedDrawing, name: str = "") -> list[ScanViolation]:
    m = top_index(D.n)
    if m < 0:
        return []
    _, d2, d3 = _delta_tables(D)
    out = []
    for f in D.faces:
        i = D.face_index[f.id]
        if d3[i, m] < d2[i, m]:
            out.append(ScanViolation(name, D.n, f.id, int(d3[i, m]), int(d2[i, m]),
                                     D.crossing_count, harary_hill(D.n)))
    return out


def _scan_one(path: str):
    try:
        D = build(read_drawing(path))
    except (KEdgesError, OSError, ValueError) as exc:
        return path, None, f"{type(exc).__name__}: {exc}"
    return path, conjecture_violations(D, path), None


def scan_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def scan_conjecture(paths, workers: int | None = None) -> ScanResult:
    """Evaluate Delta3_m >= Delta2_m at every face of every drawing file.

    Unreadable files are collected in ``errors``. Results are ordered by
    file name whatever the degree of parallelism.
    """
    paths = sorted(str(p) for p in paths)
    workers = scan_workers() if workers is None else workers
    if workers > 1 and len(paths) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_scan_one, paths, chunksize=8))
    else:
        results = [_scan_one(p) for p in paths]
    violations, errors = [], []
    for path, viol, err in results:
        if err is not None:
            errors.append((path, err))
        else:
            violations.extend(viol)
    return ScanResult(len(paths), violations, errors)


def drawing_files(directory) -> list[Path]:
    return sorted(p for p in Path(directory).iterdir() if p.is_file() and p.suffix == ".json")


# --------------------------------------------------------------------------
# conditional routes to cr(D) >= H(n)

NOT_APPLICABLE = "not-applicable"


def check_proposition_pipeline(D: PlanarizedDrawing, parity: str = LITERAL) -> Verdict:
    """Look for a vertex meeting the hypotheses of the conditional lower bounds
    and, if one is found, compare cr(D) with H(n).

    n odd: v has a pair-sequence, D - v is seq-shellable for some face, and
    Delta3 >= Delta2 at f(v) in D - v (top index of D - v).
    n even: v has a simple sequence of floor(n/2)-1 vertices for a face on v,
    E3_{n/2-3}(D - v) >= 3 C(n/2+1, 4), and the conjectured inequality holds
    on every face of D - v.
    """
    n = D.n
    if n < 5 or (n % 2 == 0 and n < 6):
        return Verdict(True, NOT_APPLICABLE, {"reason": "needs n >= 5 (odd) or n >= 6 (even)"})
    target = harary_hill(n)
    for v in D.vertices:
        trace = delete_vertex(D, v)
        sub = trace.subdrawing
        if n % 2:
            if find_pair_sequence(D, v, parity) is None:
                continue
            if not is_seq_shellable(sub)[0]:
                continue
            rep = deviations(sub, trace.superface)
            if rep.delta3[rep.m] < rep.delta2[rep.m]:
                continue
        else:
            length = n // 2 - 1
            if not any(find_simple_sequence(D, v, f, length) for f in sorted(D.vertex_faces[v])):
                continue
            h = n // 2
            E3 = triple_table(sub)
            if int(E3[0, h - 3]) < 3 * comb(h + 1, 4):
                continue
            if conjecture_violations(sub):
                continue
        ok = D.crossing_count >= target
        return Verdict(ok, "holds" if ok else "proposition-violation",
                       {"vertex": v, "cr": D.crossing_count, "H": target})
    return Verdict(True, NOT_APPLICABLE, {"reason": "no vertex meets the hypotheses"})
