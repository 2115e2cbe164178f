"""Drawing and certificate files (JSON) and tabular reports (CSV).

Files are written with sorted keys, two-space indentation and a trailing
newline, so parse followed by serialize reproduces them byte for byte.
Floats are rejected everywhere; rationals travel as strings.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import asdict
from pathlib import Path

from .drawing import Crossing, DrawingSpec
from .errors import MalformedCert, MalformedSpec
from .shellability import (
    AlternatingCert,
    PairSequenceCert,
    SeqShellCert,
    SimpleSequenceCert,
    SPSCert,
)

FORMAT_VERSION = 1


def _dumps(obj) -> str:
    _reject_floats(obj)
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _reject_floats(obj, where="document"):
    if isinstance(obj, float):
        raise MalformedSpec(f"floating point value in {where}; write rationals as strings")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _reject_floats(v, f"{where}.{k}")
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _reject_floats(v, where)


def sha256_hex(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


# --------------------------------------------------------------------------
# drawings

def drawing_to_dict(spec: DrawingSpec) -> dict:
    doc = spec.canonical()
    doc["format_version"] = FORMAT_VERSION
    doc["n"] = spec.n
    doc["metadata"] = {str(k): v for k, v in spec.metadata.items()}
    return doc


def dumps_drawing(spec: DrawingSpec) -> str:
    return _dumps(drawing_to_dict(spec))


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise MalformedSpec(f"{what} must be an integer, got {x!r}")
    return x


def drawing_from_dict(doc) -> DrawingSpec:
    if not isinstance(doc, dict):
        raise MalformedSpec("drawing file must hold a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise MalformedSpec(f"unsupported format_version {doc.get('format_version')!r}")
    _reject_floats(doc)
    try:
        vertices = [_int(v, "vertex") for v in doc["vertices"]]
        if _int(doc["n"], "n") != len(vertices):
            raise MalformedSpec("n does not match the vertex list")
        rotations = {}
        for key, rot in doc["rotations"].items():
            try:
                v = int(key)
            except ValueError:
                raise MalformedSpec(f"rotation key {key!r} is not a vertex") from None
            rotations[v] = tuple(_int(w, "rotation entry") for w in rot)
        crossings = {}
        for item in doc["edges"]:
            e = (_int(item["u"], "edge end"), _int(item["v"], "edge end"))
            if e in crossings or e[0] >= e[1]:
                raise MalformedSpec(f"edge {e} is repeated or not ordered")
            crossings[e] = tuple(
                Crossing(
                    tuple(_int(x, "crossing edge") for x in c["edge"]),
                    _int(c["index"], "crossing index"),
                    _int(c["sign"], "crossing sign"),
                )
                for c in item["crossings"]
            )
        metadata = doc.get("metadata", {})
        if not isinstance(metadata, dict):
            raise MalformedSpec("metadata must be an object")
    except (KeyError, TypeError) as exc:
        raise MalformedSpec(f"drawing file is missing or mistypes {exc}") from None
    n = len(vertices)
    if len(crossings) != n * (n - 1) // 2:
        raise MalformedSpec("edge list must contain every pair of vertices exactly once")
    for e in crossings:
        if e[0] not in set(vertices) or e[1] not in set(vertices):
            raise MalformedSpec(f"edge {e} uses an unknown vertex")
    for recs in crossings.values():
        for c in recs:
            if len(c.edge) != 2:
                raise MalformedSpec("crossing partner must be a vertex pair")
    return DrawingSpec(tuple(vertices), rotations, crossings, metadata)


def loads_drawing(text: str) -> DrawingSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedSpec(f"not valid JSON: {exc}") from None
    return drawing_from_dict(doc)


def read_drawing(path) -> DrawingSpec:
    try:
        text = Path(path).read_text()
    except UnicodeDecodeError:
        raise MalformedSpec(f"{path} is not a text file") from None
    return loads_drawing(text)


def write_drawing(spec: DrawingSpec, path) -> str:
    text = dumps_drawing(spec)
    Path(path).write_text(text)
    return text


# --------------------------------------------------------------------------
# certificates

_CERT_TYPES = {
    "simple-sequence": SimpleSequenceCert,
    "seq-shell": SeqShellCert,
    "pair-sequence": PairSequenceCert,
    "sps": SPSCert,
    "alternating": AlternatingCert,
}
_CERT_NAMES = {cls: name for name, cls in _CERT_TYPES.items()}


def cert_to_dict(cert) -> dict:
    name = _CERT_NAMES.get(type(cert))
    if name is None:
        raise MalformedCert(f"cannot serialize {type(cert).__name__}")
    if isinstance(cert, SPSCert):
        body = {
            "drawing_id": cert.drawing_id,
            "apex": cert.apex,
            "pair": cert_to_dict(cert.pair),
            "shell": cert_to_dict(cert.shell),
        }
    elif isinstance(cert, AlternatingCert):
        steps = []
        for st in cert.steps:
            if st[0] == "vacuous":
                steps.append({"kind": "vacuous"})
            else:
                steps.append({"kind": st[0], "cert": cert_to_dict(st[1])})
        body = {"drawing_id": cert.drawing_id, "order": list(cert.order), "steps": steps}
    else:
        body = json.loads(json.dumps(asdict(cert)))
    body["type"] = name
    body["format_version"] = FORMAT_VERSION
    return body


def cert_from_dict(doc):
    try:
        name = doc["type"]
        cls = _CERT_TYPES[name]
        if doc.get("format_version") != FORMAT_VERSION:
            raise MalformedCert("unsupported certificate format_version")
        if cls is SimpleSequenceCert:
            return cls(doc["drawing_id"], doc["vertex"], doc["face"], tuple(doc["seq"]))
        if cls is SeqShellCert:
            return cls(doc["drawing_id"], doc["face"], tuple(doc["order"]),
                       tuple(tuple(s) for s in doc["sequences"]))
        if cls is PairSequenceCert:
            return cls(doc["drawing_id"], doc["vertex"], tuple(doc["seq"]),
                       tuple((j, f) for j, f in doc["witnesses"]), doc["parity"])
        if cls is SPSCert:
            return cls(doc["drawing_id"], doc["apex"], cert_from_dict(doc["pair"]),
                       cert_from_dict(doc["shell"]))
        steps = []
        for st in doc["steps"]:
            if st["kind"] == "vacuous":
                steps.append(("vacuous",))
            else:
                steps.append((st["kind"], cert_from_dict(st["cert"])))
        return cls(doc["drawing_id"], tuple(doc["order"]), tuple(steps))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedCert(f"malformed certificate: {exc}") from None


def dumps_cert(cert) -> str:
    return _dumps(cert_to_dict(cert))


def loads_cert(text: str):
    try:
        return cert_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise MalformedCert(f"not valid JSON: {exc}") from None


# --------------------------------------------------------------------------
# CSV

def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def vec(values) -> str:
    """Vector cell: values joined by ';'."""
    return ";".join(str(int(x)) for x in values)
