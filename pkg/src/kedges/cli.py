"""Command-line interface: ``kedges gen|stats|check|verify|scan|corpus``.

Exit codes: 0 success (a negative class verdict is still success), 1 bad
arguments or unreadable input, 2 an exact identity failed (a bug guard),
3 the conjecture scan found a violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .constructors import (
    gen_convex,
    gen_cylindrical,
    gen_random,
    gen_twopage,
    harary_hill,
    search_twopage_optimal,
)
from .deviations import (
    _delta_tables,
    check_kdev_identities,
    drawing_files,
    parity_check,
    scan_conjecture,
)
from .drawing import build, validate_goodness
from .errors import BudgetExhausted, IdentityViolation, KEdgesError, NotOdd
from .io import csv_text, dumps_cert, drawing_to_dict, read_drawing, sha256_hex, vec, write_drawing, _dumps
from .kedge import (
    check_cr_identity,
    check_recursion,
    check_vertex_pattern,
    profile,
)
from .shellability import (
    LITERAL,
    PROOF,
    find_seq_shell,
    is_alternating_class,
    is_seq_shellable,
    is_sps,
    verify_certificate,
)

EXIT_OK, EXIT_INPUT, EXIT_IDENTITY, EXIT_VIOLATION = 0, 1, 2, 3

STATS_COLUMNS = [
    "face", "n", "cr", "H_n", "delta_cr", "E", "E2", "E3", "delta", "delta2", "delta3",
    "identities", "tool_version", "input_sha256",
]
SCAN_COLUMNS = ["file", "n", "face_id", "delta3_m", "delta2_m", "cr", "H_n"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _load(path):
    """Read and build a drawing file; returns (drawing, raw bytes)."""
    raw = Path(path).read_bytes()
    return build(read_drawing(path)), raw


# --------------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.n < 3:
        print("error: --n must be at least 3", file=sys.stderr)
        return EXIT_INPUT
    if args.kind == "convex":
        spec = gen_convex(args.n)
    elif args.kind == "cylindrical":
        spec = gen_cylindrical(args.n)
    elif args.kind == "random":
        if args.seed is None:
            print("error: --kind random needs --seed", file=sys.stderr)
            return EXIT_INPUT
        spec = gen_random(args.n, args.seed)
    else:
        if args.optimize:
            try:
                pages = search_twopage_optimal(args.n, budget=args.budget, seed=args.seed or 0)
            except BudgetExhausted as exc:
                print(f"warning: {exc}; using best found ({exc.best_cost} crossings)", file=sys.stderr)
                pages = exc.best
        elif args.pages is not None:
            bits = args.pages.strip()
            if set(bits) - {"0", "1"} or len(bits) != args.n * (args.n - 1) // 2:
                print("error: --pages must be a 0/1 string with one bit per edge", file=sys.stderr)
                return EXIT_INPUT
            pages = [b == "1" for b in bits]
        else:
            print("error: --kind twopage needs --pages or --optimize", file=sys.stderr)
            return EXIT_INPUT
        spec = gen_twopage(args.n, pages)
    if args.out:
        write_drawing(spec, args.out)
    else:
        sys.stdout.write(_dumps(drawing_to_dict(spec)))
    print(f"n={spec.n} cr={spec.crossing_count} H(n)={harary_hill(spec.n)}",
          file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def _identity_checks(D) -> dict:
    """Run the exact identities; values are 'ok', 'fail' or 'n/a'."""
    out = {}
    if D.n >= 5:
        check_cr_identity(D)
        out["cr"] = "ok"
    else:
        out["cr"] = "n/a"
    out["kdev"] = "ok" if check_kdev_identities(D).details.get("applicable") else "n/a"
    if D.n >= 4:
        for v in D.vertices:
            check_recursion(D, v)
        out["recursion"] = "ok"
    else:
        out["recursion"] = "n/a"
    out["vertex_pattern"] = "ok" if all(check_vertex_pattern(D, f.id).ok for f in D.faces) else "fail"
    par = parity_check(D)
    out["parity"] = ("ok" if par.ok else "fail") if par.details["applicable"] else "n/a"
    return out


def cmd_stats(args) -> int:
    try:
        D, raw = _load(args.file)
    except (KEdgesError, OSError) as exc:
        print(f"error: {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.face is not None and args.face not in D.face_by_id:
        print(f"error: drawing has no face {args.face}", file=sys.stderr)
        return EXIT_INPUT
    try:
        checks = _identity_checks(D)
    except IdentityViolation as exc:
        print(f"identity failure: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    status = EXIT_IDENTITY if "fail" in checks.values() else EXIT_OK
    if args.all_faces:
        faces = [f.id for f in D.faces]
    elif args.face is not None:
        faces = [args.face]
    else:
        faces = [D.faces[0].id]
    digest = sha256_hex(raw)
    d, d2, d3 = _delta_tables(D)
    H = harary_hill(D.n)
    ident = ";".join(f"{k}={v}" for k, v in checks.items())
    rows = []
    for f in faces:
        p = profile(D, f)
        i = D.face_index[f]
        rows.append([
            f, D.n, D.crossing_count, H, D.crossing_count - H,
            vec(p.E), vec(p.E2), vec(p.E3), vec(d[i]), vec(d2[i]), vec(d3[i]),
            ident, __version__, digest,
        ])
    text = csv_text(STATS_COLUMNS, rows)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.summary:
        summary = {
            "tool_version": __version__, "input_sha256": digest, "drawing_id": D.drawing_id,
            "n": D.n, "cr": D.crossing_count, "H_n": H, "faces": len(D.faces), "checks": checks,
        }
        Path(args.summary).write_text(_dumps(summary))
    if status:
        print("identity failure: " + ident, file=sys.stderr)
    return status


def cmd_check(args) -> int:
    try:
        D, _ = _load(args.file)
    except (KEdgesError, OSError) as exc:
        print(f"error: {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    cert = None
    if args.cls == "good":
        rep = validate_goodness(D)
        print("good: true" if rep.ok else f"good: false ({rep.violation.message})")
        return EXIT_OK
    try:
        if args.cls == "seq-shellable":
            if D.n < 4:
                print("seq-shellable: n/a (needs n >= 4)")
                return EXIT_OK
            if args.face is not None:
                if args.face not in D.face_by_id:
                    print(f"error: drawing has no face {args.face}", file=sys.stderr)
                    return EXIT_INPUT
                cert = find_seq_shell(D, args.face, D.n // 2 - 2, budget=args.budget)
                ok = cert is not None
            else:
                ok, cert = is_seq_shellable(D, budget=args.budget)
        elif args.cls == "sps":
            ok, cert = is_sps(D, parity=args.parity, budget=args.budget)
        else:
            ok, cert = is_alternating_class(D, parity=args.parity, budget=args.budget)
    except NotOdd as exc:
        print(f"{args.cls}: n/a (NotOdd: {exc})")
        return EXIT_OK
    except BudgetExhausted as exc:
        print(f"{args.cls}: unknown ({exc})")
        return EXIT_OK
    except ValueError as exc:
        print(f"{args.cls}: n/a ({exc})")
        return EXIT_OK
    if ok and not verify_certificate(D, cert):
        print(f"{args.cls}: certificate failed re-verification", file=sys.stderr)
        return EXIT_IDENTITY
    print(f"{args.cls}: {'true' if ok else 'false'}")
    if ok:
        out = Path(args.cert_out) if args.cert_out else Path(args.file).with_suffix(f".{args.cls}.cert.json")
        out.write_text(dumps_cert(cert))
        print(f"certificate: {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .io import loads_cert

    try:
        D, _ = _load(args.file)
        cert = loads_cert(Path(args.cert).read_text())
        ok = verify_certificate(D, cert)
    except (KEdgesError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"certificate: {'valid' if ok else 'invalid'}")
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.conjecture != "con1":
        print(f"error: unknown conjecture {args.conjecture!r}", file=sys.stderr)
        return EXIT_INPUT
    directory = Path(args.dir)
    if not directory.is_dir():
        print(f"error: {directory} is not a directory", file=sys.stderr)
        return EXIT_INPUT
    files = drawing_files(directory)
    res = scan_conjecture(files, workers=args.workers)
    rows = [
        [Path(v.file).name, v.n, v.face, v.delta3_m, v.delta2_m, v.cr, v.H]
        for v in res.violations
    ]
    text = csv_text(SCAN_COLUMNS, rows)
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    for path, msg in res.errors:
        print(f"input error: {Path(path).name}: {msg}", file=sys.stderr)
    print(f"scanned {res.files} files: {len(res.violations)} violations, {len(res.errors)} input errors",
          file=sys.stderr)
    if res.violations:
        repro_dir = Path(args.repro_dir) if args.repro_dir else (
            Path(args.report).parent if args.report else Path("."))
        repro_dir.mkdir(parents=True, exist_ok=True)
        for v in res.violations:
            spec = read_drawing(v.file)
            doc = {
                "tool_version": __version__,
                "conjecture": "delta3_m >= delta2_m",
                "source_file": Path(v.file).name,
                "face_id": v.face, "n": v.n, "delta3_m": v.delta3_m, "delta2_m": v.delta2_m,
                "cr": v.cr, "H_n": v.H,
                "drawing": drawing_to_dict(spec),
            }
            out = repro_dir / f"repro-{Path(v.file).stem}-f{v.face}.json"
            out.write_text(_dumps(doc))
            print(f"violation: {out}", file=sys.stderr)
        return EXIT_VIOLATION
    if res.errors:
        return EXIT_INPUT
    return EXIT_OK


def cmd_corpus(args) -> int:
    from .corpus import write_corpus

    paths = write_corpus(args.outdir, random_count=args.random, seed_base=args.seed_base)
    print(f"wrote {len(paths)} drawings to {args.outdir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="kedges", description="k-edges and crossing identities of good drawings of K_n")
    ap.add_argument("--version", action="version", version=f"kedges {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a drawing file")
    g.add_argument("--kind", required=True, choices=["convex", "cylindrical", "random", "twopage"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int)
    g.add_argument("--pages", help="0/1 per edge in lexicographic order, 1 = bottom page")
    g.add_argument("--optimize", action="store_true", help="search a crossing-minimal page assignment")
    g.add_argument("--budget", type=int, default=200_000)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("stats", help="per-face k-edge and deviation table")
    s.add_argument("file")
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--face", type=int)
    grp.add_argument("--all-faces", action="store_true")
    s.add_argument("--out", help="CSV path (default stdout)")
    s.add_argument("--summary", help="write a JSON summary here")
    s.set_defaults(func=cmd_stats)

    c = sub.add_parser("check", help="class membership with certificate")
    c.add_argument("file")
    c.add_argument("--class", dest="cls", required=True,
                   choices=["good", "seq-shellable", "sps", "alternating"])
    c.add_argument("--face", type=int)
    c.add_argument("--parity", choices=[LITERAL, PROOF], default=LITERAL)
    c.add_argument("--budget", type=int)
    c.add_argument("--cert-out")
    c.set_defaults(func=cmd_check)

    v = sub.add_parser("verify", help="re-verify a certificate file")
    v.add_argument("file")
    v.add_argument("cert")
    v.set_defaults(func=cmd_verify)

    sc = sub.add_parser("scan", help="scan a directory for conjecture violations")
    sc.add_argument("dir")
    sc.add_argument("--conjecture", default="con1")
    sc.add_argument("--report", help="CSV path (default stdout)")
    sc.add_argument("--repro-dir")
    sc.add_argument("--workers", type=int, help="default: $KEDGES_WORKERS or 1")
    sc.set_defaults(func=cmd_scan)

    co = sub.add_parser("corpus", help="write the bundled corpus")
    co.add_argument("outdir")
    co.add_argument("--random", type=int, default=500)
    co.add_argument("--seed-base", type=int, default=0)
    co.set_defaults(func=cmd_corpus)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
