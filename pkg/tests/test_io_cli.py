import csv
import importlib
import io
import json

import pytest
from hypothesis import given, strategies as st

from kedges.cli import EXIT_IDENTITY, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, SCAN_COLUMNS, STATS_COLUMNS, main
from kedges.constructors import gen_convex, gen_cylindrical, gen_random, gen_twopage
from kedges.deviations import ScanViolation
from kedges.drawing import build
from kedges.errors import MalformedCert, MalformedSpec
from kedges.io import (
    cert_from_dict,
    cert_to_dict,
    dumps_cert,
    dumps_drawing,
    loads_cert,
    loads_drawing,
    read_drawing,
    write_drawing,
)
from kedges.shellability import is_alternating_class, is_seq_shellable, is_sps

# the package re-exports a function of the same name
deviations_mod = importlib.import_module("kedges.deviations")


# --- file formats ------------------------------------------------------------------

specs = st.one_of(
    st.builds(lambda n, s: gen_random(n, s), st.integers(3, 9), st.integers(0, 10**6)),
    st.builds(gen_convex, st.integers(3, 9)),
    st.builds(lambda n, s: gen_twopage(n, [bool((s >> i) & 1) for i in range(n * (n - 1) // 2)]),
              st.integers(3, 7), st.integers(0, 2**21)),
)


@given(specs)
def test_drawing_round_trip_is_byte_exact(spec):
    text = dumps_drawing(spec)
    back = loads_drawing(text)
    assert dumps_drawing(back) == text
    assert build(back).drawing_id == build(spec).drawing_id


def test_float_rejected():
    doc = json.loads(dumps_drawing(gen_convex(4)))
    doc["metadata"]["scale"] = 0.5
    with pytest.raises(MalformedSpec):
        loads_drawing(json.dumps(doc))


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("rotations"),
    lambda d: d.update(format_version=99),
    lambda d: d.update(n=7),
    lambda d: d["edges"].pop(),
    lambda d: d["edges"][0].update(u="a"),
])
def test_malformed_drawings(mutate):
    doc = json.loads(dumps_drawing(gen_convex(5)))
    mutate(doc)
    with pytest.raises(MalformedSpec):
        loads_drawing(json.dumps(doc))


def test_not_json():
    with pytest.raises(MalformedSpec):
        loads_drawing("[1, 2")


def test_write_read(tmp_path):
    spec = gen_cylindrical(6)
    text = write_drawing(spec, tmp_path / "c.json")
    assert (tmp_path / "c.json").read_text() == text
    assert read_drawing(tmp_path / "c.json").canonical() == spec.canonical()


def test_certificate_round_trip():
    D = build(gen_cylindrical(7))
    certs = [is_seq_shellable(D)[1], is_sps(D)[1], is_alternating_class(D)[1]]
    certs.append(certs[1].pair)
    for cert in certs:
        assert cert is not None
        text = dumps_cert(cert)
        assert loads_cert(text) == cert
        assert dumps_cert(loads_cert(text)) == text


def test_malformed_certificates():
    D = build(gen_cylindrical(7))
    doc = cert_to_dict(is_seq_shellable(D)[1])
    for bad in ({**doc, "type": "nope"}, {k: v for k, v in doc.items() if k != "order"},
                {**doc, "format_version": 2}):
        with pytest.raises(MalformedCert):
            cert_from_dict(bad)
    with pytest.raises(MalformedCert):
        loads_cert("{")


# --- CLI -------------------------------------------------------------------------------------

def run(capsys, *argv):
    try:
        code = main([str(a) for a in argv])
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.mark.parametrize("kind,n,extra,cr", [
    ("convex", 5, [], 5),
    ("cylindrical", 9, [], 36),
    ("twopage", 6, ["--optimize"], 3),
])
def test_gen(tmp_path, capsys, kind, n, extra, cr):
    out = tmp_path / "d.json"
    code, stdout, _ = run(capsys, "gen", "--kind", kind, "--n", n, *extra, "--out", out)
    assert code == EXIT_OK
    assert f"cr={cr}" in stdout
    assert read_drawing(out).crossing_count == cr


def test_gen_stdout_and_errors(capsys):
    code, stdout, err = run(capsys, "gen", "--kind", "random", "--n", 6, "--seed", 1)
    assert code == EXIT_OK and loads_drawing(stdout).n == 6 and "cr=" in err
    assert run(capsys, "gen", "--kind", "random", "--n", 6)[0] == EXIT_INPUT
    assert run(capsys, "gen", "--kind", "convex", "--n", 2)[0] == EXIT_INPUT
    assert run(capsys, "gen", "--kind", "twopage", "--n", 4)[0] == EXIT_INPUT
    assert run(capsys, "gen", "--kind", "twopage", "--n", 4, "--pages", "0101")[0] == EXIT_INPUT
    assert run(capsys, "gen", "--kind", "twopage", "--n", 4, "--pages", "010101")[0] == EXIT_OK
    assert run(capsys, "gen", "--kind", "spiral", "--n", 4)[0] == EXIT_INPUT


def test_stats(tmp_path, capsys):
    path = tmp_path / "k5.json"
    write_drawing(gen_convex(5), path)
    code, stdout, _ = run(capsys, "stats", path, "--all-faces", "--summary", tmp_path / "s.json")
    assert code == EXIT_OK
    table = rows(stdout)
    assert list(table[0].keys()) == list(STATS_COLUMNS)
    D = build(gen_convex(5))
    assert len(table) == len(D.faces)
    assert all(r["cr"] == "5" and r["H_n"] == "1" and r["delta_cr"] == "4" for r in table)
    assert "fail" not in table[0]["identities"]
    summary = json.loads((tmp_path / "s.json").read_text())
    assert summary["cr"] == 5 and summary["checks"]["cr"] == "ok"


def test_stats_face_and_errors(tmp_path, capsys):
    path = tmp_path / "c.json"
    write_drawing(gen_cylindrical(7), path)
    D = build(gen_cylindrical(7))
    f = D.faces[-1].id
    code, stdout, _ = run(capsys, "stats", path, "--face", f, "--out", tmp_path / "o.csv")
    assert code == EXIT_OK and stdout == ""
    table = rows((tmp_path / "o.csv").read_text())
    assert [r["face"] for r in table] == [str(f)]
    assert run(capsys, "stats", path, "--face", 10**6)[0] == EXIT_INPUT
    assert run(capsys, "stats", tmp_path / "missing.json")[0] == EXIT_INPUT
    (tmp_path / "bad.json").write_text("{}")
    assert run(capsys, "stats", tmp_path / "bad.json")[0] == EXIT_INPUT


def test_stats_identity_failure(tmp_path, capsys, monkeypatch):
    import kedges.cli as cli

    path = tmp_path / "c.json"
    write_drawing(gen_cylindrical(7), path)

    def broken(D):
        from kedges.errors import IdentityViolation

        raise IdentityViolation("forced", face=0)

    monkeypatch.setattr(cli, "check_cr_identity", broken)
    assert run(capsys, "stats", path)[0] == EXIT_IDENTITY


def test_check_and_verify(tmp_path, capsys):
    path = tmp_path / "cyl7.json"
    write_drawing(gen_cylindrical(7), path)
    code, stdout, _ = run(capsys, "check", path, "--class", "sps")
    assert code == EXIT_OK and "sps: true" in stdout
    cert = tmp_path / "cyl7.sps.cert.json"
    assert cert.exists()
    code, stdout, _ = run(capsys, "verify", path, cert)
    assert code == EXIT_OK and "certificate: valid" in stdout
    code, stdout, _ = run(capsys, "check", path, "--class", "good")
    assert code == EXIT_OK and "good: true" in stdout
    for cls in ("seq-shellable", "alternating"):
        out = tmp_path / f"{cls}.json"
        code, stdout, _ = run(capsys, "check", path, "--class", cls, "--cert-out", out)
        assert code == EXIT_OK and f"{cls}: true" in stdout
        assert run(capsys, "verify", path, out)[1].strip() == "certificate: valid"


def test_check_edge_cases(tmp_path, capsys):
    even = tmp_path / "k6.json"
    write_drawing(gen_convex(6), even)
    code, stdout, _ = run(capsys, "check", even, "--class", "sps")
    assert code == EXIT_OK and "n/a" in stdout
    other = tmp_path / "k5.json"
    write_drawing(gen_convex(5), other)
    run(capsys, "check", even, "--class", "seq-shellable", "--cert-out", tmp_path / "c.json")
    code, stdout, _ = run(capsys, "verify", other, tmp_path / "c.json")
    assert code == EXIT_INPUT
    assert run(capsys, "check", even, "--class", "bogus")[0] == EXIT_INPUT
    assert run(capsys, "check", even, "--class", "seq-shellable", "--face", 10**6)[0] == EXIT_INPUT


def test_scan_clean(tmp_path, capsys):
    for n in (5, 6, 7):
        write_drawing(gen_cylindrical(n), tmp_path / f"c{n}.json")
    code, stdout, _ = run(capsys, "scan", tmp_path, "--conjecture", "con1")
    assert code == EXIT_OK
    assert stdout == ",".join(SCAN_COLUMNS) + "\n"


def test_scan_input_errors(tmp_path, capsys):
    write_drawing(gen_cylindrical(7), tmp_path / "a.json")
    (tmp_path / "b.json").write_text("garbage")
    assert run(capsys, "scan", tmp_path)[0] == EXIT_INPUT
    assert run(capsys, "scan", tmp_path / "nope")[0] == EXIT_INPUT
    assert run(capsys, "scan", tmp_path, "--conjecture", "con2")[0] == EXIT_INPUT


def test_scan_violation_writes_repro(tmp_path, capsys, monkeypatch):
    data = tmp_path / "data"
    data.mkdir()
    write_drawing(gen_cylindrical(7), data / "cyl7.json")

    def fake(D, name=""):
        return [ScanViolation(name, D.n, 3, -1, 0, D.crossing_count, 9)]

    monkeypatch.setattr(deviations_mod, "conjecture_violations", fake)
    report = tmp_path / "out" / "report.csv"
    report.parent.mkdir()
    code, _, err = run(capsys, "scan", data, "--report", report, "--workers", 1)
    assert code == EXIT_VIOLATION
    table = rows(report.read_text())
    assert table == [{"file": "cyl7.json", "n": "7", "face_id": "3", "delta3_m": "-1",
                      "delta2_m": "0", "cr": "9", "H_n": "9"}]
    repro = json.loads((tmp_path / "out" / "repro-cyl7-f3.json").read_text())
    assert repro["face_id"] == 3
    assert loads_drawing(json.dumps(repro["drawing"])).canonical() == gen_cylindrical(7).canonical()


def test_corpus_command(tmp_path, capsys):
    code, stdout, _ = run(capsys, "corpus", tmp_path / "c", "--random", 3)
    assert code == EXIT_OK
    assert len(list((tmp_path / "c").iterdir())) == 7 + 7 + 6 + 3


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "kedges" in capsys.readouterr().out
