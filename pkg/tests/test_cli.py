import json
import os
import subprocess
import sys

import pytest

from leonard.actions import triple_orbit
from leonard.cli import main
from leonard.params import QRacahTuple

T357 = ["--a", "3", "--b", "5", "--c", "7", "--q", "2", "--d", "3"]
T352 = ["--a", "3", "--b", "5", "--c", "2", "--q", "2", "--d", "3"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_exit_codes(capsys):
    assert run(capsys, "validate", *T357)[0] == 0
    code, out, _ = run(capsys, "validate", *T352)
    assert code == 1 and "witness: T-RQRAC3: c²=q²" in out
    assert run(capsys, "validate", *T352, "--pair-only")[0] == 0


def test_parse_errors_exit_2(capsys):
    assert run(capsys, "validate", "--a", "x", *T357[2:])[0] == 2
    assert run(capsys, "validate", *T357[:-2])[0] == 2
    assert run(capsys, "validate", *T357, "--field", "GF:10")[0] == 2
    assert run(capsys, "validate", "--a", "3", "--b", "5", "--c", "7", "--q", "2", "--d", "2")[0] == 2


def test_structured_output(capsys):
    code, out, _ = run(capsys, "--format", "structured", "validate", *T357)
    obj = json.loads(out)
    assert code == 0 and obj["overall"] is True
    assert [c["name"] for c in obj["checks"]] == ["T-RQRAC1", "T-RQRAC2", "T-RQRAC3", "T-RQRAC4"]
    code, out, _ = run(capsys, "validate", *T357, "--format", "structured")
    assert json.loads(out)["overall"] is True


def test_field_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("LEONARD_FIELD", "GF:1009")
    code, out, _ = run(capsys, "--format", "structured", "orbit", *T357)
    assert code == 0
    assert all(m["field"] == "GF:1009" for m in json.loads(out))


def test_build_verify_round_trip(capsys, tmp_path):
    bundle = tmp_path / "bundle.json"
    assert run(capsys, "build", *T357, "--out", str(bundle))[0] == 0
    code, out, _ = run(capsys, "verify", "--from", str(bundle))
    assert code == 0 and out.strip().endswith("overall: PASS")


def test_verify_mutated_bundle(capsys, tmp_path):
    bundle = tmp_path / "bundle.json"
    run(capsys, "build", *T357, "--out", str(bundle))
    obj = json.loads(bundle.read_text())
    obj["A_eps"]["rows"][1][2] = "1"
    bundle.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", "--from", str(bundle))
    assert code == 1
    assert "witness: bundle A^eps matches construction: entry (1, 2)" in out


def test_verify_io_and_parse_errors(capsys, tmp_path):
    assert run(capsys, "verify", "--from", str(tmp_path / "missing.json"))[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", "--from", str(bad))[0] == 2


def test_verify_inline_tuple(capsys):
    assert run(capsys, "verify", *T357)[0] == 0
    assert run(capsys, "verify", *T352)[0] == 1


def test_build_inadmissible_and_unwritable(capsys, tmp_path):
    assert run(capsys, "build", *T352)[0] == 1
    assert run(capsys, "build", *T357, "--out", str(tmp_path / "no" / "dir" / "b.json"))[0] == 3


def test_build_emits_idempotents(capsys):
    code, out, _ = run(capsys, "build", *T357, "--emit", "idempotents")
    idem = json.loads(out)["idempotents"]
    assert code == 0 and sum(len(v) for v in idem.values()) == 3 * 4


def test_orbit_and_twins_listings(capsys):
    code, out, _ = run(capsys, "orbit", *T357, "--group", "z2cubed")
    assert code == 0 and len(out.splitlines()) == 8
    assert out.splitlines() == sorted(out.splitlines(), key=lambda s: tuple(s.strip("()").replace(";", ",").split(",")))
    code, out, _ = run(capsys, "twins", *T357)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 4 and all(line.endswith("case (i)") for line in lines)
    assert run(capsys, "twins", *T352)[0] == 1
    assert run(capsys, "orbit", *T352, "--group", "d4")[0] == 0


def _records(tuples):
    return "\n".join(json.dumps(t.to_json()) for t in tuples) + "\n"


def test_classify_examples(capsys, tmp_path, t357):
    f = tmp_path / "in.jsonl"
    f.write_text(_records(triple_orbit(t357)))
    code, out, _ = run(capsys, "classify", "--input", str(f))
    recs = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(recs) == 1 and recs[0]["count"] == 8 and recs[0]["verified"]

    twin = QRacahTuple(*(1 / x for x in t357.scalars), 3)
    f.write_text(_records([t357, twin]))
    code, out, _ = run(capsys, "classify", "--input", str(f))
    assert code == 0 and len(out.splitlines()) == 2

    f.write_text("")
    assert run(capsys, "classify", "--input", str(f)) == (0, "", "")


def test_classify_skips_bad_lines_unless_strict(capsys, tmp_path, t357):
    f = tmp_path / "in.jsonl"
    f.write_text(_records([t357]) + "garbage\n")
    code, out, err = run(capsys, "classify", "--input", str(f))
    assert code == 0 and "line 2 skipped" in err and len(out.splitlines()) == 1
    assert run(capsys, "classify", "--input", str(f), "--strict")[0] == 2


def test_enumerate_records_and_determinism(capsys, tmp_path):
    args = ["enumerate", "--field", "GF:1009", "--d", "4", "--count", "10", "--seed", "5"]
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert run(capsys, *args, "--out", str(a))[0] == 0
    assert run(capsys, *args, "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    recs = [json.loads(x) for x in a.read_text().splitlines()]
    assert len(recs) == 10 and all(r["verified"] for r in recs)
    assert {"tuple", "hat", "orbit_key", "verified", "timestamp"} <= set(recs[0])


def test_enumerate_gives_up(capsys):
    # GF(7) has no q with q^2, q^4, q^6 all different from 1
    assert run(capsys, "enumerate", "--field", "GF:7", "--d", "3", "--count", "1", "--max-attempts", "50")[0] == 1


def test_enumerate_over_rationals(capsys):
    code, out, _ = run(capsys, "enumerate", "--d", "3", "--count", "2", "--seed", "1")
    assert code == 0 and len(out.splitlines()) == 2


def test_console_script_entry_point(tmp_path):
    env = dict(os.environ, SOURCE_DATE_EPOCH="0")
    proc = subprocess.run([sys.executable, "-m", "leonard.cli", "validate", *T357], capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and "overall: PASS" in proc.stdout
