import csv
import io
import json
import subprocess
import sys

import pytest

from nihoperm.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def json_lines(text):
    return [json.loads(line) for line in text.splitlines()]


def test_verify_m3_two_true_reports():
    code, out = run("verify", "--m", "3", "--format", "json")
    recs = json_lines(out)
    assert code == 0
    assert [r["method"] for r in recs] == ["bruteforce", "lemma1"]
    assert all(r["verdict"] is True for r in recs)
    assert recs[0]["domain_size"] == 64 and recs[1]["domain_size"] == 9


def test_verify_m5_not_invertible():
    code, out = run("verify", "--m", "5", "--format", "json")
    assert code == 3
    assert json_lines(out)[0]["regime"] == "not-invertible"


def test_verify_m4_json_parseable_and_deterministic():
    a = run("verify", "--m", "4", "--format", "json", "--no-timing")
    b = run("verify", "--m", "4", "--format", "json", "--no-timing", "--parallelism", "2")
    assert a == b and a[0] == 0
    for rec in json_lines(a[1]):
        assert rec["elapsed_ms"] is None
        assert set(rec) >= {"method", "verdict", "witness", "domain_size", "elapsed_ms"}


def test_verify_csv():
    code, out = run("verify", "--m", "2", "--format", "csv", "--no-timing")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 2 and {r["verdict"] for r in rows} == {"true"}


def test_verify_cap_skips_bruteforce():
    code, out = run("verify", "--m", "4", "--format", "json", "--cap", "100")
    recs = json_lines(out)
    assert code == 0
    assert recs[0]["method"] == "bruteforce" and "skipped" in recs[0]["note"]
    assert recs[1]["method"] == "lemma1" and recs[1]["verdict"] is True


def test_verify_out_of_theorem_reports_without_failing():
    code, out = run("verify", "--m", "10", "--format", "json", "--no-timing")
    recs = json_lines(out)
    assert code == 0
    assert all(r["regime"] == "out-of-theorem" for r in recs)
    assert len({r["verdict"] for r in recs}) == 1


def test_field_override():
    code, out = run("verify", "--m", "3", "--field", "k=6,poly=0x5b", "--format", "json")
    assert code == 0 and json_lines(out)[0]["field"] == "k=6,poly=0x5b"


@pytest.mark.parametrize("field", ["k=6,poly=0x41", "k=8,poly=0x11b", "k=6,poly=zz", "nonsense"])
def test_bad_field_is_config_error(field):
    code, _ = run("verify", "--m", "3", "--field", field)
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["sweep", "--m-max", "0"],
    ["sweep", "--m-max", "15"],
    ["sweep", "--m-max", "3", "--field", "k=6,poly=0x43"],
    ["verify", "--m", "0"],
    ["verify"],
    ["lemma", "2"],
    ["lemma", "6", "--m", "2"],
    ["lemma", "4", "--m-ext", "4"],
    ["lemma", "2", "--m", "6"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_sweep_rows():
    code, out = run("sweep", "--m-max", "7", "--format", "json", "--no-timing")
    rows = json_lines(out)
    assert code == 0
    assert [r["m"] for r in rows] == list(range(1, 8))
    assert rows[4]["regime"] == "not-invertible" and "eq4_max" not in rows[4]
    for r in rows:
        if r["regime"] == "proved":
            assert r["eq4_max"] == 1 and r["bruteforce"] and r["lemma1"]


def test_sweep_csv_deterministic():
    a = run("sweep", "--m-max", "4", "--format", "csv", "--no-timing")
    b = run("sweep", "--m-max", "4", "--format", "csv", "--no-timing")
    assert a == b
    assert a[1].splitlines()[0] == "m,regime,s,t,eq4_max,bruteforce,lemma1,asserted"


def test_lemma4():
    code, out = run("lemma", "4", "--format", "json")
    rec = json_lines(out)[0]
    assert code == 0 and rec["identity_holds"] is True and rec["slots"] == 36 and len(rec["H"]) == 5


def test_lemma5_m5_expected_nonempty():
    code, out = run("lemma", "5", "--m", "5", "--format", "json")
    rec = json_lines(out)[0]
    assert code == 0 and rec["solutions"] > 0 and rec["expected"] == "expected: 5 | m"
    assert ["0x0", "0x4"] in rec["witnesses"]


def test_lemma5_m4_empty():
    code, out = run("lemma", "5", "--m", "4", "--format", "json")
    assert code == 0 and json_lines(out)[0]["solutions"] == 0


def test_lemma2_exhaustive_csv():
    code, out = run("lemma", "2", "--m", "2", "--exhaustive", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["a", "b", "t", "divides", "cond1", "cond2", "cond3", "circle_roots", "relation_holds"]
    assert len(rows) == 1 + 15 * 15 * 5


def test_lemma2_human_summary():
    code, out = run("lemma", "2", "--m", "3")
    assert code == 0 and "0 violations" in out


def test_lemma3():
    code, out = run("lemma", "3", "--m", "5", "--samples", "500", "--format", "json")
    rec = json_lines(out)[0]
    assert code == 0 and rec["holds"] and rec["relation_divisors"] == 165


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nihoperm", "verify", "--m", "5"], capture_output=True, text=True)
    assert proc.returncode == 3
    proc = subprocess.run([sys.executable, "-m", "nihoperm", "lemma", "4"], capture_output=True, text=True)
    assert proc.returncode == 0 and "identity_holds=true" in proc.stdout
