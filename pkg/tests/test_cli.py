import json
import subprocess
import sys

import pytest

from helpers import FIXTURES
from nichols.cli import EXIT_MALFORMED, EXIT_OK, EXIT_REFUSED, main

BRAIDINGS = FIXTURES / "braidings"
GOLDEN = FIXTURES / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def fixture(name):
    return str(BRAIDINGS / name)


def test_analyze_a2_with_oracle(capsys):
    code, out, _ = run(capsys, "analyze", "--input", fixture("a2_n3.json"), "--oracle")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["dimension"] == "27" and rep["oracle_match"] is True
    assert rep["oracle"]["total"] == "27"
    assert rep["hilbert"] == [1, 2, 4, 4, 5, 4, 4, 2, 1]


def test_analyze_not_symmetrizable(capsys):
    code, out, _ = run(capsys, "analyze", "--input", fixture("example_not_symmetrizable.json"), "--oracle")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["finite_type"] is False and rep["symmetrizable"] is False
    assert rep["locally_fl"] is True
    assert rep["dimension"] is None and rep["oracle"] is None and rep["oracle_match"] is None


def test_input_echo_round_trips(capsys):
    path = fixture("b2_p5.json")
    _, out, _ = run(capsys, "analyze", "--input", path)
    with open(path) as fh:
        original = json.load(fh)
    assert json.loads(out)["input"] == original


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "analyze", "--input", fixture("empty.json"))[0] == EXIT_MALFORMED
    assert run(capsys, "analyze")[0] == EXIT_MALFORMED
    assert run(capsys, "dim", "--input", str(tmp_path / "missing.json"))[0] == EXIT_MALFORMED
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "cartan-type", "--input", str(bad))[0] == EXIT_MALFORMED
    code, _, err = run(capsys, "zp-classify", "--p", "9")
    assert code == EXIT_REFUSED and "refused" in err
    even = tmp_path / "even.json"
    even.write_text(json.dumps({"theta": 1, "entries": [["1/4"]]}))
    assert run(capsys, "dim", "--input", str(even))[0] == EXIT_REFUSED
    assert run(capsys, "antisym-dim", "--input", fixture("a2_n3.json"), "--degree-cap", "-1")[0] == EXIT_MALFORMED


def test_subcommands(capsys):
    _, out, _ = run(capsys, "cartan-type", "--input", fixture("b2_p5.json"))
    assert json.loads(out)["gcm"] == [[2, -2], [-1, 2]]
    _, out, _ = run(capsys, "dim", "--input", fixture("b2_p5.json"))
    assert json.loads(out)["dimension"] == "625"
    _, out, _ = run(capsys, "twist-symmetrize", "--input", fixture("a2_p7_nonsymmetric.json"))
    assert json.loads(out)["symmetric"] is True
    _, out, _ = run(capsys, "serre-check", "--input", fixture("a2_p7_nonsymmetric.json"), "--i", "1", "--j", "0")
    rep = json.loads(out)
    assert rep["primitive"] and rep["condition_holds"] and rep["matches_closed_form"]
    _, out, _ = run(capsys, "antisym-dim", "--input", fixture("a2_n3.json"))
    rep = json.loads(out)
    assert rep["total"] == "27" and rep["capped"] is False
    _, out, _ = run(capsys, "antisym-dim", "--input", fixture("b2_p5.json"), "--degree-cap", "4")
    rep = json.loads(out)
    assert rep["ranks"] == [1, 2, 4, 7, 11] and rep["total"] is None and rep["capped"] is True


def _counts(report):
    return {f["diagram"]: len(f["classes"]) for f in report["families"]}


def test_zp_classify(capsys):
    _, out, _ = run(capsys, "zp-classify", "--p", "5")
    counts = _counts(json.loads(out))
    assert counts["B2"] == 8 and "A2" not in counts and "G2" not in counts
    _, out, _ = run(capsys, "zp-classify", "--p", "3")
    counts = _counts(json.loads(out))
    assert counts["A2"] == 2 and counts["A2xA1"] == 4


@pytest.mark.parametrize("golden", sorted(p.name for p in GOLDEN.glob("*.json")))
def test_golden_byte_stable(capsys, tmp_path, golden):
    stem = golden[:-len(".json")]
    if stem.startswith("zp-classify-p"):
        argv = ["zp-classify", "--p", stem[len("zp-classify-p"):]]
    else:
        for cmd in ("analyze", "twist-symmetrize", "serre-check"):
            if stem.startswith(cmd + "-"):
                rest = stem[len(cmd) + 1:]
                break
        argv = [cmd]
        if cmd == "serre-check":
            rest, i, j = rest.rsplit("-", 2)
            argv += ["--i", i, "--j", j]
        argv += ["--input", fixture(rest + ".json")]
    code, out, _ = run(capsys, *argv, "--golden", str(tmp_path))
    assert code == EXIT_OK
    expected = (GOLDEN / golden).read_text()
    assert out == expected
    assert (tmp_path / golden).read_text() == expected


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nichols", "cartan-type", "--input", fixture("a2_n3.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["gcm"] == [[2, -1], [-1, 2]]
