import json
import subprocess
import sys
from pathlib import Path

import pytest

from periodkit.cli import EXIT_DATA, EXIT_DOMAIN, EXIT_USAGE, run

GOLDEN = Path(__file__).parent / "golden"
CASES = sorted(GOLDEN.glob("*.json"))


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "periodkit", *argv], capture_output=True, text=True)


@pytest.mark.parametrize("path", CASES, ids=lambda p: p.stem)
def test_golden_case(path):
    case = json.loads(path.read_text())
    code, out = run(case["argv"])
    assert code == case["exit"]
    assert (json.loads(out) if out else None) == case["stdout"]


def test_corpus_covers_every_leaf():
    seen = {tuple(json.loads(p.read_text())["argv"][:2]) for p in CASES}
    for leaf in [
        ("weyl", "roots"), ("weyl", "involutions"), ("weyl", "minimal"), ("weyl", "profile"),
        ("levi", "list"), ("levi", "reps"), ("levi", "jmap"), ("levi", "rho"),
        ("orbit", "classify"), ("orbit", "rep"), ("orbit", "eigensplit"), ("orbit", "rhox"), ("orbit", "stabilizer"),
        ("graph", "edges"), ("graph", "reduce"), ("graph", "audit"),
        ("spectrum", "support"), ("spectrum", "cfactor"), ("spectrum", "chamber"), ("spectrum", "split"),
    ]:
        assert leaf in seen


def test_documented_examples():
    code, out = run(["weyl", "involutions", "--n", "2"])
    assert code == 0 and len(json.loads(out)) == 6
    w = json.dumps({"n": 2, "tau": [1, 2], "c": [1]})
    code, out = run(["orbit", "classify", "--n", "2", "--levi", "1;1", "--w", w])
    assert code == 0 and json.loads(out)["parity_ok"] is False
    code, out = run(["spectrum", "cfactor", "--w", json.dumps({"n": 1, "tau": [1], "c": [1]}), "--nu", "1"])
    assert code == EXIT_DOMAIN and json.loads(out)["error"] == "zeta-pole"


def test_exit_codes_through_the_entry_point():
    assert _cli("nope").returncode == EXIT_USAGE
    assert _cli("weyl").returncode == EXIT_USAGE
    assert _cli("weyl", "involutions", "--n", "0").returncode == EXIT_USAGE
    assert _cli("weyl", "involutions", "--disc", "4").returncode == EXIT_USAGE
    assert _cli("weyl", "profile", "--w", "[1,").returncode == EXIT_DATA
    assert _cli("levi", "rho", "--levi", "x;y").returncode == EXIT_DATA
    res = _cli("levi", "jmap", "--levi", "2;0", "--w", json.dumps({"n": 2, "tau": [1, 2], "c": [2]}))
    assert res.returncode == EXIT_DOMAIN
    assert json.loads(res.stdout)["error"] == "not-in-weyl-set"
    assert _cli("--help").returncode == 0


def test_output_is_byte_identical_across_runs():
    argv = ["audit", "--n", "2", "--seed", "5"]
    first, second = _cli(*argv), _cli(*argv)
    assert first.returncode == 0
    assert first.stdout == second.stdout


def test_parallel_audit_matches_serial():
    assert run(["audit", "--n", "2", "--jobs", "4"]) == run(["audit", "--n", "2"])


def test_table_output():
    code, out = run(["levi", "rho", "--levi", "1,1;0", "--output", "table"])
    assert code == 0
    assert out.splitlines()[1].startswith("rho_P ")


def test_corpus_subcommand():
    code, out = run(["corpus", "--dir", str(GOLDEN)])
    assert code == 0 and json.loads(out)["all_pass"] is True


def test_file_input(tmp_path):
    f = tmp_path / "w.json"
    f.write_text(json.dumps({"n": 2, "tau": [2, 1], "c": []}))
    code, out = run(["weyl", "profile", "--w", f"@{f}"])
    assert code == 0 and json.loads(out)["c_less"] == [1]
