import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from gbfcert.cli import main
from gbfcert.relsearch import make_fixture

SCHEMA = json.loads(resources.files("gbfcert").joinpath("schema/run_report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert report["exit_code"] == code
    return code, report


def test_certify_exit_codes(capsys):
    code, rep = run_json(capsys, "certify", "--n", "3", "--p", "1049177")
    assert code == 0 and rep["results"]["verdict"] == "NonexistenceCertified"
    assert rep["results"]["p"] == "1049177"
    code, rep = run_json(capsys, "certify", "--n", "3", "--p", "89")
    assert code == 10 and rep["results"]["verdict"] == "Inconclusive"
    assert main(["certify", "--n", "3", "--p", "91"]) == 2


def test_certify_even_n_is_usage_error(capsys):
    assert main(["certify", "--n", "4", "--p", "89"]) == 2


def test_scan_first_five(capsys):
    code, rep = run_json(
        capsys, "scan", "--g", "8", "--f-parity", "odd", "--mod8", "1", "--certify-n", "3",
        "--from", "1048576", "--count", "5",
    )
    assert code == 0
    assert [r["p"] for r in rep["results"]] == ["1049177", "1050169", "1050233", "1050473", "1051961"]


def test_scan_budget_exit(capsys):
    code = main(["scan", "--g", "8", "--certify-n", "3", "--from", "3", "--count", "1", "--work-limit", "100"])
    assert code == 20


def test_smallest(capsys):
    code, rep = run_json(capsys, "smallest", "--n", "3", "--g", "8")
    assert code == 0 and rep["results"]["p"] == "1049177"


def test_wieferich(capsys):
    code, rep = run_json(capsys, "wieferich", "--q", "2", "--limit", "10000")
    assert [r["p"] for r in rep["results"]] == ["1093", "3511"]


def test_density(capsys):
    code, rep = run_json(capsys, "density", "--q", "2", "--g", "8", "--x", "10000", "--no-bound")
    row = rep["results"][0]
    assert code == 0 and row["pi_x"] == 1229 and row["M"] > 0
    assert main(["density", "--g", "8", "--x", str(10**9)]) == 20


def test_cyclo_verify(capsys):
    code, rep = run_json(capsys, "cyclo-verify", "--p", "7", "--subgroup", "1,2,4")
    assert code == 0 and rep["results"]["ok"]
    code, rep = run_json(capsys, "cyclo-verify", "--p", "5", "--subgroup", "1")
    assert code == 0
    assert main(["cyclo-verify", "--p", "7", "--subgroup", "1,6"]) == 2
    assert main(["cyclo-verify", "--p", "7", "--subgroup", "1,3"]) == 2


def test_gbf_search(capsys):
    code, rep = run_json(capsys, "gbf-search", "--n", "1", "--t", "6")
    assert code == 0 and rep["results"]["count"] == 0
    code, rep = run_json(capsys, "gbf-search", "--n", "2", "--t", "2")
    assert rep["results"]["count"] == 8 and len(rep["results"]["tables"]) == 8
    assert main(["gbf-search", "--n", "2", "--t", "6"]) == 20


def test_relsearch_max_np(capsys):
    for name, v in (("p89.fx", 3), ("p2441.fx", 31)):
        code, rep = run_json(capsys, "relsearch", "--fixture", name, "--max-np")
        assert code == 0 and rep["results"]["n_p"] == v
        assert "PARI/GP" in rep["provenance"]


def test_relsearch_trivial_and_solvable(capsys, tmp_path):
    trivial = make_fixture(7, 2, [], [[], []], [2, 1], "trivial")
    path = tmp_path / "t.fx"
    path.write_text(trivial.to_text())
    code, rep = run_json(capsys, "relsearch", "--fixture", str(path), "--n", "7")
    assert code == 10 and rep["results"]["witness"] == [0]
    code, rep = run_json(capsys, "relsearch", "--fixture", "p89.fx", "--n", "3")
    assert code == 0 and rep["results"]["solvable"] is False


def test_relsearch_bad_fixture(capsys, tmp_path):
    path = tmp_path / "bad.fx"
    path.write_text("nonsense\n")
    assert main(["relsearch", "--fixture", str(path), "--max-np"]) == 2
    assert main(["relsearch", "--fixture", str(tmp_path / "missing.fx"), "--max-np"]) == 2


def test_table_and_jsonl_output(capsys):
    code, out = run(capsys, "wieferich", "--limit", "10000", "--table")
    lines = out.strip().splitlines()
    assert lines[0].strip() == "p" and lines[2:] == ["1093", "3511"]
    code, out = run(capsys, "wieferich", "--limit", "10000", "--jsonl")
    assert [json.loads(l) for l in out.strip().splitlines()] == [{"p": "1093"}, {"p": "3511"}]


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["certify", "--p", "89"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["smallest", "--n", "4", "--g", "8"])
    assert exc.value.code == 2


def test_deterministic_results(capsys):
    argv = ["scan", "--g", "8", "--from", "3", "--to", "50000", "--seed", "3"]
    _, a = run_json(capsys, *argv)
    _, b = run_json(capsys, *argv, "--threads", "4")
    assert a["results"] == b["results"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gbfcert", "certify", "--n", "3", "--p", "1049177"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    jsonschema.validate(json.loads(proc.stdout), SCHEMA)
