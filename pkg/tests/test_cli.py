import json
from fractions import Fraction

import pytest

from tridecomp.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, run, scan_frontier
from tridecomp.graph import to_graph6, turan2


def _json(capsys, argv):
    code = run([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_pi3_triangle(capsys):
    code, doc = _json(capsys, ["pi3", "--alpha", "3", "--graph6", "Bw"])
    assert code == EXIT_OK
    assert doc["result"]["cost"] == "3"
    assert set(doc) == {"command", "input", "result", "witnesses", "verdicts", "timing"}
    assert doc["witnesses"]["decomposition"] == "t 0 1 2\n"


def test_pi3_rational_alpha(capsys):
    code, doc = _json(capsys, ["pi3", "--alpha", "7/2", "--graph6", "F~~~w"])
    assert code == EXIT_OK and doc["result"]["cost"] == "49/2"


def test_nu_from_edge_list_file(tmp_path, capsys):
    f = tmp_path / "k4.txt"
    f.write_text("4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    code, doc = _json(capsys, ["nu", "--input", str(f)])
    assert code == EXIT_OK and doc["result"]["nu"] == 1


def test_gen(capsys):
    assert run(["gen", "--kind", "turan2", "--n", "7"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == to_graph6(turan2(7))


def test_fraclp_with_dump(tmp_path, capsys):
    dump = tmp_path / "lp.txt"
    code, doc = _json(capsys, ["fraclp", "--graph6", "C~", "--dump-lp", str(dump)])
    assert code == EXIT_OK and doc["result"]["pi3f"] == "6"
    assert dump.read_text().startswith("minimize")


def test_decompose_and_cover(capsys):
    code, doc = _json(capsys, ["decompose", "--n", "11"])
    assert code == EXIT_OK
    assert doc["result"]["cost"] == "59" and doc["result"]["leftover"] == "C4"
    code, doc = _json(capsys, ["decompose", "--n", "13", "--m", "2"])
    assert code == EXIT_OK and doc["result"]["cost"] == "80"
    code, doc = _json(capsys, ["cover", "--n", "10"])
    assert code == EXIT_OK and doc["result"]["cost"] == "50"


def test_brute_five(capsys):
    code, doc = _json(capsys, ["brute", "--n", "5", "--alpha", "3"])
    assert code == EXIT_OK
    assert doc["result"]["max_cost"] == "14"
    assert doc["witnesses"]["extremal"] == ["D~{"]  # K5
    assert doc["result"]["ell"] == 12 and doc["result"]["departs_from_ell"]
    assert "asymptotic only" in doc["result"]["asymptotic_prediction"]["note"]


def test_scan_csv_and_determinism(capsys):
    argv = ["scan", "--n", "9", "--sample", "6", "--seed", "42", "--format", "csv"]
    assert run(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    lines = first.splitlines()
    assert lines[0] == "graph6,mode,d_num,d_den,nu_d_num,nu_d_den,d,nu_d"
    assert len(lines) == 7 and all(",sampled," in line for line in lines[1:])


def test_scan_exhaustive_examples():
    res = scan_frontier(7)
    rows = {r.graph6: r for r in res.rows}
    assert len(res.rows) == 1044
    k7 = rows["F~~~w"]
    assert (k7.d, k7.nu_d) == (1, 1)
    k34 = next(r for r in res.rows if r.d == Fraction(4, 7) and r.nu_d == 0)
    assert k34.gap == Fraction(-1, 7)
    assert res.bounds_hold
    assert res.min_gap_row.gap < 0


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        run(["pi3"])
    assert info.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        run(["frobnicate"])
    assert info.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        run(["pi3", "--graph6", "Bw", "--alpha", "x"])
    assert info.value.code == EXIT_USAGE
    assert run(["nu", "--graph6", "zz"]) == EXIT_USAGE
    assert run(["scan", "--n", "13"]) == EXIT_USAGE
    assert run(["cover", "--n", "9"]) == EXIT_USAGE


def test_budget_exhaustion_exit(capsys):
    assert run(["nu", "--graph6", "L~~~~~~~~~~~~~", "--budget", "10"]) == EXIT_FAILED


def test_output_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert run(["pi3", "--graph6", "Bw", "--format", "json", "--output", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["result"]["cost"] == "3"
    assert capsys.readouterr().out == ""


def test_module_entry_point():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "tridecomp", "pi3", "--graph6", "Bw"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("pi3^3 = 3")


def test_verify_cert_csv(tmp_path, capsys):
    out = tmp_path / "cert.csv"
    assert run(["verify-cert", "--format", "csv", "--output", str(out)]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "canonical_form,graph6,edges,pi3f_num,pi3f_den,q_num,q_den,c_num,c_den"
    assert len(lines) == 1045
    k7 = next(line for line in lines if ",F~~~w," in line)
    assert k7.endswith(",21,1,0,1,21,1")
