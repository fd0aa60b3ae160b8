import json
import subprocess
import sys

import pytest

from lawforge.cli import config_to_argv, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(argv, capsys):
    code, out, _ = run(argv, capsys)
    return code, json.loads(out)


def test_construct_examples(capsys):
    code, rep = run_json(["construct", "psl2-law", "--q", "7"], capsys)
    assert code == 0 and rep["length"] <= 1152 == rep["claimed_bound"]
    code, rep = run_json(["construct", "solvable", "--d", "2"], capsys)
    assert code == 0 and rep["length"] <= 16
    code, rep = run_json(["construct", "max-order", "--m", "4"], capsys)
    assert code == 0 and rep["length"] <= 1024
    code, rep = run_json(["construct", "union", "--word", "x^2", "--word", "x^3"], capsys)
    assert code == 0 and rep["length"] <= 16 * 4 * 3
    code, rep = run_json(["construct", "extension", "--word", "x^3", "--word", "x^2"], capsys)
    assert code == 0 and rep["word"] == "x^6"


def test_construct_usage_errors(capsys):
    assert run(["construct", "psl2-law"], capsys)[0] == 2
    assert run(["construct", "bogus"], capsys)[0] == 2
    assert run(["construct", "extension", "--word", "x"], capsys)[0] == 2
    assert run(["construct", "small-field", "--family", "Q7", "--N", "3"], capsys)[0] == 2
    code, _, err = run(["construct", "small-field", "--family", "A1", "--N", "5",
                        "--caps", "word_length=100"], capsys)
    assert code == 2  # --caps is a global option and must precede the command
    code, _, err = run(["--caps", "word_length=100", "construct", "small-field", "--family", "A1", "--N", "5"],
                       capsys)
    assert code == 3 and "cap" in err


def test_verify_examples(capsys, tmp_path):
    wf = tmp_path / "words.txt"
    code, rep = run_json(["construct", "psl2-law", "--q", "5"], capsys)
    wf.write_text(rep["word"] + "\n")
    code, rep = run_json(["verify", "--group", "PSL(2,5)", "--word-file", str(wf)], capsys)
    assert code == 0
    cert = rep["certificates"][0]
    assert cert["verdict"] == "law" and cert["pairs_checked"] == 3600 and "wall_time" not in cert
    code, rep = run_json(["verify", "--group", "Sym(3)", "--word", "x y x^-1 y^-1"], capsys)
    assert code == 1 and rep["certificates"][0]["verdict"] == "counterexample"
    assert run(["verify", "--group", "PSL(2,31)", "--word", "x y X Y"], capsys)[0] == 3
    code, rep = run_json(["verify", "--group", "PSL(2,31)", "--word", "x y X Y", "--mode", "sampled",
                          "--samples", "200"], capsys)
    assert code == 1
    code, rep = run_json(["verify", "--group", "C(2)xC(2)xC(2)", "--word", "x y x^-1 y^-1", "--mode", "generating-pairs"],
                         capsys)
    assert code == 0 and rep["certificates"][0]["verdict"] == "covers-generating-pairs"


def test_parse_errors(capsys):
    assert run(["verify", "--group", "Nope(3)", "--word", "x"], capsys)[0] == 2
    assert run(["verify", "--group", "C(3)", "--word", "x^"], capsys)[0] == 2
    assert run(["verify", "--group", "C(3)"], capsys)[0] == 2
    assert run([], capsys)[0] == 2
    assert run(["--caps", "bogus=1", "tuple-count", "--n", "7", "--d", "3"], capsys)[0] == 2


def test_spectrum_and_density(capsys):
    code, out, _ = run(["spectrum", "--group", "Alt(5)", "--format", "csv"], capsys)
    assert code == 0 and out == "order,count\n1,1\n2,15\n3,20\n5,24\n"
    code, rep = run_json(["density", "--group", "PSL(2,5)", "--family", "A1", "--q", "5"], capsys)
    assert rep["e_g_fraction"] == "16/60" and rep["e_g_density"] == "4/15"
    code, rep = run_json(["density", "--group", "SL(2,9)", "--family", "A1", "--q", "9"], capsys)
    assert rep["hypothesis_holds"] and rep["meets_bound"] and rep["e_g_density"] == "17/45"
    code, rep = run_json(["spectrum", "--group", "SL(2,5)", "--regular"], capsys)
    assert rep["regular_count"] == 30 and rep["max_order"] == 10


def test_tuple_count(capsys):
    code, rep = run_json(["tuple-count", "--n", "7", "--d", "3"], capsys)
    assert code == 0 and (rep["exact"], rep["bound"]) == (30, 28)
    code, out, _ = run(["tuple-count", "--n", "6", "--d", "3", "--format", "text"], capsys)
    assert out == "exact 24, bound 18\n"


def test_walk_commands(capsys):
    code, rep = run_json(["diameter", "--group", "C(12)", "--gens", "1"], capsys)
    assert rep["diameter"] == 6
    assert run(["diameter", "--group", "C(12)", "--gens", "2"], capsys)[0] == 2
    assert run(["diameter", "--group", "C(12)", "--gens", "40"], capsys)[0] == 2
    code, rep = run_json(["mixing-check", "--group", "PSL(2,4)", "--family", "A1", "--q", "4", "--seed", "3"],
                         capsys)
    assert code == 0 and rep["passed"] and rep["config"]["seed"] == 3
    code, rep = run_json(["almost-law", "--group", "PSL(2,5)", "--family", "A1", "--q", "5", "--seed", "1"],
                         capsys)
    assert code == 0 and rep["success"] and rep["config"]["seed"] == 1
    code, rep = run_json(["almost-law", "--group", "PSL(2,5)", "--family", "A1", "--q", "5", "--m", "1",
                          "--L", "2", "--attempts", "1"], capsys)
    assert code == 3 and not rep["success"]


def test_shortest_law_and_vanishing(capsys):
    code, rep = run_json(["shortest-law", "--group", "C(2)", "--max-length", "2"], capsys)
    assert code == 0 and rep["found"] == "x^2"
    code, rep = run_json(["shortest-law", "--group", "PSL(2,7)", "--max-length", "2"], capsys)
    assert code == 1 and rep["found"] is None and rep["words_checked"] == 16
    code, rep = run_json(["vanishing-set", "--group", "Sym(3)", "--word", "x^3", "--list-pairs"], capsys)
    assert rep["size"] == 18 == len(rep["pairs"])


REPLAYABLE = [
    ["construct", "psl2-law", "--q", "4"],
    ["verify", "--group", "Sym(4)", "--word", "x^12", "--word", "x y x^-1 y^-1"],
    ["density", "--group", "SU(3,2)", "--family", "2A2", "--q", "2"],
    ["diameter", "--group", "PSL(2,7)", "--seed", "5"],
    ["mixing-check", "--group", "PSL(2,5)", "--family", "A1", "--q", "5", "--seed", "2", "--trials", "2000"],
    ["almost-law", "--group", "PSL(2,5)", "--family", "A1", "--q", "5", "--seed", "1"],
    ["--caps", "pairs=100", "verify", "--group", "PSL(2,7)", "--word", "x y x^-1 y^-1", "--mode", "sampled",
     "--samples", "300", "--seed", "9"],
]


@pytest.mark.parametrize("argv", REPLAYABLE, ids=lambda a: a[0] if a[0] != "--caps" else a[2])
def test_reports_replay_byte_for_byte(argv, capsys, tmp_path):
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    third = tmp_path / "third.json"
    main(argv + ["--output", str(first)])
    main(argv + ["--output", str(second)])
    assert first.read_bytes() == second.read_bytes()
    cfg = json.loads(first.read_text())["config"]
    assert main(config_to_argv(cfg) + ["--output", str(third)]) in (0, 1)
    assert third.read_bytes() == first.read_bytes()
    replayed = tmp_path / "replayed.json"
    main(["replay", str(first), "--output", str(replayed)])
    assert replayed.read_bytes() == first.read_bytes()


def test_replay_rejects_non_reports(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert run(["replay", str(bad)], capsys)[0] == 2
    assert run(["replay", str(tmp_path / "missing.json")], capsys)[0] == 2


def test_module_entry_point_exit_code():
    proc = subprocess.run([sys.executable, "-m", "lawforge", "verify", "--group", "Sym(3)", "--word", "x y x^-1 y^-1",
                           "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 1
    assert proc.stdout.strip().endswith("counterexample")
    assert proc.stderr == ""
