"""Command-line interface: exit codes, output formats, report files."""
import json

import pytest

from helpers import u_branchy
from ocalab import emit, get_entry, parse_file, sample_run, zoo_names
from ocalab.cli import EXIT_EXHAUSTED, EXIT_INVALID, EXIT_IO, EXIT_OK, main


def test_no_arguments_is_a_usage_error(capsys):
    assert main([]) == EXIT_INVALID
    capsys.readouterr()


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "validate" in out and "adversary" in out


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------


def test_validate_ok(tmp_path, capsys):
    path = tmp_path / "m.cma"
    path.write_text(emit(get_entry("m1").machine), encoding="utf-8")
    assert main(["validate", str(path)]) == EXIT_OK
    assert capsys.readouterr().out == "OK\n"


def test_validate_broken_file(tmp_path, capsys):
    path = tmp_path / "broken.cma"
    path.write_text(
        "machine b\nclass p1ca\nalphabet a\nstates s\ninitial s\naccept s\n"
        "trans s , a , Z -> s , 0 @ 1/2\n",
        encoding="utf-8",
    )
    assert main(["validate", str(path)]) == EXIT_INVALID
    out = capsys.readouterr().out
    assert "[prob-sum]" in out
    assert "error" in out


def test_validate_missing_file(capsys):
    assert main(["validate", "no/such/file.cma"]) == EXIT_IO
    assert "no such file" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------


def test_run_zoo_machine_by_name(capsys):
    assert main(["run", "onenone-lv", "--input", "adaabddd"]) == EXIT_OK
    assert capsys.readouterr().out == "accept=1/3 reject=0/1 dontknow=2/3\n"


def test_run_quantum_machine(capsys):
    word = "00#00#00#0000#00###"
    assert main(["run", "xoreq-q1ca", "--input", word]) == EXIT_OK
    assert capsys.readouterr().out == "accept=1/1 reject=0/1 dontknow=0/1\n"


def test_run_alien_input_fails(capsys):
    assert main(["run", "m1", "--input", "abc"]) == EXIT_INVALID
    capsys.readouterr()


def test_run_unknown_machine(capsys):
    assert main(["run", "no-such-thing", "--input", "a"]) == EXIT_IO
    assert "no such file and no such zoo machine" in capsys.readouterr().err


def test_run_sample_requires_seed(capsys):
    code = main(["run", "onenone-lv", "--input", "adaabddd", "--sample"])
    assert code == EXIT_INVALID
    assert "--seed" in capsys.readouterr().err


def test_run_sample_rejects_quantum(capsys):
    code = main(
        ["run", "xoreq-q1ca", "--input", "00#", "--sample", "--seed", "1"]
    )
    assert code == EXIT_INVALID
    assert "classical" in capsys.readouterr().err


def test_run_sample_matches_library(capsys):
    machine = get_entry("onenone-lv").machine
    expected = sample_run(machine, "adaabddd", seed=7)
    code = main(
        ["run", "onenone-lv", "--input", "adaabddd", "--sample", "--seed", "7"]
    )
    assert code == EXIT_OK
    assert capsys.readouterr().out == expected + "\n"


# ---------------------------------------------------------------------------
# batch
# ---------------------------------------------------------------------------


def run_batch(tmp_path, capsys, *argv):
    out = tmp_path / "report.json"
    code = main(["batch", *argv, "--out", str(out)])
    captured = capsys.readouterr()
    report = json.loads(out.read_text(encoding="utf-8")) if out.exists() else None
    out.unlink(missing_ok=True)
    return code, report, captured


def test_batch_zoo_report(tmp_path, capsys):
    code, report, _ = run_batch(tmp_path, capsys, "--zoo", "onenone-lv", "--max-n", "8")
    assert code == EXIT_OK
    assert report["problem"] == "one-none-t1"
    assert report["machine"] == "onenone-lv"
    assert report["max_n"] == 8
    assert len(report["instances"]) == 108
    assert report["summary"] == {
        "min_accept_on_yes": "1/3",
        "max_accept_on_no": "0/1",
        "max_dontknow": "2/3",
        "worst_case_instance": {"input": "adaabddd", "label": "yes"},
    }
    first = report["instances"][0]
    assert set(first) == {"input", "label", "accept", "reject", "dontknow"}


def test_batch_report_bytes_are_deterministic(tmp_path, capsys):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    for out in (out1, out2):
        assert (
            main(["batch", "--zoo", "eq-star-p1bca-k3", "--max-n", "5", "--out", str(out)])
            == EXIT_OK
        )
    capsys.readouterr()
    blob1 = out1.read_bytes()
    assert blob1 == out2.read_bytes()
    assert blob1.endswith(b"}\n")
    # keys are sorted: "instances" precedes "machine" precedes "problem"
    text = blob1.decode("utf-8")
    assert text.index('"instances"') < text.index('"machine"') < text.index('"problem"')


def test_batch_file_machine_needs_problem(tmp_path, capsys):
    path = tmp_path / "m1.cma"
    path.write_text(emit(get_entry("m1").machine), encoding="utf-8")
    out = tmp_path / "r.json"
    code = main(["batch", str(path), "--max-n", "4", "--out", str(out)])
    assert code == EXIT_INVALID
    assert "--problem is required" in capsys.readouterr().err


def test_batch_file_machine_with_problem(tmp_path, capsys):
    path = tmp_path / "m1.cma"
    path.write_text(emit(get_entry("m1").machine), encoding="utf-8")
    out = tmp_path / "r.json"
    code = main(
        ["batch", str(path), "--problem", "xor-eq", "--max-n", "2", "--out", str(out)]
    )
    assert code == EXIT_OK  # file machines carry no claimed bounds to violate
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["machine"] == "m1"
    assert report["problem"] == "xor-eq"
    capsys.readouterr()


def test_batch_requires_exactly_one_machine_source(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["batch", "--max-n", "4", "--out", str(out)])
    assert code == EXIT_INVALID
    path = tmp_path / "m.cma"
    path.write_text(emit(get_entry("m1").machine), encoding="utf-8")
    code = main(
        ["batch", str(path), "--zoo", "m1", "--max-n", "4", "--out", str(out)]
    )
    assert code == EXIT_INVALID
    assert "exactly one" in capsys.readouterr().err


def test_batch_unknown_problem(tmp_path, capsys):
    code, _, captured = run_batch(
        tmp_path, capsys, "--zoo", "m1", "--problem", "three-sat", "--max-n", "4"
    )
    assert code == EXIT_INVALID
    assert "unknown problem" in captured.err


def test_batch_unknown_zoo_machine(tmp_path, capsys):
    code, _, captured = run_batch(
        tmp_path, capsys, "--zoo", "mystery", "--max-n", "4"
    )
    assert code == EXIT_INVALID
    assert "unknown zoo machine" in captured.err


def test_batch_over_ceiling(tmp_path, capsys):
    code, _, captured = run_batch(
        tmp_path, capsys, "--zoo", "eq-star-p1bca-k3", "--max-n", "99"
    )
    assert code == EXIT_INVALID
    assert "ceiling" in captured.err


def test_batch_flags_violated_bounds(tmp_path, capsys):
    # deliberately run the equality acceptor against the complement problem
    code, report, captured = run_batch(
        tmp_path,
        capsys,
        "--zoo",
        "eq-star-p1bca-k3",
        "--problem",
        "eq-star-complement",
        "--max-n",
        "6",
    )
    assert code == EXIT_INVALID
    assert "claimed bounds violated for eq-star-p1bca-k3" in captured.err
    # the report file is still written for inspection
    assert report is not None and report["problem"] == "eq-star-complement"


# ---------------------------------------------------------------------------
# adversary
# ---------------------------------------------------------------------------


def test_adversary_fool_xoreq_json(capsys):
    assert main(["adversary", "fool-xoreq", "m1"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["case"] == "a equal"
    assert payload["machine"] == "m1"
    assert payload["collision"] == ["q3", 2]
    assert payload["word_yes"] == "00#00#0000#00#000###0"
    assert payload["word_no"] == "00#0000#0000#00#000###0"
    assert payload["machine_accepts"] is False


def test_adversary_fool_xoreq_wrong_class(capsys):
    assert main(["adversary", "fool-xoreq", "onenone-lv"]) == EXIT_INVALID
    assert "deterministic" in capsys.readouterr().err


def test_adversary_pump_wrong_class(capsys):
    assert main(["adversary", "pump-u1bca", "m1"]) == EXIT_INVALID
    assert "u1bca" in capsys.readouterr().err


def test_adversary_pump_from_file(tmp_path, capsys):
    path = tmp_path / "u.cma"
    path.write_text(emit(u_branchy()), encoding="utf-8")
    assert main(["adversary", "pump-u1bca", str(path)]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["kind"] == "pumped-reject"
    assert payload["witness_word"] == "aaaabbb"
    assert payload["final_config"] == ["t", 3]


def test_adversary_brute_zoo_machine_survives(capsys):
    code = main(["adversary", "brute", "xoreq-q1ca", "--max-n", "4"])
    assert code == EXIT_EXHAUSTED
    out = capsys.readouterr().out
    assert out == "no refutation: xoreq-q1ca is consistent with xor-eq up to 4\n"


def test_adversary_brute_refutes_file_machine(tmp_path, capsys):
    path = tmp_path / "m1.cma"
    path.write_text(emit(get_entry("m1").machine), encoding="utf-8")
    code = main(
        ["adversary", "brute", str(path), "--problem", "xor-eq", "--max-n", "4"]
    )
    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["input"] == "00#00#00#00####"
    assert payload["label"] == "no"
    assert payload["accept"] == "1/1"
    assert payload["reason"] == "expected accept=0 on a no-instance, got 1"


def test_adversary_brute_missing_arguments(tmp_path, capsys):
    code = main(["adversary", "brute", "xoreq-q1ca"])
    assert code == EXIT_INVALID
    assert "--max-n" in capsys.readouterr().err

    path = tmp_path / "m1.cma"
    path.write_text(emit(get_entry("m1").machine), encoding="utf-8")
    code = main(["adversary", "brute", str(path), "--max-n", "4"])
    assert code == EXIT_INVALID
    assert "--problem" in capsys.readouterr().err


def test_adversary_unknown_machine(capsys):
    assert main(["adversary", "fool-xoreq", "ghost"]) == EXIT_IO
    capsys.readouterr()


# ---------------------------------------------------------------------------
# zoo
# ---------------------------------------------------------------------------


def test_zoo_list(capsys):
    assert main(["zoo", "list"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == len(zoo_names())
    assert lines[0] == "m1\td1ca\txor-eq"
    for line in lines:
        name, tag, problem = line.split("\t")
        assert name in zoo_names()


def test_zoo_emit_round_trips(tmp_path, capsys):
    out = tmp_path / "onenone.cma"
    assert main(["zoo", "emit", "onenone-lv", "--out", str(out)]) == EXIT_OK
    capsys.readouterr()
    assert parse_file(out) == get_entry("onenone-lv").machine


def test_zoo_emit_to_stdout(capsys):
    assert main(["zoo", "emit", "eq-star-complement-d1ca"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("machine eq-star-complement-d1ca\n")
    assert out == emit(get_entry("eq-star-complement-d1ca").machine)


def test_zoo_emit_unknown_name(capsys):
    assert main(["zoo", "emit", "ghost"]) == EXIT_INVALID
    assert "unknown zoo machine" in capsys.readouterr().err
