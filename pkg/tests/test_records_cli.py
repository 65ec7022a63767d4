import json
import time

import pytest

from kdclique.cli import run_cli
from kdclique.generators import johnson_graph, random_graph
from kdclique.instances import write_dimacs
from kdclique.records import RunRecord, emit_records, field_names, parse_csv
from kdclique.search import SolveResult, SolverConfig


def make_record(**overrides):
    base = dict(
        instance="toy", vertices=5, edges=7, k=1, reduced_vertices=5,
        reduced_edges=7, best_size=4, status="optimal", tree_nodes=12,
        preprocess_time=0.001, total_time=0.004, config="pre=club,bnb=club,seed=0",
    )
    base.update(overrides)
    return RunRecord(**base)


def test_empty_emission_is_header_only():
    csv_text = emit_records([], "csv")
    assert csv_text.splitlines() == [",".join(field_names())]
    assert json.loads(emit_records([], "json")) == []


def test_csv_and_json_carry_identical_data():
    records = [make_record(), make_record(k=3, config="pre=base,bnb=club,seed=1")]
    from_csv = parse_csv(emit_records(records, "csv"))
    from_json = json.loads(emit_records(records, "json"))
    assert from_csv == from_json
    assert len(from_csv) == 2
    assert from_csv[0]["best_size"] == 4


def test_two_configs_distinguished_by_fingerprint():
    records = [make_record(), make_record(config="pre=base,bnb=base,seed=0")]
    rows = parse_csv(emit_records(records, "csv"))
    assert {r["config"] for r in rows} == {
        "pre=club,bnb=club,seed=0",
        "pre=base,bnb=base,seed=0",
    }


def test_table_emission_lists_every_field():
    text = emit_records([make_record()], "table")
    for name in field_names():
        assert name in text
    assert "toy" in text


def test_unknown_format_rejected():
    with pytest.raises(ValueError):
        emit_records([], "xml")


def test_record_from_result_rounds_times():
    result = SolveResult(
        best_size=3, witness=[0, 1, 2], status="optimal", tree_nodes=9,
        preprocess_time=0.0011119, total_time=0.0049996, reduced_v=4, reduced_e=3,
    )
    rec = RunRecord.from_result("x", 5, 6, 1, result, SolverConfig())
    assert rec.preprocess_time == 0.001
    assert rec.total_time == 0.005


# -- the command line ---------------------------------------------------------


@pytest.fixture
def small_instance(tmp_path):
    path = tmp_path / "petersen-ish.clq"
    write_dimacs(random_graph(10, 0.6, seed=12), path)
    return path


def test_cli_solves_and_exits_zero(small_instance, tmp_path, capsys):
    out = tmp_path / "records.csv"
    code = run_cli(["--k", "1", "--emit", "csv", "--out", str(out), str(small_instance)])
    assert code == 0
    rows = parse_csv(out.read_text())
    assert len(rows) == 1
    assert rows[0]["status"] == "optimal"
    assert rows[0]["instance"] == "petersen-ish"


def test_cli_repeatable_k(small_instance, tmp_path):
    out = tmp_path / "sweep.csv"
    code = run_cli(["--k", "0", "--k", "2", "--emit", "csv", "--out", str(out), str(small_instance)])
    assert code == 0
    rows = parse_csv(out.read_text())
    assert [r["k"] for r in rows] == [0, 2]
    assert rows[1]["best_size"] >= rows[0]["best_size"]


def test_cli_oracle_check_small_graph(small_instance):
    assert run_cli(["--k", "1", "--oracle-check", str(small_instance)]) == 0


def test_cli_oracle_check_refused_on_large_instance(tmp_path, capsys):
    path = tmp_path / "johnson8-4-4.clq"
    write_dimacs(johnson_graph(8, 4, 4), path)
    code = run_cli(["--k", "1", "--oracle-check", str(path)])
    assert code == 1
    assert "oracle-check" in capsys.readouterr().err


def test_cli_toggles_do_not_change_answer(small_instance, tmp_path):
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    assert run_cli(["--k", "1", "--emit", "csv", "--out", str(out_a), str(small_instance)]) == 0
    assert run_cli([
        "--k", "1", "--no-club-pre", "--no-club-bnb",
        "--emit", "csv", "--out", str(out_b), str(small_instance),
    ]) == 0
    a = parse_csv(out_a.read_text())[0]
    b = parse_csv(out_b.read_text())[0]
    assert a["best_size"] == b["best_size"]
    assert b["config"] == "pre=base,bnb=base,seed=0"


def test_cli_bad_flags_exit_one(capsys):
    assert run_cli(["--emit", "yaml", "whatever.clq"]) == 1
    assert "usage" in capsys.readouterr().err
    assert run_cli([]) == 1
    assert run_cli(["--k", "-2", "x.clq"]) == 1


def test_cli_missing_file_exit_one(capsys):
    assert run_cli(["/nonexistent/nope.clq"]) == 1
    assert "error" in capsys.readouterr().err


def test_cli_timeout_exit_two(tmp_path):
    path = tmp_path / "hard.clq"
    write_dimacs(random_graph(90, 0.5, seed=31), path)
    out = tmp_path / "r.csv"
    start = time.monotonic()
    code = run_cli(["--k", "3", "--time-limit", "0.2", "--emit", "csv", "--out", str(out), str(path)])
    wall = time.monotonic() - start
    assert code == 2
    assert wall < 0.2 + 1.0
    assert parse_csv(out.read_text())[0]["status"] == "timeout"


def test_cli_table_to_stdout(small_instance, capsys):
    assert run_cli(["--k", "1", str(small_instance)]) == 0
    out = capsys.readouterr().out
    assert "best_size" in out and "petersen-ish" in out


def test_cli_deterministic_csv_modulo_timing(small_instance, tmp_path):
    outs = []
    for name in ("one.csv", "two.csv"):
        out = tmp_path / name
        assert run_cli([
            "--k", "2", "--seed", "5", "--emit", "csv", "--out", str(out), str(small_instance),
        ]) == 0
        outs.append(out.read_text())

    def strip_timing(text):
        rows = parse_csv(text)
        for row in rows:
            for name in RunRecord.TIMING_FIELDS:
                row[name] = 0.0
        return rows

    assert strip_timing(outs[0]) == strip_timing(outs[1])


def test_cli_progress_reports_witness_in_original_labels(tmp_path, capsys):
    path = tmp_path / "named.txt"
    path.write_text("alice bob\nbob carol\ncarol alice\ndave alice\n")
    assert run_cli(["--k", "0", str(path)]) == 0
    err = capsys.readouterr().err
    assert "witness=[" in err
    assert "alice" in err and "bob" in err and "carol" in err
