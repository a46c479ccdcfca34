"""Command-line exit codes and output."""

import json

from src.cli import main


def test_necklace_command_prints_a_table(capsys):
    assert main(["lemma56", "--generators", "2", "--max-weight", "4"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("== lemma56 ==")
    assert "PASS  dimension identity" in out


def test_unknown_command(capsys):
    assert main(["homotopy"]) == 1
    assert "error: Unknown command" in capsys.readouterr().err


def test_malformed_document(write_json, capsys):
    path = write_json("a.json", "{not json")
    assert main(["hochschild", "--algebra", path]) == 2
    assert "Malformed JSON" in capsys.readouterr().err


def test_missing_document_flag(capsys):
    assert main(["gamma-check", "--ring", "r.json"]) == 2
    assert "--target" in capsys.readouterr().err


def test_argument_out_of_range(capsys):
    assert main(["steinberg-check", "--size", "2"]) == 2


def test_output_is_deterministic(capsys):
    argv = ["lemma56", "--generators", "3", "--max-weight", "4"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_json_output(capsys):
    assert main(["lemma56", "--generators", "2", "--max-weight", "3", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] is True
    assert report["tables"][0]["columns"][0] == "weight"


def test_json_error_report(write_json, capsys):
    path = write_json("a.json", {"dim": 1, "table": [[[1]]], "extra": 0})
    assert main(["hochschild", "--algebra", path, "--json"]) == 2
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] is False
    assert report["exit_code"] == 2


def test_selftest_command_passes_every_criterion(capsys):
    assert main(["selftest", "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
