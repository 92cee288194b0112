import json

import pytest

from radix_census import reports as reports_module
from radix_census.app import EXIT_FAILED, EXIT_OK, EXIT_USAGE, RunConfig, build_parser, main


def _json_lines(text):
    return [json.loads(line) for line in text.splitlines()]


def test_expand_text(capsys):
    assert main(["expand", "--num", "1", "--den", "24", "--base", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines() == [
        "expansion: 0.00(2)",
        "fraction: 1/24",
        "base: 4",
        "preperiod: 00",
        "period: 2",
        "preperiod_length: 2",
        "period_length: 1",
        "terminating: false",
    ]


def test_expand_json_with_digits(capsys):
    assert main(["expand", "--num", "1", "--den", "7", "--base", "10", "--max-digits", "8", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert list(payload)[0] == "schema"
    assert payload["period"] == "142857"
    assert payload["digits"] == "14285714"


def test_expand_terminating_text_shows_empty_period(capsys):
    assert main(["expand", "--num", "1", "--den", "4", "--base", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "period: -" in out
    assert "terminating: true" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["expand", "--num", "3", "--den", "3", "--base", "10"],
        ["expand", "--num", "1", "--den", "3", "--base", "37"],
        ["census", "--p", "4", "--m", "1", "--base", "3"],
        ["census", "--p", "5", "--m", "1", "--base", "10"],
        ["stoneham", "--b", "2", "--c", "4", "--digits", "10"],
        ["stoneham", "--b", "7", "--c", "3", "--digits", "10", "--radix", "b2"],
        ["verify", "fc1", "--max-n", "-1"],
        ["mahler", "--c", "3", "--degree", "2"],
    ],
)
def test_invalid_parameters_exit_with_usage_code(argv, capsys):
    assert main(argv) == EXIT_USAGE
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("[!] ")


def test_argparse_errors_exit_with_usage_code(capsys):
    assert main(["verify", "fc3", "--max-n", "1"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE
    capsys.readouterr()


def test_census_check_matches(capsys):
    assert main(["census", "--p", "5", "--m", "2", "--base", "3", "--check"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [
        "census p=5 m=2 base=3",
        "closed-form: {0:7,1:6,2:7}",
        "brute: {0:7,1:6,2:7}",
        "match: true",
    ]


def test_census_brute_only_json(capsys):
    assert main(["census", "--p", "3", "--m", "2", "--base", "4", "--brute", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["closed_form"] is None
    assert payload["brute"] == {"0": 1, "1": 1, "3": 1}
    assert payload["match"] is None


def test_census_without_primitive_root_is_a_usage_error(capsys):
    assert main(["census", "--p", "3", "--m", "2", "--base", "4"]) == EXIT_USAGE
    assert "formula inapplicable" in capsys.readouterr().err


def test_stoneham_dump_and_formats(capsys):
    assert main(["stoneham", "--b", "3", "--c", "5", "--digits", "10"]) == EXIT_OK
    assert capsys.readouterr().out == "stoneham b=3 c=5 radix=b count=10\n# path=fast\n0000001210\n"

    assert main(["stoneham", "--b", "2", "--c", "3", "--digits", "11", "--radix", "b2", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["digits"] == "00222320320"

    assert main(["stoneham", "--b", "2", "--c", "3", "--digits", "3", "--format", "csv", "--oracle"]) == 0
    assert capsys.readouterr().out == "position,digit\n1,0\n2,0\n3,0\n"


def test_verify_json_lines_and_summary(capsys):
    assert main(["verify", "fc1", "--max-n", "3"]) == EXIT_OK
    lines = _json_lines(capsys.readouterr().out)
    assert [line["n"] for line in lines[:-1]] == [0, 1, 2, 3]
    assert all(line["schema"] == 1 for line in lines)
    assert lines[-1]["summary"] == {"conjecture": "fc1", "mode": "corrected", "checked": 4, "passed": 4, "failed": []}


def test_verify_literal_fc2_fails(capsys):
    assert main(["verify", "fc2", "--max-n", "1", "--mode", "literal", "--format", "text"]) == EXIT_FAILED
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("✗ fc2 n=0 mode=literal")
    assert out[-1].startswith("Summary: ")


def test_verify_corrected_fc2_passes_as_text(capsys):
    assert main(["verify", "fc2", "--max-n", "2", "--format", "text"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[-1] == "Summary: 3/3 passed (fc2, corrected mode)"


@pytest.mark.parametrize(
    ("argv", "checked"),
    [
        (["verify", "fc1", "--max-n", "8"], 9),
        (["verify", "fc2", "--max-n", "7", "--mode", "corrected"], 8),
    ],
)
def test_verify_full_ranges_pass(argv, checked, capsys):
    assert main(argv) == EXIT_OK
    summary = _json_lines(capsys.readouterr().out)[-1]["summary"]
    assert summary["checked"] == summary["passed"] == checked
    assert summary["failed"] == []


def test_identical_runs_print_identical_bytes(capsys):
    argv = ["verify", "fc2", "--max-n", "2", "--mode", "literal"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_output_file_receives_the_result(tmp_path, capsys):
    target = tmp_path / "out" / "census.csv"
    assert main(["census", "--p", "5", "--m", "1", "--base", "3", "--format", "csv", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    expected = "method,digit,count\nclosed-form,0,1\nclosed-form,1,2\nclosed-form,2,1\n"
    assert target.read_text(encoding="utf-8") == expected


def test_verify_pdf_export(tmp_path, capsys):
    target = tmp_path / "fc1.pdf"
    assert main(["verify", "fc1", "--max-n", "1", "--pdf", str(target)]) == EXIT_OK
    assert target.read_bytes().startswith(b"%PDF-")
    assert f"[REPORT] PDF report: {target}" in capsys.readouterr().err


def test_verbose_progress_goes_to_stderr(capsys, monkeypatch):
    monkeypatch.delenv("RADIX_CENSUS_FORCE_COLOR", raising=False)
    monkeypatch.setenv("NO_COLOR", "1")
    assert main(["mahler", "--c", "2", "--degree", "64", "-v"]) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out == "residual zero through degree 64\n"
    assert captured.err.startswith("[MAHLER] ")


def test_mahler_json(capsys):
    assert main(["mahler", "--c", "3", "--degree", "81", "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {"schema": 1, "c": 3, "degree": 81, "zero": True, "nonzero": {}}


def test_run_config_defaults():
    args = build_parser().parse_args(["verify", "fc2", "--max-n", "0"])
    config = RunConfig.from_args(args)
    assert config.output_format == "json"
    assert config.output_path is None
    assert config.params == {"conjecture": "fc2", "max_n": 0, "mode": "corrected", "pdf": None}


def test_verify_pdf_without_path_uses_reports_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(reports_module, "REPORTS_DIR", str(tmp_path))
    assert main(["verify", "fc1", "--max-n", "0", "--pdf"]) == EXIT_OK
    assert len(list(tmp_path.glob("*.pdf"))) == 1
    assert "PDF report: " in capsys.readouterr().err
