import json
from io import StringIO

import pytest
from django.core.management import CommandError, call_command

from subshift.tests.utils import PERIODIC_SOURCE, THUE_MORSE_SOURCE, parse_dot, write_run_file


def run(command, *args, **options):
    stdout = StringIO()
    call_command(command, *args, stdout=stdout, **options)
    return stdout.getvalue()


def read_tree(directory):
    return {path.name: path.read_bytes() for path in sorted(directory.iterdir())}


def test_verify_all_is_deterministic(tmp_path, monkeypatch):
    monkeypatch.delenv("SUBSHIFT_OUTPUT_DIR", raising=False)
    config = write_run_file(tmp_path / "thue_morse.cfg", THUE_MORSE_SOURCE)
    first, second = tmp_path / "first", tmp_path / "second"

    output = run("subshift_verify_all", str(config), output_dir=str(first))
    assert "verify_all: pass" in output
    run("subshift_verify_all", str(config), output_dir=str(second))

    artifacts = read_tree(first)
    assert artifacts == read_tree(second)
    assert {"verify_all.json", "k0.json", "bratteli.dot", "frequencies.csv"} <= set(artifacts)
    summary = json.loads(artifacts["verify_all.json"])
    assert summary["schema"] == "subshift-report/1"
    assert summary["passed"] is True
    assert all(summary["verdicts"].values())
    nodes, edges = parse_dot(artifacts["bratteli.dot"].decode())
    assert nodes
    assert edges


def test_verify_all_fails_on_periodic_control(tmp_path, output_dir):
    config = write_run_file(tmp_path / "periodic.cfg", PERIODIC_SOURCE)
    with pytest.raises(CommandError) as excinfo:
        run("subshift_verify_all", str(config), output_dir=str(output_dir))
    assert excinfo.value.returncode == 1
    failure = json.loads(str(excinfo.value))
    assert failure["command"] == "verify_all"
    assert failure["witness"] == ["disagree", "01"]
    summary = json.loads((output_dir / "verify_all.json").read_text())
    assert summary["verdicts"]["disagree"] is False
    assert [name for name, ok in summary["verdicts"].items() if not ok] == ["disagree"]


def test_disagree_command(tmp_path, output_dir):
    config = write_run_file(tmp_path / "periodic.cfg", PERIODIC_SOURCE)
    with pytest.raises(CommandError) as excinfo:
        run("subshift_disagree", str(config), output_dir=str(output_dir))
    assert excinfo.value.returncode == 1
    assert '"01"' in str(excinfo.value)

    output = run("subshift_disagree", output_dir=str(output_dir))
    assert "disagree: pass" in output
    report = json.loads((output_dir / "disagree.json").read_text())
    assert report["config"]["source"]["kind"] == "substitution"


def test_format_selection(output_dir):
    output = run("subshift_lang", output_dir=str(output_dir), formats=["json"])
    assert output.splitlines()[0].endswith("language.json")
    assert (output_dir / "language.json").exists()
    assert not (output_dir / "language.csv").exists()


def test_k_command(output_dir):
    run("subshift_k", output_dir=str(output_dir))
    payload = json.loads((output_dir / "k0.json").read_text())
    assert payload["k0"]["passed"] is True
    assert payload["k0"]["detail"]["truncation"] is True


def test_insufficient_depth_is_a_usage_error(output_dir):
    with pytest.raises(CommandError) as excinfo:
        run("subshift_k", depth=8, output_dir=str(output_dir))
    assert excinfo.value.returncode == 2
    assert "depth" in str(excinfo.value)


def test_missing_run_file(tmp_path, output_dir):
    with pytest.raises(CommandError) as excinfo:
        run("subshift_gen", str(tmp_path / "missing.cfg"), output_dir=str(output_dir))
    assert excinfo.value.returncode == 2


def test_gen_window(output_dir):
    run("subshift_gen", window=64, output_dir=str(output_dir), formats=["json"])
    payload = json.loads((output_dir / "window.json").read_text())
    left, right = payload["window"].split(".")
    assert left.endswith("01101001")
    assert right.startswith("0110100110010110")
    assert payload["size"] == 64
    assert payload["period"] is None


def test_gen_reports_the_morse_language_certificate(tmp_path, output_dir):
    source = {"kind": "morse", "blocks": "0110", "cycle": "yes"}
    config = write_run_file(tmp_path / "morse.cfg", source, window=4096)
    run("subshift_gen", str(config), output_dir=str(output_dir), formats=["json"])
    payload = json.loads((output_dir / "window.json").read_text())
    certificate = payload["language_certificate"]
    assert certificate["passed"] is True
    assert certificate["window_relative"] is True
    assert certificate["reference_size"] == 4 * 4096
    assert payload["condition_sum"] == {"terms": 32, "value": "16"}


def test_gen_fails_when_the_morse_window_leaves_its_language(tmp_path, output_dir):
    source = {"kind": "morse", "blocks": "011", "cycle": "yes"}
    config = write_run_file(tmp_path / "morse.cfg", source, window=4096)
    with pytest.raises(CommandError) as excinfo:
        run("subshift_gen", str(config), output_dir=str(output_dir), formats=["json"])
    assert excinfo.value.returncode == 1
    failure = json.loads(str(excinfo.value))
    assert failure["witness"][0] == "extra"
    payload = json.loads((output_dir / "window.json").read_text())
    assert payload["language_certificate"]["passed"] is False
    assert "110011" in payload["language_certificate"]["extra"]
