from pathlib import Path

import pytest
from django.test import override_settings

from subshift.config import ConfigError, RunConfig
from subshift.seqgen import ExplicitPeriodic, thue_morse
from subshift.tests.utils import PERIODIC_SOURCE, THUE_MORSE_SOURCE, write_run_file


def test_defaults():
    config = RunConfig.defaults().validate()
    assert config.source == thue_morse()
    assert (config.window, config.depth) == (2**16, 32)
    assert config.phi_levels == (1, 10)
    assert config.formats == ("json", "csv", "dot")
    assert config.name == "run"


@override_settings(SUBSHIFT={"DEPTH": 24, "K0_LEVELS": (2, 6), "DISAGREE_LENGTH": 6})
def test_defaults_follow_settings():
    config = RunConfig.defaults()
    assert config.depth == 24
    assert config.k0_levels == (2, 6)
    assert config.window == 2**16


def test_load_run_file(tmp_path, monkeypatch):
    monkeypatch.delenv("SUBSHIFT_OUTPUT_DIR", raising=False)
    path = write_run_file(
        tmp_path / "control.cfg", PERIODIC_SOURCE, window=4096, depth=16, k0_levels="2..6"
    )
    config = RunConfig.load(path, phi_levels="1,8", disagree_length=4, trace_length=None)
    assert config.name == "control"
    assert config.source == ExplicitPeriodic("01")
    assert (config.window, config.depth) == (4096, 16)
    assert config.k0_levels == (2, 6)
    assert config.phi_levels == (1, 8)
    assert config.trace_length == 3


def test_precedence(tmp_path, monkeypatch):
    path = write_run_file(tmp_path / "tm.cfg", THUE_MORSE_SOURCE, output_dir="from-file")
    monkeypatch.delenv("SUBSHIFT_OUTPUT_DIR", raising=False)
    assert RunConfig.load(path).output_dir == Path("from-file")
    monkeypatch.setenv("SUBSHIFT_OUTPUT_DIR", str(tmp_path / "env"))
    assert RunConfig.load(path).output_dir == tmp_path / "env"
    assert RunConfig.load(path, output_dir="flag").output_dir == Path("flag")
    assert RunConfig.load(path).source == thue_morse()


def test_as_dict_ignores_output_dir():
    first = RunConfig.defaults(output_dir="a").as_dict()
    second = RunConfig.defaults(output_dir="b").as_dict()
    assert first == second
    assert first["source"]["kind"] == "substitution"
    assert "output_dir" not in first


@pytest.mark.parametrize(
    "overrides, message",
    [
        ({"window": 0}, "positive"),
        ({"formats": "json,pdf"}, "formats"),
        ({"k0_levels": "6..4"}, "k0_levels"),
        ({"window": 16}, "too short"),
        ({"depth": 10, "disagree_length": 2}, "phi_levels"),
        ({"cofinal_length": 40}, "cofinal_length"),
    ],
)
def test_validate(overrides, message):
    with pytest.raises(ConfigError, match=message):
        RunConfig.defaults(**overrides).validate()


def test_unknown_key():
    with pytest.raises(ConfigError, match="Unknown run key"):
        RunConfig.defaults(colour="blue")


def test_bad_value():
    with pytest.raises(ConfigError, match="depth"):
        RunConfig.defaults(depth="deep")


def test_bad_source(tmp_path):
    path = write_run_file(tmp_path / "bad.cfg", {"kind": "periodic", "pattern": ""})
    with pytest.raises(ConfigError, match="source"):
        RunConfig.load(path)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="Cannot read"):
        RunConfig.load(tmp_path / "missing.cfg")


def test_malformed_file(tmp_path):
    path = tmp_path / "broken.cfg"
    path.write_text("window = 12\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="Malformed"):
        RunConfig.load(path)
