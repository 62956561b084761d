"""
Run configuration for the management commands.

A run file is INI text with a ``[source]`` section naming the sequence and
a ``[run]`` section with the analysis parameters::

    [source]
    kind = substitution
    rules = 0:01, 1:10
    seed = 1.0
    power = 2

    [run]
    window = 65536
    depth = 32

Values are resolved in this order: command-line flags, the
``SUBSHIFT_OUTPUT_DIR`` environment variable (output directory only), the
run file, then the ``SUBSHIFT`` setting.
"""

import configparser
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .conf import OUTPUT_DIR_ENVIRON, get_setting
from .seqgen import SequenceError, SequenceSource, thue_morse

KNOWN_FORMATS = ("json", "csv", "dot")


class ConfigError(ValueError):
    pass


def _int(value):
    return int(str(value).strip())


def _pair(value):
    if isinstance(value, tuple | list):
        first, last = value
        return int(first), int(last)
    first, sep, last = str(value).partition("..")
    if not sep:
        first, sep, last = str(value).partition(",")
    if not sep:
        raise ValueError(f"{value!r} is not a level range like '4..10'.")
    return int(first), int(last)


def _words(value):
    if isinstance(value, tuple | list):
        return tuple(value)
    return tuple(word.strip() for word in str(value).split(",") if word.strip())


def _optional_int(value):
    if value in (None, "", "none", "None"):
        return None
    return _int(value)


# run key -> (setting name, parser)
RUN_KEYS = {
    "window": ("WINDOW", _int),
    "depth": ("DEPTH", _int),
    "power_ceiling": ("POWER_CEILING", _int),
    "disagree_length": ("DISAGREE_LENGTH", _int),
    "axiom_level": ("AXIOM_LEVEL", _int),
    "tprime_length": ("TPRIME_LENGTH", _int),
    "bratteli_levels": ("BRATTELI_LEVELS", _int),
    "phi_levels": ("PHI_LEVELS", _pair),
    "k0_levels": ("K0_LEVELS", _pair),
    "trace_length": ("TRACE_LENGTH", _int),
    "shift_length": ("SHIFT_LENGTH", _int),
    "frequency_depth": ("FREQUENCY_DEPTH", _int),
    "output_dir": ("OUTPUT_DIR", str),
    "formats": ("FORMATS", _words),
    "cofinal_words": (None, _words),
    "cofinal_length": (None, _optional_int),
}


@dataclass(frozen=True)
class RunConfig:
    source: SequenceSource
    window: int
    depth: int
    power_ceiling: int
    disagree_length: int
    axiom_level: int
    tprime_length: int
    bratteli_levels: int
    phi_levels: tuple
    k0_levels: tuple
    trace_length: int
    shift_length: int
    frequency_depth: int
    output_dir: Path
    formats: tuple
    cofinal_words: tuple = ("0",)
    cofinal_length: int | None = None
    name: str = field(default="run", compare=False)

    @classmethod
    def defaults(cls, source=None, **overrides):
        values = {
            key: parser(get_setting(setting))
            for key, (setting, parser) in RUN_KEYS.items()
            if setting is not None
        }
        values["output_dir"] = Path(values["output_dir"])
        config = cls(source=source or thue_morse(), **values)
        return config.override(**overrides)

    @classmethod
    def load(cls, path=None, **overrides):
        """Read a run file and apply ``overrides`` (``None`` values are ignored)."""
        parser = configparser.ConfigParser()
        name = "defaults"
        if path is not None:
            path = Path(path)
            try:
                with path.open(encoding="utf-8") as handle:
                    parser.read_file(handle)
            except OSError as exc:
                raise ConfigError(f"Cannot read {path}: {exc}") from exc
            except configparser.Error as exc:
                raise ConfigError(f"Malformed run file {path}: {exc}") from exc
            name = path.stem

        source = None
        if parser.has_section("source"):
            try:
                source = SequenceSource.from_options(dict(parser.items("source")))
            except (SequenceError, ValueError) as exc:
                raise ConfigError(f"Invalid [source]: {exc}") from exc

        values = {}
        if parser.has_section("run"):
            for key, raw in parser.items("run"):
                values[key] = raw
        environ = os.environ.get(OUTPUT_DIR_ENVIRON)
        if environ:
            values["output_dir"] = environ
        values.update({key: value for key, value in overrides.items() if value is not None})
        config = cls.defaults(source).override(**values)
        return replace(config, name=name)

    def override(self, **values):
        changes = {}
        for key, raw in values.items():
            if key not in RUN_KEYS:
                raise ConfigError(f"Unknown run key {key!r}.")
            try:
                changes[key] = RUN_KEYS[key][1](raw)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"Invalid value for {key}: {raw!r}") from exc
        if "output_dir" in changes:
            changes["output_dir"] = Path(changes["output_dir"])
        return replace(self, **changes)

    def validate(self):
        """Check that the depth covers every requested analysis."""
        if self.window < 1 or self.depth < 1:
            raise ConfigError("window and depth must be positive.")
        unknown = set(self.formats) - set(KNOWN_FORMATS)
        if unknown:
            raise ConfigError(f"Unknown output formats {sorted(unknown)}.")
        for key in ("phi_levels", "k0_levels"):
            first, last = getattr(self, key)
            if not 1 <= first <= last:
                raise ConfigError(f"{key} must satisfy 1 <= first <= last.")
        if 2 * self.window < 3 * self.depth:
            raise ConfigError(
                f"A window of {self.window} per side is too short for depth {self.depth}."
            )
        needs = {
            "disagree_length": self.disagree_length * self.power_ceiling,
            "axiom_level": self.axiom_level + 1,
            "tprime_length": 2 * self.tprime_length,
            "bratteli_levels": 2 * self.bratteli_levels + 2,
            "phi_levels": self.phi_levels[1] + 1,
            "k0_levels": self.k0_levels[1] + 1,
            "trace_length": 2 * self.trace_length,
            "shift_length": self.shift_length + 1,
            "frequency_depth": self.frequency_depth,
        }
        if self.cofinal_length is not None:
            needs["cofinal_length"] = self.cofinal_length
        for key, depth in needs.items():
            if depth > self.depth:
                raise ConfigError(f"{key} needs language depth {depth}, have {self.depth}.")
        return self

    def as_dict(self):
        # artifacts never depend on the output directory
        data = {
            f.name: getattr(self, f.name)
            for f in fields(self)
            if f.name not in ("source", "output_dir")
        }
        data["source"] = self.source.describe()
        return data
