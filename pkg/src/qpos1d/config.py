"""Experiment configuration: a flat key = value text format.

Grammar (UTF-8): one assignment per line, `#` starts a comment, section
headers in brackets.  Unknown sections or keys are rejected with their
line number.  Every scenario supplies defaults for all of its keys, so a
minimal config is just

    [run]
    scenario = fig1
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError

SCENARIOS = ("fig1", "fig2", "fig3", "evolve", "boost", "kernels")

# (section, key) -> (type tag, default); "floats" = comma-separated list
_COMMON_KEYS = {
    ("run", "scenario"): ("str", None),
    ("run", "out_dir"): ("str", "qpos1d_out"),
    ("grid", "n_points"): ("int", 16384),
    ("grid", "z_min"): ("float", -0.16),
    ("grid", "z_max"): ("float", 0.16),
    ("model", "mass"): ("float", 1.0),
    ("model", "light_speed"): ("float", 137.0),
    ("model", "coupling"): ("float", 1.0),
}

_SCENARIO_KEYS = {
    "fig1": {
        ("packet", "width"): ("float", 0.005),
        ("packet", "center"): ("float", 0.0),
        ("times", "t_final"): ("float", 7.5e-5),
    },
    "fig2": {
        ("two_packets", "widths"): ("floats", [0.0025, 0.005]),
        ("two_packets", "x"): ("float", -0.02),
        ("two_packets", "y"): ("float", 0.02),
    },
    "fig3": {
        ("packet", "width"): ("float", 7.3e-3),
        ("packet", "center"): ("float", 0.0),
        ("packet", "edge_smoothing_dz"): ("float", 4.0),
        ("boost", "velocity"): ("float", 100.0),
        ("boost", "field_window"): ("float", 0.08),
    },
    "evolve": {
        ("packet", "kind"): ("str", "box"),
        ("packet", "width"): ("float", 0.005),
        ("packet", "center"): ("float", 0.0),
        ("times", "times"): ("floats", [0.0, 3.75e-5, 7.5e-5]),
    },
    "boost": {
        ("packet", "kind"): ("str", "box"),
        ("packet", "width"): ("float", 7.3e-3),
        ("packet", "center"): ("float", 0.0),
        ("packet", "edge_smoothing_dz"): ("float", 4.0),
        ("boost", "velocity"): ("float", 100.0),
    },
    "kernels": {},
}


@dataclass
class ExperimentConfig:
    scenario: str
    values: dict = field(default_factory=dict)   # (section, key) -> typed value

    def __getitem__(self, section_key):
        return self.values[section_key]


def _parse_value(kind: str, raw: str, line: int):
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "floats":
            return [float(tok) for tok in raw.split(",") if tok.strip()]
        return raw
    except ValueError:
        raise ConfigError(f"cannot parse {raw!r} as {kind}", line=line) from None


def parse_config_text(text: str) -> ExperimentConfig:
    entries = []
    section = None
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if not section:
                raise ConfigError("empty section header", line=lineno)
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", line=lineno)
        if section is None:
            raise ConfigError("assignment before any [section] header", line=lineno)
        key, _, raw_value = line.partition("=")
        entries.append((section, key.strip().lower(), raw_value.strip(), lineno))

    scenario = None
    for section, key, raw_value, lineno in entries:
        if (section, key) == ("run", "scenario"):
            scenario = raw_value.lower()
            scenario_line = lineno
    if scenario is None:
        raise ConfigError("missing required key: [run] scenario")
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {scenario!r} "
                          f"(choose from {', '.join(SCENARIOS)})", line=scenario_line)

    schema = dict(_COMMON_KEYS)
    schema.update(_SCENARIO_KEYS[scenario])
    values = {sk: default for sk, (_, default) in schema.items()}
    values[("run", "scenario")] = scenario

    for section, key, raw_value, lineno in entries:
        if (section, key) == ("run", "scenario"):
            continue
        if (section, key) not in schema:
            raise ConfigError(
                f"unknown key [{section}] {key} for scenario {scenario!r}",
                line=lineno)
        kind, _ = schema[(section, key)]
        values[(section, key)] = _parse_value(kind, raw_value, lineno)

    return ExperimentConfig(scenario=scenario, values=values)


def parse_config_file(path) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    return parse_config_text(text)
