"""Scenario files in, delimited spectrum files out.

A scenario file is JSON::

    {
      "preset": "fig3e",                      # optional base, other keys override it
      "drive":   {"omega12": 0.5, "omega24": [2.0, 90], "delta1": 0.0, ...},
      "decay":   {"gamma2": 1.0, "gamma3": 1.0},
      "initial": {"a1": 1.0, "a4": [0.7071067811865476, 180]},
      "grid":    {"min": -10, "max": 10, "points": 2001},
      "channel": "s2"
    }

Rabi frequencies and amplitudes are either plain reals or
[magnitude, phase in degrees] pairs.  Unknown keys are rejected.

An exported spectrum file can be fed back in as a scenario: its
``# scenario:`` header line carries the resolved scenario document.
"""
from __future__ import annotations

import copy
import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .model import (Channel, DecayRates, DriveParameters, InitialAmplitudes, SpectrumGrid,
                    validate_scenario)
from .presets import get_preset

FORMAT_TAG = "inverted-y spectrum v1"

_SECTIONS = {
    "drive": {"omega12", "omega24", "omega23", "delta1", "delta2", "delta3"},
    "decay": {"gamma2", "gamma3"},
    "initial": {"a1", "a2", "a3", "a4"},
    "grid": {"min", "max", "points"},
}
_TOP = set(_SECTIONS) | {"preset", "channel"}
_COMPLEX_KEYS = {"omega12", "omega24", "omega23", "a1", "a2", "a3", "a4"}


class ScenarioFileError(ValidationError):
    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class ScenarioFile:
    scenario: object
    grid: SpectrumGrid
    channel: Channel
    preset: str | None
    document: dict          # resolved document (preset merged, defaults filled)

    @property
    def scenario_hash(self):
        return hashlib.sha256(canonical_json(self.document).encode()).hexdigest()


@dataclass(frozen=True)
class SpectrumRecord:
    delta: float
    value: float
    channel: Channel


def canonical_json(document):
    return json.dumps(document, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def polar(magnitude, degrees):
    """magnitude * exp(i degrees), exact on multiples of 90 degrees."""
    quarter = degrees / 90.0
    if quarter == int(quarter):
        unit = (1, 1j, -1, -1j)[int(quarter) % 4]
        return complex(magnitude * unit)
    rad = math.radians(degrees)
    return complex(magnitude * math.cos(rad), magnitude * math.sin(rad))


def _number(key, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioFileError(key, f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ScenarioFileError(key, "must be finite")
    return float(value)


def _complex(key, value):
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ScenarioFileError(key, "expected [magnitude, phase_degrees]")
        mag, phase = _number(key, value[0]), _number(key, value[1])
        if mag < 0:
            raise ScenarioFileError(key, "magnitude must be >= 0")
        return polar(mag, phase)
    return complex(_number(key, value))


def _merge(base, override):
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = {**out[key], **value}
        else:
            out[key] = value
    return out


def resolve_document(data):
    """Check keys, merge a named preset underneath, fill defaults."""
    if not isinstance(data, dict):
        raise ScenarioFileError("<root>", "scenario must be a JSON object")
    for key in data:
        if key not in _TOP:
            raise ScenarioFileError(key, "unknown key")
    for section, allowed in _SECTIONS.items():
        if section in data:
            if not isinstance(data[section], dict):
                raise ScenarioFileError(section, "expected an object")
            for key in data[section]:
                if key not in allowed:
                    raise ScenarioFileError(f"{section}.{key}", "unknown key")
    preset = data.get("preset")
    if preset is not None:
        try:
            base = get_preset(preset).data
        except KeyError as exc:
            raise ScenarioFileError("preset", exc.args[0]) from None
        data = _merge(base, data)
    doc = {
        "drive": {"omega12": 0.0, "omega24": 0.0, "omega23": 0.0,
                  "delta1": 0.0, "delta2": 0.0, "delta3": 0.0, **data.get("drive", {})},
        "decay": {"gamma2": 1.0, "gamma3": 1.0, **data.get("decay", {})},
        "initial": {"a1": 0.0, "a2": 0.0, "a3": 0.0, "a4": 0.0, **data.get("initial", {})},
        "grid": {"min": -10.0, "max": 10.0, "points": 2001, **data.get("grid", {})},
        "channel": str(data.get("channel", "s2")).lower(),
    }
    if preset is not None:
        doc["preset"] = preset
    return doc


def parse_document(data):
    doc = resolve_document(data)
    values = {}
    for section in ("drive", "decay", "initial"):
        for key, raw in doc[section].items():
            name = f"{section}.{key}"
            values[key] = _complex(name, raw) if key in _COMPLEX_KEYS else _number(name, raw)
    try:
        drive = DriveParameters(*(values[k] for k in ("omega12", "omega24", "omega23",
                                                      "delta1", "delta2", "delta3")))
    except ValidationError as exc:
        raise ScenarioFileError("drive", str(exc)) from None
    try:
        decay = DecayRates(values["gamma2"], values["gamma3"])
    except ValidationError as exc:
        raise ScenarioFileError("decay", str(exc)) from None
    init = InitialAmplitudes(*(values[k] for k in ("a1", "a2", "a3", "a4")))
    try:
        scenario = validate_scenario(drive, decay, init)
    except ValidationError as exc:
        raise ScenarioFileError("initial", f"normalization: {exc}") from None
    g = doc["grid"]
    points = g["points"]
    if isinstance(points, bool) or not isinstance(points, int):
        raise ScenarioFileError("grid.points", f"expected an integer, got {points!r}")
    try:
        grid = SpectrumGrid(_number("grid.min", g["min"]), _number("grid.max", g["max"]), points)
    except ValidationError as exc:
        raise ScenarioFileError("grid", str(exc)) from None
    try:
        channel = Channel.parse(doc["channel"])
    except ValidationError as exc:
        raise ScenarioFileError("channel", str(exc)) from None
    return ScenarioFile(scenario, grid, channel, doc.get("preset"), doc)


def _document_from_export(text):
    for line in text.splitlines():
        if line.startswith("# scenario:"):
            return json.loads(line.split(":", 1)[1])
    raise ScenarioFileError("<file>", "spectrum file has no '# scenario:' header line")


def load_scenario(path):
    """Read a JSON scenario file or a previously exported spectrum file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = _document_from_export(text) if text.lstrip().startswith("#") else json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFileError("<file>", f"invalid JSON: {exc}") from None
    return parse_document(data)


def from_preset(name, **overrides):
    data = {"preset": name}
    data.update({k: v for k, v in overrides.items() if v is not None})
    return parse_document(data)


def with_overrides(sf, grid_min=None, grid_max=None, points=None, channel=None):
    """Apply CLI grid/channel flags on top of a parsed scenario file."""
    doc = copy.deepcopy(sf.document)
    if grid_min is not None:
        doc["grid"]["min"] = grid_min
    if grid_max is not None:
        doc["grid"]["max"] = grid_max
    if points is not None:
        doc["grid"]["points"] = points
    if channel is not None:
        doc["channel"] = channel.lower()
    if doc == sf.document:
        return sf
    return parse_document(doc)


# ---------------------------------------------------------------------------
# spectrum export


def format_records(spectrum):
    return [f"{d!r},{v!r}" for d, v in zip(spectrum.deltas.tolist(), spectrum.values.tolist())]


def spectrum_hash(lines):
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()


def _parameter_line(scenario):
    d, g, a = scenario.drive, scenario.decay, scenario.init

    def c(z):
        return repr(z.real) if z.imag == 0 else f"({z.real!r}{z.imag:+.17g}j)"

    return (f"omega12={c(d.omega12)} omega24={c(d.omega24)} omega23={c(d.omega23)} "
            f"delta1={d.delta1!r} delta2={d.delta2!r} delta3={d.delta3!r} "
            f"gamma2={g.gamma2!r} gamma3={g.gamma3!r} "
            f"a1={c(a.a1)} a2={c(a.a2)} a3={c(a.a3)} a4={c(a.a4)}")


def render_spectrum_text(sf, spectrum, gamma_mhz=6.0, notes=()):
    records = format_records(spectrum)
    header = [
        f"# {FORMAT_TAG}",
        f"# scenario_hash: {sf.scenario_hash}",
        f"# spectrum_hash: {spectrum_hash(records)}",
        f"# preset: {sf.preset or '-'}",
        f"# channel: {spectrum.channel.value}",
        f"# units: delta in units of gamma2, value in units of 1/gamma2 (gamma2 = {gamma_mhz!r} MHz)",
        f"# parameters: {_parameter_line(sf.scenario)}",
        f"# scenario: {canonical_json(sf.document)}",
    ]
    header += [f"# note: {n}" for n in notes]
    header.append("# columns: delta,value")
    return "\n".join(header + records) + "\n"


def read_spectrum(path):
    """Parse an exported file into (header dict, list of SpectrumRecord)."""
    header, records = {}, []
    channel = None
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            if ":" in line:
                key, value = line[1:].split(":", 1)
                header.setdefault(key.strip(), value.strip())
            continue
        if not line.strip():
            continue
        if channel is None:
            channel = Channel.parse(header.get("channel", "S2"))
        d, v = line.split(",")
        records.append(SpectrumRecord(float(d), float(v), channel))
    deltas = np.array([r.delta for r in records])
    if deltas.size > 1 and np.any(np.diff(deltas) <= 0):
        raise ValidationError("spectrum records must have strictly increasing delta")
    return header, records
