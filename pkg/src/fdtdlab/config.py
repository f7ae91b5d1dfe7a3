"""Scenario files: a line-oriented key = value format with [section]
headers.

Values are scalars or comma-separated lists; blank lines and #-comments
are ignored.  Parsing is schema-driven so errors can name the offending
key and line, and a parsed config serializes back to an equivalent file
(parse -> serialize -> parse is the identity).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import GridSpec, SourceSpec, ValidationError
from .solver1d import Scenario1D
from .solver2d import CylinderSpec, Scenario2D
from .solver3d import Scenario3D, SliceSpec, SphereSpec

KINDS = ("fdtd1d", "fdtd2d", "fdtd3d", "antenna", "validate")

# schema: section -> key -> (parser, required)
_num = float
_int = int


def _int_list(text):
    return [int(v.strip()) for v in text.split(",") if v.strip() != ""]


def _float_list(text):
    return [float(v.strip()) for v in text.split(",") if v.strip() != ""]


def _str(text):
    return text


_SCHEMA = {
    "grid": {"cells": _int_list, "dx": _num, "steps": _int},
    "boundary": {"type": _str, "npml": _int},
    "source": {"kind": _str, "injection": _str, "location": _str,
               "t0": _num, "spread": _num, "freq": _num},
    "tfsf": {"box": _int_list},
    "cylinder": {"center": _float_list, "radius": _num,
                 "eps_r": _num, "sigma": _num},
    "sphere": {"center": _float_list, "radius": _num,
               "eps_r": _num, "sigma": _num},
    "outputs": {"snapshot_steps": _int_list, "probes": _int_list,
                "out_dir": _str, "slice_plane": _str, "slice_offset": _int,
                "slice_component": _str},
    "antenna": {"f0": _num, "eps_r": _num, "h": _num, "x_feed": _num},
    "validate": {"suite": _str},
}

_REPEATABLE = ("cylinder", "sphere")

_GRID_DEFAULTS = {
    "fdtd1d": {"cells": [200], "dx": 0.01, "steps": 500},
    "fdtd2d": {"cells": [100, 100], "dx": 0.01, "steps": 300},
    "fdtd3d": {"cells": [60, 60, 60], "dx": 0.01, "steps": 150},
}
_SOURCE_DEFAULTS = {
    "fdtd1d": {"t0": 40.0, "spread": 12.0},
    "fdtd2d": {"t0": 20.0, "spread": 6.0},
    "fdtd3d": {"t0": 20.0, "spread": 6.0},
}


@dataclass
class ScenarioConfig:
    """Parsed scenario file: the kind plus per-section key/value maps.

    ``sections`` maps section name to a dict; repeatable sections
    (cylinder, sphere) map to a list of dicts.
    """

    kind: str
    sections: dict = field(default_factory=dict)

    def section(self, name, default=None):
        return self.sections.get(name, default if default is not None else {})


def parse_scenario(path) -> ScenarioConfig:
    """Read and validate a scenario file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ValidationError(f"cannot read scenario file {path}: {exc}") from exc
    return parse_scenario_text(lines, name=str(path))


def parse_scenario_text(lines, name="<config>") -> ScenarioConfig:
    if isinstance(lines, str):
        lines = lines.splitlines()
    kind = None
    sections = {}
    current = None

    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in _SCHEMA:
                raise ValidationError(
                    f"{name}:{lineno}: unknown section [{current}]"
                )
            if current in _REPEATABLE:
                sections.setdefault(current, []).append({})
            elif current in sections:
                raise ValidationError(
                    f"{name}:{lineno}: duplicate section [{current}]"
                )
            else:
                sections[current] = {}
            continue
        if "=" not in line:
            raise ValidationError(
                f"{name}:{lineno}: expected 'key = value', got {line!r}"
            )
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if current is None:
            if key != "kind":
                raise ValidationError(
                    f"{name}:{lineno}: unknown key {key!r} before any section "
                    f"(only 'kind' may appear here)"
                )
            if kind is not None:
                raise ValidationError(f"{name}:{lineno}: duplicate 'kind'")
            if value not in KINDS:
                raise ValidationError(
                    f"{name}:{lineno}: kind must be one of {KINDS}, got {value!r}"
                )
            kind = value
            continue
        schema = _SCHEMA[current]
        if key not in schema:
            raise ValidationError(
                f"{name}:{lineno}: unknown key {key!r} in section [{current}]"
            )
        parser = schema[key]
        try:
            parsed = parser(value)
        except (TypeError, ValueError) as exc:
            raise ValidationError(
                f"{name}:{lineno}: value for {key!r} not parseable as "
                f"{getattr(parser, '__name__', 'value')}: {value!r}"
            ) from exc
        if current in _REPEATABLE:
            sections[current][-1][key] = parsed
        else:
            sections[current][key] = parsed

    if kind is None:
        raise ValidationError(f"{name}: missing required top-level 'kind ='")
    if kind == "antenna" and "antenna" not in sections:
        raise ValidationError(f"{name}: kind=antenna needs an [antenna] section")
    if kind == "validate" and "validate" not in sections:
        raise ValidationError(f"{name}: kind=validate needs a [validate] section")
    return ScenarioConfig(kind=kind, sections=sections)


def serialize_scenario(config: ScenarioConfig) -> str:
    """Render a config back into scenario-file text."""
    out = [f"kind = {config.kind}", ""]

    def fmt(value):
        if isinstance(value, list):
            return ",".join(fmt(v) for v in value)
        if isinstance(value, float):
            return repr(value)
        return str(value)

    for section, content in config.sections.items():
        entries = content if isinstance(content, list) else [content]
        for body in entries:
            out.append(f"[{section}]")
            for key, value in body.items():
                out.append(f"{key} = {fmt(value)}")
            out.append("")
    return "\n".join(out)


def _build_grid(config, dims):
    defaults = _GRID_DEFAULTS[config.kind]
    grid = dict(defaults)
    grid.update(config.section("grid"))
    cells = grid["cells"]
    if len(cells) == 1 and dims > 1:
        cells = cells * dims
    return GridSpec(dims=dims, cells_per_axis=tuple(cells), dx=grid["dx"],
                    n_steps=grid["steps"])


def _build_source(config, grid):
    d = dict(_SOURCE_DEFAULTS[config.kind])
    d.update(config.section("source"))
    loc = d.pop("location", "center")
    cells = grid.cells_per_axis
    if loc == "center":
        location = cells[0] // 2 if grid.dims == 1 else tuple(n // 2 for n in cells)
    elif loc == "offset":
        if grid.dims == 1:
            location = cells[0] // 2 + 5
        else:
            location = tuple(n // 2 + 5 for n in cells)
    elif loc == "tfsf":
        location = "tfsf"
    else:
        parts = _int_list(loc)
        location = parts[0] if grid.dims == 1 else tuple(parts)
        if grid.dims > 1 and len(parts) != grid.dims:
            raise ValidationError(
                f"source location needs {grid.dims} indices, got {loc!r}"
            )
    return SourceSpec(kind=d.get("kind", "gaussian"), t0=d["t0"],
                      spread=d["spread"], freq=d.get("freq"),
                      injection=d.get("injection", "soft"), location=location)


def _npml(config):
    b = config.section("boundary", {"type": "pml", "npml": 8})
    kind = b.get("type", "pml")
    if kind == "none":
        return 0
    if kind != "pml":
        raise ValidationError(f"boundary type must be 'pml' or 'none', got {kind!r}")
    return int(b.get("npml", 8))


def _probe_tuples(flat, dims, where):
    if len(flat) % dims:
        raise ValidationError(
            f"{where}: probes must be flattened groups of {dims} indices"
        )
    return [tuple(flat[i:i + dims]) for i in range(0, len(flat), dims)]


def build_scenario(config: ScenarioConfig):
    """Turn a parsed config into the matching solver scenario object.

    Returns (scenario, outputs_dict) for fdtd kinds; antenna/validate
    configs are handled by the CLI directly.
    """
    outputs = config.section("outputs")
    if config.kind == "fdtd1d":
        grid = _build_grid(config, 1)
        source = _build_source(config, grid)
        scn = Scenario1D(grid=grid, source=source,
                         probe_positions=outputs.get("probes", []),
                         snapshot_steps=outputs.get("snapshot_steps", []))
        return scn, outputs
    if config.kind == "fdtd2d":
        grid = _build_grid(config, 2)
        source = _build_source(config, grid)
        cylinders = [CylinderSpec(center=tuple(c["center"]), radius=c["radius"],
                                  eps_r=c.get("eps_r", 1.0),
                                  sigma=c.get("sigma", 0.0))
                     for c in config.section("cylinder", [])]
        box = config.section("tfsf").get("box")
        scn = Scenario2D(grid=grid, source=source, npml=_npml(config),
                         cylinders=cylinders,
                         tfsf_box=tuple(box) if box else None,
                         probes=_probe_tuples(outputs.get("probes", []), 2,
                                              "[outputs]"),
                         snapshot_steps=outputs.get("snapshot_steps", []))
        return scn, outputs
    if config.kind == "fdtd3d":
        grid = _build_grid(config, 3)
        source = _build_source(config, grid)
        spheres = [SphereSpec(center=tuple(s["center"]), radius=s["radius"],
                              eps_r=s.get("eps_r", 1.0),
                              sigma=s.get("sigma", 0.0))
                   for s in config.section("sphere", [])]
        box = config.section("tfsf").get("box")
        slices = None
        if outputs.get("snapshot_steps"):
            slices = SliceSpec(plane=outputs.get("slice_plane", "xy"),
                               offset=outputs.get("slice_offset"),
                               component=outputs.get("slice_component", "ez"),
                               steps=outputs.get("snapshot_steps", []))
        scn = Scenario3D(grid=grid, source=source, npml=_npml(config),
                         spheres=spheres,
                         tfsf_box=tuple(box) if box else None,
                         probes=_probe_tuples(outputs.get("probes", []), 3,
                                              "[outputs]"),
                         slices=slices)
        return scn, outputs
    raise ValidationError(f"build_scenario cannot handle kind {config.kind!r}")
