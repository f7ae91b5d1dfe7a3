"""Command-line front end.

Two subcommands::

    fdtdlab run <scenario-file> [--out DIR] [--threads N] [--quiet]
    fdtdlab validate --suite NAME [--out DIR] [--quiet]

``run`` parses a scenario file, dispatches the matching solver or the
antenna calculator, and writes probes/snapshots plus a JSON manifest.
``validate`` runs one of the oracle-comparison suites and writes a
pass/fail report with the measured errors.

Output directory resolution: --out flag, else the FDTDLAB_OUT
environment variable, else the scenario's out_dir, else "./out".
Exit codes: 0 success, 1 failed validation checks, 2 configuration
errors, 3 numeric failure (non-finite fields).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .antenna import design, format_design_report
from .config import ScenarioConfig, build_scenario, parse_scenario, \
    serialize_scenario
from .core import NumericError, ValidationError
from .solver1d import run_1d
from .solver2d import run_2d
from .solver3d import run_3d
from .validation import SUITES, run_suite

FLOAT_FMT = "%.17g"  # round-trip exact for 64-bit floats


def write_snapshot(rows, header, path) -> None:
    """Write CSV rows with LF endings and 17-significant-digit floats."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(
                FLOAT_FMT % v if isinstance(v, float) else str(v)
                for v in row) + "\n")


def _grid_rows(array):
    arr = np.asarray(array)
    for i in range(arr.shape[0]):
        for j in range(arr.shape[1]):
            yield (i, j, float(arr[i, j]))


def write_probe(trace, path) -> None:
    write_snapshot(((step, float(v)) for step, v in enumerate(trace)),
                   ("step", "value"), path)


def _write_manifest(out_dir, config_text, files, wall_time) -> None:
    manifest = {
        "config": config_text,
        "versions": {
            "fdtdlab": __version__,
            "numpy": np.__version__,
            "python": sys.version.split()[0],
        },
        "wall_time_s": wall_time,
        "files": sorted(files),
    }
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _resolve_out(args, outputs) -> str:
    out = args.out or os.environ.get("FDTDLAB_OUT") \
        or outputs.get("out_dir") or "out"
    os.makedirs(out, exist_ok=True)
    return out


def _run_fdtd(config: ScenarioConfig, args) -> list:
    scenario, outputs = build_scenario(config)
    if hasattr(scenario, "threads"):
        scenario.threads = max(1, args.threads)
    out = _resolve_out(args, outputs)
    files = []
    t0 = time.perf_counter()

    if config.kind == "fdtd1d":
        res = run_1d(scenario)
        for pos, trace in res.probes.items():
            path = os.path.join(out, f"probe_k{pos}.csv")
            write_probe(trace, path)
            files.append(path)
        for step, (ex, hy) in res.snapshots.items():
            path = os.path.join(out, f"snapshot_step{step}.csv")
            write_snapshot(((step, k, float(ex[k]), float(hy[k]))
                            for k in range(len(ex))),
                           ("step", "k", "ex", "hy"), path)
            files.append(path)
    elif config.kind == "fdtd2d":
        res = run_2d(scenario)
        for (pi, pj), trace in res.probes.items():
            path = os.path.join(out, f"probe_i{pi}_j{pj}.csv")
            write_probe(trace, path)
            files.append(path)
        for step, ez in res.snapshots.items():
            path = os.path.join(out, f"snapshot_step{step}.csv")
            write_snapshot(_grid_rows(ez), ("i", "j", "ez"), path)
            files.append(path)
    else:
        res = run_3d(scenario)
        for (pi, pj, pk), trace in res.probes.items():
            path = os.path.join(out, f"probe_i{pi}_j{pj}_k{pk}.csv")
            write_probe(trace, path)
            files.append(path)
        sl = scenario.slices
        for step, plane in res.slices.items():
            path = os.path.join(out, f"slice_step{step}.csv")
            write_snapshot(_grid_rows(plane), ("i", "j", "value"), path)
            files.append(path)
            meta = {"plane": sl.plane, "offset": sl.offset,
                    "component": sl.component, "step": step}
            mpath = path.replace(".csv", ".json")
            with open(mpath, "w", encoding="utf-8", newline="\n") as fh:
                json.dump(meta, fh, indent=2, sort_keys=True)
                fh.write("\n")
            files.append(mpath)

    _write_manifest(out, serialize_scenario(config), files,
                    time.perf_counter() - t0)
    if not args.quiet:
        print(f"wrote {len(files)} files + manifest.json to {out}/")
    return files


def _run_antenna(config: ScenarioConfig, args) -> None:
    a = config.section("antenna")
    for key in ("f0", "eps_r", "h"):
        if key not in a:
            raise ValidationError(f"[antenna] section missing required key {key!r}")
    d = design(a["f0"], a["eps_r"], a["h"], a.get("x_feed"))
    report = format_design_report(d)
    out = _resolve_out(args, config.section("outputs"))
    t0 = time.perf_counter()
    path = os.path.join(out, "antenna_design.txt")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(report + "\n")
    csv_path = os.path.join(out, "antenna_design.csv")
    write_snapshot([("W", d.W), ("eps_reff", d.eps_reff),
                    ("delta_L", d.delta_L), ("L", d.L),
                    ("x_feed", d.x_feed), ("y_feed", d.y_feed)],
                   ("name", "value"), csv_path)
    _write_manifest(out, serialize_scenario(config), [path, csv_path],
                    time.perf_counter() - t0)
    if not args.quiet:
        print(report)


def _run_validate(suite: str, args, config_text="") -> int:
    names = sorted(SUITES) if suite == "all" else [suite]
    out = _resolve_out(args, {})
    results = []
    t0 = time.perf_counter()
    for name in names:
        for check in run_suite(name):
            results.append(check)
            if not args.quiet:
                print(check.line())
    path = os.path.join(out, "validation_report.csv")
    write_snapshot([(c.suite, c.name, c.value, c.threshold,
                     "pass" if c.passed else "fail", c.detail)
                    for c in results],
                   ("suite", "check", "measured", "threshold", "status",
                    "detail"), path)
    _write_manifest(out, config_text or f"kind = validate\n[validate]\nsuite = {suite}",
                    [path], time.perf_counter() - t0)
    failed = [c for c in results if not c.passed]
    if not args.quiet:
        print(f"{len(results) - len(failed)}/{len(results)} checks passed; "
              f"report: {path}")
    return 1 if failed else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fdtdlab",
        description="FDTD solvers with analytic validation and a patch "
                    "antenna calculator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a scenario file")
    p_run.add_argument("scenario")
    p_run.add_argument("--out", default=None)
    p_run.add_argument("--threads", type=int, default=1)
    p_run.add_argument("--quiet", action="store_true")

    p_val = sub.add_parser("validate", help="run an oracle-comparison suite")
    p_val.add_argument("--suite", required=True,
                       choices=sorted(SUITES) + ["all"])
    p_val.add_argument("--out", default=None)
    p_val.add_argument("--quiet", action="store_true")

    args = parser.parse_args(argv)

    try:
        if args.command == "validate":
            return _run_validate(args.suite, args)
        config = parse_scenario(args.scenario)
        if config.kind == "antenna":
            _run_antenna(config, args)
        elif config.kind == "validate":
            args.quiet = getattr(args, "quiet", False)
            return _run_validate(config.section("validate")["suite"], args,
                                 serialize_scenario(config))
        else:
            _run_fdtd(config, args)
        return 0
    except ValidationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
