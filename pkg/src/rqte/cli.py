"""Command line: ``rqte <scenario> [--key value ...] [--config file.json] [--out dir] [--format csv|json]``.

Exit status is 0 on success, 2 on invalid input and 3 on numerical
failure; errors are reported as one line on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .core import RQTEError, ValidationError
from .scenarios import SCENARIOS, Table, resolve_params

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 2, 3
MANIFEST_KEYS = {"version", "timestamp", "duration_s", "diagnostics", "outputs"}
CONFIG_KEYS = {"scenario", "params", "format", "out"}


def format_float(x) -> str:
    return format(x, ".17g")


def _cell(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def table_to_csv(table: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if hasattr(v, "item"):
        return _jsonable(v.item())
    return v


def table_to_json(table: Table) -> str:
    rows = [[_jsonable(v) for v in row] for row in table.rows]
    return json.dumps({"columns": table.columns, "rows": rows}, indent=1) + "\n"


def load_config(path) -> dict:
    try:
        cfg = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise ValidationError("config must be a JSON object")
    unknown = set(cfg) - CONFIG_KEYS - MANIFEST_KEYS
    if unknown:
        raise ValidationError(f"unknown config keys {sorted(unknown)}")
    if not isinstance(cfg.get("params", {}), dict):
        raise ValidationError("config 'params' must be an object")
    return cfg


def parse_overrides(tokens: list[str]) -> dict:
    """``--key value`` pairs left over after the fixed options."""
    out = {}
    it = iter(tokens)
    for tok in it:
        if not tok.startswith("--") or len(tok) < 3:
            raise ValidationError(f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, value = key.split("=", 1)
        else:
            try:
                value = next(it)
            except StopIteration:
                raise ValidationError(f"missing value for --{key}") from None
        out[key.replace("-", "_")] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rqte",
        allow_abbrev=False,
        description="Scenario runner for transport of wavefunctions along characteristic flows.",
        epilog="Scenarios: " + ", ".join(f"{s.name} ({s.help})" for s in SCENARIOS.values()),
    )
    p.add_argument("scenario", nargs="?", help="one of: " + ", ".join(SCENARIOS))
    p.add_argument("--config", help="JSON config (or a previous manifest); flags override it")
    p.add_argument("--out", help="output directory (default: current directory)")
    p.add_argument("--format", choices=["csv", "json"], help="results format (default csv)")
    p.add_argument("--plot", action="store_true", help="also render a PNG figure next to the table")
    p.add_argument("--golden", action="store_true", help="write a canonical, timestamp-free golden file only")
    p.add_argument("--list", action="store_true", help="list scenarios and their default parameters")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def run_scenario(name: str, overrides: dict | None = None, *, out=".", fmt: str = "csv", plot: bool = False) -> dict:
    """Run a scenario and write results plus manifest; returns the manifest."""
    if name not in SCENARIOS:
        raise ValidationError(f"unknown scenario {name!r}")
    if fmt not in ("csv", "json"):
        raise ValidationError(f"unknown format {fmt!r}")
    scenario = SCENARIOS[name]
    params = resolve_params(scenario, overrides or {})
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)

    start = time.perf_counter()
    stamp = datetime.now(timezone.utc).isoformat()
    table = scenario.run(params)
    duration = time.perf_counter() - start

    results = out / f"{name}.{fmt}"
    results.write_text(table_to_csv(table) if fmt == "csv" else table_to_json(table))
    outputs = [results.name]
    if plot:
        from .report import render

        outputs.append(render(name, table, out / f"{name}.png").name)
    manifest = {
        "scenario": name,
        "params": params,
        "format": fmt,
        "version": __version__,
        "timestamp": stamp,
        "duration_s": duration,
        "diagnostics": {k: _jsonable(v) for k, v in table.diagnostics.items()},
        "outputs": outputs,
    }
    (out / f"{name}.manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return manifest


def emit_golden(name: str, overrides: dict | None = None, *, out=".") -> Path:
    """Canonical CSV for regression comparison: parameters then table, no timestamps."""
    if name not in SCENARIOS:
        raise ValidationError(f"unknown scenario {name!r}")
    scenario = SCENARIOS[name]
    params = resolve_params(scenario, overrides or {})
    if scenario.uses_seed and params["seed"] < 0:
        raise ValidationError(f"scenario {name!r} is not deterministic without a non-negative seed")
    table = scenario.run(params)
    header = "".join(f"# {k} = {_cell(v)}\n" for k, v in sorted(params.items()))
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{name}.golden.csv"
    path.write_text(header + table_to_csv(table))
    return path


def main(argv=None) -> int:
    parser = build_parser()
    args, rest = parser.parse_known_args(argv)
    try:
        if args.list:
            for s in SCENARIOS.values():
                print(f"{s.name}: {json.dumps(s.defaults)}")
            return EXIT_OK
        cfg = load_config(args.config) if args.config else {}
        name = args.scenario or cfg.get("scenario")
        if not name:
            raise ValidationError("no scenario given")
        if args.scenario and cfg.get("scenario") not in (None, args.scenario):
            raise ValidationError(f"config is for scenario {cfg['scenario']!r}, not {args.scenario!r}")
        overrides = dict(cfg.get("params", {}))
        overrides.update(parse_overrides(rest))
        out = args.out or cfg.get("out") or "."
        if args.golden:
            print(emit_golden(name, overrides, out=out))
            return EXIT_OK
        manifest = run_scenario(name, overrides, out=out, fmt=args.format or cfg.get("format", "csv"), plot=args.plot)
        for f in manifest["outputs"]:
            print(Path(out) / f)
        return EXIT_OK
    except ValidationError as exc:
        print(f"rqte: error: validation: {_one_line(exc)}", file=sys.stderr)
        return EXIT_VALIDATION
    except (RQTEError, ArithmeticError) as exc:
        print(f"rqte: error: numerical: {_one_line(exc)}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"rqte: error: validation: {_one_line(exc)}", file=sys.stderr)
        return EXIT_VALIDATION


def _one_line(exc) -> str:
    return " ".join(str(exc).split()) or type(exc).__name__


if __name__ == "__main__":
    sys.exit(main())
