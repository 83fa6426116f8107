"""Command-line front end.

Subcommands ``region``, ``atlas``, ``norms``, ``witness`` and ``checks`` each
compute everything first, then write a CSV (and plot data where relevant)
plus ``report.json`` into ``--out``. Files are replaced atomically, so a
failed run leaves no partial output.

Exit codes: 0 success, 2 invalid configuration, 3 numerical or geometric error.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from pathlib import Path

from . import __version__, checks, config, embedding
from . import io as fio
from .decomposition import build_dyadic_family, build_uniform_family
from .errors import ConfigError, FSpaceError, TheoremDomainError
from .grid import Bump, Gaussian, lp_norm, make_grid, sample_function
from .norms import besov_norm, modulation_norm_discrete, modulation_norm_stft, triebel_lizorkin_norm
from .params import INF, format_exponent, parse_exponent, parse_point
from .witnesses import experiments as exp

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

DEFAULT_ATLAS_AXES = "1/q:[0..4]:1/4,s:[-3..3]:1/4"
_AXIS_RE = re.compile(r"^\s*([0-9/a-z]+)\s*:\s*\[\s*([^\].]+?)\s*\.\.\s*([^\]]+?)\s*\]\s*:\s*(\S+)\s*$")


# ---------------------------------------------------------------------------
# parsing helpers


def _field(name: str, fn, *args):
    try:
        return fn(*args)
    except ConfigError:
        raise
    except (ValueError, ZeroDivisionError, KeyError, TypeError) as exc:
        raise ConfigError(name, str(exc)) from exc


def parse_axes(text: str, field: str = "axes") -> list[embedding.Axis]:
    """``"q:[1/8..4]:1/8,s:[-1..3]:1/8"`` into two :class:`Axis` objects."""
    axes = []
    for part in text.split(","):
        m = _AXIS_RE.match(part)
        if not m:
            raise ConfigError(field, f"cannot parse axis {part!r}; expected name:[start..stop]:step")
        name, start, stop, step = m.groups()
        if name not in ("p", "q", "r", "s", "1/p", "1/q", "1/r"):
            raise ConfigError(f"{field}.{name}", "axis name must be one of p, q, r, s, 1/p, 1/q, 1/r")
        vals = [_field(f"{field}.{name}", parse_exponent, v) for v in (start, stop, step)]
        if any(v == INF for v in vals):
            raise ConfigError(f"{field}.{name}", "axis bounds must be finite rationals")
        if vals[2] <= 0:
            raise ConfigError(f"{field}.{name}", "step must be positive")
        axes.append(embedding.Axis(name, *vals))
    if len(axes) != 2:
        raise ConfigError(field, f"need exactly two axes, got {len(axes)}")
    return axes


def parse_schedule(text: str, family: str) -> tuple[int, ...]:
    key, sep, vals = text.partition("=")
    want = "K" if family == "GN" else "J"
    if not sep or key.strip() != want:
        raise ConfigError("schedule", f"family {family} grows along {want}; write {want}=v1,v2,...")
    steps = tuple(_field("schedule", int, v) for v in vals.split(",") if v.strip())
    if len(steps) < 2 or any(b <= a for a, b in zip(steps, steps[1:])):
        raise ConfigError("schedule", "need at least two strictly increasing steps")
    return steps


def parse_grid(text: str | None, n: int):
    if text is None:
        return make_grid(*(config.DEFAULT_GRID_1D if n == 1 else config.DEFAULT_GRID_2D))
    parts = dict(item.split("=", 1) for item in text.split(",") if "=" in item)
    try:
        L, M = int(parts["L"]), int(parts["M"])
    except (KeyError, ValueError) as exc:
        raise ConfigError("grid", "expected L=<extent>,M=<points>") from exc
    return _field("grid", make_grid, n, L, M)


def load_config_file(path: str) -> dict:
    """Read ``key = value`` lines (``#`` starts a comment); keys are long option names."""
    out = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ConfigError("config", str(exc)) from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"config:{lineno}", f"expected key = value, got {raw!r}")
        out[key.strip().replace("-", "_")] = value.strip().strip('"')
    return out


# ---------------------------------------------------------------------------
# commands; each returns (files, summary)


def _verdict_row(cell: embedding.RegionCell, theorem: str | None = None):
    P, v = cell.params, cell.verdict
    row = [cell.x, cell.y, P.n, P.p, P.q, P.r, P.s, v.holds, v.branch, v.boundary, v.interpretation or "-"]
    return ([theorem] if theorem else []) + row


_REGION_COLUMNS = ["x", "y", "n", "p", "q", "r", "s", "holds", "branch", "boundary", "interpretation"]


def _plot_block(cells) -> list[str]:
    lines, prev = [], None
    for c in cells:
        if prev is not None and c.x != prev:
            lines.append("")
        prev = c.x
        v = c.verdict
        lines.append(f"{float(c.x):.12g} {float(c.y):.12g} {int(v.holds)} {v.branch} {int(v.boundary)}")
    return lines


def _plot_data(blocks: list[tuple[str, list]], axes, meta: str) -> str:
    head = [f"# {fio.PLOT_VERSION} {meta} xaxis={axes[0].name} yaxis={axes[1].name}", "# x y verdict branch boundary"]
    body = []
    for i, (title, cells) in enumerate(blocks):
        if i:
            body += ["", ""]
        body.append(f"# block {title}")
        body += _plot_block(cells)
    return "\n".join(head + body) + "\n"


def _fixed_params(args) -> dict:
    fixed = {"n": _field("n", int, args.n)}
    for name in ("p", "q", "r", "s"):
        val = getattr(args, name)
        if val is not None:
            fixed[name] = _field(name, parse_exponent, val)
    return fixed


def _scan(fixed, axes, theorem):
    try:
        return embedding.region_scan(fixed, axes, theorem)
    except TheoremDomainError as exc:
        raise ConfigError("p", str(exc)) from exc
    except ValueError as exc:
        raise ConfigError("axes", str(exc)) from exc


def cmd_region(args):
    theorem = _field("theorem", embedding.resolve_theorem, args.theorem)
    if args.axes is None:
        raise ConfigError("axes", "required")
    axes = parse_axes(args.axes)
    cells = _scan(_fixed_params(args), axes, theorem)
    meta = {"command": "region", "theorem": theorem, "axes": args.axes}
    files = {
        "region.csv": fio.render_csv(_REGION_COLUMNS, (_verdict_row(c) for c in cells), meta),
        "region.dat": _plot_data([(theorem, cells)], axes, f"theorem={theorem}"),
    }
    holds = sum(c.verdict.holds for c in cells)
    summary = {"cells": len(cells), "holds": holds, "boundary": sum(c.verdict.boundary for c in cells)}
    return files, summary


def cmd_atlas(args):
    axes = parse_axes(args.axes or DEFAULT_ATLAS_AXES)
    fixed = _fixed_params(args)
    blocks, rows, summary = [], [], {}
    for theorem in embedding.THEOREMS:
        cells = _scan(fixed, axes, theorem)
        blocks.append((theorem, cells))
        rows += [_verdict_row(c, theorem) for c in cells]
        summary[theorem] = sum(c.verdict.holds for c in cells)
    meta = {"command": "atlas", "axes": args.axes or DEFAULT_ATLAS_AXES}
    files = {
        "atlas.csv": fio.render_csv(["theorem"] + _REGION_COLUMNS, rows, meta),
        "atlas.dat": _plot_data(blocks, axes, "theorems=" + ",".join(embedding.THEOREMS)),
    }
    return files, {"holds_per_theorem": summary}


_FUNCTIONS = {"gaussian": lambda w: Gaussian(w), "bump": lambda w: Bump(w)}


def cmd_norms(args):
    params = _field("point", parse_point, args.point)
    if args.function not in _FUNCTIONS:
        raise ConfigError("function", f"choose from {sorted(_FUNCTIONS)}")
    width = _field("width", float, args.width)
    if width <= 0:
        raise ConfigError("width", "must be positive")
    grid = parse_grid(args.grid, params.n)
    f = sample_function(_FUNCTIONS[args.function](width), grid)
    uniform, dyadic = build_uniform_family(grid), build_dyadic_family(grid)
    rows = [
        ("lp", lp_norm(f, p=params.p)),
        ("modulation_discrete", modulation_norm_discrete(f, params, uniform)),
        ("besov", besov_norm(f, params, dyadic)),
    ]
    if params.p != INF:
        rows.append(("triebel_lizorkin", triebel_lizorkin_norm(f, params, dyadic)))
    if args.stft:
        rows.append(("modulation_stft", modulation_norm_stft(f, params)))
    meta = {"command": "norms", "point": params.label(), "function": args.function, "width": width,
            "L": grid.extent, "M": grid.points_per_axis}
    return {"norms.csv": fio.render_csv(["norm", "value"], rows, meta)}, {k: v for k, v in rows}


_DEFAULT_SEPARATION = {"GN": 32, "FN": 16, "H": 0}


def cmd_witness(args):
    family = args.family
    if family not in ("GN", "FN", "H"):
        raise ConfigError("family", "choose GN, FN or H")
    params = _field("point", parse_point, args.point)
    theorem = _field("theorem", embedding.resolve_theorem, args.theorem)
    if theorem not in ("1.1", "1.2"):
        raise ConfigError("theorem", "witness experiments compare theorems 1.1 or 1.2")
    if args.pattern not in ("block", "delta", "power") or (args.pattern == "power" and family != "GN"):
        raise ConfigError("pattern", "GN takes block|delta|power, FN and H take block|delta")
    if params.n != 1 and not (family == "GN" and args.pattern == "delta"):
        raise ConfigError("point.n", "block witnesses are implemented in one dimension")
    schedule = parse_schedule(args.schedule, family)
    sep = _DEFAULT_SEPARATION[family] if args.separation is None else _field("separation", int, args.separation)
    plan = exp.WitnessPlan(family, args.pattern, schedule, sep)
    try:
        verdict = (embedding.thm1_M_into_F if theorem == "1.1" else embedding.thm2_F_into_M)(params)
    except TheoremDomainError as exc:
        raise ConfigError("point.p", str(exc)) from exc
    predicted = exp.predicted_ratios(plan, theorem, params)
    series = exp.run_plan(plan, theorem, params)
    rows = [
        (step, num, den, ratio, pred)
        for step, num, den, ratio, pred in zip(series.schedule, series.numerators, series.denominators, series.ratios, predicted)
    ]
    meta = {"command": "witness", "plan": plan.name, "separation": sep, "theorem": theorem, "point": params.label(),
            "classification": series.classification}
    files = {"witness.csv": fio.render_csv(["step", "numerator", "denominator", "ratio", "predicted"], rows, meta)}
    summary = {
        "plan": plan.name,
        "classification": series.classification,
        "growth_factor": series.growth_factor,
        "predicted_growth": predicted[-1] / predicted[0],
        "verdict": {"holds": verdict.holds, "branch": verdict.branch, "boundary": verdict.boundary},
    }
    return files, summary


def cmd_checks(args):
    names = [s.strip() for s in (args.suite or ",".join(checks.SUITES)).split(",") if s.strip()]
    unknown = [s for s in names if s not in checks.SUITES]
    if unknown:
        raise ConfigError("suite", f"unknown suite(s) {unknown}; choose from {sorted(checks.SUITES)}")
    rows = checks.run_suites(names, args.seed)
    meta = {"command": "checks", "suites": "+".join(names), "seed": args.seed}
    table = [(r.suite, r.case, r.value, r.threshold, r.passed) for r in rows]
    files = {"checks.csv": fio.render_csv(["suite", "case", "value", "threshold", "passed"], table, meta)}
    return files, {"passed": sum(r.passed for r in rows), "total": len(rows)}


COMMANDS = {"region": cmd_region, "atlas": cmd_atlas, "norms": cmd_norms, "witness": cmd_witness, "checks": cmd_checks}


# ---------------------------------------------------------------------------
# argument parser


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; keys are long option names")
    common.add_argument("--seed", type=_seed, default=0, help="random seed (64-bit)")
    common.add_argument("--out", default="fspace-out", help="output directory")

    parser = argparse.ArgumentParser(prog="fspace", description="Modulation / Triebel-Lizorkin embedding toolkit")
    parser.add_argument("--version", action="version", version=f"fspace {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def exponents(p, with_required_p=False):
        p.add_argument("--n", default="1")
        p.add_argument("--p", required=with_required_p)
        for name in ("q", "r", "s"):
            p.add_argument(f"--{name}")

    region = sub.add_parser("region", parents=[common], help="verdict table over two rational axes")
    region.add_argument("--theorem")
    region.add_argument("--axes", help="name:[start..stop]:step,name:[...]:step")
    exponents(region)

    atlas = sub.add_parser("atlas", parents=[common], help="region tables for every theorem")
    atlas.add_argument("--axes")
    exponents(atlas)

    norms = sub.add_parser("norms", parents=[common], help="all norms of a test function")
    norms.add_argument("--point", help="n=1,p=1/2,q=2,r=2,s=1")
    norms.add_argument("--function", default="gaussian")
    norms.add_argument("--width", default="1")
    norms.add_argument("--grid", help="L=<extent>,M=<points>")
    norms.add_argument("--stft", action="store_true", help="also compute the STFT-based modulation norm")

    witness = sub.add_parser("witness", parents=[common], help="ratio experiment on an extremal family")
    witness.add_argument("--family")
    witness.add_argument("--point")
    witness.add_argument("--schedule", help="K=4,8,16 (GN) or J=2,3,4 (FN, H)")
    witness.add_argument("--pattern", default="block")
    witness.add_argument("--separation")
    witness.add_argument("--theorem", default="1.1")

    chk = sub.add_parser("checks", parents=[common], help="verification suites")
    chk.add_argument("--suite", help="comma list from: " + ",".join(checks.SUITES))
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    values = load_config_file(args.config)
    subparser = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest for a in subparser._actions}
    for key in values:
        if key not in known or key in ("help", "config"):
            raise ConfigError(f"config.{key}", f"unknown key for '{args.command}'")
    subparser.set_defaults(**{k: (_seed(v) if k == "seed" else v) for k, v in values.items()})
    return parser.parse_args(argv)


def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise ConfigError(name, "required")


_REQUIRED = {"region": ("theorem", "axes", "p"), "atlas": ("p",), "norms": ("point",),
             "witness": ("family", "point", "schedule"), "checks": ()}


def main(argv=None) -> int:
    parser = build_parser()
    start = time.perf_counter()
    try:
        args = _apply_config(parser, argv)
        _require(args, *_REQUIRED[args.command])
        files, summary = COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"fspace: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FSpaceError as exc:
        print(f"fspace: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    inputs = {k: v for k, v in sorted(vars(args).items()) if k != "config" or v is not None}
    report = {
        "command": args.command,
        "inputs": inputs,
        "summary": summary,
        "files": sorted(files),
        "wall_time_s": round(time.perf_counter() - start, 3),
        "version": __version__,
        "interpretation": {
            "lemma_bracket_reading": embedding.BRACKET_READING,
            "unbounded_exponent": format_exponent(INF),
            "thresholds": config.as_dict(),
        },
    }
    files["report.json"] = fio.render_json(report)
    for path in fio.write_outputs(files, args.out):
        print(path)
    print(fio.render_json(summary), end="")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
