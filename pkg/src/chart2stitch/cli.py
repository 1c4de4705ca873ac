"""Command line interface: compile, lint, preview, stats and report.

Exit codes are a stable contract: 0 on success, 1 on any pipeline error
(with the message on stderr), 2 when --strict escalates lint warnings.
Parameters resolve as flags > config file > defaults.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import glyphs
from .chart import LayoutStyle, layout_chart, parse_chart_spec
from .decompose import DEFAULT_OUTLINE_MARGIN_MM, decompose
from .dst import decode_dst, encode_dst
from .errors import Chart2StitchError
from .lint import LintReport, LintThresholds, lint_scene, rank_textures
from .plan import (UNIT_MM, PlannerParams, StitchPlan, read_native_plan,
                   write_native_plan)
from .planner import assemble_plan
from .preview import PreviewOptions, render_svg
from .textures import Solid, builtin_textures, pattern_from_config


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    cfg = json.loads(Path(path).read_text())
    if not isinstance(cfg, dict):
        raise Chart2StitchError(f"config {path}: expected a JSON object")
    return cfg


def _dataclass_from(cls, data: dict, where: str):
    known = {f.name for f in dataclasses.fields(cls)}
    extra = set(data) - known
    if extra:
        raise Chart2StitchError(f"config.{where}: unknown keys {sorted(extra)}")
    return cls(**data)


class Settings:
    """Merged run configuration for one invocation."""

    def __init__(self, args: argparse.Namespace):
        cfg = _load_config(getattr(args, "config", None))
        planner_cfg = dict(cfg.get("planner", {}))
        for flag, key in (("max_stitch", "max_stitch_mm"),
                          ("row_spacing", "fill_row_spacing_mm"),
                          ("fill_angle", "fill_angle_deg")):
            value = getattr(args, flag, None)
            if value is not None:
                planner_cfg[key] = value
        hoop = getattr(args, "hoop", None)
        if hoop is not None:
            planner_cfg["hoop_width_mm"], planner_cfg["hoop_height_mm"] = hoop
        try:
            self.params = _dataclass_from(PlannerParams, planner_cfg, "planner")
        except ValueError as exc:
            raise Chart2StitchError(f"bad planner parameters: {exc}") from exc
        self.style = _dataclass_from(LayoutStyle, cfg.get("layout", {}), "layout")
        self.thresholds = _dataclass_from(LintThresholds, cfg.get("lint", {}), "lint")
        self.outline_margin = cfg.get("outline_margin_mm", DEFAULT_OUTLINE_MARGIN_MM)
        if getattr(args, "outline_margin", None) is not None:
            self.outline_margin = args.outline_margin
        icons = (glyphs.load_glyph_file(cfg["glyph_file"]) if cfg.get("glyph_file")
                 else glyphs.builtin_icons())
        self.textures = builtin_textures(icons)
        for name, spec in cfg.get("textures", {}).items():
            self.textures[name] = pattern_from_config(spec, icons)


def _hoop(text: str) -> tuple[float, float]:
    try:
        w, h = text.lower().replace(",", "x").split("x")
        return float(w), float(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WIDTHxHEIGHT in mm, got {text!r}")


def _compile_pipeline(spec_path: str, settings: Settings):
    document = Path(spec_path).read_text()
    spec = parse_chart_spec(document, settings.textures)
    scene = layout_chart(spec, settings.style)
    decomposed = decompose(scene, settings.textures, settings.outline_margin)
    plan = assemble_plan(decomposed, settings.params, name=spec.title)
    thresholds = dataclasses.replace(settings.thresholds,
                                     min_stitch_mm=settings.params.min_stitch_mm)
    report = lint_scene(decomposed, plan, thresholds)
    return spec, decomposed, plan, report


def _print_summary(plan: StitchPlan, report: LintReport | None = None) -> None:
    m = plan.metadata
    size = ""
    if m.bounds_units:
        x0, y0, x1, y1 = m.bounds_units
        size = f", {(x1 - x0) * UNIT_MM:.1f} x {(y1 - y0) * UNIT_MM:.1f} mm"
    minutes = (f", ~{m.estimated_time_min:.1f} min"
               if m.estimated_time_min is not None else "")
    print(f"{m.stitch_count} stitches, {m.trim_count} trims, "
          f"{m.total_thread_length_mm:.0f} mm thread{size}{minutes}")
    if report is not None and report.warnings():
        print(f"{len(report.warnings())} lint warning(s); run the lint command for details")


def _write_plan(plan: StitchPlan, out_path: Path, fmt: str | None) -> None:
    fmt = fmt or {".dst": "dst", ".json": "json"}.get(out_path.suffix.lower())
    if fmt == "dst":
        out_path.write_bytes(encode_dst(plan))
    elif fmt == "json":
        out_path.write_text(write_native_plan(plan))
    else:
        raise Chart2StitchError(
            f"cannot infer output format from {out_path.name!r}; pass --format dst|json")


def _read_plan(path: Path) -> StitchPlan:
    if path.suffix.lower() == ".dst":
        return decode_dst(path.read_bytes())
    return read_native_plan(path.read_text())


def cmd_compile(args: argparse.Namespace) -> int:
    settings = Settings(args)
    _spec, _decomposed, plan, report = _compile_pipeline(args.spec, settings)
    _write_plan(plan, Path(args.output), args.format)
    if args.preview:
        Path(args.preview).write_text(render_svg(plan, PreviewOptions()))
    _print_summary(plan, report)
    if args.strict and report.warnings():
        print("strict mode: lint warnings are fatal", file=sys.stderr)
        return 2
    return 0


def cmd_lint(args: argparse.Namespace) -> int:
    settings = Settings(args)
    _spec, _decomposed, _plan, report = _compile_pipeline(args.spec, settings)
    print(report.summary())
    if args.strict and report.warnings():
        return 2
    return 0


def cmd_preview(args: argparse.Namespace) -> int:
    plan = _read_plan(Path(args.plan))
    Path(args.output).write_text(render_svg(plan, PreviewOptions(
        show_jumps=not args.hide_jumps, show_points=args.points)))
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    settings = Settings(args)
    plan = _read_plan(Path(args.plan))
    plan.recompute_metadata(machine_speed_spm=settings.params.machine_speed_spm)
    m = plan.metadata
    print(f"name:           {m.name or '<none>'}")
    print(f"stitches:       {m.stitch_count}")
    print(f"trims:          {m.trim_count}")
    print(f"jumps:          {plan.jump_count()}")
    print(f"thread length:  {m.total_thread_length_mm:.1f} mm")
    if m.bounds_units:
        x0, y0, x1, y1 = m.bounds_units
        print(f"bounds:         [{x0 * UNIT_MM:.1f}, {y0 * UNIT_MM:.1f}] .. "
              f"[{x1 * UNIT_MM:.1f}, {y1 * UNIT_MM:.1f}] mm")
    print(f"estimated time: {m.estimated_time_min:.1f} min "
          f"at {settings.params.machine_speed_spm:g} spm")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    from .report import write_report  # matplotlib import stays off other paths

    settings = Settings(args)
    spec, _decomposed, plan, report = _compile_pipeline(args.spec, settings)
    used = []
    seen = set()
    for cat in spec.categories:
        pattern = settings.textures[cat.texture_id]
        if cat.texture_id not in seen and not isinstance(pattern, Solid):
            seen.add(cat.texture_id)
            used.append(pattern)
    region = [(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]
    ranks = rank_textures(used, region, settings.thresholds, settings.params) if used else []
    written = write_report(args.outdir, plan, report, ranks)
    for path in written:
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chart2stitch",
        description="Compile textured bar charts into machine embroidery files.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file (flags win over it)")
    tuning = argparse.ArgumentParser(add_help=False)
    tuning.add_argument("--hoop", type=_hoop, metavar="WxH",
                        help="hoop size in mm, e.g. 200x200")
    tuning.add_argument("--max-stitch", type=float, metavar="MM")
    tuning.add_argument("--row-spacing", type=float, metavar="MM")
    tuning.add_argument("--fill-angle", type=float, metavar="DEG")
    tuning.add_argument("--outline-margin", type=float, metavar="MM")

    p = sub.add_parser("compile", parents=[common, tuning],
                       help="compile a chart spec to a stitch file")
    p.add_argument("spec")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--format", choices=["dst", "json"],
                   help="override the format implied by the output extension")
    p.add_argument("--preview", metavar="SVG", help="also write an SVG preview")
    p.add_argument("--strict", action="store_true",
                   help="exit 2 when lint reports warnings")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("lint", parents=[common, tuning],
                       help="lint a chart spec for embroiderability")
    p.add_argument("spec")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_lint)

    p = sub.add_parser("preview", parents=[common],
                       help="render a plan or stitch file to SVG")
    p.add_argument("plan", help=".dst or native .json plan")
    p.add_argument("output")
    p.add_argument("--points", action="store_true", help="mark stitch points")
    p.add_argument("--hide-jumps", action="store_true")
    p.set_defaults(func=cmd_preview)

    p = sub.add_parser("stats", parents=[common],
                       help="print counts, bounds and estimated runtime")
    p.add_argument("plan", help=".dst or native .json plan")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("report", parents=[common, tuning],
                       help="write CSV stats and figures for a chart spec")
    p.add_argument("spec")
    p.add_argument("-o", "--outdir", required=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Chart2StitchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
