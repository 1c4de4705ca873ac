"""Compile report: delimited stats plus rendered figures.

Writes a directory of CSV files (plan summary, lint findings, density
grid) next to matplotlib figures (density heat map, texture score bars)
and the deterministic SVG preview. Matplotlib is confined to this module;
the core preview path never depends on it.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .lint import LintReport, TextureRank
from .plan import UNIT_MM, StitchPlan
from .preview import DensityGrid, PreviewOptions, render_density, render_svg


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def summary_rows(plan: StitchPlan, report: LintReport | None = None) -> list[list]:
    m = plan.metadata
    rows = [
        ["name", m.name],
        ["stitch_count", m.stitch_count],
        ["trim_count", m.trim_count],
        ["jump_count", plan.jump_count()],
        ["thread_length_mm", round(m.total_thread_length_mm, 2)],
        ["estimated_time_min", "" if m.estimated_time_min is None
         else round(m.estimated_time_min, 2)],
    ]
    if m.bounds_units:
        x0, y0, x1, y1 = m.bounds_units
        rows.append(["width_mm", round((x1 - x0) * UNIT_MM, 2)])
        rows.append(["height_mm", round((y1 - y0) * UNIT_MM, 2)])
    if report is not None:
        rows += [
            ["continuity", round(report.scores.continuity, 4)],
            ["detail", round(report.scores.detail, 4)],
            ["text_ok", round(report.scores.text_ok, 4)],
            ["backside_mess_per_cm2", round(report.scores.backside_mess, 3)],
            ["warning_count", len(report.warnings())],
        ]
    return rows


def _density_figure(grid: DensityGrid, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 6 * grid.rows / max(1, grid.cols)))
    im = ax.imshow(grid.values, origin="lower", cmap="gray_r", interpolation="nearest")
    fig.colorbar(im, ax=ax, label="thread mm per cell")
    ax.set_title("thread density")
    ax.set_xticks([])
    ax.set_yticks([])
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def _scores_figure(ranks: list[TextureRank], path: Path) -> None:
    names = [r.name for r in ranks]
    scores = [r.score for r in ranks]
    fig, ax = plt.subplots(figsize=(6, 0.5 * len(ranks) + 1.5))
    ax.barh(range(len(ranks)), scores, color="0.25")
    ax.set_yticks(range(len(ranks)), names)
    ax.invert_yaxis()
    ax.set_xlim(0, 1)
    ax.set_xlabel("embroiderability score")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def write_report(out_dir: str | Path, plan: StitchPlan,
                 report: LintReport | None = None,
                 ranks: list[TextureRank] | None = None,
                 cell_mm: float = 1.0, jump_penalty_mm: float = 1.0) -> list[Path]:
    """Write the full report bundle; returns the created file paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    path = out / "summary.csv"
    _write_csv(path, ["metric", "value"], summary_rows(plan, report))
    written.append(path)

    if report is not None:
        path = out / "findings.csv"
        _write_csv(path, ["severity", "code", "location", "message"],
                   [[f.severity, f.code, f.location, f.message] for f in report.findings])
        written.append(path)

    grid = render_density(plan, cell_mm=cell_mm, jump_penalty_mm=jump_penalty_mm)
    path = out / "density.csv"
    _write_csv(path, [f"col{c}" for c in range(grid.cols)],
               [[round(v, 4) for v in row] for row in grid.values])
    written.append(path)

    path = out / "density.png"
    _density_figure(grid, path)
    written.append(path)

    if ranks:
        path = out / "texture_scores.csv"
        _write_csv(path, ["rank", "texture", "score"],
                   [[i + 1, r.name, round(r.score, 4)] for i, r in enumerate(ranks)])
        written.append(path)
        path = out / "texture_scores.png"
        _scores_figure(ranks, path)
        written.append(path)

    path = out / "preview.svg"
    path.write_text(render_svg(plan, PreviewOptions()))
    written.append(path)
    return written
