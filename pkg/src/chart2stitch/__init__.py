"""chart2stitch: compile textured black-and-white bar charts into
machine embroidery stitch files.

Pipeline: parse a declarative chart -> lay out millimetre geometry ->
split into area fills, texture line fills, outlines and text -> plan
machine stitches -> lint embroiderability -> encode to a stitch file.
"""

from .chart import ChartSpec, LayoutStyle, Scene, layout_chart, parse_chart_spec
from .decompose import DecomposedScene, decompose
from .dst import decode_dst, encode_dst
from .errors import Chart2StitchError
from .glyphs import builtin_icons, load_glyph_file, lookup_icon
from .lint import LintReport, LintThresholds, lint_scene, rank_textures
from .plan import (PlannerParams, Stitch, StitchBlock, StitchPlan,
                   read_native_plan, write_native_plan)
from .planner import (assemble_plan, chain_paths, order_blocks, plan_fill,
                      plan_running, plan_stamp, plan_text)
from .preview import (DensityGrid, PreviewOptions, density_to_svg,
                      render_density, render_svg)
from .textures import (CrossHatch, Dots, FillPrimitives, Hatch, Icon, Solid,
                       builtin_textures, fill_region)

__version__ = "0.1.0"

__all__ = [
    "ChartSpec", "Scene", "LayoutStyle", "parse_chart_spec", "layout_chart",
    "DecomposedScene", "decompose",
    "Hatch", "CrossHatch", "Dots", "Icon", "Solid", "FillPrimitives",
    "fill_region", "builtin_textures", "builtin_icons", "lookup_icon",
    "load_glyph_file",
    "PlannerParams", "Stitch", "StitchBlock", "StitchPlan",
    "plan_running", "plan_fill", "plan_stamp", "plan_text", "chain_paths",
    "order_blocks", "assemble_plan",
    "encode_dst", "decode_dst", "write_native_plan", "read_native_plan",
    "LintReport", "LintThresholds", "lint_scene", "rank_textures",
    "render_svg", "render_density", "density_to_svg", "DensityGrid",
    "PreviewOptions",
    "Chart2StitchError",
    "__version__",
]
