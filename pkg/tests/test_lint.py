import pytest

from chart2stitch.decompose import DecomposedScene, TextElement
from chart2stitch.geometry import Rect
from chart2stitch.glyphs import lookup_icon
from chart2stitch.lint import (DETAIL_LOSS, SCATTERED, SMALL_TEXT,
                               LintThresholds, _texture_scene, lint_scene,
                               rank_textures)
from chart2stitch.plan import PlannerParams, StitchPlan
from chart2stitch.planner import assemble_plan
from chart2stitch.textures import Dots, Hatch, Icon, Stamp, fill_region

from conftest import UNIT_SQUARE_10

PARAMS = PlannerParams()


def texture_plan(pattern, region=UNIT_SQUARE_10, source="tex"):
    prims = fill_region(list(region), pattern)
    scene = _texture_scene(list(region), prims, source)
    return scene, assemble_plan(scene, PARAMS)


def test_dotted_texture_scatters():
    """Counting oracle: every dot stamp is its own block and every one of
    the 5x5 grid blocks trips the scatter rule."""
    scene, plan = texture_plan(Dots(0.8, 2.0))
    expected_blocks = len(scene.texture_line_fills[0].primitives.stamps)
    assert expected_blocks == 25
    report = lint_scene(scene, plan)
    scattered = [f for f in report.findings if f.code == SCATTERED]
    assert len(scattered) == expected_blocks
    assert report.scores.continuity < 0.2
    assert all(f.location for f in report.findings)


def test_continuous_hatch_is_clean():
    scene, plan = texture_plan(Hatch(0.0, 2.0))
    report = lint_scene(scene, plan)
    assert [f for f in report.findings if f.code == SCATTERED] == []
    assert report.scores.continuity > 0.9


def test_small_text_threshold():
    scene = DecomposedScene(bounds=Rect(0, 0, 40, 20))
    scene.text_elements.append(TextElement("tiny", (20.0, 5.0), 4.0, "center", "label:0"))
    scene.text_elements.append(TextElement("fine", (20.0, 12.0), 5.0, "center", "label:1"))
    plan = assemble_plan(scene, PARAMS)
    report = lint_scene(scene, plan)
    small = [f for f in report.findings if f.code == SMALL_TEXT]
    assert len(small) == 1
    assert small[0].location == "label:0"
    assert report.scores.text_ok == pytest.approx(0.5)


def test_icon_detail_loss_at_small_scale():
    """A tomato's calyx sits a fixed fraction of the glyph above the body;
    below ~2 mm the gap drops under one minimum stitch and the two strokes
    read as a single blob."""
    region = UNIT_SQUARE_10
    small = Icon(lookup_icon("tomato"), scale_mm=1.8, spacing_mm=5.0, name="tomato")
    scene, plan = texture_plan(small)
    report = lint_scene(scene, plan)
    assert any(f.code == DETAIL_LOSS for f in report.findings)
    assert report.scores.detail < 1.0

    ok = Icon(lookup_icon("tomato"), scale_mm=4.0, spacing_mm=6.0, name="tomato")
    scene, plan = texture_plan(ok)
    report = lint_scene(scene, plan)
    assert not any(f.code == DETAIL_LOSS for f in report.findings)
    assert report.scores.detail == 1.0


def test_lint_never_raises_and_scores_bounded(family_pipeline):
    _, _, decomposed, plan = family_pipeline
    report = lint_scene(decomposed, plan)
    assert 0.0 <= report.scores.continuity <= 1.0
    assert 0.0 <= report.scores.detail <= 1.0
    assert 0.0 <= report.scores.text_ok <= 1.0
    assert report.scores.backside_mess >= 0.0


def test_single_block_plan_has_full_continuity():
    scene, plan = texture_plan(Hatch(45.0, 2.0))
    assert len(plan.blocks) == 1
    assert lint_scene(scene, plan).scores.continuity == 1.0


def test_empty_plan_continuity_is_one():
    report = lint_scene(DecomposedScene(), StitchPlan())
    assert report.scores.continuity == 1.0
    assert report.findings == []


def test_rank_dots_last():
    patterns = [Hatch(0.0, 2.0),
                Icon(lookup_icon("olive"), 4.0, 6.0, "olive"),
                Dots(0.8, 2.0)]
    ranked = rank_textures(patterns, list(UNIT_SQUARE_10))
    assert ranked[-1].index == 2
    assert ranked[-1].score < ranked[0].score


def test_rank_single_pattern():
    ranked = rank_textures([Hatch(0.0, 2.0)], list(UNIT_SQUARE_10))
    assert len(ranked) == 1


def test_rank_simple_icon_over_complex():
    simple = Icon(lookup_icon("olive"), 4.0, 6.0, "olive")
    complex_ = Icon(lookup_icon("corn"), 4.0, 6.0, "corn")
    ranked = rank_textures([complex_, simple], list(UNIT_SQUARE_10))
    assert ranked[0].name == "olive"
    assert ranked[0].score > ranked[1].score


def test_scatter_penalty_monotone_in_dot_spacing():
    """More dots (smaller spacing) never improves the scatter penalty."""
    def scatter_fraction(spacing):
        scene, plan = texture_plan(Dots(0.8, spacing))
        report = lint_scene(scene, plan)
        scattered = sum(1 for f in report.findings if f.code == SCATTERED)
        blocks = len(plan.blocks)
        return scattered / blocks if blocks else 0.0

    fracs = [scatter_fraction(s) for s in (4.0, 3.0, 2.0, 1.5, 1.0)]
    assert all(b >= a - 1e-9 for a, b in zip(fracs, fracs[1:]))


def test_thresholds_are_configurable():
    scene, plan = texture_plan(Hatch(0.0, 2.0))
    strict = LintThresholds(continuity_len_mm=100.0)
    report = lint_scene(scene, plan, strict)
    assert report.scores.continuity == 0.0
