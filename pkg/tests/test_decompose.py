import json

import pytest

from chart2stitch.chart import layout_chart, parse_chart_spec
from chart2stitch.decompose import decompose
from chart2stitch.errors import UnknownTexture
from chart2stitch.geometry import lerp, point_segment_distance

from conftest import family_chart_doc


def _min_distance_to_outline(points, outline):
    best = float("inf")
    for p in points:
        for a, b in zip(outline, outline[1:]):
            best = min(best, point_segment_distance(p, a, b))
    return best


def test_hatched_bar_routes_to_texture_fills(family_pipeline):
    _, scene, decomposed, _ = family_pipeline
    assert decomposed.area_fills == []
    assert len(decomposed.texture_line_fills) == 7
    assert all(tf.primitives.polylines for tf in decomposed.texture_line_fills)
    # bar outlines, two axes, six ticks
    assert len(decomposed.outlines) == 7 + 2 + 6
    assert len(decomposed.text_elements) == 8


def test_solid_bar_routes_to_area_fill():
    doc = json.loads(family_chart_doc())
    doc["categories"][0]["texture"] = "solid"
    scene = layout_chart(parse_chart_spec(json.dumps(doc)))
    decomposed = decompose(scene)
    assert len(decomposed.area_fills) == 1
    assert decomposed.area_fills[0].source.startswith("bar:0")
    assert len(decomposed.texture_line_fills) == 6
    # the solid bar still gets an outline
    assert any(o.source.startswith("bar:0") for o in decomposed.outlines)


def test_axes_and_labels_only_scene():
    doc = json.loads(family_chart_doc())
    for cat in doc["categories"]:
        cat["value"] = 0.0
    scene = layout_chart(parse_chart_spec(json.dumps(doc)))
    decomposed = decompose(scene)
    assert decomposed.area_fills == []
    assert all(tf.primitives.is_empty() for tf in decomposed.texture_line_fills)
    assert decomposed.texture_line_fills == []  # zero bars emit no fill element
    assert decomposed.outlines
    assert decomposed.text_elements


def test_partition_covers_every_element(family_pipeline):
    _, scene, decomposed, _ = family_pipeline
    assert decomposed.element_count() == len(scene.elements)


def test_unknown_texture_at_decompose_time(family_pipeline):
    _, scene, _, _ = family_pipeline
    with pytest.raises(UnknownTexture):
        decompose(scene, textures={})


@pytest.mark.parametrize("margin", [0.3, 0.6, 1.0])
def test_texture_primitives_respect_outline_margin(margin):
    scene = layout_chart(parse_chart_spec(family_chart_doc()))
    decomposed = decompose(scene, outline_margin_mm=margin)
    outlines = {o.source: list(o.points) for o in decomposed.outlines}
    for tf in decomposed.texture_line_fills:
        outline = outlines[tf.source]
        samples = []
        for line in tf.primitives.polylines:
            for a, b in zip(line, line[1:]):
                samples.extend(lerp(a, b, t / 8.0) for t in range(9))
        for stamp in tf.primitives.stamps:
            for stroke in stamp.strokes_mm():
                samples.extend(stroke)
        if samples:
            assert _min_distance_to_outline(samples, outline) >= margin - 0.01
