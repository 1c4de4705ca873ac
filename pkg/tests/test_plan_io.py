import random

import pytest

from chart2stitch.errors import ChartSyntaxError
from chart2stitch.plan import (JUMP, TRIM, PlannerParams, Stitch, StitchBlock,
                               StitchPlan, read_native_plan, write_native_plan)

from conftest import random_feasible_plan


def test_native_round_trip_random_plans():
    rng = random.Random(99)
    for _ in range(40):
        plan = random_feasible_plan(rng)
        back = read_native_plan(write_native_plan(plan))
        assert back == plan
        assert len(back.blocks) == len(plan.blocks)
        for a, b in zip(back.blocks, plan.blocks):
            assert a.stitches == b.stitches
            assert a.role == b.role
            assert a.label == b.label
        assert back.metadata.name == plan.metadata.name
        assert back.metadata.stitch_count == plan.metadata.stitch_count
        assert back.metadata.bounds_units == plan.metadata.bounds_units


def test_native_empty_plan():
    plan = StitchPlan()
    plan.recompute_metadata(name="empty")
    text = write_native_plan(plan)
    back = read_native_plan(text)
    assert back.blocks == []
    assert back.metadata.stitch_count == 0


def test_native_preserves_trim_positions():
    plan = StitchPlan([
        StitchBlock([Stitch(5, 5), Stitch(25, 5)], role="outline", label="a"),
        StitchBlock([Stitch(25, 5, TRIM), Stitch(120, 5, JUMP), Stitch(130, 5)],
                    role="outline", label="b"),
    ])
    plan.recompute_metadata(name="trims")
    back = read_native_plan(write_native_plan(plan))
    kinds = [s.kind for s in back.records()]
    assert kinds == ["normal", "normal", "trim", "jump", "normal"]


def test_native_is_line_oriented(family_pipeline):
    import re
    _, _, _, plan = family_pipeline
    text = write_native_plan(plan)
    # one stitch per line keeps plans diffable
    stitch_line = re.compile(r'^\s*"-?\d+ -?\d+ [njt]",?$')
    count = sum(1 for l in text.splitlines() if stitch_line.match(l))
    assert count == plan.metadata.stitch_count


def test_native_rejects_bad_documents():
    with pytest.raises(ChartSyntaxError):
        read_native_plan("not json")
    with pytest.raises(ChartSyntaxError):
        read_native_plan('{"format_version": 99, "blocks": []}')
    with pytest.raises(ChartSyntaxError):
        read_native_plan('{"format_version": 1, "blocks": [{"stitches": ["x"]}]}')


def test_planner_params_validation():
    with pytest.raises(ValueError):
        PlannerParams(min_stitch_mm=0.0)
    with pytest.raises(ValueError):
        PlannerParams(max_stitch_mm=15.0)
    with pytest.raises(ValueError):
        PlannerParams(min_stitch_mm=5.0, max_stitch_mm=4.0)


def test_plan_validate_catches_violations():
    bad = StitchPlan([StitchBlock([Stitch(0, 0), Stitch(200, 0)])])
    with pytest.raises(ValueError):
        bad.validate()
    trim_first = StitchPlan([StitchBlock([Stitch(0, 0, TRIM)])])
    with pytest.raises(ValueError):
        trim_first.validate()
    moving_trim = StitchPlan([StitchBlock([Stitch(0, 0), Stitch(5, 5, TRIM)])])
    with pytest.raises(ValueError):
        moving_trim.validate()
