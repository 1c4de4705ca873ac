import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chart2stitch.dst import (END_RECORD, HEADER_SIZE, decode_dst, encode_dst,
                              encode_record)
from chart2stitch.errors import (BadHeader, DeltaOverflow, TruncatedRecord,
                                 UnknownRecordBits)
from chart2stitch.plan import (JUMP, NORMAL, TRIM, PlanMetadata, Stitch,
                               StitchBlock, StitchPlan)

from conftest import random_feasible_plan
from oracles import (COLOR, END, JUMP_FLAG, STITCH, reference_decode_record,
                     reference_decode_stream)


def make_plan(stitches: list[Stitch], name: str = "t") -> StitchPlan:
    plan = StitchPlan([StitchBlock(list(stitches))], PlanMetadata(name=name))
    plan.recompute_metadata()
    return plan


def test_known_record_encodings():
    assert encode_record(1, 1, NORMAL) == bytes([0x81, 0x00, 0x03])
    assert encode_record(0, 0, NORMAL) == bytes([0x00, 0x00, 0x03])
    assert END_RECORD == bytes([0x00, 0x00, 0xF3])


def test_every_delta_agrees_with_reference_decoder():
    """All 243 x 243 single-stitch deltas against the table-driven oracle."""
    for dx in range(-121, 122):
        for dy in range(-121, 122):
            rec = encode_record(dx, dy, NORMAL)
            rdx, rdy, flag = reference_decode_record(rec)
            assert (rdx, rdy, flag) == (dx, dy, STITCH), (dx, dy)


def test_flag_records_agree_with_reference_decoder():
    rec = encode_record(40, -7, JUMP)
    assert reference_decode_record(rec) == (40, -7, JUMP_FLAG)
    rec = encode_record(0, 0, TRIM)      # trim rides the jump flag, zero move
    assert reference_decode_record(rec) == (0, 0, JUMP_FLAG)
    assert reference_decode_record(END_RECORD) == (0, 0, END)


def test_encoded_stream_against_reference_decoder():
    plan = make_plan([Stitch(10, 5), Stitch(10, 5, TRIM), Stitch(50, -40, JUMP),
                      Stitch(55, -40)])
    data = encode_dst(plan)
    assert reference_decode_stream(data) == [
        (10, 5, STITCH), (0, 0, JUMP_FLAG), (40, -45, JUMP_FLAG), (5, 0, STITCH)]


def test_delta_overflow():
    plan = make_plan([Stitch(0, 0), Stitch(122, 0)])
    with pytest.raises(DeltaOverflow):
        encode_dst(plan)
    with pytest.raises(DeltaOverflow):
        encode_record(150, 0)


def test_header_layout(family_pipeline):
    _, _, _, plan = family_pipeline
    data = encode_dst(plan)
    head = data[:HEADER_SIZE]
    assert head.startswith(b"LA:How much does ")
    assert head[125] == 0x20 or b"\x1a" in head
    records = plan.records()
    assert f"ST:{len(records):07d}".encode() in head
    assert b"CO:001" in head
    xs = [s.x for s in records]
    ys = [s.y for s in records]
    assert f"+X:{max(xs):05d}".encode() in head
    assert f"-X:{-min(xs):05d}".encode() in head
    assert f"+Y:{max(ys):05d}".encode() in head
    assert f"-Y:{-min(ys):05d}".encode() in head
    assert len(data) == HEADER_SIZE + 3 * len(records) + 3


def test_round_trip_family_plan(family_pipeline):
    _, _, _, plan = family_pipeline
    back = decode_dst(encode_dst(plan))
    assert back == plan
    assert back.metadata.stitch_count == plan.metadata.stitch_count
    assert back.metadata.bounds_units == plan.metadata.bounds_units
    assert back.metadata.trim_count == plan.metadata.trim_count


def test_round_trip_random_plans():
    rng = random.Random(2024)
    for _ in range(50):
        plan = random_feasible_plan(rng)
        back = decode_dst(encode_dst(plan))
        assert back == plan


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-121, 121), st.integers(-121, 121),
                          st.sampled_from([NORMAL, NORMAL, NORMAL, JUMP])),
                min_size=1, max_size=60))
def test_round_trip_property(moves):
    x = y = 0
    stitches = []
    for dx, dy, kind in moves:
        if kind == JUMP and dx == 0 and dy == 0:
            kind = NORMAL   # a zero-length jump is the trim encoding
        x += dx
        y += dy
        stitches.append(Stitch(x, y, kind))
    plan = make_plan(stitches)
    back = decode_dst(encode_dst(plan))
    assert back == plan


def test_short_file_is_bad_header():
    with pytest.raises(BadHeader):
        decode_dst(b"\x20" * 511)


def test_missing_terminator():
    plan = make_plan([Stitch(1, 1)])
    data = encode_dst(plan)
    with pytest.raises(TruncatedRecord):
        decode_dst(data[:-3])


def test_dangling_bytes():
    plan = make_plan([Stitch(1, 1)])
    data = encode_dst(plan)[:-3] + b"\x00\x00"
    with pytest.raises(TruncatedRecord):
        decode_dst(data)


def test_stitch_count_mismatch_is_bad_header():
    plan = make_plan([Stitch(1, 1), Stitch(2, 2)])
    data = bytearray(encode_dst(plan))
    pos = data.find(b"ST:")
    data[pos:pos + 10] = b"ST:0000009"
    with pytest.raises(BadHeader):
        decode_dst(bytes(data))


def test_color_change_record_rejected():
    plan = make_plan([Stitch(1, 1)])
    data = bytearray(encode_dst(plan))
    data[HEADER_SIZE + 2] |= 0xC0     # force both colour and jump bits
    with pytest.raises(UnknownRecordBits):
        decode_dst(bytes(data))


def test_decode_splits_blocks_at_trims():
    plan = StitchPlan([
        StitchBlock([Stitch(0, 0), Stitch(10, 0)]),
        StitchBlock([Stitch(10, 0, TRIM), Stitch(80, 0, JUMP), Stitch(90, 0)]),
    ])
    plan.recompute_metadata(name="two")
    back = decode_dst(encode_dst(plan))
    assert len(back.blocks) == 2
    assert back.blocks[1].stitches[0].kind == TRIM
    assert back.metadata.name == "two"


def test_balanced_ternary_reaches_every_delta():
    from chart2stitch.dst import _balanced_digits
    for v in range(-121, 122):
        digits = _balanced_digits(v)
        assert set(digits.values()) <= {-1, 0, 1}
        assert sum(mag * d for mag, d in digits.items()) == v
