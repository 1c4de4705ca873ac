"""Tajima DST stitch file codec.

A DST file is a 512-byte ASCII header followed by 3-byte records, one per
stitch, and ends with the terminator record 0x00 0x00 0xF3. Each record
encodes a needle movement of up to +-121 units (0.1 mm) per axis as signed
magnitude bits:

    byte 0: bit0 x+1, bit1 x-1, bit2 x+9,  bit3 x-9,
            bit4 y-9, bit5 y+9, bit6 y-1,  bit7 y+1
    byte 1: bit0 x+3, bit1 x-3, bit2 x+27, bit3 x-27,
            bit4 y-27, bit5 y+27, bit6 y-3, bit7 y+3
    byte 2: bit0/bit1 always set, bit2 x+81, bit3 x-81,
            bit4 y-81, bit5 y+81, bit6 colour change, bit7 jump

The format permits redundant bit combinations for one delta; this encoder
always uses the balanced base-3 decomposition over {1, 3, 9, 27, 81},
which is unique, so encoding is canonical and decode(encode(p)) restores
the exact record stream. A trim is written as a jump record with zero
displacement (the planner never moves while trimming, and never emits a
zero-length jump otherwise, so the mapping is reversible). Colour-change
records are not modelled: plans here are monochrome by design.

Header fields: LA (16-char label), ST (stitch count, excluding the end
record), CO (colour count), +X/-X/+Y/-Y (extents from the start point),
AX/AY (end point offset), MX/MY/PD (conventional defaults), then 0x1A and
space padding to 512 bytes.
"""

from __future__ import annotations

from .errors import BadHeader, DeltaOverflow, TruncatedRecord, UnknownRecordBits
from .plan import (JUMP, MAX_DELTA_UNITS, NORMAL, TRIM, PlanMetadata, Stitch,
                   StitchBlock, StitchPlan)

HEADER_SIZE = 512
END_RECORD = b"\x00\x00\xf3"

# (byte, bit) for positive and negative digits of each magnitude
_X_BITS = {1: ((0, 0), (0, 1)), 3: ((1, 0), (1, 1)), 9: ((0, 2), (0, 3)),
           27: ((1, 2), (1, 3)), 81: ((2, 2), (2, 3))}
_Y_BITS = {1: ((0, 7), (0, 6)), 3: ((1, 7), (1, 6)), 9: ((0, 5), (0, 4)),
           27: ((1, 5), (1, 4)), 81: ((2, 5), (2, 4))}
_MAGNITUDES = (1, 3, 9, 27, 81)


def _balanced_digits(value: int) -> dict[int, int]:
    """Balanced base-3 digits {magnitude: -1|0|1}; unique for |value| <= 121."""
    if abs(value) > MAX_DELTA_UNITS:
        raise DeltaOverflow(f"delta {value} exceeds +-{MAX_DELTA_UNITS} units")
    digits = {}
    v = value
    for mag in _MAGNITUDES:
        r = ((v + 1) % 3) - 1
        digits[mag] = r
        v = (v - r) // 3
    return digits


def encode_record(dx: int, dy: int, kind: str = NORMAL) -> bytes:
    b = [0, 0, 0b00000011]
    for value, table in ((dx, _X_BITS), (dy, _Y_BITS)):
        for mag, digit in _balanced_digits(value).items():
            if digit:
                byte, bit = table[mag][0 if digit > 0 else 1]
                b[byte] |= 1 << bit
    if kind in (JUMP, TRIM):
        b[2] |= 0x80
    return bytes(b)


def decode_record(b0: int, b1: int, b2: int) -> tuple[int, int, str]:
    """(dx, dy, kind) of one record; raises on unmodelled flag bits."""
    flags = b2 & 0xC3
    if flags == 0xC3:
        raise UnknownRecordBits("colour-change record in a monochrome plan")
    if flags not in (0x03, 0x83):
        raise UnknownRecordBits(f"record flags {b2:#04x} not recognised")
    dx = dy = 0
    data = (b0, b1, b2)
    for mag in _MAGNITUDES:
        (pb, pbit), (nb, nbit) = _X_BITS[mag]
        dx += mag * ((data[pb] >> pbit & 1) - (data[nb] >> nbit & 1))
        (pb, pbit), (nb, nbit) = _Y_BITS[mag]
        dy += mag * ((data[pb] >> pbit & 1) - (data[nb] >> nbit & 1))
    if flags == 0x83:
        kind = TRIM if dx == 0 and dy == 0 else JUMP
    else:
        kind = NORMAL
    return dx, dy, kind


def _sanitize_label(name: str) -> str:
    safe = "".join(c if c.isalnum() or c in " _-" else "_" for c in name)
    return (safe or "untitled")[:16]


def _extents(records: list[Stitch]) -> tuple[int, int, int, int]:
    """(+X, -X, +Y, -Y) header extents relative to the start point."""
    xs = [s.x for s in records] or [0]
    ys = [s.y for s in records] or [0]
    return (max(0, max(xs)), max(0, -min(xs)), max(0, max(ys)), max(0, -min(ys)))


def _header(plan: StitchPlan, records: list[Stitch]) -> bytes:
    px, nx, py, ny = _extents(records)
    end_x, end_y = (records[-1].x, records[-1].y) if records else (0, 0)
    fields = [
        f"LA:{_sanitize_label(plan.metadata.name):<16}",
        f"ST:{len(records):07d}",
        "CO:001",
        f"+X:{px:05d}",
        f"-X:{nx:05d}",
        f"+Y:{py:05d}",
        f"-Y:{ny:05d}",
        f"AX:{'+' if end_x >= 0 else '-'}{abs(end_x):05d}",
        f"AY:{'+' if end_y >= 0 else '-'}{abs(end_y):05d}",
        "MX:+00000",
        "MY:+00000",
        "PD:******",
    ]
    head = "\r".join(fields).encode("ascii") + b"\r\x1a"
    return head.ljust(HEADER_SIZE, b"\x20")


def encode_dst(plan: StitchPlan) -> bytes:
    """Encode a feasible plan; deltas beyond +-121 units raise DeltaOverflow."""
    records = plan.records()
    body = bytearray()
    px, py = 0, 0
    for i, s in enumerate(records):
        dx, dy = s.x - px, s.y - py
        if s.kind == TRIM and (dx or dy):
            raise DeltaOverflow(f"record {i}: trim must not move (got {dx}, {dy})")
        body += encode_record(dx, dy, s.kind)
        px, py = s.x, s.y
    return _header(plan, records) + bytes(body) + END_RECORD


def _parse_header(raw: bytes) -> dict[str, str]:
    fields = {}
    text = raw.split(b"\x1a", 1)[0]
    for chunk in text.split(b"\r"):
        if len(chunk) >= 3 and chunk[2:3] == b":":
            try:
                key = chunk[:2].decode("ascii")
                fields[key] = chunk[3:].decode("ascii", errors="replace")
            except UnicodeDecodeError:
                continue
    return fields


def decode_dst(data: bytes) -> StitchPlan:
    """Decode a DST byte stream back into a stitch plan.

    Blocks are rebuilt by splitting the record stream before each trim;
    the original block grouping and labels are not stored in the format.
    """
    if len(data) < HEADER_SIZE:
        raise BadHeader(f"file is {len(data)} bytes; header alone needs {HEADER_SIZE}")
    if not data.startswith(b"LA:"):
        raise BadHeader("missing LA: label field at offset 0")
    fields = _parse_header(data[:HEADER_SIZE])
    try:
        declared = int(fields["ST"])
    except (KeyError, ValueError) as exc:
        raise BadHeader(f"missing or malformed ST field: {exc}") from exc

    stitches: list[Stitch] = []
    x = y = 0
    offset = HEADER_SIZE
    terminated = False
    while offset < len(data):
        chunk = data[offset:offset + 3]
        if len(chunk) < 3:
            raise TruncatedRecord(f"dangling {len(chunk)} byte(s) at offset {offset}")
        b0, b1, b2 = chunk
        if b2 == 0xF3 and b0 == 0 and b1 == 0:
            terminated = True
            break
        dx, dy, kind = decode_record(b0, b1, b2)
        x += dx
        y += dy
        stitches.append(Stitch(x, y, kind))
        offset += 3
    if not terminated:
        raise TruncatedRecord("record stream ends without the end-of-pattern record")
    if len(stitches) != declared:
        raise BadHeader(f"header declares {declared} stitches, stream holds {len(stitches)}")

    blocks: list[StitchBlock] = []
    current: list[Stitch] = []
    for s in stitches:
        if s.kind == TRIM and current:
            blocks.append(StitchBlock(current))
            current = []
        current.append(s)
    if current:
        blocks.append(StitchBlock(current))

    plan = StitchPlan(blocks, PlanMetadata(name=fields.get("LA", "").strip()))
    plan.recompute_metadata()
    return plan
