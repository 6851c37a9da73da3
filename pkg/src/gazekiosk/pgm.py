"""Binary PGM (P5) read/write plus the frame-directory index format.

The frame corpus on disk is a directory of P5 files and an index.json
mapping filename -> timestamp in milliseconds.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np


def read_pgm(path: str | Path) -> np.ndarray:
    data = Path(path).read_bytes()
    if not data.startswith(b"P5"):
        raise ValueError(f"{path}: not a binary PGM (P5) file")
    # header tokens: magic, width, height, maxval; '#' starts a comment line
    tokens: list[bytes] = []
    pos = 2
    while len(tokens) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        tokens.append(data[start:pos])
    pos += 1  # single whitespace byte after maxval
    width, height, maxval = (int(t) for t in tokens)
    if maxval > 255:
        raise ValueError(f"{path}: 16-bit PGM not supported")
    pixels = np.frombuffer(data, dtype=np.uint8, count=width * height, offset=pos)
    if pixels.size != width * height:
        raise ValueError(f"{path}: truncated pixel data")
    return pixels.reshape(height, width).copy()


def write_pgm(path: str | Path, image: np.ndarray) -> None:
    if image.ndim != 2 or image.dtype != np.uint8:
        raise ValueError("expected a 2-D uint8 image")
    h, w = image.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    Path(path).write_bytes(header + image.tobytes())


def read_frame_index(path: str | Path) -> list[tuple[str, int]]:
    """Returns (filename, t_ms) pairs sorted by timestamp, strictly increasing."""
    mapping = json.loads(Path(path).read_text())
    entries = sorted(((str(name), int(t)) for name, t in mapping.items()), key=lambda e: e[1])
    for (_, a), (_, b) in zip(entries, entries[1:]):
        if b <= a:
            raise ValueError(f"{path}: timestamps must strictly increase")
    return entries


def write_frame_index(path: str | Path, entries: dict[str, int]) -> None:
    Path(path).write_text(json.dumps(entries, indent=2, sort_keys=True))
