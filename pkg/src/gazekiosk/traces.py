"""Line-delimited JSON traces: final-ratio samples and landmark records."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import TraceParseError
from .ratios import GazeSample


def read_ratio_trace(path: str | Path) -> list[GazeSample]:
    """Parse {"t_ms", "h", "v", "valid"} records; malformed lines raise with
    their line number."""
    samples: list[GazeSample] = []
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                valid = bool(rec["valid"])
                samples.append(
                    GazeSample(
                        t_ms=int(rec["t_ms"]),
                        h_final=float(rec["h"]) if valid else None,
                        v_final=float(rec["v"]) if valid else None,
                        valid=valid,
                    )
                )
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise TraceParseError(str(path), line_no, str(exc)) from exc
    return samples


def ratio_record(sample: GazeSample) -> dict:
    return {
        "t_ms": sample.t_ms,
        "h": round(sample.h_final, 6) if sample.h_final is not None else 0.0,
        "v": round(sample.v_final, 6) if sample.v_final is not None else 0.0,
        "valid": sample.valid,
    }


def write_ratio_trace(path: str | Path, samples) -> None:
    with open(path, "w") as fh:
        for sample in samples:
            fh.write(json.dumps(ratio_record(sample), sort_keys=True) + "\n")


def write_landmark_trace(path: str | Path, records) -> None:
    """records: iterable of (t_ms, points) with points as a 68x2 array."""
    with open(path, "w") as fh:
        for t_ms, points in records:
            rec = {"t_ms": int(t_ms), "points": [[float(x), float(y)] for x, y in points]}
            fh.write(json.dumps(rec) + "\n")
