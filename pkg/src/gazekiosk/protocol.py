"""Wire protocol: every message is one JSON object per line.

Events flow service -> client; control messages flow client -> service.
serialize() is the canonical byte encoding used for logs, broadcast, and
byte-for-byte replay comparisons.
"""

from __future__ import annotations

import json

PROTOCOL_VERSION = 1

# Every event type the service can emit. The UI must handle all of them.
EVENT_TYPES = (
    "hello",
    "error",
    "end",
    "calibration_started",
    "calibration_point",
    "calibration_done",
    "calibration_failed",
    "focus",
    "focus_lost",
    "confirmed",
    "stage",
    "selected",
    "timeout",
    "trial",
    "gaze",
    "tracking_lost",
    "degraded",
)

# "hello" from a client is a transport handshake: it triggers registration
# and the hello reply before any other traffic.
CONTROL_TYPES = ("hello", "start", "start_calibration", "set_condition", "start_experiment", "stop")


def serialize(event: dict) -> str:
    return json.dumps(event, sort_keys=True, separators=(",", ":"))


def parse(line: str) -> dict:
    msg = json.loads(line)
    if not isinstance(msg, dict) or "type" not in msg:
        raise ValueError("message must be an object with a 'type' field")
    return msg
