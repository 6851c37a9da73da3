"""Minimal server-side WebSocket framing (RFC 6455, text frames only).

The event service speaks line-delimited JSON on a plain TCP socket; when the
first request line looks like an HTTP GET with an Upgrade header, the
connection is switched to WebSocket so a browser can connect to the same
port. Only what a single-page client needs is implemented: the handshake,
masked client text frames, unmasked server text frames, ping/pong, close.
"""

from __future__ import annotations

import base64
import hashlib

GUID = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11"


def accept_key(client_key: str) -> str:
    digest = hashlib.sha1((client_key + GUID).encode("ascii")).digest()
    return base64.b64encode(digest).decode("ascii")


def handshake_response(headers: dict[str, str]) -> bytes:
    key = headers.get("sec-websocket-key")
    if not key:
        raise ValueError("missing Sec-WebSocket-Key")
    return (
        "HTTP/1.1 101 Switching Protocols\r\n"
        "Upgrade: websocket\r\n"
        "Connection: Upgrade\r\n"
        f"Sec-WebSocket-Accept: {accept_key(key)}\r\n"
        "\r\n"
    ).encode("ascii")


def encode_text(payload: str) -> bytes:
    data = payload.encode("utf-8")
    n = len(data)
    if n < 126:
        header = bytes([0x81, n])
    elif n < 1 << 16:
        header = bytes([0x81, 126]) + n.to_bytes(2, "big")
    else:
        header = bytes([0x81, 127]) + n.to_bytes(8, "big")
    return header + data


def encode_close() -> bytes:
    return bytes([0x88, 0])


def encode_pong(payload: bytes = b"") -> bytes:
    return bytes([0x8A, len(payload)]) + payload


async def read_frame(reader) -> tuple[int, bytes]:
    """(opcode, payload); client frames must be masked per the RFC."""
    head = await reader.readexactly(2)
    opcode = head[0] & 0x0F
    masked = bool(head[1] & 0x80)
    length = head[1] & 0x7F
    if length == 126:
        length = int.from_bytes(await reader.readexactly(2), "big")
    elif length == 127:
        length = int.from_bytes(await reader.readexactly(8), "big")
    if masked:
        mask = await reader.readexactly(4)
        raw = bytearray(await reader.readexactly(length))
        for i in range(length):
            raw[i] ^= mask[i % 4]
        return opcode, bytes(raw)
    return opcode, await reader.readexactly(length)
