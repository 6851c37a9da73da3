"""Realtime event service.

Three cooperating tasks: a source feeding samples, the pipeline turning them
into events, and a broadcaster fanning serialized events out to every
connected client. Clients speak line-delimited JSON over TCP; a browser can
connect to the same port via a WebSocket upgrade.

Timestamps originate at the source and flow through unchanged, so the
emitted event sequence for a ratio trace equals a headless replay of it.
"""

from __future__ import annotations

import asyncio
import contextlib
import json
import logging
from pathlib import Path
from typing import Optional

from . import wsproto
from .config import SessionConfig
from .framesource import VisionFrontend
from .pipeline import Pipeline
from .protocol import PROTOCOL_VERSION, serialize
from .ratios import GazeSample
from .traces import ratio_record, read_ratio_trace
from .vision import FrameDirSource, PlaybackProvider
from .zones import CentralArea

log = logging.getLogger(__name__)


class _Client:
    def __init__(self, writer: asyncio.StreamWriter, websocket: bool):
        self.writer = writer
        self.websocket = websocket

    def send(self, payload: str) -> None:
        if self.websocket:
            self.writer.write(wsproto.encode_text(payload))
        else:
            self.writer.write(payload.encode("utf-8") + b"\n")


class GazeService:
    def __init__(self, config: SessionConfig):
        config.validate()
        self.config = config
        self.pipeline = Pipeline(config.pipeline_config())
        self.clients: set[_Client] = set()
        self._start_requested = asyncio.Event()
        self._stopped = asyncio.Event()
        self._log_fh = None
        self._server: Optional[asyncio.base_events.Server] = None

    # ------------------------------------------------------------------ run

    async def serve(self) -> None:
        """Run until a client sends stop or the process is cancelled."""
        if self.config.log_path:
            self._log_fh = open(self.config.log_path, "w")
            self._log_line({"log": "config", **self.config.describe()})
        self._server = await asyncio.start_server(
            self._handle_client, host="127.0.0.1", port=self.config.port
        )
        source_task = asyncio.create_task(self._pump_source())
        try:
            await self._stopped.wait()
        finally:
            source_task.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await source_task
            self._server.close()
            await self._server.wait_closed()
            if self._log_fh:
                self._log_fh.close()

    def request_stop(self) -> None:
        self._stopped.set()

    # ---------------------------------------------------------------- source

    def _iter_samples(self):
        if self.config.source == "ratio-trace":
            for sample in read_ratio_trace(self.config.trace_path):
                yield sample, False
        elif self.config.source == "frame-dir":
            frontend = VisionFrontend(
                provider=PlaybackProvider(self.config.landmark_trace),
                params=self.config.segmentation,
                bounds=self.config.bounds,
                margin=self.config.crop_margin,
                swap_eyes=self.config.swap_eyes,
                mirror=self.config.mirror,
            )
            yield from frontend.run(iter(FrameDirSource(self.config.frame_dir)))
        else:  # pragma: no cover - needs hardware
            from .vision import open_camera_source

            frontend = VisionFrontend(
                provider=self._camera_provider(),
                params=self.config.segmentation,
                bounds=self.config.bounds,
                margin=self.config.crop_margin,
                swap_eyes=self.config.swap_eyes,
                mirror=self.config.mirror,
            )
            yield from frontend.run(open_camera_source(self.config.camera_index))

    def _camera_provider(self):  # pragma: no cover - optional external runtime
        try:
            import dlib  # type: ignore

            detector = dlib.get_frontal_face_detector()
            predictor = dlib.shape_predictor("shape_predictor_68_face_landmarks.dat")

            def detect(frame):
                faces = detector(frame.image)
                if not faces:
                    return None
                shape = predictor(frame.image, faces[0])
                import numpy as np

                return np.array([[shape.part(i).x, shape.part(i).y] for i in range(68)], dtype=float)

            from .vision import CallableProvider

            return CallableProvider(detect)
        except ImportError as exc:
            raise RuntimeError("camera source needs a landmark model runtime (dlib)") from exc

    async def _pump_source(self) -> None:
        await self._start_requested.wait()
        prev_t = None
        for sample, blink in self._iter_samples():
            if self.config.realtime and prev_t is not None:
                await asyncio.sleep(max(0, sample.t_ms - prev_t) / 1000.0)
            prev_t = sample.t_ms
            self._log_line({"log": "sample", **ratio_record(sample), "blink": blink})
            for event in self.pipeline.feed(sample, blink):
                self._emit(event)
            await asyncio.sleep(0)  # let client handlers breathe
        self._broadcast_raw(serialize({"type": "end"}))

    def _emit(self, event: dict) -> None:
        self._log_line({"log": "event", **event})
        self._broadcast_raw(serialize(event))

    def _broadcast_raw(self, payload: str) -> None:
        stale = []
        for client in self.clients:
            try:
                client.send(payload)
            except (ConnectionError, RuntimeError):
                stale.append(client)
        for client in stale:
            self.clients.discard(client)

    def _log_line(self, record: dict) -> None:
        if self._log_fh:
            self._log_fh.write(json.dumps(record, sort_keys=True) + "\n")

    # --------------------------------------------------------------- clients

    async def _handle_client(self, reader: asyncio.StreamReader, writer: asyncio.StreamWriter) -> None:
        client: Optional[_Client] = None
        try:
            first = await reader.readline()
            if not first:
                return
            if first.startswith(b"GET "):
                headers = await self._read_http_headers(reader)
                writer.write(wsproto.handshake_response(headers))
                await writer.drain()
                client = _Client(writer, websocket=True)
                self._register(client)
                await self._ws_loop(reader, client)
            else:
                client = _Client(writer, websocket=False)
                self._register(client)
                self._handle_control(first.decode("utf-8"), client)
                while True:
                    line = await reader.readline()
                    if not line:
                        break
                    self._handle_control(line.decode("utf-8"), client)
        except (ConnectionError, asyncio.IncompleteReadError, ValueError):
            pass
        finally:
            if client is not None:
                self.clients.discard(client)
            with contextlib.suppress(ConnectionError):
                writer.close()

    def _register(self, client: _Client) -> None:
        self.clients.add(client)
        client.send(serialize({"type": "hello", "protocol": PROTOCOL_VERSION, "config": self.config.describe()}))

    async def _read_http_headers(self, reader: asyncio.StreamReader) -> dict[str, str]:
        headers: dict[str, str] = {}
        while True:
            line = await reader.readline()
            if line in (b"\r\n", b"\n", b""):
                return headers
            name, _, value = line.decode("latin-1").partition(":")
            headers[name.strip().lower()] = value.strip()

    async def _ws_loop(self, reader: asyncio.StreamReader, client: _Client) -> None:
        while True:
            opcode, payload = await wsproto.read_frame(reader)
            if opcode == 0x8:  # close
                client.writer.write(wsproto.encode_close())
                return
            if opcode == 0x9:  # ping
                client.writer.write(wsproto.encode_pong(payload))
                continue
            if opcode == 0x1:
                self._handle_control(payload.decode("utf-8"), client)

    # --------------------------------------------------------------- control

    def _handle_control(self, raw: str, client: _Client) -> None:
        raw = raw.strip()
        if not raw:
            return
        try:
            msg = json.loads(raw)
            if not isinstance(msg, dict) or "type" not in msg:
                raise ValueError("message must be an object with a 'type' field")
        except (json.JSONDecodeError, ValueError) as exc:
            client.send(serialize({"type": "error", "message": str(exc)}))
            return
        kind = msg["type"]
        try:
            if kind == "hello":
                pass  # handshake only; registration already replied
            elif kind == "start":
                self._start_requested.set()
            elif kind == "start_calibration":
                self.pipeline.begin_calibration()
            elif kind == "set_condition":
                self._set_condition(msg)
            elif kind == "start_experiment":
                targets = msg.get("targets") or list(self.pipeline.config.catalog.item_ids())
                for event in self.pipeline.start_experiment(tuple(targets)):
                    self._emit(event)
            elif kind == "stop":
                self.request_stop()
            else:
                raise ValueError(f"unknown control type {kind!r}")
        except (ValueError, KeyError) as exc:
            client.send(serialize({"type": "error", "message": str(exc)}))

    def _set_condition(self, msg: dict) -> None:
        dwell_ms = msg.get("dwell_ms")
        if dwell_ms is not None:
            dwell_ms = int(dwell_ms)
            if dwell_ms <= 0:
                raise ValueError("dwell_ms must be positive")
        area = None
        if "area_preset" in msg:
            area = CentralArea.preset(msg["area_preset"])
        elif "area_w" in msg or "area_l" in msg:
            area = CentralArea(w=float(msg["area_w"]), l=float(msg["area_l"]))
        self.pipeline.set_condition(dwell_ms=dwell_ms, area=area)
