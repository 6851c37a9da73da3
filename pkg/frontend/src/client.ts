// WebSocket client. The UI only ever sends control messages; gaze data flows
// one way, from the service to the screen.

import type { ControlMessage, ServerMessage } from './protocol.js';
import { parseMessage } from './protocol.js';

export interface SocketLike {
  send(data: string): void;
  close(): void;
}

export class ServiceClient {
  private socket: SocketLike;
  readonly sent: ControlMessage[] = [];

  constructor(socket: SocketLike) {
    this.socket = socket;
  }

  static connect(address: string, onMessage: (msg: ServerMessage) => void, onClose: () => void): ServiceClient {
    const ws = new WebSocket(`ws://${address}`);
    const client = new ServiceClient(ws);
    ws.onopen = () => {
      client.send({ type: 'hello' });
      client.send({ type: 'start' });
    };
    ws.onmessage = (ev) => {
      const msg = parseMessage(String(ev.data));
      if (msg) {
        onMessage(msg);
      } else {
        console.info('dropping malformed message');
      }
    };
    ws.onclose = onClose;
    return client;
  }

  send(msg: ControlMessage): void {
    this.sent.push(msg);
    this.socket.send(JSON.stringify(msg));
  }

  startCalibration(): void {
    this.send({ type: 'start_calibration' });
  }

  setCondition(dwellMs?: number, areaPreset?: string): void {
    this.send({ type: 'set_condition', dwell_ms: dwellMs, area_preset: areaPreset });
  }

  startExperiment(targets?: string[]): void {
    this.send({ type: 'start_experiment', targets });
  }

  stop(): void {
    this.send({ type: 'stop' });
    this.socket.close();
  }
}
