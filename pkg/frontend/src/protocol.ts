// Wire protocol: one JSON object per message, discriminated by `type`.
// Mirrors the event types the service emits (test/fixtures/event_types.json).

export type Direction = 'left' | 'right' | 'up' | 'down';

export interface ItemRef {
  id: string;
  name: string;
  icon: string;
}

export type StageSlot =
  | { kind: 'cluster'; items: ItemRef[] }
  | { kind: 'item'; item: ItemRef }
  | { kind: 'back' };

export interface StageLayout {
  stage: 'cluster' | 'item';
  cluster?: string;
  slots: Record<string, StageSlot>;
  target: string | null;
}

export interface HelloMsg {
  type: 'hello';
  protocol: number;
  config: Record<string, unknown>;
}
export interface ErrorMsg {
  type: 'error';
  message: string;
}
export interface EndMsg {
  type: 'end';
}
export interface CalibrationStartedMsg {
  type: 'calibration_started';
  t_ms: number;
}
export interface CalibrationPointMsg {
  type: 'calibration_point';
  t_ms: number;
  x: number;
  y: number;
  state: 'red' | 'green';
}
export interface CalibrationDoneMsg {
  type: 'calibration_done';
  t_ms: number;
  h_c: number;
  v_c: number;
}
export interface CalibrationFailedMsg {
  type: 'calibration_failed';
  t_ms: number;
  reason: string;
}
export interface FocusMsg {
  type: 'focus';
  t_ms: number;
  direction: Direction;
  elapsed_ms: number;
  threshold_ms: number;
}
export interface FocusLostMsg {
  type: 'focus_lost';
  t_ms: number;
  direction: Direction;
}
export interface ConfirmedMsg {
  type: 'confirmed';
  t_ms: number;
  direction: Direction;
}
export interface StageMsg extends StageLayout {
  type: 'stage';
  t_ms: number;
}
export interface SelectedMsg {
  type: 'selected';
  t_ms: number;
  item_id: string;
}
export interface TimeoutMsg {
  type: 'timeout';
  t_ms: number;
}
export interface TrialMsg {
  type: 'trial';
  t_ms: number;
  target: string;
  outcome: 'correct' | 'false' | 'missed';
  completion_ms: number | null;
}
export interface GazeMsg {
  type: 'gaze';
  t_ms: number;
  x_px: number;
  y_px: number;
}
export interface TrackingLostMsg {
  type: 'tracking_lost';
  t_ms: number;
}
export interface DegradedMsg {
  type: 'degraded';
  t_ms: number;
  gap_ms: number;
}

export type ServerMessage =
  | HelloMsg
  | ErrorMsg
  | EndMsg
  | CalibrationStartedMsg
  | CalibrationPointMsg
  | CalibrationDoneMsg
  | CalibrationFailedMsg
  | FocusMsg
  | FocusLostMsg
  | ConfirmedMsg
  | StageMsg
  | SelectedMsg
  | TimeoutMsg
  | TrialMsg
  | GazeMsg
  | TrackingLostMsg
  | DegradedMsg;

// Control messages are the only thing the UI ever sends: no gaze data.
export type ControlMessage =
  | { type: 'hello' }
  | { type: 'start' }
  | { type: 'start_calibration' }
  | { type: 'set_condition'; dwell_ms?: number; area_preset?: string }
  | { type: 'start_experiment'; targets?: string[] }
  | { type: 'stop' };

export function parseMessage(line: string): ServerMessage | null {
  let value: unknown;
  try {
    value = JSON.parse(line);
  } catch {
    return null;
  }
  if (typeof value !== 'object' || value === null || typeof (value as { type?: unknown }).type !== 'string') {
    return null;
  }
  return value as ServerMessage;
}
