// UI state as a pure fold over the server's message stream. All timing and
// selection decisions live server-side; this module only visualizes them.

import type { Direction, ServerMessage, StageLayout } from './protocol.js';

export type Screen =
  | { kind: 'connecting' }
  | { kind: 'calibrating'; dot: 'red' | 'green'; x: number; y: number; failed: boolean }
  | { kind: 'cluster'; layout: StageLayout }
  | { kind: 'item'; layout: StageLayout }
  | { kind: 'result'; itemId: string };

export interface FocusRing {
  direction: Direction;
  progress: number; // 0..1 fraction of the dwell threshold
}

export interface TrialEntry {
  target: string;
  outcome: 'correct' | 'false' | 'missed';
}

export interface UiState {
  screen: Screen;
  lastStage: StageLayout | null;
  focus: FocusRing | null;
  confirmedFlash: Direction | null; // full red ring, cleared by the next stage
  confirmedCount: number; // exactly one increment per confirmed event
  target: string | null; // experiment target, drawn semi-transparent
  profile: { h_c: number; v_c: number } | null;
  gaze: { x: number; y: number } | null; // debug overlay cursor
  trackingLost: boolean;
  degraded: boolean;
  trials: TrialEntry[];
  lastError: string | null;
  sessionEnded: boolean;
  unknownTypes: string[];
}

export function initialState(): UiState {
  return {
    screen: { kind: 'connecting' },
    lastStage: null,
    focus: null,
    confirmedFlash: null,
    confirmedCount: 0,
    target: null,
    profile: null,
    gaze: null,
    trackingLost: false,
    degraded: false,
    trials: [],
    lastError: null,
    sessionEnded: false,
    unknownTypes: [],
  };
}

function stageScreen(layout: StageLayout): Screen {
  return layout.stage === 'cluster' ? { kind: 'cluster', layout } : { kind: 'item', layout };
}

// A result screen stays up until the user interacts again; interaction
// events materialize the layout the server already announced.
function leaveResult(state: UiState): UiState {
  if (state.screen.kind === 'result' && state.lastStage) {
    return { ...state, screen: stageScreen(state.lastStage) };
  }
  return state;
}

type Handler = (state: UiState, msg: never) => UiState;

export const HANDLERS: Record<ServerMessage['type'], Handler> = {
  hello: (state) => ({ ...state }),
  error: (state: UiState, msg: { message: string }) => ({ ...state, lastError: msg.message }),
  end: (state) => ({ ...state, sessionEnded: true }),

  calibration_started: (state) => ({
    ...state,
    focus: null,
    confirmedFlash: null,
    screen: { kind: 'calibrating', dot: 'red', x: 960, y: 540, failed: false },
  }),
  calibration_point: (state: UiState, msg: { x: number; y: number; state: 'red' | 'green' }) => ({
    ...state,
    screen: { kind: 'calibrating', dot: msg.state, x: msg.x, y: msg.y, failed: false },
  }),
  calibration_done: (state: UiState, msg: { h_c: number; v_c: number }) => ({
    ...state,
    profile: { h_c: msg.h_c, v_c: msg.v_c },
  }),
  calibration_failed: (state: UiState, msg: { reason: string }) => ({
    ...state,
    lastError: msg.reason,
    screen:
      state.screen.kind === 'calibrating'
        ? { ...state.screen, failed: true }
        : state.screen,
  }),

  focus: (state: UiState, msg: { direction: Direction; elapsed_ms: number; threshold_ms: number }) => ({
    ...leaveResult(state),
    focus: {
      direction: msg.direction,
      progress: Math.min(1, Math.max(0, msg.elapsed_ms / msg.threshold_ms)),
    },
    trackingLost: false,
  }),
  focus_lost: (state) => ({ ...state, focus: null }),
  confirmed: (state: UiState, msg: { direction: Direction }) => ({
    ...state,
    focus: { direction: msg.direction, progress: 1 },
    confirmedFlash: msg.direction,
    confirmedCount: state.confirmedCount + 1,
    trackingLost: false,
  }),

  stage: (state: UiState, msg: StageLayout) => {
    const layout: StageLayout = {
      stage: msg.stage,
      cluster: msg.cluster,
      slots: msg.slots,
      target: msg.target,
    };
    return {
      ...state,
      lastStage: layout,
      target: msg.target ?? null,
      focus: null,
      confirmedFlash: null,
      screen: state.screen.kind === 'result' ? state.screen : stageScreen(layout),
    };
  },
  selected: (state: UiState, msg: { item_id: string }) => ({
    ...state,
    screen: { kind: 'result', itemId: msg.item_id },
  }),
  timeout: (state) => ({ ...leaveResult(state), focus: null }),
  trial: (state: UiState, msg: { target: string; outcome: TrialEntry['outcome'] }) => ({
    ...state,
    trials: [...state.trials, { target: msg.target, outcome: msg.outcome }],
  }),

  gaze: (state: UiState, msg: { x_px: number; y_px: number }) => ({
    ...state,
    gaze: { x: msg.x_px, y: msg.y_px },
    trackingLost: false,
  }),
  tracking_lost: (state) => ({ ...state, trackingLost: true, focus: null }),
  degraded: (state) => ({ ...state, degraded: true }),
};

export function onMessage(state: UiState, msg: ServerMessage): UiState {
  const handler = HANDLERS[msg.type];
  if (!handler) {
    // unknown types are noted and otherwise ignored: forward compatibility
    console.info(`ignoring unknown message type: ${(msg as { type: string }).type}`);
    return { ...state, unknownTypes: [...state.unknownTypes, (msg as { type: string }).type] };
  }
  return handler(state, msg as never);
}

export function foldLog(messages: ServerMessage[]): UiState {
  return messages.reduce(onMessage, initialState());
}
