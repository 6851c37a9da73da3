import { describe, expect, it } from 'vitest';

import { DEFAULT_OPTIONS, layoutScene } from '../src/scene.js';
import { foldLog, initialState, onMessage } from '../src/state.js';
import { loadLog } from './helpers.js';

function stateAfter(name: string, count: number) {
  const log = loadLog(name).slice(0, count);
  return foldLog(log);
}

function stateAtScreen(name: string, kind: string) {
  let state = initialState();
  for (const msg of loadLog(name)) {
    state = onMessage(state, msg);
    if (state.screen.kind === kind) return state;
  }
  throw new Error(`screen ${kind} never reached in ${name}`);
}

describe('scene layout', () => {
  it('cluster screen shows four arrows and twelve icons', () => {
    const state = stateAtScreen('log_select.jsonl', 'cluster');
    const nodes = layoutScene(state);
    expect(nodes.filter((n) => n.kind === 'arrow')).toHaveLength(4);
    // 12 catalog icons plus the semi-transparent experiment target
    const icons = nodes.filter((n) => n.kind === 'icon');
    expect(icons.filter((n) => n.kind === 'icon' && n.alpha === 1)).toHaveLength(12);
    expect(icons.filter((n) => n.kind === 'icon' && n.alpha < 1)).toHaveLength(1);
  });

  it('item screen shows three items plus the back button on top', () => {
    const state = stateAtScreen('log_select.jsonl', 'item');
    const nodes = layoutScene(state);
    expect(nodes.filter((n) => n.kind === 'arrow')).toHaveLength(3);
    expect(nodes.filter((n) => n.kind === 'icon' && n.alpha === 1)).toHaveLength(3);
    const back = nodes.find((n) => n.kind === 'back');
    expect(back).toBeDefined();
    if (back && back.kind === 'back') {
      expect(back.y).toBeLessThan(DEFAULT_OPTIONS.height / 2);
    }
  });

  it('no rings are drawn without focus', () => {
    const state = stateAtScreen('log_select.jsonl', 'cluster');
    expect(state.focus).toBeNull();
    expect(layoutScene(state).filter((n) => n.kind === 'ring')).toHaveLength(0);
  });

  it('focus draws a gray ring with the dwell progress fraction', () => {
    const log = loadLog('log_select.jsonl');
    let state = initialState();
    for (const msg of log) {
      state = onMessage(state, msg);
      if (msg.type === 'focus' && msg.elapsed_ms === 500) break;
    }
    const ring = layoutScene(state).find((n) => n.kind === 'ring');
    expect(ring).toBeDefined();
    if (ring && ring.kind === 'ring') {
      expect(ring.color).toBe('gray');
      expect(ring.progress).toBeCloseTo(0.5);
    }
  });

  it('confirmation draws a full red ring', () => {
    const log = loadLog('log_select.jsonl');
    let state = initialState();
    for (const msg of log) {
      state = onMessage(state, msg);
      if (msg.type === 'confirmed') break;
    }
    const ring = layoutScene(state).find((n) => n.kind === 'ring');
    expect(ring).toBeDefined();
    if (ring && ring.kind === 'ring') {
      expect(ring.color).toBe('red');
      expect(ring.progress).toBe(1);
    }
  });

  it('calibration screen draws the dot at the target point', () => {
    const state = stateAfter('log_select.jsonl', 2); // started + red point
    const nodes = layoutScene(state);
    const dot = nodes.find((n) => n.kind === 'dot');
    expect(dot).toBeDefined();
    if (dot && dot.kind === 'dot') {
      expect(dot.color).toBe('red');
      expect(dot.x).toBe(DEFAULT_OPTIONS.width / 2);
      expect(dot.y).toBe(DEFAULT_OPTIONS.height / 2);
    }
  });

  it('gaze cursor is hidden unless the debug overlay is on', () => {
    const state = foldLog(loadLog('log_tracking_loss.jsonl'));
    expect(layoutScene(state).filter((n) => n.kind === 'cursor')).toHaveLength(0);
    const debug = layoutScene(state, { ...DEFAULT_OPTIONS, showGaze: true });
    expect(debug.filter((n) => n.kind === 'cursor')).toHaveLength(1);
  });
});
