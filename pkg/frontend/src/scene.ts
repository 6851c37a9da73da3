// Pure projection of UiState into drawable nodes. Keeping layout separate
// from canvas painting makes the visual structure testable in node.

import type { Direction, StageSlot } from './protocol.js';
import type { UiState } from './state.js';

export interface SceneOptions {
  width: number;
  height: number;
  // central rectangle extents as screen fractions (mirrors the server's area)
  areaW: number;
  areaL: number;
  showGaze: boolean;
}

export const DEFAULT_OPTIONS: SceneOptions = {
  width: 1920,
  height: 1080,
  areaW: 0.2,
  areaL: 0.12,
  showGaze: false,
};

export type SceneNode =
  | { kind: 'dot'; x: number; y: number; color: 'red' | 'green' }
  | { kind: 'arrow'; direction: Direction; x: number; y: number }
  | { kind: 'ring'; direction: Direction; x: number; y: number; color: 'gray' | 'red'; progress: number }
  | { kind: 'icon'; id: string; label: string; x: number; y: number; alpha: number }
  | { kind: 'back'; x: number; y: number }
  | { kind: 'cursor'; x: number; y: number }
  | { kind: 'banner'; text: string };

export function arrowPosition(direction: Direction, opts: SceneOptions): { x: number; y: number } {
  const cx = opts.width / 2;
  const cy = opts.height / 2;
  // arrows sit outside the central rectangle, halfway to the screen edge
  const halfW = (opts.areaW * opts.width) / 2;
  const halfL = (opts.areaL * opts.height) / 2;
  switch (direction) {
    case 'left':
      return { x: (cx - halfW) / 2, y: cy };
    case 'right':
      return { x: cx + halfW + (opts.width - cx - halfW) / 2, y: cy };
    case 'up':
      return { x: cx, y: (cy - halfL) / 2 };
    case 'down':
      return { x: cx, y: cy + halfL + (opts.height - cy - halfL) / 2 };
  }
}

const DIRECTIONS: Direction[] = ['up', 'down', 'left', 'right'];

function slotNodes(direction: Direction, slot: StageSlot, opts: SceneOptions): SceneNode[] {
  const pos = arrowPosition(direction, opts);
  const nodes: SceneNode[] = [];
  if (slot.kind === 'back') {
    nodes.push({ kind: 'back', x: pos.x, y: pos.y });
    return nodes;
  }
  nodes.push({ kind: 'arrow', direction, x: pos.x, y: pos.y });
  if (slot.kind === 'item') {
    nodes.push({ kind: 'icon', id: slot.item.id, label: slot.item.name, x: pos.x, y: pos.y - 70, alpha: 1 });
  } else {
    slot.items.forEach((item, i) => {
      const offset = (i - 1) * 90;
      const horizontal = direction === 'up' || direction === 'down';
      nodes.push({
        kind: 'icon',
        id: item.id,
        label: item.name,
        x: pos.x + (horizontal ? offset : 0),
        y: pos.y - 70 + (horizontal ? 0 : offset),
        alpha: 1,
      });
    });
  }
  return nodes;
}

export function layoutScene(state: UiState, opts: SceneOptions = DEFAULT_OPTIONS): SceneNode[] {
  const nodes: SceneNode[] = [];
  const screen = state.screen;

  if (screen.kind === 'connecting') {
    nodes.push({ kind: 'banner', text: 'connecting to gaze service...' });
    return nodes;
  }
  if (screen.kind === 'calibrating') {
    const x = (screen.x / 1920) * opts.width;
    const y = (screen.y / 1080) * opts.height;
    nodes.push({ kind: 'dot', x, y, color: screen.dot });
    if (screen.failed) {
      nodes.push({ kind: 'banner', text: 'calibration failed, retrying...' });
    }
    return nodes;
  }
  if (screen.kind === 'result') {
    nodes.push({ kind: 'icon', id: screen.itemId, label: screen.itemId, x: opts.width / 2, y: opts.height / 2, alpha: 1 });
    nodes.push({ kind: 'banner', text: 'selected' });
    return nodes;
  }

  for (const direction of DIRECTIONS) {
    const slot = screen.layout.slots[direction];
    if (slot) {
      nodes.push(...slotNodes(direction, slot, opts));
    }
  }
  if (state.target) {
    // experiment target shown semi-transparent in the central area
    nodes.push({ kind: 'icon', id: state.target, label: state.target, x: opts.width / 2, y: opts.height / 2, alpha: 0.4 });
  }
  if (state.focus) {
    const pos = arrowPosition(state.focus.direction, opts);
    const confirmed = state.confirmedFlash === state.focus.direction;
    nodes.push({
      kind: 'ring',
      direction: state.focus.direction,
      x: pos.x,
      y: pos.y,
      color: confirmed ? 'red' : 'gray',
      progress: state.focus.progress,
    });
  }
  if (opts.showGaze && state.gaze) {
    nodes.push({
      kind: 'cursor',
      x: (state.gaze.x / 1920) * opts.width,
      y: (state.gaze.y / 1080) * opts.height,
    });
  }
  if (state.trackingLost) {
    nodes.push({ kind: 'banner', text: 'tracking lost' });
  }
  if (state.degraded) {
    nodes.push({ kind: 'banner', text: 'camera rate degraded' });
  }
  return nodes;
}
