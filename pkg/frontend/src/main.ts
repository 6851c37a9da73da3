// Browser entry: connect to the service (?server=host:port), fold messages
// into UI state, repaint on change. Keyboard: d toggles the debug gaze
// cursor, c restarts calibration, e starts an experiment run.

import { ServiceClient } from './client.js';
import { DEFAULT_OPTIONS, layoutScene } from './scene.js';
import { paint } from './render.js';
import { initialState, onMessage } from './state.js';
import type { UiState } from './state.js';

function main(): void {
  const canvas = document.getElementById('kiosk') as HTMLCanvasElement;
  const ctx = canvas.getContext('2d');
  if (!ctx) {
    throw new Error('canvas 2d context unavailable');
  }

  const params = new URLSearchParams(window.location.search);
  const address = params.get('server') ?? '127.0.0.1:8876';

  let state: UiState = initialState();
  let showGaze = false;

  const repaint = () => {
    const opts = {
      ...DEFAULT_OPTIONS,
      width: canvas.width,
      height: canvas.height,
      showGaze,
    };
    paint(ctx, layoutScene(state, opts), canvas.width, canvas.height);
  };

  const resize = () => {
    canvas.width = window.innerWidth;
    canvas.height = window.innerHeight;
    repaint();
  };
  window.addEventListener('resize', resize);

  const client = ServiceClient.connect(
    address,
    (msg) => {
      state = onMessage(state, msg);
      repaint();
    },
    () => {
      state = { ...state, lastError: 'disconnected' };
      repaint();
    },
  );

  window.addEventListener('keydown', (ev) => {
    if (ev.key === 'd') {
      showGaze = !showGaze;
      repaint();
    } else if (ev.key === 'c') {
      client.startCalibration();
    } else if (ev.key === 'e') {
      client.startExperiment();
    }
  });

  resize();
}

main();
