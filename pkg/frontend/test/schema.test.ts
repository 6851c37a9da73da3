// Schema coverage: every event type the service can emit has a handler.
// The manifest is generated from the service's protocol module; the mirror
// test on the service side keeps the two in sync.

import { describe, expect, it } from 'vitest';

import { HANDLERS } from '../src/state.js';
import { parseMessage } from '../src/protocol.js';
import { loadEventTypes } from './helpers.js';

describe('schema coverage', () => {
  it('covers every emitted event type', () => {
    const unhandled = loadEventTypes().filter((t) => !(t in HANDLERS));
    expect(unhandled).toEqual([]);
  });

  it('has no stale handlers for types the service never emits', () => {
    const emitted = new Set(loadEventTypes());
    const stale = Object.keys(HANDLERS).filter((t) => !emitted.has(t));
    expect(stale).toEqual([]);
  });

  it('drops malformed frames without throwing', () => {
    expect(parseMessage('{oops')).toBeNull();
    expect(parseMessage('42')).toBeNull();
    expect(parseMessage('{"no_type": 1}')).toBeNull();
    expect(parseMessage('{"type": "hello", "protocol": 1, "config": {}}')).not.toBeNull();
  });
});
