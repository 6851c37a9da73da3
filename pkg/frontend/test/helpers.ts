import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import type { ServerMessage } from '../src/protocol.js';
import { parseMessage } from '../src/protocol.js';

const here = dirname(fileURLToPath(import.meta.url));

export function fixturePath(name: string): string {
  return join(here, 'fixtures', name);
}

export function loadLog(name: string): ServerMessage[] {
  const text = readFileSync(fixturePath(name), 'utf8');
  const messages: ServerMessage[] = [];
  for (const line of text.split('\n')) {
    if (!line.trim()) continue;
    const msg = parseMessage(line);
    if (!msg) throw new Error(`malformed fixture line in ${name}: ${line}`);
    messages.push(msg);
  }
  return messages;
}

export function loadEventTypes(): string[] {
  return JSON.parse(readFileSync(fixturePath('event_types.json'), 'utf8'));
}
