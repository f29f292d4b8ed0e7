// @vitest-environment jsdom
//
// Drives the real steering service end to end: the Egyptian -> Levantine
// what-if loop on the market sentence, then the service-down error state.
// Spawns `forge serve` when no service is already listening; skips when
// neither is possible (e.g. the Python side is not installed).
import { type ChildProcess, spawn } from 'node:child_process';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { mountApp } from '../src/app.js';

const PORT = 8091;
const BASE = process.env.FORGE_SERVICE_URL ?? `http://127.0.0.1:${PORT}`;

let serviceProcess: ChildProcess | null = null;
let serviceUp = false;

async function healthy(base: string): Promise<boolean> {
  try {
    const response = await fetch(`${base}/healthz`);
    return response.ok;
  } catch {
    return false;
  }
}

beforeAll(async () => {
  if (await healthy(BASE)) {
    serviceUp = true;
    return;
  }
  serviceProcess = spawn('forge', ['serve', '--port', String(PORT)],
    { stdio: 'ignore' });
  serviceProcess.on('error', () => { serviceProcess = null; });
  for (let attempt = 0; attempt < 40; attempt += 1) {
    await new Promise((resolve) => setTimeout(resolve, 250));
    if (await healthy(BASE)) {
      serviceUp = true;
      return;
    }
  }
}, 15_000);

afterAll(() => {
  serviceProcess?.kill();
});

describe('live service loop', () => {
  it('highlights عايز for Egyptian then بدي for Levantine without reload', async (ctx) => {
    if (!serviceUp) return ctx.skip();
    const root = document.createElement('div');
    document.body.append(root);
    const app = await mountApp(root, BASE);
    expect(Array.from(app.regionSelect.options)).toHaveLength(9);

    // the service dialectalizes the Arabic side; use the MSA market sentence
    app.input.value = 'أريد أن أذهب إلى السوق';
    app.regionSelect.value = 'Egyptian';
    await app.submit();
    const egyptian = Array.from(root.querySelectorAll('mark.sub'))
      .map((m) => m.textContent ?? '');
    expect(egyptian.some((t) => t.startsWith('عايز'))).toBe(true);

    app.regionSelect.value = 'Levantine-North';
    await app.submit();
    const levantine = Array.from(root.querySelectorAll('mark.sub'))
      .map((m) => m.textContent ?? '');
    expect(levantine).toContain('بدي');
    expect(app.badge.textContent).toBe('authenticity 5/5');
  });

  it('shows the inline error when the service is down', async () => {
    const root = document.createElement('div');
    const app = await mountApp(root, 'http://127.0.0.1:1');
    app.input.value = 'x';
    await app.submit();
    expect(app.errorPane.classList.contains('hidden')).toBe(false);
  });
});
