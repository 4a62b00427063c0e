/** Boots the real cultivation service for end-to-end tests. */

import { spawn, spawnSync, type ChildProcess } from 'node:child_process';
import { copyFileSync, mkdtempSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join, resolve } from 'node:path';
import { fileURLToPath } from 'node:url';

const REPO_ROOT = resolve(fileURLToPath(new URL('.', import.meta.url)), '../..');
export const FIXTURE_JOURNAL = join(REPO_ROOT, 'fixtures', 'gas-fumes.wscm');

export interface RunningService {
  baseUrl: string;
  journalPath: string;
  stop(): void;
}

function freshDir(): string {
  return mkdtempSync(join(tmpdir(), 'wscm-ui-'));
}

/** Run one CLI command to completion, throwing on a non-zero exit. */
export function cli(...args: string[]): void {
  const run = spawnSync('python3', ['-m', 'wscm.cli', ...args], { encoding: 'utf-8' });
  if (run.status !== 0) {
    throw new Error(`wscm ${args.join(' ')} exited ${run.status}: ${run.stderr}`);
  }
}

async function waitUntilUp(baseUrl: string, child: ChildProcess): Promise<void> {
  const deadline = Date.now() + 20000;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    if (child.exitCode !== null) {
      throw new Error(`service exited early with code ${child.exitCode}`);
    }
    try {
      const response = await fetch(`${baseUrl}/signals`);
      if (response.ok) return;
    } catch (err) {
      lastError = err;
    }
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error(`service never came up at ${baseUrl}: ${lastError}`);
}

/** Serve `journal` (a fresh one when omitted) on a random local port. */
export async function startService(journal?: string): Promise<RunningService> {
  const dir = freshDir();
  const journalPath = join(dir, 'journal.wscm');
  if (journal) {
    copyFileSync(journal, journalPath);
  } else {
    cli('--journal', journalPath, 'init');
  }
  const port = 9100 + Math.floor(Math.random() * 800);
  const child = spawn(
    'python3',
    ['-m', 'wscm.cli', '--journal', journalPath, 'serve', '--port', String(port)],
    { stdio: ['ignore', 'ignore', 'pipe'] },
  );
  let stderr = '';
  child.stderr?.on('data', (chunk: Buffer) => {
    stderr += chunk.toString();
  });
  const baseUrl = `http://127.0.0.1:${port}`;
  try {
    await waitUntilUp(baseUrl, child);
  } catch (err) {
    child.kill('SIGTERM');
    throw new Error(`${err}\nservice stderr:\n${stderr}`);
  }
  return {
    baseUrl,
    journalPath,
    stop: () => {
      child.kill('SIGTERM');
    },
  };
}

/** Deterministic little generator so e2e runs are reproducible. */
export class Lcg {
  private state: number;

  constructor(seed: number) {
    this.state = seed >>> 0;
  }

  next(): number {
    // numerical recipes LCG constants
    this.state = (Math.imul(this.state, 1664525) + 1013904223) >>> 0;
    return this.state / 2 ** 32;
  }

  int(lo: number, hi: number): number {
    return lo + Math.floor(this.next() * (hi - lo + 1));
  }
}
