/** Committee elicitation workflow.
 *
 * Assessors score independently: entries stay hidden until every named
 * assessor has scored, then the facilitator reveals the round, the spread is
 * shown, and the session can be submitted. Validation is inline and
 * field-addressed so a form can annotate the offending input. The machine
 * never aggregates scores into coordinates; that is the service's job.
 */

import type { CommitteePayload } from './types.js';

export type ElicitationPhase = 'collecting' | 'revealed';

export interface ScoreEntry {
  assessor: string;
  x: number;
  y: number;
}

export interface FieldIssue {
  field: string;
  message: string;
}

export interface AxisSpread {
  min: number;
  max: number;
  mean: number;
}

const NRS_MIN = 0;
const NRS_MAX = 4;

function validScore(value: number): boolean {
  return Number.isInteger(value) && value >= NRS_MIN && value <= NRS_MAX;
}

export class ElicitationSession {
  readonly date: string;
  private readonly assessors: string[];
  private readonly entries = new Map<string, { x: number; y: number }>();
  private phase_: ElicitationPhase = 'collecting';
  private frequency: number | null = null;
  private notes = '';

  constructor(date: string, assessors: string[]) {
    if (!/^\d{4}-\d{2}-\d{2}$/.test(date)) {
      throw new RangeError(`session date must be YYYY-MM-DD, got "${date}"`);
    }
    const trimmed = assessors.map((a) => a.trim());
    if (trimmed.length === 0 || trimmed.some((a) => a === '')) {
      throw new RangeError('every assessor needs a non-empty name');
    }
    if (new Set(trimmed).size !== trimmed.length) {
      throw new RangeError('assessor names must be unique');
    }
    this.date = date;
    this.assessors = trimmed;
  }

  get phase(): ElicitationPhase {
    return this.phase_;
  }

  /** Names still owed a score this round. */
  get pending(): string[] {
    return this.assessors.filter((a) => !this.entries.has(a));
  }

  /** Record one assessor's private score. Allowed only before reveal. */
  record(assessor: string, x: number, y: number): FieldIssue[] {
    if (this.phase_ !== 'collecting') {
      return [{ field: 'round', message: 'round already revealed; start a new session' }];
    }
    const issues: FieldIssue[] = [];
    if (!this.assessors.includes(assessor)) {
      issues.push({ field: 'assessor', message: `"${assessor}" is not on this committee` });
    }
    if (!validScore(x)) {
      issues.push({ field: 'x', message: `intensity score must be an integer ${NRS_MIN}..${NRS_MAX}` });
    }
    if (!validScore(y)) {
      issues.push({ field: 'y', message: `growth score must be an integer ${NRS_MIN}..${NRS_MAX}` });
    }
    if (issues.length === 0) {
      this.entries.set(assessor, { x, y });
    }
    return issues;
  }

  setFrequency(f: number): FieldIssue[] {
    if (!Number.isInteger(f) || f < 0) {
      return [{ field: 'f', message: 'occurrence count must be a non-negative integer' }];
    }
    this.frequency = f;
    return [];
  }

  setNotes(notes: string): void {
    this.notes = notes;
  }

  /** Reveal the round. Until now no score is readable. */
  reveal(): FieldIssue[] {
    if (this.pending.length > 0) {
      return this.pending.map((name) => ({
        field: `assessor:${name}`,
        message: `${name} has not scored yet`,
      }));
    }
    this.phase_ = 'revealed';
    return [];
  }

  /** Scores in committee order; readable only after reveal. */
  get revealedScores(): ScoreEntry[] {
    if (this.phase_ !== 'revealed') {
      throw new RangeError('scores are hidden until the round is revealed');
    }
    return this.assessors.map((assessor) => {
      const entry = this.entries.get(assessor)!;
      return { assessor, x: entry.x, y: entry.y };
    });
  }

  /** Raw-score spread per axis, shown to the committee after reveal. */
  spread(axis: 'x' | 'y'): AxisSpread {
    const values = this.revealedScores.map((s) => s[axis]);
    const sum = values.reduce((a, b) => a + b, 0);
    return {
      min: Math.min(...values),
      max: Math.max(...values),
      mean: sum / values.length,
    };
  }

  /** Everything blocking submission, field by field. */
  validate(): FieldIssue[] {
    const issues: FieldIssue[] = [];
    if (this.phase_ !== 'revealed') {
      issues.push({ field: 'round', message: 'reveal the round before submitting' });
    }
    if (this.frequency === null) {
      issues.push({ field: 'f', message: 'occurrence count is required' });
    }
    return issues;
  }

  /** The committee payload used for both preview and commit. */
  toPayload(): CommitteePayload {
    const blockers = this.validate();
    if (blockers.length > 0) {
      throw new RangeError(blockers.map((i) => `${i.field}: ${i.message}`).join('; '));
    }
    const scores = this.revealedScores;
    return {
      date: this.date,
      scores: scores.map((s) => [s.x, s.y] as [number, number]),
      f: this.frequency!,
      ...(this.notes ? { notes: this.notes } : {}),
      assessors: scores.map((s) => s.assessor),
    };
  }
}
