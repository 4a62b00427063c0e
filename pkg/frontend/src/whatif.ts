/** What-if panel: dry-run a session against the live service and stage the
 * exact payload for commit.
 *
 * The comparison lines (position delta, region change, distance to the
 * escalation frontier, band shift) are assembled from two service-computed
 * points; the panel does no model arithmetic of its own. Committing replays
 * the very payload object the preview sent, so what was shown is what gets
 * recorded.
 */

import { SMS_RADIUS } from './geometry.js';
import { fmt2, fmtDelta, fmtPosition } from './format.js';
import type { CommitteePayload, SessionPoint, SignalDetail } from './types.js';

export const NOT_RECORDED_MARKER = 'preview only: this is not recorded';

/** The two service calls the panel needs; ApiClient satisfies it. */
export interface SessionGateway {
  preview(ref: string, payload: CommitteePayload | { date: string }): Promise<SessionPoint>;
  assess(ref: string, payload: CommitteePayload): Promise<SessionPoint>;
}

export interface WhatIfComparison {
  current: SessionPoint | null;
  preview: SessionPoint;
  lines: string[];
  /** Always shown beside a preview so nobody mistakes it for a session. */
  marker: string;
}

export class WhatIfPanel {
  private staged: { ref: string; payload: CommitteePayload; point: SessionPoint } | null = null;

  constructor(private readonly api: SessionGateway) {}

  get stagedPoint(): SessionPoint | null {
    return this.staged?.point ?? null;
  }

  /** Preview a committee session for `signal` and stage it for commit. */
  async preview(signal: SignalDetail, payload: CommitteePayload): Promise<WhatIfComparison> {
    const point = await this.api.preview(signal.id, payload);
    this.staged = { ref: signal.id, payload, point };
    const current = signal.locus[signal.locus.length - 1] ?? null;

    const lines: string[] = [];
    lines.push(`would move to ${fmtPosition(point.position)} in ${point.region}`);
    if (current) {
      lines.push(
        `shift ${fmtDelta(point.position.x - current.position.x)} intensity, ` +
        `${fmtDelta(point.position.y - current.position.y)} growth`,
      );
      if (current.region !== point.region) {
        lines.push(`region change: ${current.region} -> ${point.region}`);
      }
    }
    lines.push(
      point.escalation_flag
        ? `d = ${fmt2(point.d)} is past the escalation frontier (${fmt2(SMS_RADIUS)})`
        : `d = ${fmt2(point.d)} of ${fmt2(SMS_RADIUS)} to the escalation frontier`,
    );
    if (current) {
      const currentBand = bandOf(signal, current.severity);
      if (currentBand && currentBand !== point.severity_band) {
        lines.push(`band shift: ${currentBand} -> ${point.severity_band}`);
      } else {
        lines.push(`band holds at ${point.severity_band}`);
      }
      lines.push(`S ${fmt2(current.severity)} -> ${fmt2(point.severity)}`);
    }

    return {
      current: current as SessionPoint | null,
      preview: point,
      lines,
      marker: NOT_RECORDED_MARKER,
    };
  }

  /** Commit the staged preview by replaying its exact payload. */
  async commit(): Promise<SessionPoint> {
    if (!this.staged) {
      throw new RangeError('nothing staged; run a preview first');
    }
    const { ref, payload } = this.staged;
    const point = await this.api.assess(ref, payload);
    this.staged = null;
    return point;
  }

  discard(): void {
    this.staged = null;
  }
}

/** Current band comes from the signal summary the service sent; previews of
 * other sessions never mutate it. */
function bandOf(signal: SignalDetail, severity: number): string | null {
  return severity === signal.severity ? signal.severity_band : null;
}
