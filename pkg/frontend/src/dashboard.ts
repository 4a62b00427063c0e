/** Severity dashboard: the S series over sessions, banded background, the
 * recommended action for the current band, and escalated signals pinned to
 * the top of the roster.
 *
 * Band boundaries are fixed product constants used purely as chart
 * background; every severity value, band verdict, and action string on
 * display is service-provided.
 */

import { fmt2 } from './format.js';
import type { BandName, LocusPoint, SignalDetail, SignalSummary } from './types.js';

/** Half-open severity bands [from, to) used to shade the chart background. */
export const BAND_SHADES: { name: BandName; from: number; to: number | null }[] = [
  { name: 'Low', from: 0.0, to: 0.5 },
  { name: 'Moderate', from: 0.5, to: 1.5 },
  { name: 'Elevated', from: 1.5, to: 2.5 },
  { name: 'Critical', from: 2.5, to: null },
];

export interface ChartLayout {
  width: number;
  height: number;
  margin: number;
}

export const DEFAULT_CHART: ChartLayout = { width: 640, height: 240, margin: 32 };

export interface SeverityChart {
  /** 1-based session index of the highest severity on the chart. */
  peakSession: number;
  svg: string;
}

/** Index of the maximum severity, resolved to its 1-based session index. */
export function peakSessionIndex(locus: LocusPoint[]): number {
  if (locus.length === 0) throw new RangeError('empty locus has no peak');
  let best = 0;
  locus.forEach((p, i) => {
    if (p.severity > locus[best]!.severity) best = i;
  });
  return locus[best]!.session_index;
}

/** Render one signal's severity series as an SVG line chart. */
export function renderSeverityChart(
  signal: SignalDetail,
  layout: ChartLayout = DEFAULT_CHART,
): SeverityChart {
  const locus = signal.locus;
  if (locus.length === 0) throw new RangeError(`${signal.name} has no sessions to chart`);
  const innerW = layout.width - 2 * layout.margin;
  const innerH = layout.height - 2 * layout.margin;
  const sMax = Math.max(3.0, ...locus.map((p) => p.severity)) * 1.05;
  const xAt = (i: number) =>
    layout.margin + (locus.length === 1 ? 0 : (i / (locus.length - 1)) * innerW);
  const yAt = (s: number) => layout.margin + innerH - (Math.min(s, sMax) / sMax) * innerH;

  const shades = BAND_SHADES.map(({ name, from, to }) => {
    const top = yAt(to === null ? sMax : Math.min(to, sMax));
    const bottom = yAt(Math.min(from, sMax));
    const h = Math.max(0, bottom - top);
    return (
      `<rect class="band band-${name.toLowerCase()}" data-band="${name}" ` +
      `x="${layout.margin}" y="${top.toFixed(2)}" width="${innerW}" height="${h.toFixed(2)}"/>`
    );
  }).join('');

  const points = locus
    .map((p, i) => `${xAt(i).toFixed(2)},${yAt(p.severity).toFixed(2)}`)
    .join(' ');

  const peak = peakSessionIndex(locus);
  const peakPoint = locus.find((p) => p.session_index === peak)!;
  const peakIdx = locus.indexOf(peakPoint);
  const marker =
    `<circle class="peak" data-session="${peak}" cx="${xAt(peakIdx).toFixed(2)}" ` +
    `cy="${yAt(peakPoint.severity).toFixed(2)}" r="4">` +
    `<title>peak S${peak}: ${fmt2(peakPoint.severity)}</title></circle>`;

  const svg =
    `<svg class="severity-chart" viewBox="0 0 ${layout.width} ${layout.height}" role="img" ` +
    `aria-label="severity over sessions">` +
    shades +
    `<polyline class="severity-line" fill="none" points="${points}"/>` +
    marker +
    `</svg>`;
  return { peakSession: peak, svg };
}

/** Action banner for a signal's current state, straight from the service. */
export function actionBanner(signal: SignalSummary): string {
  return `${signal.severity_band}: ${signal.recommended_action}`;
}

/** Roster order: escalated signals pinned on top (most severe first),
 * everyone else below, also by severity. */
export function rosterOrder(signals: SignalSummary[]): SignalSummary[] {
  const bySeverity = (a: SignalSummary, b: SignalSummary) => b.severity - a.severity;
  const escalated = signals.filter((s) => s.escalated_ever).sort(bySeverity);
  const rest = signals.filter((s) => !s.escalated_ever).sort(bySeverity);
  return [...escalated, ...rest];
}
