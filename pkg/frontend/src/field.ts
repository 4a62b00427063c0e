/** Field view: renders the cultivation plane as an SVG string.
 *
 * Quadrant furniture (midlines, region names, the escalation arc) is fixed
 * decoration; every plotted coordinate, region token, and flag is taken from
 * service data untouched.
 */

import {
  DEFAULT_LAYOUT,
  FieldLayout,
  midlines,
  smsArcPath,
  toScreenX,
  toScreenY,
  trailPoints,
  viewBox,
} from './geometry.js';
import { fmt2 } from './format.js';
import type { RegionToken, SignalDetail } from './types.js';

/** Narrative quadrant captions, positioned per the field layout:
 * top-left Sleeping Cats, top-right Owls, bottom-left Question Marks,
 * bottom-right Lit Fuses. */
const QUADRANT_CAPTIONS: { region: RegionToken; caption: string; at: [number, number] }[] = [
  { region: 'SleepingCats', caption: 'Sleeping Cats', at: [2.5, 7.5] },
  { region: 'Owls', caption: 'Owls', at: [7.5, 7.5] },
  { region: 'QuestionMarks', caption: '? Question Marks', at: [2.5, 2.5] },
  { region: 'LitFuses', caption: 'Lit Fuses', at: [7.5, 2.5] },
];

export interface FieldViewState {
  signals: SignalDetail[];
  /** Signal id whose trail is expanded with per-session indices. */
  selectedId: string | null;
  /** When false, retired and closed signals are hidden entirely. */
  showGhosts: boolean;
}

function esc(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function nodeMarker(signal: SignalDetail, layout: FieldLayout, ghost: boolean): string {
  const current = signal.locus[signal.locus.length - 1];
  if (!current) return '';
  const cx = toScreenX(current.position.x, layout);
  const cy = toScreenY(current.position.y, layout);
  const classes = ['node', ghost ? 'ghost' : '', current.escalation_flag ? 'escalated' : '']
    .filter(Boolean)
    .join(' ');
  const title = `${signal.name} ${fmt2(current.position.x)}, ${fmt2(current.position.y)}`;
  return (
    `<circle class="${classes}" data-signal="${esc(signal.id)}" ` +
    `data-region="${current.region}" cx="${cx.toFixed(2)}" cy="${cy.toFixed(2)}" r="6">` +
    `<title>${esc(title)}</title></circle>`
  );
}

function trail(signal: SignalDetail, layout: FieldLayout, ghost: boolean): string {
  const points = trailPoints(signal.locus.map((p) => p.position), layout);
  const classes = ['trail', ghost ? 'ghost' : ''].filter(Boolean).join(' ');
  return `<polyline class="${classes}" data-signal="${esc(signal.id)}" fill="none" points="${points}"/>`;
}

/** Expanded trail for the selected signal: one labelled stop per session,
 * carrying the service's region token for that point. */
function sessionStops(signal: SignalDetail, layout: FieldLayout): string {
  return signal.locus
    .map((p) => {
      const cx = toScreenX(p.position.x, layout).toFixed(2);
      const cy = toScreenY(p.position.y, layout).toFixed(2);
      const label = `S${p.session_index} ${p.region}`;
      return (
        `<g class="session-stop" data-session="${p.session_index}" data-region="${p.region}">` +
        `<circle cx="${cx}" cy="${cy}" r="3"/>` +
        `<text x="${cx}" y="${cy}" dx="6" dy="-4">${esc(label)}</text></g>`
      );
    })
    .join('');
}

/** Render the whole field as a standalone SVG element string. */
export function renderField(state: FieldViewState, layout: FieldLayout = DEFAULT_LAYOUT): string {
  const lines = midlines(layout);
  const captions = QUADRANT_CAPTIONS.map(
    ({ region, caption, at }) =>
      `<text class="quadrant-caption" data-region="${region}" ` +
      `x="${toScreenX(at[0], layout).toFixed(2)}" y="${toScreenY(at[1], layout).toFixed(2)}" ` +
      `text-anchor="middle">${esc(caption)}</text>`,
  ).join('');

  const visible = state.signals.filter((s) => state.showGhosts || s.status === 'active');
  const bodies = visible
    .map((signal) => {
      const ghost = signal.status !== 'active';
      const selected = signal.id === state.selectedId;
      return (
        `<g class="signal${selected ? ' selected' : ''}" data-signal="${esc(signal.id)}">` +
        trail(signal, layout, ghost) +
        (selected ? sessionStops(signal, layout) : '') +
        nodeMarker(signal, layout, ghost) +
        `</g>`
      );
    })
    .join('');

  return (
    `<svg class="field" viewBox="${viewBox(layout)}" role="img" ` +
    `aria-label="cultivation field">` +
    `<line class="midline" x1="${lines.vertical.x1}" y1="${lines.vertical.y1}" ` +
    `x2="${lines.vertical.x2}" y2="${lines.vertical.y2}"/>` +
    `<line class="midline" x1="${lines.horizontal.x1}" y1="${lines.horizontal.y1}" ` +
    `x2="${lines.horizontal.x2}" y2="${lines.horizontal.y2}"/>` +
    `<path class="sms-arc" d="${smsArcPath(layout)}" fill="none"/>` +
    captions +
    bodies +
    `</svg>`
  );
}
