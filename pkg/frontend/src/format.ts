/** Display formatting. The UI shows two decimals everywhere it quotes a
 * model quantity; rounding is half-up, matching human expectation. */

/** Round half-up to two decimals and pad, e.g. 2.403110 -> "2.40". */
export function fmt2(value: number): string {
  if (!Number.isFinite(value)) return String(value);
  const sign = value < 0 ? -1 : 1;
  // exponent-shift round avoids 1.005 * 100 = 100.49999... artifacts
  const shifted = Number(`${Math.abs(value)}e2`);
  return ((sign * Math.round(shifted)) / 100).toFixed(2);
}

/** "(2.50, 2.40)" position rendering. */
export function fmtPosition(pos: { x: number; y: number }): string {
  return `(${fmt2(pos.x)}, ${fmt2(pos.y)})`;
}

/** Signed delta with a leading +/-, e.g. "+1.25". */
export function fmtDelta(value: number): string {
  const body = fmt2(Math.abs(value));
  return `${value < 0 ? '-' : '+'}${body}`;
}
