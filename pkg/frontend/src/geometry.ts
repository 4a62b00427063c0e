/** Layout math for the field view: data coordinates are the service's
 * [0,10] x [0,10] plane; screen coordinates are an SVG viewBox with y
 * flipped so growth potential points up. Pure geometry only; positions,
 * distances, and regions all come from the service. */

export const FIELD_MAX = 10;
/** Escalation arc radius in data units: the exact d >= sqrt(50) frontier. */
export const SMS_RADIUS = Math.sqrt(50);

export interface FieldLayout {
  /** Drawable square edge in px. */
  size: number;
  /** Margin around the square for axis labels. */
  margin: number;
}

export const DEFAULT_LAYOUT: FieldLayout = { size: 520, margin: 36 };

export function toScreenX(x: number, layout: FieldLayout = DEFAULT_LAYOUT): number {
  return layout.margin + (x / FIELD_MAX) * layout.size;
}

/** Data y grows upward; SVG y grows downward. */
export function toScreenY(y: number, layout: FieldLayout = DEFAULT_LAYOUT): number {
  return layout.margin + (1 - y / FIELD_MAX) * layout.size;
}

export function viewBox(layout: FieldLayout = DEFAULT_LAYOUT): string {
  const edge = layout.size + 2 * layout.margin;
  return `0 0 ${edge} ${edge}`;
}

/** SVG polyline points attribute for a locus trail (straight segments). */
export function trailPoints(
  positions: { x: number; y: number }[],
  layout: FieldLayout = DEFAULT_LAYOUT,
): string {
  return positions
    .map((p) => `${round2(toScreenX(p.x, layout))},${round2(toScreenY(p.y, layout))}`)
    .join(' ');
}

/** Path for the escalation frontier: the arc of radius sqrt(50) from the
 * x axis to the y axis, clipped to the field square. With sqrt(50) < 10 the
 * whole quarter circle lies inside the field. */
export function smsArcPath(layout: FieldLayout = DEFAULT_LAYOUT): string {
  const r = (SMS_RADIUS / FIELD_MAX) * layout.size;
  const start = `${round2(toScreenX(SMS_RADIUS, layout))},${round2(toScreenY(0, layout))}`;
  const end = `${round2(toScreenX(0, layout))},${round2(toScreenY(SMS_RADIUS, layout))}`;
  return `M ${start} A ${round2(r)} ${round2(r)} 0 0 0 ${end}`;
}

/** Midline segment endpoints splitting the field into the four regions. */
export function midlines(layout: FieldLayout = DEFAULT_LAYOUT): {
  vertical: { x1: number; y1: number; x2: number; y2: number };
  horizontal: { x1: number; y1: number; x2: number; y2: number };
} {
  return {
    vertical: {
      x1: toScreenX(5, layout), y1: toScreenY(0, layout),
      x2: toScreenX(5, layout), y2: toScreenY(10, layout),
    },
    horizontal: {
      x1: toScreenX(0, layout), y1: toScreenY(5, layout),
      x2: toScreenX(10, layout), y2: toScreenY(5, layout),
    },
  };
}

function round2(value: number): number {
  return Math.round(value * 100) / 100;
}
