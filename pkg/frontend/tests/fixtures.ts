/** Hand-rolled wire objects for unit tests that never touch the service. */

import type {
  LocusPoint,
  RegionToken,
  SessionOutcome,
  SessionPoint,
  SignalDetail,
} from '../src/types.js';

export function outcome(overrides: Partial<SessionOutcome> = {}): SessionOutcome {
  return {
    tau: 1.0,
    x_new_agg: 2.5,
    y_new_agg: 2.5,
    alpha_tau: 0.47487,
    beta_tau: 0.47487,
    kappa_x: 0.06,
    kappa_y: 0.06,
    rho_x: 1.0,
    rho_y: 1.0,
    n_cap: 0.76,
    alpha_eff: 0.53487,
    beta_eff: 0.53487,
    y_decay: 2.291693,
    reversal_x: false,
    reversal_y: false,
    ...overrides,
  };
}

export function point(
  sessionIndex: number,
  x: number,
  y: number,
  overrides: Partial<LocusPoint> = {},
): LocusPoint {
  const region: RegionToken =
    x >= 5 ? (y >= 5 ? 'Owls' : 'LitFuses') : y >= 5 ? 'SleepingCats' : 'QuestionMarks';
  return {
    session_index: sessionIndex,
    date: `2026-01-${String(4 + sessionIndex).padStart(2, '0')}`,
    kind: sessionIndex === 1 ? 'entry' : 'assessment',
    position: { x, y },
    d: Math.hypot(x, y),
    region,
    severity: 0.4 * sessionIndex,
    frequency_count: 3 + sessionIndex,
    escalation_flag: Math.hypot(x, y) >= Math.sqrt(50),
    outcome: outcome(),
    ...overrides,
  };
}

export function sessionPoint(
  sessionIndex: number,
  x: number,
  y: number,
  overrides: Partial<SessionPoint> = {},
): SessionPoint {
  return {
    ...point(sessionIndex, x, y),
    severity_band: 'Low',
    recommended_action: 'Routine monitoring; log and observe',
    ...overrides,
  };
}

export function detail(overrides: Partial<SignalDetail> = {}): SignalDetail {
  const locus = overrides.locus ?? [point(1, 2.5, 2.5), point(2, 2.5, 2.403110065088007)];
  const current = locus[locus.length - 1]!;
  return {
    id: 'sig-1',
    name: 'gas-fumes',
    status: 'active',
    position: current.position,
    region: current.region,
    d: current.d,
    severity: current.severity,
    severity_band: 'Low',
    recommended_action: 'Routine monitoring; log and observe',
    frequency_count: current.frequency_count,
    escalation_flag: current.escalation_flag,
    escalated_ever: locus.some((p) => p.escalation_flag),
    first_escalation: null,
    session_count: locus.length,
    last_session_date: current.date,
    definition: 'fumes near intake bay',
    scope: 'night shift',
    registered_on: locus[0]!.date,
    terminal_date: null,
    terminal_rationale: '',
    closed_with_override: false,
    ...overrides,
    locus,
  };
}
