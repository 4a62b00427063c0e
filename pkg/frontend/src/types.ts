/** Wire types for the cultivation service. Every number here is computed
 * server-side; the UI only arranges and formats what it is given. */

export type RegionToken = 'QuestionMarks' | 'LitFuses' | 'Owls' | 'SleepingCats';

export type BandName = 'Low' | 'Moderate' | 'Elevated' | 'Critical';

export type SignalStatus = 'active' | 'retired' | 'closed';

export type PointKind = 'entry' | 'assessment' | 'decay_only';

/** Per-session audit block attached to each locus point. */
export interface SessionOutcome {
  tau: number;
  x_new_agg: number | null;
  y_new_agg: number | null;
  alpha_tau: number | null;
  beta_tau: number | null;
  kappa_x: number | null;
  kappa_y: number | null;
  rho_x: number | null;
  rho_y: number | null;
  n_cap: number | null;
  alpha_eff: number | null;
  beta_eff: number | null;
  y_decay: number | null;
  reversal_x: boolean;
  reversal_y: boolean;
}

export interface LocusPoint {
  session_index: number;
  date: string;
  kind: PointKind;
  position: { x: number; y: number };
  d: number;
  region: RegionToken;
  severity: number;
  frequency_count: number;
  escalation_flag: boolean;
  outcome: SessionOutcome;
}

/** Point shape returned by mutating routes; adds the band verdict. */
export interface SessionPoint extends LocusPoint {
  severity_band: BandName;
  recommended_action: string;
}

export interface SignalSummary {
  id: string;
  name: string;
  status: SignalStatus;
  position: { x: number; y: number };
  region: RegionToken;
  d: number;
  severity: number;
  severity_band: BandName;
  recommended_action: string;
  frequency_count: number;
  escalation_flag: boolean;
  escalated_ever: boolean;
  first_escalation: string | null;
  session_count: number;
  last_session_date: string;
}

export interface SignalDetail extends SignalSummary {
  definition: string;
  scope: string;
  registered_on: string;
  terminal_date: string | null;
  terminal_rationale: string;
  closed_with_override: boolean;
  locus: LocusPoint[];
}

export interface DashboardData {
  region_occupancy: Record<RegionToken, number>;
  severity_bands: Record<BandName, { id: string; name: string; severity: number }[]>;
  escalated: {
    id: string;
    name: string;
    status: SignalStatus;
    first_escalation: string | null;
    currently_flagged: boolean;
  }[];
  active_count: number;
  signal_count: number;
}

/** Committee session payload; the same object must serve preview and commit. */
export interface CommitteePayload {
  date: string;
  scores: [number, number][];
  f: number;
  notes?: string;
  assessors?: (string | null)[];
}

export interface RegisterPayload extends CommitteePayload {
  name: string;
  definition: string;
  scope?: string;
}

export interface ServiceError {
  code: string;
  message: string;
  field: string | null;
}
