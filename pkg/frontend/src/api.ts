/** Typed client for the cultivation service.
 *
 * Responses arrive in a versioned envelope; this client unwraps it, raises
 * typed errors, and tracks connectivity so the shell can show an offline
 * banner. All model arithmetic happens on the server; the client never
 * recomputes a coordinate, distance, severity, or region.
 */

import type {
  CommitteePayload,
  DashboardData,
  RegisterPayload,
  ServiceError,
  SessionPoint,
  SignalDetail,
  SignalSummary,
} from './types.js';

const SCHEMA_VERSION = 1;

export class ApiError extends Error {
  readonly code: string;
  readonly field: string | null;
  readonly status: number;

  constructor(status: number, err: ServiceError) {
    super(err.message);
    this.code = err.code;
    this.field = err.field;
    this.status = status;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface ApiClientOptions {
  /** Injected for tests; defaults to the global fetch. */
  fetchFn?: FetchLike;
  /** Called with true when the service stops answering, false on recovery. */
  onConnectivity?: (offline: boolean) => void;
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;
  private readonly onConnectivity?: (offline: boolean) => void;
  private offline = false;

  constructor(base: string, options: ApiClientOptions = {}) {
    this.base = base.replace(/\/$/, '');
    this.fetchFn = options.fetchFn ?? ((url, init) => fetch(url, init));
    this.onConnectivity = options.onConnectivity;
  }

  get isOffline(): boolean {
    return this.offline;
  }

  private setOffline(offline: boolean): void {
    if (offline !== this.offline) {
      this.offline = offline;
      this.onConnectivity?.(offline);
    }
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.base}${path}`, {
        method,
        headers: body === undefined ? undefined : { 'content-type': 'application/json' },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (cause) {
      this.setOffline(true);
      throw new ApiError(0, {
        code: 'offline',
        message: 'cultivation service unreachable',
        field: null,
      });
    }
    this.setOffline(false);
    const envelope = (await response.json()) as {
      schema_version: number;
      data?: T;
      error?: ServiceError;
    };
    if (envelope.schema_version !== SCHEMA_VERSION) {
      throw new ApiError(response.status, {
        code: 'schema_mismatch',
        message: `expected schema_version ${SCHEMA_VERSION}, got ${envelope.schema_version}`,
        field: null,
      });
    }
    if (!response.ok || envelope.error) {
      throw new ApiError(
        response.status,
        envelope.error ?? { code: 'unknown', message: 'malformed error response', field: null },
      );
    }
    return envelope.data as T;
  }

  listSignals(): Promise<SignalSummary[]> {
    return this.request<{ signals: SignalSummary[] }>('GET', '/signals').then((d) => d.signals);
  }

  getSignal(ref: string): Promise<SignalDetail> {
    return this.request<{ signal: SignalDetail }>('GET', `/signals/${encodeURIComponent(ref)}`)
      .then((d) => d.signal);
  }

  register(payload: RegisterPayload): Promise<SignalDetail> {
    return this.request<{ signal: SignalDetail }>('POST', '/signals', payload)
      .then((d) => d.signal);
  }

  /** Commit a committee session. Pass the exact object a preview used. */
  assess(ref: string, payload: CommitteePayload): Promise<SessionPoint> {
    return this.request<{ point: SessionPoint }>(
      'POST', `/signals/${encodeURIComponent(ref)}/assess`, payload,
    ).then((d) => d.point);
  }

  /** Dry-run a committee session; the journal is untouched. */
  preview(ref: string, payload: CommitteePayload | { date: string }): Promise<SessionPoint> {
    return this.request<{ point: SessionPoint; committed: boolean }>(
      'POST', `/signals/${encodeURIComponent(ref)}/preview`, payload,
    ).then((d) => d.point);
  }

  decay(ref: string, date: string): Promise<SessionPoint> {
    return this.request<{ point: SessionPoint }>(
      'POST', `/signals/${encodeURIComponent(ref)}/decay`, { date },
    ).then((d) => d.point);
  }

  retire(ref: string, date: string, rationale = ''): Promise<SignalSummary> {
    return this.request<{ signal: SignalSummary }>(
      'POST', `/signals/${encodeURIComponent(ref)}/retire`, { date, rationale },
    ).then((d) => d.signal);
  }

  close(ref: string, date: string, rationale = '', override = false): Promise<SignalSummary> {
    return this.request<{ signal: SignalSummary }>(
      'POST', `/signals/${encodeURIComponent(ref)}/close`, { date, rationale, override },
    ).then((d) => d.signal);
  }

  dashboard(): Promise<DashboardData> {
    return this.request<DashboardData>('GET', '/dashboard');
  }
}
