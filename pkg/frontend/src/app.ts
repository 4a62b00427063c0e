/** Browser shell: wires the pure view modules to the DOM and keeps a
 * connectivity banner a network hop honest. Everything interesting lives in
 * the imported modules, which is also what the tests exercise. */

import { ApiClient } from './api.js';
import { renderField } from './field.js';
import { actionBanner, renderSeverityChart, rosterOrder } from './dashboard.js';
import { fmt2, fmtPosition } from './format.js';
import type { SignalDetail, SignalSummary } from './types.js';

const POLL_MS = 5000;

interface AppState {
  summaries: SignalSummary[];
  details: Map<string, SignalDetail>;
  selectedId: string | null;
  showGhosts: boolean;
}

export function mountApp(root: HTMLElement, baseUrl: string): void {
  const state: AppState = {
    summaries: [],
    details: new Map(),
    selectedId: null,
    showGhosts: true,
  };

  root.innerHTML = `
    <div class="offline-banner" hidden>cultivation service unreachable; showing the last known state</div>
    <header>
      <h1>weak signal field</h1>
      <label><input type="checkbox" class="ghost-toggle" checked> show retired and closed</label>
    </header>
    <main>
      <section class="field-host"></section>
      <aside>
        <ol class="roster"></ol>
        <div class="detail-host"></div>
      </aside>
    </main>`;

  const banner = root.querySelector<HTMLElement>('.offline-banner')!;
  const api = new ApiClient(baseUrl, {
    onConnectivity: (offline) => {
      banner.hidden = !offline;
    },
  });

  const fieldHost = root.querySelector<HTMLElement>('.field-host')!;
  const rosterHost = root.querySelector<HTMLElement>('.roster')!;
  const detailHost = root.querySelector<HTMLElement>('.detail-host')!;

  root.querySelector<HTMLInputElement>('.ghost-toggle')!.addEventListener('change', (ev) => {
    state.showGhosts = (ev.target as HTMLInputElement).checked;
    paint();
  });

  fieldHost.addEventListener('click', (ev) => {
    const target = (ev.target as Element).closest('[data-signal]');
    state.selectedId = target?.getAttribute('data-signal') ?? null;
    paint();
  });

  function paint(): void {
    fieldHost.innerHTML = renderField({
      signals: [...state.details.values()],
      selectedId: state.selectedId,
      showGhosts: state.showGhosts,
    });
    rosterHost.innerHTML = rosterOrder(state.summaries)
      .map(
        (s) =>
          `<li data-signal="${s.id}"${s.escalated_ever ? ' class="escalated"' : ''}>` +
          `${s.name} ${fmtPosition(s.position)} ${s.region} S=${fmt2(s.severity)}</li>`,
      )
      .join('');
    const selected = state.selectedId ? state.details.get(state.selectedId) : undefined;
    if (selected) {
      const chart = renderSeverityChart(selected);
      detailHost.innerHTML =
        `<h2>${selected.name}</h2>` +
        `<p class="action">${actionBanner(selected)}</p>` +
        chart.svg +
        `<p>severity peaked at session ${chart.peakSession}</p>`;
    } else {
      detailHost.innerHTML = '';
    }
  }

  async function refresh(): Promise<void> {
    try {
      state.summaries = await api.listSignals();
      const details = await Promise.all(state.summaries.map((s) => api.getSignal(s.id)));
      state.details = new Map(details.map((d) => [d.id, d]));
      paint();
    } catch {
      // banner already raised by the client; stale state stays on screen
    }
  }

  void refresh();
  setInterval(() => void refresh(), POLL_MS);
}
