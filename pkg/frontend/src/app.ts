/** Controller: wires the session store, service client, and panels.
 * At most one evaluation is in flight (stale replies dropped by sequence
 * token) and at most one background search job is polled. */

import { DesignClient, ServiceError } from "./api.js";
import {
  renderLattice,
  renderPatternRows,
  renderResults,
  renderSearch,
} from "./render.js";
import { SessionStore } from "./state.js";
import {
  latticeViewModel,
  resultsViewModel,
  searchViewModel,
} from "./viewmodel.js";

const POLL_INTERVAL_MS = 300;

interface Elements {
  lattice: HTMLElement;
  latticeSummary: HTMLElement;
  patternRowsA: HTMLElement;
  patternRowsC: HTMLElement;
  results: HTMLElement;
  search: HTMLElement;
  raw: HTMLElement;
  form: {
    mode: HTMLSelectElement;
    width: HTMLInputElement;
    height: HTMLInputElement;
    xsize: HTMLInputElement;
    ysize: HTMLInputElement;
    patternA: HTMLInputElement;
    patternC: HTMLInputElement;
    swap: HTMLInputElement;
    depth: HTMLInputElement;
    estar: HTMLInputElement;
    nstar: HTMLInputElement;
    maxside: HTMLInputElement;
    noise: HTMLInputElement;
    topk: HTMLInputElement;
  };
}

export class DesignApp {
  private pollTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private store: SessionStore,
    private client: DesignClient,
    private el: Elements,
  ) {
    store.onChange(() => this.render());
  }

  async start(): Promise<void> {
    this.syncFormFromSession();
    await this.rebuildLattice();
    if (this.store.session.activeJobId) {
      this.pollSearch(this.store.session.activeJobId);
    }
  }

  /** Rebuild the lattice from the size fields, then re-evaluate. */
  async rebuildLattice(): Promise<void> {
    try {
      const doc = await this.client.getLattice(this.store.session.spec);
      // row counts may have changed: fit the bit strings to m and n
      this.store.update({
        patternA: fitBits(this.store.session.patternA, doc.lattice.m, "1"),
        patternC: fitBits(this.store.session.patternC, doc.lattice.n, "0"),
      });
      this.store.applyLattice(doc);
      await this.evaluate();
    } catch (err) {
      this.store.applyEvaluation(
        this.store.nextEvaluationToken(),
        null,
        describe(err),
      );
    }
  }

  async evaluate(): Promise<void> {
    const token = this.store.nextEvaluationToken();
    const s = this.store.session;
    try {
      const doc = await this.client.evaluate(
        s.spec,
        { a: s.patternA, c: s.patternC, swap: s.orderSwap },
        s.depth,
        s.thresholds,
        s.noise,
      );
      this.store.applyEvaluation(token, doc, null);
    } catch (err) {
      this.store.applyEvaluation(token, null, describe(err));
    }
  }

  async runSearch(topK: number): Promise<void> {
    const s = this.store.session;
    try {
      const jobId = await this.client.startSearch(
        s.spec,
        s.depth,
        s.thresholds,
        topK,
      );
      this.store.resetSearch(jobId);
      this.pollSearch(jobId);
    } catch (err) {
      this.store.applyEvaluation(this.store.nextEvaluationToken(), null, describe(err));
    }
  }

  private pollSearch(jobId: string): void {
    if (this.pollTimer !== null) clearTimeout(this.pollTimer);
    const tick = async () => {
      try {
        const record = await this.client.getJob(jobId);
        this.store.applySearchProgress(record.state, record.progress);
        if (record.state === "done") {
          const report = await this.client.getSearchResult(jobId);
          this.store.applySearchReport(report);
          return;
        }
        if (record.state === "failed") {
          this.store.applyEvaluation(
            this.store.nextEvaluationToken(),
            null,
            `search failed: ${record.error}`,
          );
          return;
        }
      } catch (err) {
        this.store.applyEvaluation(this.store.nextEvaluationToken(), null, describe(err));
        return;
      }
      this.pollTimer = setTimeout(tick, POLL_INTERVAL_MS);
    };
    tick();
  }

  toggleRow(family: "a" | "c", index: number): void {
    const key = family === "a" ? "patternA" : "patternC";
    const bits = this.store.session[key];
    const flipped =
      bits.slice(0, index) + (bits[index] === "1" ? "0" : "1") + bits.slice(index + 1);
    this.store.update({ [key]: flipped } as never);
    this.evaluate();
  }

  applyPreset(a: string, c: string): void {
    const m = this.store.lattice?.lattice.m ?? this.store.session.patternA.length;
    const n = this.store.lattice?.lattice.n ?? this.store.session.patternC.length;
    this.store.update({ patternA: a.repeat(m).slice(0, m), patternC: c.repeat(n).slice(0, n) });
    this.syncFormFromSession();
    this.evaluate();
  }

  readForm(): void {
    const f = this.el.form;
    const [e1, e2, er] = parseNoiseTriple(f.noise.value);
    this.store.update({
      spec: {
        ...this.store.session.spec,
        mode: f.mode.value as "grid" | "window" | "mask",
        width: Number(f.width.value),
        height: Number(f.height.value),
        xsize: Number(f.xsize.value),
        ysize: Number(f.ysize.value),
      },
      patternA: f.patternA.value,
      patternC: f.patternC.value,
      orderSwap: f.swap.checked ? 1 : 0,
      depth: Number(f.depth.value),
      thresholds: {
        e_star: optionalInt(f.estar.value),
        n_star: optionalInt(f.nstar.value),
        max_side: optionalInt(f.maxside.value),
      },
      noise: { e1, e2, er },
    });
  }

  syncFormFromSession(): void {
    const f = this.el.form;
    const s = this.store.session;
    f.mode.value = s.spec.mode;
    f.width.value = String(s.spec.width);
    f.height.value = String(s.spec.height);
    f.xsize.value = String(s.spec.xsize);
    f.ysize.value = String(s.spec.ysize);
    f.patternA.value = s.patternA;
    f.patternC.value = s.patternC;
    f.swap.checked = s.orderSwap === 1;
    f.depth.value = String(s.depth);
    f.estar.value = s.thresholds.e_star === null ? "" : String(s.thresholds.e_star);
    f.nstar.value = s.thresholds.n_star === null ? "" : String(s.thresholds.n_star);
    f.maxside.value =
      s.thresholds.max_side === null ? "" : String(s.thresholds.max_side);
    f.noise.value = `${s.noise.e1} ${s.noise.e2} ${s.noise.er}`;
  }

  render(): void {
    const doc = this.store.lattice;
    if (doc !== null) {
      renderLattice(this.el.lattice, doc, this.store.session, this.store.evaluation?.best_path ?? null, {
        onQubitClick: (q) => {
          const coord: [number, number] =
            this.store.session.spec.mode === "window" ? [q.x, q.y] : [q.u, q.v];
          this.store.toggleDefect(coord);
          this.rebuildLattice();
        },
        onDefectClick: (coord) => {
          this.store.toggleDefect(coord);
          this.rebuildLattice();
        },
      });
      const vm = latticeViewModel(doc);
      this.el.latticeSummary.textContent =
        `${vm.nQubits} qubits, ${vm.nBonds} bonds, m=${vm.m}, n=${vm.n}, ` +
        `${vm.nDefects} defective`;
      renderPatternRows(this.el.patternRowsA, doc.rows_f1, this.store.session.patternA, "F1", (i) =>
        this.toggleRow("a", i),
      );
      renderPatternRows(this.el.patternRowsC, doc.rows_f2, this.store.session.patternC, "F2", (i) =>
        this.toggleRow("c", i),
      );
    }
    renderResults(
      this.el.results,
      this.store.evaluation === null ? null : resultsViewModel(this.store.evaluation),
      this.store.lastError,
    );
    renderSearch(
      this.el.search,
      this.store.searchReport === null ? null : searchViewModel(this.store.searchReport),
      this.store.searchState,
      this.store.searchProgress,
    );
    this.el.raw.textContent = JSON.stringify(
      this.store.evaluation ?? this.store.searchReport ?? {},
      null,
      2,
    );
  }
}

function fitBits(bits: string, length: number, fill: string): string {
  if (bits.length >= length) return bits.slice(0, length);
  return bits + fill.repeat(length - bits.length);
}

function optionalInt(text: string): number | null {
  const trimmed = text.trim();
  if (trimmed === "") return null;
  const value = Number(trimmed);
  return Number.isFinite(value) ? value : null;
}

/** The error-rate field takes the three rates as one "e1 e2 er" triple. */
export function parseNoiseTriple(text: string): [number, number, number] {
  const parts = text.trim().split(/[\s,;]+/).filter(Boolean).map(Number);
  if (parts.length !== 3 || parts.some((p) => !Number.isFinite(p))) {
    return [0, 0, 0];
  }
  return [parts[0], parts[1], parts[2]];
}

function describe(err: unknown): string {
  if (err instanceof ServiceError) {
    return `HTTP ${err.status}: ${err.detail}`;
  }
  return String(err);
}
