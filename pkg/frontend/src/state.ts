/** Design session: everything the user has dialed in, plus the latest
 * service responses.  Serializable so a reload restores the design.
 *
 * Responses carry the request sequence number that produced them; a response
 * arriving after a newer request was issued is discarded, so the panels never
 * show stale numbers.
 */

import type { NoiseRates, Thresholds } from "./api.js";
import type {
  EvaluationDocument,
  LatticeDocument,
  LatticeSpecFields,
  SearchReportDocument,
} from "./types.js";

export interface DesignSession {
  spec: LatticeSpecFields;
  patternA: string;
  patternC: string;
  orderSwap: number;
  depth: number;
  thresholds: Thresholds;
  noise: NoiseRates;
  activeJobId: string | null;
}

export const DEFAULT_SESSION: DesignSession = {
  spec: { mode: "grid", width: 5, height: 5, xsize: 0, ysize: 0, defects: [] },
  patternA: "11111",
  patternC: "00000",
  orderSwap: 0,
  depth: 20,
  thresholds: { e_star: null, n_star: 8, max_side: 33 },
  noise: { e1: 0.001, e2: 0.006, er: 0.03 },
  activeJobId: null,
};

interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

const STORAGE_KEY = "rqc-design-session";

export class SessionStore {
  session: DesignSession;
  lattice: LatticeDocument | null = null;
  evaluation: EvaluationDocument | null = null;
  searchReport: SearchReportDocument | null = null;
  searchProgress = 0;
  searchState: string | null = null;
  lastError: string | null = null;

  private evalSeq = 0;
  private listeners: (() => void)[] = [];

  constructor(private storage: StorageLike | null = null) {
    this.session = structuredClone(DEFAULT_SESSION);
    const saved = storage?.getItem(STORAGE_KEY);
    if (saved) {
      try {
        this.session = { ...structuredClone(DEFAULT_SESSION), ...JSON.parse(saved) };
      } catch {
        // corrupted storage: fall back to defaults
      }
    }
  }

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    this.storage?.setItem(STORAGE_KEY, JSON.stringify(this.session));
    for (const listener of this.listeners) listener();
  }

  update(patch: Partial<DesignSession>): void {
    this.session = { ...this.session, ...patch };
    this.notify();
  }

  toggleDefect(coord: [number, number]): void {
    const defects = this.session.spec.defects.filter(
      ([a, b]) => !(a === coord[0] && b === coord[1]),
    );
    if (defects.length === this.session.spec.defects.length) {
      defects.push(coord);
    }
    this.update({ spec: { ...this.session.spec, defects } });
  }

  /** Stamp an outgoing evaluation request; the token must be handed back with
   * the response. */
  nextEvaluationToken(): number {
    return ++this.evalSeq;
  }

  /** Apply a response only if no newer request was issued meanwhile. */
  applyEvaluation(token: number, doc: EvaluationDocument | null, error: string | null): boolean {
    if (token !== this.evalSeq) {
      return false; // stale response
    }
    this.evaluation = doc;
    this.lastError = error;
    this.notify();
    return true;
  }

  applyLattice(doc: LatticeDocument): void {
    this.lattice = doc;
    this.notify();
  }

  /** Search progress only ever moves forward. */
  applySearchProgress(state: string, progress: number): void {
    this.searchState = state;
    this.searchProgress = Math.max(this.searchProgress, progress);
    this.notify();
  }

  applySearchReport(doc: SearchReportDocument): void {
    this.searchReport = doc;
    this.notify();
  }

  resetSearch(jobId: string | null): void {
    this.searchProgress = 0;
    this.searchState = jobId === null ? null : "queued";
    this.searchReport = null;
    this.update({ activeJobId: jobId });
  }

  serialize(): string {
    return JSON.stringify(this.session);
  }

  static restore(serialized: string, storage: StorageLike | null = null): SessionStore {
    const store = new SessionStore(storage);
    store.session = { ...structuredClone(DEFAULT_SESSION), ...JSON.parse(serialized) };
    return store;
  }
}
