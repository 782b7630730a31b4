/** Pure view models: the exact strings each panel renders.
 *
 * Every number is carried verbatim from the service response via String();
 * nothing is recomputed or rounded client-side, so the panels always display
 * the service's own values.
 */

import type {
  Breakdown,
  EvaluationDocument,
  LatticeDocument,
  SearchReportDocument,
} from "./types.js";

export interface CounterRow {
  label: string;
  value: string;
}

export interface ResultsViewModel {
  log2Cost: string;
  counters: CounterRow[];
  cutSites: [number, number][];
  cutEdges: string;
  cutEffectiveEdges: string;
  fidelity: string | null;
  log2Fidelity: string | null;
  samples: string | null;
  gateCounts: { g1: string; g2: string; q: string } | null;
  letters: string;
  tail: string | null;
  tailWords: { word: string; cost: string }[] | null;
}

function breakdownRows(bd: Breakdown): CounterRow[] {
  return [
    { label: "n_c", value: String(bd.n_c) },
    { label: "n_wedge", value: String(bd.n_wedge) },
    { label: "n_DCD", value: String(bd.n_DCD) },
    { label: "n_st", value: String(bd.n_st) },
    { label: "n_end", value: String(bd.n_end) },
    { label: "n1", value: String(bd.n1) },
    { label: "n2", value: String(bd.n2) },
  ];
}

export function resultsViewModel(doc: EvaluationDocument): ResultsViewModel {
  return {
    log2Cost: String(doc.breakdown.log2_cost),
    counters: breakdownRows(doc.breakdown),
    cutSites: doc.best_path.sites,
    cutEdges: String(doc.best_path.E),
    cutEffectiveEdges: String(doc.best_path.E_eff),
    fidelity: doc.fidelity === null ? null : String(doc.fidelity.F),
    log2Fidelity: doc.fidelity === null ? null : String(doc.fidelity.log2_F),
    samples: doc.fidelity === null ? null : String(doc.fidelity.Ns),
    gateCounts:
      doc.fidelity === null
        ? null
        : {
            g1: String(doc.fidelity.counts.G1),
            g2: String(doc.fidelity.counts.G2),
            q: String(doc.fidelity.counts.Q),
          },
    letters: doc.letters,
    tail: doc.tail,
    tailWords:
      doc.tail_words?.map((w) => ({ word: w.word, cost: String(w.log2_cost) })) ??
      null,
  };
}

export interface SearchRow {
  rank: string;
  pattern: string;
  log2Cost: string;
  symmetry: string;
}

export interface SearchViewModel {
  totalCandidates: string;
  candidatesEvaluated: string;
  pathsConsidered: string;
  rows: SearchRow[];
  tieSet: string[];
  baseline: { pattern: string; log2Cost: string; rank: string } | null;
  tailChosen: string | null;
}

export function patternText(p: { a: string; c: string; swap: number }): string {
  return `A=${p.a || "-"} C=${p.c || "-"} swap=${p.swap}`;
}

export function searchViewModel(doc: SearchReportDocument): SearchViewModel {
  return {
    totalCandidates: String(doc.total_candidates),
    candidatesEvaluated: String(doc.candidates_evaluated),
    pathsConsidered: String(doc.paths_considered),
    rows: doc.top.map((entry) => ({
      rank: String(entry.rank),
      pattern: patternText(entry.pattern),
      log2Cost: String(entry.log2_cost),
      symmetry: String(entry.symmetry),
    })),
    tieSet: doc.tie_set.map(patternText),
    baseline:
      doc.baseline === null
        ? null
        : {
            pattern: patternText(doc.baseline.pattern),
            log2Cost: String(doc.baseline.log2_cost),
            rank: String(doc.baseline.rank),
          },
    tailChosen: doc.tail?.chosen ?? null,
  };
}

export interface LatticeViewModel {
  nQubits: string;
  nBonds: string;
  m: string;
  n: string;
  nDefects: string;
}

export function latticeViewModel(doc: LatticeDocument): LatticeViewModel {
  return {
    nQubits: String(doc.lattice.n_qubits),
    nBonds: String(doc.lattice.n_bonds),
    m: String(doc.lattice.m),
    n: String(doc.lattice.n),
    nDefects: String(doc.lattice.defects.length),
  };
}
