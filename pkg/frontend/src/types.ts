/** Wire types for the design service responses. */

export interface LatticeSpecFields {
  mode: "grid" | "window" | "mask";
  width: number;
  height: number;
  xsize: number;
  ysize: number;
  defects: [number, number][];
}

export interface LatticeSummary {
  mode: string;
  width: number;
  height: number;
  xsize: number;
  ysize: number;
  n_qubits: number;
  n_bonds: number;
  m: number;
  n: number;
  defects: [number, number][];
}

export interface QubitInfo {
  id: number;
  u: number;
  v: number;
  x: number;
  y: number;
}

export interface BondInfo {
  id: number;
  family: "F1" | "F2";
  row: number;
  offset: number;
  parity: number;
  a: number;
  b: number;
}

export interface DualSiteInfo {
  u: number;
  v: number;
  boundary: boolean;
}

export interface LatticeDocument {
  lattice: LatticeSummary;
  qubits: QubitInfo[];
  bonds: BondInfo[];
  rows_f1: number[];
  rows_f2: number[];
  dual: {
    n_sites: number;
    n_boundary: number;
    n_interior: number;
    sites: DualSiteInfo[];
  };
}

export interface Breakdown {
  n_c: number;
  n_wedge: number;
  n_DCD: number;
  n_st: number;
  n_end: number;
  n1: number;
  n2: number;
  chi_fsim: number;
  chi_cphase: number;
  log2_cost: number;
}

export interface CutPathDoc {
  sites: [number, number][];
  E: number;
  E_eff: number;
  crossed_bonds: number[];
}

export interface FidelityDoc {
  F: number;
  log2_F: number;
  Ns: number;
  counts: { G1: number; G2: number; Q: number };
}

export interface PatternDoc {
  a: string;
  c: string;
  swap: number;
}

export interface EvaluationDocument {
  lattice: LatticeSummary;
  pattern: PatternDoc;
  depth: number;
  letters: string;
  tail: string | null;
  breakdown: Breakdown;
  best_path: CutPathDoc;
  fidelity: FidelityDoc | null;
  tail_words?: { word: string; log2_cost: number }[];
}

export interface RankedEntry {
  rank: number;
  pattern: PatternDoc;
  log2_cost: number;
  symmetry: number;
  breakdown: Breakdown;
  best_path: CutPathDoc;
}

export interface SearchReportDocument {
  lattice: LatticeSummary;
  config: Record<string, unknown>;
  depth: number;
  ranking_letters: string;
  total_candidates: number;
  candidates_evaluated: number;
  paths_considered: number;
  top: RankedEntry[];
  tie_set: PatternDoc[];
  baseline: {
    pattern: PatternDoc;
    log2_cost: number;
    rank: number;
    breakdown: Breakdown;
    best_path: CutPathDoc;
  } | null;
  tail: {
    prefix_depth: number;
    words: { word: string; log2_cost: number }[];
    chosen: string;
    breakdown: Breakdown;
    best_path: CutPathDoc;
  } | null;
  execution: { threads: number; wall_time_s: number };
}

export interface JobRecordDocument {
  job_id: string;
  state: "queued" | "running" | "done" | "failed";
  progress: number;
  submitted_utc: string;
  config: Record<string, unknown>;
  error: string | null;
  result: string;
}
