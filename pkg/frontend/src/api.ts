/** Thin typed client for the design service; all numbers shown anywhere in
 * the UI come straight out of these responses. */

import type {
  EvaluationDocument,
  JobRecordDocument,
  LatticeDocument,
  LatticeSpecFields,
  SearchReportDocument,
} from "./types.js";

export interface NoiseRates {
  e1: number;
  e2: number;
  er: number;
}

export interface Thresholds {
  e_star: number | null;
  n_star: number | null;
  max_side: number | null;
}

export class ServiceError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class DesignClient {
  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const detail =
        typeof body?.detail === "string" ? body.detail : JSON.stringify(body);
      throw new ServiceError(response.status, detail);
    }
    return body as T;
  }

  getLattice(spec: LatticeSpecFields): Promise<LatticeDocument> {
    const params = new URLSearchParams({ mode: spec.mode });
    if (spec.mode === "grid") {
      params.set("width", String(spec.width));
      params.set("height", String(spec.height));
    } else {
      params.set("xsize", String(spec.xsize));
      params.set("ysize", String(spec.ysize));
    }
    if (spec.defects.length) {
      params.set("defects", spec.defects.map(([a, b]) => `(${a},${b})`).join(";"));
    }
    return this.request(`/api/lattice?${params.toString()}`);
  }

  evaluate(
    spec: LatticeSpecFields,
    pattern: { a: string; c: string; swap: number },
    depth: number,
    thresholds: Thresholds,
    noise: NoiseRates | null,
  ): Promise<EvaluationDocument> {
    return this.request("/api/evaluate", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({
        lattice: specBody(spec),
        pattern,
        depth,
        e_star: thresholds.e_star,
        n_star: thresholds.n_star,
        max_side: thresholds.max_side,
        noise,
      }),
    });
  }

  async startSearch(
    spec: LatticeSpecFields,
    depth: number,
    thresholds: Thresholds,
    topK: number,
  ): Promise<string> {
    const body = await this.request<{ job_id: string }>("/api/search", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({
        lattice: specBody(spec),
        depth,
        top_k: topK,
        e_star: thresholds.e_star,
        n_star: thresholds.n_star,
        max_side: thresholds.max_side,
        include_baseline: true,
      }),
    });
    return body.job_id;
  }

  getJob(jobId: string): Promise<JobRecordDocument> {
    return this.request(`/api/search/${jobId}`);
  }

  getSearchResult(jobId: string): Promise<SearchReportDocument> {
    return this.request(`/api/search/${jobId}/result`);
  }
}

function specBody(spec: LatticeSpecFields) {
  return {
    mode: spec.mode,
    width: spec.width,
    height: spec.height,
    xsize: spec.xsize,
    ysize: spec.ysize,
    defects: spec.defects,
  };
}
