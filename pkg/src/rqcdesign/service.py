"""HTTP design service: stateless lattice/evaluation endpoints plus a
job-based search API for the interactive UI and automation.

Numeric fields are produced by the same document builders as the CLI, so both
front ends always report identical results for identical inputs.
"""

from __future__ import annotations

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .documents import (
    evaluation_document,
    lattice_document,
    pattern_from_fields,
    spec_from_fields,
)
from .errors import (
    CapacityExceededError,
    DegenerateCutError,
    InvalidSpec,
    NoFeasibleCutError,
)
from .fidelity import NoiseModel, circuit_fidelity
from .lattice import build_dual, build_lattice
from .patterns import assemble_circuit
from .search import SearchConfig, evaluate_candidate, search
from .sfa import PathSearchConfig

JOB_STATES = ("queued", "running", "done", "failed")


class LatticeBody(BaseModel):
    mode: str = "grid"
    width: int = 0
    height: int = 0
    xsize: int = 0
    ysize: int = 0
    sites: list[tuple[int, int]] = Field(default_factory=list)
    defects: list[tuple[int, int]] = Field(default_factory=list)


class PatternBody(BaseModel):
    a: str = ""
    c: str = ""
    swap: int = 0


class NoiseBody(BaseModel):
    e1: float = 0.0
    e2: float = 0.0
    er: float = 0.0


class EvaluateBody(BaseModel):
    lattice: LatticeBody
    pattern: PatternBody
    depth: int
    e_star: Optional[int] = None
    n_star: Optional[int] = PathSearchConfig().n_star
    max_side: Optional[int] = PathSearchConfig().max_side
    noise: Optional[NoiseBody] = None


class SearchBody(BaseModel):
    lattice: LatticeBody
    depth: int
    top_k: int = 10
    threads: int = 1
    e_star: Optional[int] = None
    n_star: Optional[int] = PathSearchConfig().n_star
    max_side: Optional[int] = PathSearchConfig().max_side
    include_baseline: bool = True


@dataclass
class JobRecord:
    job_id: str
    state: str = "queued"
    progress: float = 0.0
    submitted_utc: str = ""
    config: dict = field(default_factory=dict)
    result: dict | None = None
    error: str | None = None

    def to_doc(self) -> dict:
        return {
            "job_id": self.job_id,
            "state": self.state,
            "progress": self.progress,
            "submitted_utc": self.submitted_utc,
            "config": self.config,
            "error": self.error,
            "result": f"/api/search/{self.job_id}/result",
        }


class JobStore:
    """In-memory job registry with monotone state/progress updates."""

    _ORDER = {state: i for i, state in enumerate(JOB_STATES)}

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._jobs: dict[str, JobRecord] = {}

    def create(self, config: dict) -> JobRecord:
        job = JobRecord(
            job_id=uuid.uuid4().hex,
            submitted_utc=datetime.now(timezone.utc).isoformat(),
            config=config,
        )
        with self._lock:
            self._jobs[job.job_id] = job
        return job

    def get(self, job_id: str) -> JobRecord:
        with self._lock:
            job = self._jobs.get(job_id)
        if job is None:
            raise KeyError(job_id)
        return job

    def advance(self, job_id: str, state: str) -> None:
        with self._lock:
            job = self._jobs[job_id]
            if self._ORDER[state] < self._ORDER[job.state]:
                return  # never move backwards
            job.state = state

    def set_progress(self, job_id: str, fraction: float) -> None:
        with self._lock:
            job = self._jobs[job_id]
            job.progress = max(job.progress, min(1.0, fraction))

    def finish(self, job_id: str, result: dict | None, error: str | None) -> None:
        with self._lock:
            job = self._jobs[job_id]
            job.result = result
            job.error = error
            job.state = "failed" if error else "done"
            if not error:
                job.progress = 1.0

    def delete(self, job_id: str) -> None:
        with self._lock:
            if job_id not in self._jobs:
                raise KeyError(job_id)
            del self._jobs[job_id]


def _http_error(exc: Exception) -> HTTPException:
    if isinstance(exc, (DegenerateCutError, NoFeasibleCutError)):
        return HTTPException(status_code=422, detail=str(exc))
    if isinstance(exc, (InvalidSpec, CapacityExceededError, ValueError)):
        return HTTPException(status_code=400, detail=str(exc))
    raise exc


def create_app(max_search_workers: int = 2) -> FastAPI:
    app = FastAPI(title="rqcdesign service", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    jobs = JobStore()
    pool = ThreadPoolExecutor(max_workers=max_search_workers)
    app.state.jobs = jobs
    app.state.pool = pool

    def _build_lattice(body: LatticeBody):
        spec = spec_from_fields(
            mode=body.mode,
            width=body.width,
            height=body.height,
            xsize=body.xsize,
            ysize=body.ysize,
            sites=tuple(body.sites),
            defects=tuple(body.defects),
        )
        return build_lattice(spec)

    @app.get("/api/lattice")
    def get_lattice(
        mode: str = Query("grid"),
        width: int = 0,
        height: int = 0,
        xsize: int = 0,
        ysize: int = 0,
        sites: str = "",
        defects: str = "",
    ) -> dict:
        try:
            spec = spec_from_fields(
                mode=mode,
                width=width,
                height=height,
                xsize=xsize,
                ysize=ysize,
                sites=sites,
                defects=defects,
            )
            lattice = build_lattice(spec)
            return lattice_document(lattice, build_dual(lattice))
        except Exception as exc:  # noqa: BLE001
            raise _http_error(exc) from exc

    @app.post("/api/evaluate")
    def post_evaluate(body: EvaluateBody) -> dict:
        try:
            lattice = _build_lattice(body.lattice)
            code = pattern_from_fields(body.pattern.a, body.pattern.c, body.pattern.swap)
            cfg = PathSearchConfig(
                e_star=body.e_star, n_star=body.n_star, max_side=body.max_side
            )
            result = evaluate_candidate(lattice, code, body.depth, cfg)
            fidelity = None
            if body.noise is not None:
                noise = NoiseModel(body.noise.e1, body.noise.e2, body.noise.er)
                circuit = assemble_circuit(lattice, code, result.sequence)
                fidelity = circuit_fidelity(circuit, noise)
            return evaluation_document(lattice, result, fidelity)
        except Exception as exc:  # noqa: BLE001
            raise _http_error(exc) from exc

    def _run_search(job_id: str, body: SearchBody) -> None:
        jobs.advance(job_id, "running")
        try:
            lattice = _build_lattice(body.lattice)
            cfg = SearchConfig(
                depth=body.depth,
                paths=PathSearchConfig(
                    e_star=body.e_star, n_star=body.n_star, max_side=body.max_side
                ),
                top_k=body.top_k,
                threads=body.threads,
                include_baseline=body.include_baseline,
            )
            report = search(
                lattice, cfg, progress=lambda f: jobs.set_progress(job_id, f)
            )
            jobs.finish(job_id, report.to_doc(), None)
        except Exception as exc:  # noqa: BLE001
            jobs.finish(job_id, None, str(exc))

    @app.post("/api/search", status_code=202)
    def post_search(body: SearchBody) -> dict:
        job = jobs.create(body.model_dump())
        pool.submit(_run_search, job.job_id, body)
        return {"job_id": job.job_id, "status": f"/api/search/{job.job_id}"}

    @app.get("/api/search/{job_id}")
    def get_job(job_id: str) -> dict:
        try:
            return jobs.get(job_id).to_doc()
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id}")

    @app.get("/api/search/{job_id}/result")
    def get_result(job_id: str) -> dict:
        try:
            job = jobs.get(job_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id}")
        if job.state == "failed":
            raise HTTPException(status_code=422, detail=job.error or "search failed")
        if job.state != "done" or job.result is None:
            raise HTTPException(
                status_code=409, detail=f"job {job_id} is {job.state}, not done"
            )
        return job.result

    @app.delete("/api/search/{job_id}", status_code=204)
    def delete_job(job_id: str) -> None:
        try:
            jobs.delete(job_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id}")

    return app


app = create_app()
