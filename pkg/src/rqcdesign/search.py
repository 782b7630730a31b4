"""Exhaustive pattern search ranked by simulation cost.

Every one of the 2^(m+n+1) pattern codes is scored with the minimum cost over
the shared cut-path set; the hardest circuits win.  For depths not divisible
by 4 the search runs at the largest multiple of 4 first, then exhausts the
tail words on the winning code.  Scoring is embarrassingly parallel over
contiguous index ranges of the code space and the merged report does not
depend on the worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import CapacityExceededError, InvalidSpec
from .lattice import CutPath, Lattice, build_dual
from .patterns import (
    DEFAULT_ENUM_CAP,
    CycleSequence,
    PatternCode,
    baseline_code,
    code_count,
    code_from_index,
    cycle_sequence,
    pattern_layer,
    tail_sequences,
    validate_code,
)
from .sfa import PathSearchConfig, SfaBreakdown, SfaCostModel, enumerate_cut_paths

PROGRESS_CHUNKS = 256


@dataclass(frozen=True)
class SearchConfig:
    depth: int
    paths: PathSearchConfig = PathSearchConfig()
    top_k: int = 10
    threads: int = 1
    include_baseline: bool = False
    enum_cap: int = DEFAULT_ENUM_CAP
    allow_junction_repeat: bool = False  # tail words may repeat the prefix letter

    def __post_init__(self) -> None:
        if self.top_k < 1:
            raise InvalidSpec("top_k must be >= 1")
        if self.depth < 4:
            raise InvalidSpec("search depth starts at 4 cycles")


@dataclass(frozen=True)
class RankedCandidate:
    rank: int
    code: PatternCode
    log2_cost: float
    symmetry: int
    breakdown: SfaBreakdown
    best_path: CutPath


@dataclass(frozen=True)
class BaselineResult:
    code: PatternCode
    log2_cost: float
    rank: int
    breakdown: SfaBreakdown
    best_path: CutPath


@dataclass(frozen=True)
class TailResult:
    """Tail refinement for depths not divisible by 4."""

    prefix_depth: int
    words: tuple[tuple[str, float], ...]  # (tail word, log2 cost), all words
    chosen: str
    breakdown: SfaBreakdown
    best_path: CutPath


@dataclass(frozen=True)
class SearchReport:
    lattice_summary: dict
    config: dict
    depth: int
    ranking_letters: str
    total_candidates: int
    candidates_evaluated: int
    paths_considered: int
    top: tuple[RankedCandidate, ...]
    tie_set: tuple[PatternCode, ...]  # every code at the last ranked cost
    baseline: BaselineResult | None
    tail: TailResult | None
    threads: int
    wall_time_s: float

    def to_doc(self) -> dict:
        doc = {
            "lattice": self.lattice_summary,
            "config": self.config,
            "depth": self.depth,
            "ranking_letters": self.ranking_letters,
            "total_candidates": self.total_candidates,
            "candidates_evaluated": self.candidates_evaluated,
            "paths_considered": self.paths_considered,
            "top": [
                {
                    "rank": c.rank,
                    "pattern": _code_doc(c.code),
                    "log2_cost": c.log2_cost,
                    "symmetry": c.symmetry,
                    "breakdown": breakdown_doc(c.breakdown),
                    "best_path": path_doc(c.best_path),
                }
                for c in self.top
            ],
            "tie_set": [_code_doc(c) for c in self.tie_set],
            "baseline": None,
            "tail": None,
            "execution": {"threads": self.threads, "wall_time_s": self.wall_time_s},
        }
        if self.baseline is not None:
            doc["baseline"] = {
                "pattern": _code_doc(self.baseline.code),
                "log2_cost": self.baseline.log2_cost,
                "rank": self.baseline.rank,
                "breakdown": breakdown_doc(self.baseline.breakdown),
                "best_path": path_doc(self.baseline.best_path),
            }
        if self.tail is not None:
            doc["tail"] = {
                "prefix_depth": self.tail.prefix_depth,
                "words": [{"word": w, "log2_cost": c} for w, c in self.tail.words],
                "chosen": self.tail.chosen,
                "breakdown": breakdown_doc(self.tail.breakdown),
                "best_path": path_doc(self.tail.best_path),
            }
        return doc


def _code_doc(code: PatternCode) -> dict:
    return {
        "a": "".join(str(b) for b in code.a_bits),
        "c": "".join(str(b) for b in code.c_bits),
        "swap": code.order_swap,
    }


def breakdown_doc(bd: SfaBreakdown) -> dict:
    return {
        "n_c": bd.n_c,
        "n_wedge": bd.n_wedge,
        "n_DCD": bd.n_dcd,
        "n_st": bd.n_st,
        "n_end": bd.n_end,
        "n1": bd.n1,
        "n2": bd.n2,
        "chi_fsim": bd.chi_fsim,
        "chi_cphase": bd.chi_cphase,
        "log2_cost": bd.log2_cost,
    }


def path_doc(path: CutPath) -> dict:
    return {
        "sites": [list(s) for s in path.sites],
        "E": path.edges,
        "E_eff": path.effective_edges,
        "crossed_bonds": list(path.crossed_bonds),
    }


def lattice_summary(lattice: Lattice) -> dict:
    spec = lattice.spec
    out = {
        "mode": spec.mode,
        "width": spec.width,
        "height": spec.height,
        "xsize": spec.xsize,
        "ysize": spec.ysize,
        "n_qubits": lattice.n_qubits,
        "n_bonds": len(lattice.bonds),
        "m": lattice.m,
        "n": lattice.n,
        "defects": [list(d) for d in lattice.defects],
    }
    if spec.mode == "mask":
        out["sites"] = [list(s) for s in spec.sites]
    return out


# -- symmetry -----------------------------------------------------------------

def symmetry_score(lattice: Lattice, code: PatternCode) -> int:
    """How many of {horizontal mirror, vertical mirror, 180-degree rotation}
    map each layer set onto itself or onto its family complement (0..3)."""
    validate_code(lattice, code)
    present = set(lattice.coords)
    us = [u for u, _ in present]
    vs = [v for _, v in present]
    su, sv = min(us) + max(us), min(vs) + max(vs)
    transforms = (
        lambda u, v: (su - u, v),
        lambda u, v: (u, sv - v),
        lambda u, v: (su - u, sv - v),
    )

    def bond_set(family, bits, complement):
        layer = pattern_layer(lattice, family, bits, complement)
        return {
            frozenset(
                (lattice.coords[lattice.bonds[b].a], lattice.coords[lattice.bonds[b].b])
            )
            for b in layer
        }

    layer_a = bond_set("F1", code.a_bits, False)
    layer_b = bond_set("F1", code.a_bits, True)
    layer_c = bond_set("F2", code.c_bits, False)
    layer_d = bond_set("F2", code.c_bits, True)

    score = 0
    for t in transforms:
        if {t(u, v) for u, v in present} != present:
            continue
        t_a = {frozenset(t(*c) for c in pair) for pair in layer_a}
        t_c = {frozenset(t(*c) for c in pair) for pair in layer_c}
        if t_a in (layer_a, layer_b) and t_c in (layer_c, layer_d):
            score += 1
    return score


# -- single-candidate evaluation ----------------------------------------------

@dataclass(frozen=True)
class EvaluationResult:
    code: PatternCode
    sequence: CycleSequence
    breakdown: SfaBreakdown
    best_path: CutPath
    tail_words: tuple[tuple[str, float], ...] | None  # None when depth % 4 == 0


def evaluate_candidate(
    lattice: Lattice,
    code: PatternCode,
    depth: int,
    path_cfg: PathSearchConfig = PathSearchConfig(),
    paths: Sequence[CutPath] | None = None,
    allow_junction_repeat: bool = False,
) -> EvaluationResult:
    """Score one pattern at a given depth.

    For depths not divisible by 4 the standard prefix is fixed and every
    admissible tail word is tried; the hardest (highest-cost) tail wins, with
    lexicographic tie-break."""
    validate_code(lattice, code)
    if paths is None:
        paths = enumerate_cut_paths(build_dual(lattice), path_cfg)
    model = SfaCostModel(lattice, paths)
    if depth % 4 == 0:
        seq = cycle_sequence(depth)
        breakdown, best_path = model.best_path(code, seq.letters)
        return EvaluationResult(code, seq, breakdown, best_path, None)
    words = []
    for seq in tail_sequences(depth, allow_junction_repeat):
        words.append((seq.tail, model.cost(code, seq.letters)))
    chosen_word, _ = min(words, key=lambda wc: (-wc[1], wc[0]))
    prefix = cycle_sequence(4 * (depth // 4)).letters
    seq = CycleSequence(prefix + chosen_word)
    breakdown, best_path = model.best_path(code, seq.letters)
    return EvaluationResult(code, seq, breakdown, best_path, tuple(words))


# -- parallel scoring ---------------------------------------------------------

_worker_model: SfaCostModel | None = None
_worker_letters: str = ""


def _init_worker(lattice: Lattice, paths: tuple[CutPath, ...], letters: str) -> None:
    global _worker_model, _worker_letters
    _worker_model = SfaCostModel(lattice, paths)
    _worker_letters = letters


def _score_range(
    start: int,
    stop: int,
    top_k: int,
    baseline_cost: float | None,
) -> tuple[int, list[tuple[float, int]]]:
    """Score code indices [start, stop); return the count of candidates costing
    strictly more than the baseline and the range's top-k entries plus every
    entry tied with the k-th."""
    assert _worker_model is not None
    model, letters = _worker_model, _worker_letters
    lattice = model.lattice
    entries: list[tuple[float, int]] = []
    n_greater = 0
    for idx in range(start, stop):
        cost = model.cost(code_from_index(lattice, idx), letters)
        entries.append((cost, idx))
        if baseline_cost is not None and cost > baseline_cost:
            n_greater += 1
    entries.sort(key=lambda e: (-e[0], e[1]))
    if len(entries) > top_k:
        cutoff = entries[top_k - 1][0]
        entries = [e for e in entries if e[0] >= cutoff]
    return n_greater, entries


def search(
    lattice: Lattice,
    cfg: SearchConfig,
    progress: Callable[[float], None] | None = None,
) -> SearchReport:
    """Evaluate every pattern code and rank the hardest circuits.

    The report is deterministic for a given lattice and config, independent of
    the thread count: ranges are merged by index and ties are ordered by
    descending symmetry score, then lexicographic code."""
    started = time.perf_counter()
    bits = lattice.m + lattice.n + 1
    if bits > cfg.enum_cap:
        raise CapacityExceededError(
            f"search needs 2^{bits} candidates, above the cap of 2^{cfg.enum_cap}"
        )
    if cfg.depth % 4 == 0:
        ranking_depth = cfg.depth
    else:
        ranking_depth = 4 * (cfg.depth // 4)
    letters = cycle_sequence(ranking_depth).letters

    dual = build_dual(lattice)
    paths = enumerate_cut_paths(dual, cfg.paths)
    model = SfaCostModel(lattice, paths)

    baseline = baseline_code(lattice)
    baseline_cost = model.cost(baseline, letters) if cfg.include_baseline else None

    total = code_count(lattice)
    n_chunks = min(PROGRESS_CHUNKS, total)
    bounds = [(total * i) // n_chunks for i in range(n_chunks + 1)]
    ranges = list(zip(bounds, bounds[1:]))

    results: list[tuple[int, list[tuple[float, int]]] | None] = [None] * len(ranges)
    done = 0
    if cfg.threads <= 1:
        _init_worker(lattice, paths, letters)
        for i, (start, stop) in enumerate(ranges):
            results[i] = _score_range(start, stop, cfg.top_k, baseline_cost)
            done += 1
            if progress is not None:
                progress(done / len(ranges))
    else:
        with ProcessPoolExecutor(
            max_workers=cfg.threads,
            initializer=_init_worker,
            initargs=(lattice, paths, letters),
        ) as pool:
            futures = {
                pool.submit(_score_range, start, stop, cfg.top_k, baseline_cost): i
                for i, (start, stop) in enumerate(ranges)
            }
            for future in as_completed(futures):
                results[futures[future]] = future.result()
                done += 1
                if progress is not None:
                    progress(done / len(ranges))

    n_greater = 0
    pool_entries: list[tuple[float, int]] = []
    for res in results:
        assert res is not None
        n_greater += res[0]
        pool_entries.extend(res[1])

    sym_cache: dict[int, int] = {}

    def sym(idx: int) -> int:
        if idx not in sym_cache:
            sym_cache[idx] = symmetry_score(lattice, code_from_index(lattice, idx))
        return sym_cache[idx]

    pool_entries.sort(key=lambda e: (-e[0], -sym(e[1]), e[1]))
    k = min(cfg.top_k, len(pool_entries))
    top_entries = pool_entries[:k]
    cutoff_cost = top_entries[-1][0]
    tie_set = tuple(
        code_from_index(lattice, idx)
        for cost, idx in pool_entries
        if cost == cutoff_cost
    )

    top = []
    for rank, (cost, idx) in enumerate(top_entries, start=1):
        code = code_from_index(lattice, idx)
        breakdown, best_path = model.best_path(code, letters)
        top.append(
            RankedCandidate(
                rank=rank,
                code=code,
                log2_cost=cost,
                symmetry=sym(idx),
                breakdown=breakdown,
                best_path=best_path,
            )
        )

    baseline_result = None
    if cfg.include_baseline:
        assert baseline_cost is not None
        bd, bp = model.best_path(baseline, letters)
        baseline_result = BaselineResult(
            code=baseline,
            log2_cost=baseline_cost,
            rank=1 + n_greater,
            breakdown=bd,
            best_path=bp,
        )

    evaluated = total
    tail_result = None
    if cfg.depth % 4 != 0:
        winner = top[0].code
        words = []
        for seq in tail_sequences(cfg.depth, cfg.allow_junction_repeat):
            words.append((seq.tail, model.cost(winner, seq.letters)))
        evaluated += len(words)
        chosen_word, _ = min(words, key=lambda wc: (-wc[1], wc[0]))
        full = CycleSequence(letters + chosen_word)
        bd, bp = model.best_path(winner, full.letters)
        tail_result = TailResult(
            prefix_depth=ranking_depth,
            words=tuple(words),
            chosen=chosen_word,
            breakdown=bd,
            best_path=bp,
        )

    return SearchReport(
        lattice_summary=lattice_summary(lattice),
        config={
            "depth": cfg.depth,
            "top_k": cfg.top_k,
            "e_star": cfg.paths.resolve_e_star(dual),
            "n_star": cfg.paths.n_star,
            "max_side": cfg.paths.max_side,
            "include_baseline": cfg.include_baseline,
        },
        depth=cfg.depth,
        ranking_letters=letters,
        total_candidates=total,
        candidates_evaluated=evaluated,
        paths_considered=len(paths),
        top=tuple(top),
        tie_set=tie_set,
        baseline=baseline_result,
        tail=tail_result,
        threads=cfg.threads,
        wall_time_s=time.perf_counter() - started,
    )
