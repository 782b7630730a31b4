"""Simulation-cost estimate for a circuit under a two-subsystem split.

The cost of simulating both sides of a bipartition as statevectors is

    4^(n_c - n_wedge - n_DCD - (n_st + n_end)/2) * (2^n1 + 2^n2)

where n_c counts the two-qubit gates straddling the cut, wedges (two cross
gates in consecutive cycles sharing a qubit) and DCD formations (cross gates
on pairs (a,b), (b,c), (a,b) in three consecutive cycles) each fuse away one
branching factor of 4, and cross gates in the first or final cycle branch
with rank 2 instead of 4.  Everything is carried in the log2 domain.

Discounts are exclusive: DCD triples are matched first, wedge pairs among the
remaining gates, and the first/final-cycle halving applies only to gates left
over after both.  Matching is greedy in chronological (cycle, bond id) order
and wedges do not chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateCutError, InvalidSpec, NoFeasibleCutError
from .lattice import (
    Bipartition,
    Coord,
    CutPath,
    DualGraph,
    Lattice,
    bipartition_from_path,
    make_cut_path,
)
from .patterns import CircuitLayout, CycleSequence, PatternCode, assemble_circuit

CHI_FSIM = 4
CHI_CPHASE = 2

DEFAULT_N_STAR = 8
DEFAULT_MAX_SIDE = 33


@dataclass(frozen=True)
class PathSearchConfig:
    """Thresholds for the cut-path search.

    e_star: maximum path edge count; None picks the shortest straight
        full-width/full-height crossing of the lattice (always a feasible cut).
    n_star: maximum side imbalance |n1 - n2|; None disables the filter.
    max_side: cap on max(n1, n2) so one side's statevector stays storable;
        None disables the filter.
    """

    e_star: int | None = None
    n_star: int | None = DEFAULT_N_STAR
    max_side: int | None = DEFAULT_MAX_SIDE

    def resolve_e_star(self, dual: DualGraph) -> int:
        e = self.e_star if self.e_star is not None else default_e_star(dual, self)
        if e < 1:
            raise InvalidSpec(f"e_star must be >= 1, got {e}")
        return e

    def admits(self, n1: int, n2: int) -> bool:
        if self.n_star is not None and abs(n1 - n2) > self.n_star:
            return False
        if self.max_side is not None and max(n1, n2) > self.max_side:
            return False
        return True


def straight_crossings(dual: DualGraph) -> tuple[CutPath, ...]:
    """Full straight-line cuts along dual columns and rows.

    A column (row) qualifies when its dual sites form one contiguous run whose
    ends are boundary and whose middle is interior.
    """
    by_col: dict[int, list[int]] = {}
    by_row: dict[int, list[int]] = {}
    for u, v in dual.sites:
        by_col.setdefault(u, []).append(v)
        by_row.setdefault(v, []).append(u)

    found = []
    for values, build in (
        (by_col, lambda u, v: (u, v)),
        (by_row, lambda v, u: (u, v)),
    ):
        for key, coords in values.items():
            coords = sorted(coords)
            runs: list[list[int]] = [[coords[0]]]
            for c in coords[1:]:
                if c == runs[-1][-1] + 1:
                    runs[-1].append(c)
                else:
                    runs.append([c])
            for run in runs:
                if len(run) < 2:
                    continue
                sites = [build(key, c) for c in run]
                ends_ok = sites[0] in dual.boundary and sites[-1] in dual.boundary
                mids_ok = all(s not in dual.boundary for s in sites[1:-1])
                if ends_ok and mids_ok:
                    found.append(make_cut_path(dual, sites))
    return tuple(found)


def default_e_star(dual: DualGraph, cfg: "PathSearchConfig | None" = None) -> int:
    """Edge count of the shortest straight crossing that is itself a feasible
    cut under the side filters (so it witnesses a nonempty path set).

    Non-convex footprints clip straight lines into short boundary nicks that
    slice off a corner qubit or two; requiring admissibility keeps those from
    collapsing the budget.
    """
    feasible = []
    for path in straight_crossings(dual):
        try:
            bip = bipartition_from_path(dual.lattice, path)
        except DegenerateCutError:
            continue
        if cfg is None or cfg.admits(bip.n1, bip.n2):
            feasible.append(path.edges)
    if feasible:
        return min(feasible)
    # No admissible straight crossing (heavily concave masks or tight
    # filters); fall back to the bounding-box extent, which upper-bounds any
    # sensible cut.
    us = [u for u, _ in dual.sites]
    vs = [v for _, v in dual.sites]
    return max(max(us) - min(us), max(vs) - min(vs)) + 1


def enumerate_cut_paths(
    dual: DualGraph, cfg: PathSearchConfig = PathSearchConfig()
) -> tuple[CutPath, ...]:
    """All boundary-to-boundary open paths with at most e_star edges.

    Depth-first search from every boundary site; a path ends as soon as it
    reaches another boundary site, so interior sites are strictly interior.
    Paths are deduplicated as undirected site sequences, and any path that
    fails to produce a balanced two-sided bipartition (empty side, imbalance
    above n_star, side above max_side, or a side pair still joined by an
    uncrossed bond) is dropped.  Returned sorted by (edges, sites).
    """
    n_qubits = dual.lattice.n_qubits
    if cfg.max_side is not None and 2 * cfg.max_side < n_qubits:
        raise NoFeasibleCutError(
            f"{n_qubits} qubits cannot split with both sides <= {cfg.max_side}"
        )
    e_star = cfg.resolve_e_star(dual)
    boundary = dual.boundary
    neighbours = dual.neighbours
    seen: set[tuple[Coord, ...]] = set()

    def dfs(path: list[Coord], visited: set[Coord]) -> None:
        if len(path) - 1 >= e_star:
            return
        for q in neighbours[path[-1]]:
            if q in visited:
                continue
            if q in boundary:
                sites = tuple(path) + (q,)
                if sites[-1] < sites[0]:
                    sites = sites[::-1]
                seen.add(sites)
            else:
                path.append(q)
                visited.add(q)
                dfs(path, visited)
                path.pop()
                visited.remove(q)

    for q0 in sorted(boundary):
        dfs([q0], {q0})

    lattice = dual.lattice
    kept: list[CutPath] = []
    for sites in seen:
        path = make_cut_path(dual, sites)
        try:
            bip = bipartition_from_path(lattice, path)
        except DegenerateCutError:
            continue
        if cfg.admits(bip.n1, bip.n2):
            kept.append(path)
    if not kept:
        raise NoFeasibleCutError(
            f"no cut path with E <= {e_star} satisfies the side filters "
            f"(n_star={cfg.n_star}, max_side={cfg.max_side})"
        )
    kept.sort(key=lambda p: (p.edges, p.sites))
    return tuple(kept)


@dataclass(frozen=True)
class CrossGate:
    """A two-qubit gate whose endpoints lie on opposite sides of the cut."""

    cycle: int
    bond: int
    qubits: tuple[int, int]
    in_first_cycle: bool
    in_final_cycle: bool


def cross_gates(circuit: CircuitLayout, bip: Bipartition) -> tuple[CrossGate, ...]:
    """Chronological (cycle-major, then bond id) list of cut-straddling gates."""
    sides = bip.sides
    bonds = circuit.lattice.bonds
    last = circuit.depth - 1
    out = []
    for t, cycle in enumerate(circuit.cycles):
        for bid in cycle:
            bond = bonds[bid]
            if sides[bond.a] != sides[bond.b]:
                out.append(
                    CrossGate(
                        cycle=t,
                        bond=bid,
                        qubits=(bond.a, bond.b),
                        in_first_cycle=t == 0,
                        in_final_cycle=t == last,
                    )
                )
    return tuple(out)


def detect_dcd(
    gates: Sequence[CrossGate],
) -> tuple[int, tuple[tuple[int, int, int], ...]]:
    """Greedy chronological match of (a,b), (b,c), (a,b) triples in three
    consecutive cycles.  Returns the count and the matched index triples."""
    by_cycle: dict[int, list[int]] = {}
    for i, g in enumerate(gates):
        by_cycle.setdefault(g.cycle, []).append(i)
    used: set[int] = set()
    triples = []
    for i, g1 in enumerate(gates):
        if i in used:
            continue
        t, pair = g1.cycle, set(g1.qubits)
        third = next(
            (
                k
                for k in by_cycle.get(t + 2, ())
                if k not in used and set(gates[k].qubits) == pair
            ),
            None,
        )
        if third is None:
            continue
        middle = next(
            (
                j
                for j in by_cycle.get(t + 1, ())
                if j not in used and len(pair & set(gates[j].qubits)) == 1
            ),
            None,
        )
        if middle is None:
            continue
        used.update((i, middle, third))
        triples.append((i, middle, third))
    return len(triples), tuple(triples)


def detect_wedges(
    gates: Sequence[CrossGate],
) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Greedy left-to-right pairing of cross gates in adjacent cycles that
    share exactly one qubit; each gate joins at most one wedge."""
    by_cycle: dict[int, list[int]] = {}
    for i, g in enumerate(gates):
        by_cycle.setdefault(g.cycle, []).append(i)
    used: set[int] = set()
    pairs = []
    for i, g1 in enumerate(gates):
        if i in used:
            continue
        pair = set(g1.qubits)
        partner = None
        for j in by_cycle.get(g1.cycle + 1, ()):
            if j in used:
                continue
            shared = pair & set(gates[j].qubits)
            if len(shared) != 1:
                continue
            # No other cross gate may touch the shared qubit between the two.
            q = next(iter(shared))
            blocked = any(
                q in gates[k].qubits for k in range(i + 1, j) if k not in (i, j)
            )
            if not blocked:
                partner = j
                break
        if partner is not None:
            used.update((i, partner))
            pairs.append((i, partner))
    return len(pairs), tuple(pairs)


@dataclass(frozen=True)
class SfaBreakdown:
    """All counters of the cost formula plus the resulting log2 cost."""

    n_c: int
    n_wedge: int
    n_dcd: int
    n_st: int
    n_end: int
    n1: int
    n2: int
    log2_cost: float
    chi_fsim: int = CHI_FSIM
    chi_cphase: int = CHI_CPHASE


def log2_pow_sum(n1: int, n2: int) -> float:
    """log2(2^n1 + 2^n2) via the exact log-sum of two powers."""
    hi, lo = (n1, n2) if n1 >= n2 else (n2, n1)
    return hi + math.log2(1.0 + 2.0 ** (lo - hi))


def combine_counters(
    n_c: int, n_wedge: int, n_dcd: int, n_st: int, n_end: int, n1: int, n2: int
) -> SfaBreakdown:
    exponent = 2 * (n_c - n_wedge - n_dcd) - (n_st + n_end)
    log2_cost = max(0, exponent) + log2_pow_sum(n1, n2)
    return SfaBreakdown(
        n_c=n_c,
        n_wedge=n_wedge,
        n_dcd=n_dcd,
        n_st=n_st,
        n_end=n_end,
        n1=n1,
        n2=n2,
        log2_cost=log2_cost,
    )


def evaluate_path(circuit: CircuitLayout, bip: Bipartition) -> SfaBreakdown:
    """Cost counters for one bipartition, with exclusive discounts:
    DCD first, wedges among the remaining gates, then first/final halving
    for gates not already discounted."""
    gates = cross_gates(circuit, bip)
    _, triples = detect_dcd(gates)
    in_dcd = {i for tri in triples for i in tri}
    remaining = [g for i, g in enumerate(gates) if i not in in_dcd]
    n_wedge, pairs = detect_wedges(remaining)
    in_wedge = {i for pr in pairs for i in pr}
    free = [g for i, g in enumerate(remaining) if i not in in_wedge]
    return combine_counters(
        n_c=len(gates),
        n_wedge=n_wedge,
        n_dcd=len(triples),
        n_st=sum(g.in_first_cycle for g in free),
        n_end=sum(g.in_final_cycle for g in free),
        n1=bip.n1,
        n2=bip.n2,
    )


def sfa_cost(
    circuit: CircuitLayout,
    paths: Sequence[CutPath],
    cfg: PathSearchConfig = PathSearchConfig(),
) -> tuple[SfaBreakdown, CutPath]:
    """Minimum cost over a set of cut paths; ties break toward fewer edges,
    then the lexicographically smallest site sequence."""
    if not paths:
        raise NoFeasibleCutError("no cut paths to evaluate")
    best: tuple[float, int, tuple[Coord, ...]] | None = None
    best_result: tuple[SfaBreakdown, CutPath] | None = None
    for path in paths:
        bip = bipartition_from_path(circuit.lattice, path)
        bd = evaluate_path(circuit, bip)
        key = (bd.log2_cost, path.edges, path.sites)
        if best is None or key < best:
            best = key
            best_result = (bd, path)
    assert best_result is not None
    return best_result


# ---------------------------------------------------------------------------
# Fast kernel for candidate scoring.
#
# Scoring a pattern only needs, per path, the letter of each crossed bond:
# everything else (sides, n1/n2, the cycle sequence) is fixed by the lattice.
# The kernel therefore memoizes on (sequence, swap, bits of the rows that the
# crossed bonds actually live in), which collapses the 2^(m+n+1) code space
# to a handful of distinct evaluations per path.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _PathProfile:
    path: CutPath
    n1: int
    n2: int
    side_term: float
    # per crossed bond: (bit position in its family bitstring, parity,
    # bond id, qubit a, qubit b); sorted by bond id
    f1: tuple[tuple[int, int, int, int, int], ...]
    f2: tuple[tuple[int, int, int, int, int], ...]
    rows_f1: tuple[int, ...]  # bit positions referenced by f1
    rows_f2: tuple[int, ...]


class SfaCostModel:
    """Reusable scorer: one lattice, one path set, many candidate patterns."""

    def __init__(self, lattice: Lattice, paths: Sequence[CutPath]):
        if not paths:
            raise NoFeasibleCutError("no cut paths to evaluate")
        self.lattice = lattice
        self.paths = tuple(paths)
        pos_f1 = {row: i for i, row in enumerate(lattice.rows_f1)}
        pos_f2 = {row: i for i, row in enumerate(lattice.rows_f2)}
        profiles = []
        for path in self.paths:
            bip = bipartition_from_path(lattice, path)
            f1 = []
            f2 = []
            for bid in sorted(path.crossed_bonds):
                bond = lattice.bonds[bid]
                if bond.family == "F1":
                    f1.append((pos_f1[bond.row], bond.parity, bid, bond.a, bond.b))
                else:
                    f2.append((pos_f2[bond.row], bond.parity, bid, bond.a, bond.b))
            profiles.append(
                _PathProfile(
                    path=path,
                    n1=bip.n1,
                    n2=bip.n2,
                    side_term=log2_pow_sum(bip.n1, bip.n2),
                    f1=tuple(f1),
                    f2=tuple(f2),
                    rows_f1=tuple(sorted({r for r, *_ in f1})),
                    rows_f2=tuple(sorted({r for r, *_ in f2})),
                )
            )
        # Ascending side term lets min_cost stop early: a path's cost is never
        # below its side term.
        profiles.sort(key=lambda p: (p.side_term, p.path.edges, p.path.sites))
        self._profiles = tuple(profiles)
        self._memo: dict[tuple, float] = {}

    def _exponent(self, profile: _PathProfile, code: PatternCode, letters: str) -> int:
        """Floored exponent of the discount term for one path, from scratch."""
        a_bits, c_bits, swap = code
        groups: dict[str, list[tuple[int, int, int]]] = {
            "A": [],
            "B": [],
            "C": [],
            "D": [],
        }
        for row, parity, bid, qa, qb in profile.f1:
            pair = "AB" if swap == 0 else "CD"
            letter = pair[0] if a_bits[row] == parity else pair[1]
            groups[letter].append((bid, qa, qb))
        for row, parity, bid, qa, qb in profile.f2:
            pair = "CD" if swap == 0 else "AB"
            letter = pair[0] if c_bits[row] == parity else pair[1]
            groups[letter].append((bid, qa, qb))
        qmaps = {
            letter: {q: g for g in gs for q in (g[1], g[2])}
            for letter, gs in groups.items()
        }

        d = len(letters)
        n_c = sum(len(groups[letter]) for letter in letters)
        used: set[tuple[int, int]] = set()
        n_dcd = 0
        for t in range(d - 2):
            if letters[t] != letters[t + 2]:
                continue
            qmid = qmaps[letters[t + 1]]
            for bid, qa, qb in groups[letters[t]]:
                if (t, bid) in used or (t + 2, bid) in used:
                    continue
                cand = [
                    g
                    for g in (qmid.get(qa), qmid.get(qb))
                    if g is not None and (t + 1, g[0]) not in used
                ]
                if not cand:
                    continue
                g2 = min(cand)
                used.update(((t, bid), (t + 1, g2[0]), (t + 2, bid)))
                n_dcd += 1
        n_wedge = 0
        for t in range(d - 1):
            qnext = qmaps[letters[t + 1]]
            for bid, qa, qb in groups[letters[t]]:
                if (t, bid) in used:
                    continue
                cand = [
                    g
                    for g in (qnext.get(qa), qnext.get(qb))
                    if g is not None and (t + 1, g[0]) not in used and g[0] != bid
                ]
                if not cand:
                    continue
                g2 = min(cand)
                used.update(((t, bid), (t + 1, g2[0])))
                n_wedge += 1
        n_st = sum(1 for bid, _, _ in groups[letters[0]] if (0, bid) not in used)
        n_end = sum(
            1 for bid, _, _ in groups[letters[d - 1]] if (d - 1, bid) not in used
        )
        return max(0, 2 * (n_c - n_wedge - n_dcd) - (n_st + n_end))

    def path_cost(
        self, profile: _PathProfile, code: PatternCode, letters: str
    ) -> float:
        key = (
            letters,
            code.order_swap,
            tuple(code.a_bits[r] for r in profile.rows_f1),
            tuple(code.c_bits[r] for r in profile.rows_f2),
            profile.path.sites,
        )
        cost = self._memo.get(key)
        if cost is None:
            cost = self._exponent(profile, code, letters) + profile.side_term
            self._memo[key] = cost
        return cost

    def cost(self, code: PatternCode, letters: str) -> float:
        """Minimum log2 cost over all paths for one candidate."""
        best = math.inf
        for profile in self._profiles:
            if profile.side_term > best:
                break  # profiles are sorted; no later path can do better
            c = self.path_cost(profile, code, letters)
            if c < best:
                best = c
        return best

    def best_path(
        self, code: PatternCode, letters: str
    ) -> tuple[SfaBreakdown, CutPath]:
        """Full breakdown at the argmin path, tie-broken like sfa_cost."""
        best_key: tuple[float, int, tuple[Coord, ...]] | None = None
        best_profile: _PathProfile | None = None
        for profile in self._profiles:
            if best_key is not None and profile.side_term > best_key[0]:
                break
            c = self.path_cost(profile, code, letters)
            key = (c, profile.path.edges, profile.path.sites)
            if best_key is None or key < best_key:
                best_key = key
                best_profile = profile
        assert best_profile is not None
        circuit = assemble_circuit(self.lattice, code, CycleSequence(letters))
        bip = bipartition_from_path(self.lattice, best_profile.path)
        return evaluate_path(circuit, bip), best_profile.path
