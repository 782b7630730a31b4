"""Desk-scale verification tools.

Everything here exists to check the estimator from an independent direction:
an exhaustive path enumerator with no search shortcuts, a dense statevector
simulator small enough to run on a laptop, entanglement-entropy profiles
across a fixed cut, and numerical operator-Schmidt ranks for the gate-fusion
claims behind the wedge/DCD discounts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityExceededError, DegenerateCutError, InvalidSpec
from .lattice import Bipartition, Coord, CutPath, DualGraph, bipartition_from_path, make_cut_path
from .patterns import CircuitLayout

SIM_DEFAULT_CAP = 20
SIM_HARD_CAP = 24
ORACLE_SITE_CAP = 40

SVD_REL_TOL = 1e-10
ENTROPY_CLAMP = 1e-15


# -- gate matrices -----------------------------------------------------------

def fsim(theta: float, phi: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array(
        [
            [1, 0, 0, 0],
            [0, c, -1j * s, 0],
            [0, -1j * s, c, 0],
            [0, 0, 0, np.exp(-1j * phi)],
        ],
        dtype=complex,
    )


def cphase(phi: float) -> np.ndarray:
    return np.diag([1, 1, 1, np.exp(-1j * phi)]).astype(complex)


SQRT_X = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])
SQRT_Y = 0.5 * np.array([[1 + 1j, -1 - 1j], [1 + 1j, 1 + 1j]])
SQRT_W = np.array(
    [[np.sqrt(0.5), -0.5 - 0.5j], [0.5 - 0.5j, np.sqrt(0.5)]], dtype=complex
)
DISCRETE_SET = (SQRT_X, SQRT_Y, SQRT_W)


def haar_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z / np.sqrt(2))
    return q * (np.diag(r) / np.abs(np.diag(r)))


@dataclass(frozen=True)
class GateModel:
    """Gate conventions for the simulator.

    single_qubit "haar" draws Haar-random 2x2 unitaries; "discrete" draws from
    the sqrt(X)/sqrt(Y)/sqrt(W) set without repeating a qubit's previous draw.
    """

    theta: float = np.pi / 2
    phi: float = np.pi / 6
    single_qubit: str = "haar"

    def two_qubit(self) -> np.ndarray:
        return fsim(self.theta, self.phi)


# -- exhaustive path oracle ---------------------------------------------------

def brute_force_paths(dual: DualGraph, e_star: int) -> tuple[CutPath, ...]:
    """Every open cut path with at most e_star edges, found the slow way.

    Enumerates all simple walks from every dual site with no early
    termination, then keeps the ones that start and end on the boundary with
    strictly interior middles and that yield a two-sided bipartition.
    Used only as a test oracle; refuses duals above ORACLE_SITE_CAP sites.
    """
    if len(dual.sites) > ORACLE_SITE_CAP:
        raise CapacityExceededError(
            f"oracle limited to {ORACLE_SITE_CAP} dual sites, got {len(dual.sites)}"
        )
    walks: list[tuple[Coord, ...]] = []

    def extend(walk: tuple[Coord, ...]) -> None:
        if len(walk) > 1:
            walks.append(walk)
        if len(walk) - 1 >= e_star:
            return
        for q in dual.neighbours[walk[-1]]:
            if q not in walk:
                extend(walk + (q,))

    for start in dual.sites:
        extend((start,))

    kept: set[tuple[Coord, ...]] = set()
    for walk in walks:
        if walk[0] not in dual.boundary or walk[-1] not in dual.boundary:
            continue
        if any(s in dual.boundary for s in walk[1:-1]):
            continue
        sites = walk if walk[0] <= walk[-1] else walk[::-1]
        if sites in kept:
            continue
        path = make_cut_path(dual, sites)
        try:
            bipartition_from_path(dual.lattice, path)
        except DegenerateCutError:
            continue
        kept.add(sites)
    return tuple(
        make_cut_path(dual, sites)
        for sites in sorted(kept, key=lambda s: (len(s), s))
    )


# -- dense statevector simulation ---------------------------------------------

def _apply_1q(state: np.ndarray, gate: np.ndarray, k: int) -> np.ndarray:
    psi = state.reshape(2**k, 2, -1)
    return np.einsum("ij,ajb->aib", gate, psi).reshape(-1)


def _apply_2q(state: np.ndarray, gate: np.ndarray, j: int, k: int) -> np.ndarray:
    # qubit j is the more significant axis; gate indices are (j out, k out, j in, k in)
    if j > k:
        j, k = k, j
        g = gate.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2)
    else:
        g = gate.reshape(2, 2, 2, 2)
    psi = state.reshape(2**j, 2, 2 ** (k - j - 1), 2, -1)
    return np.einsum("efgh,agbhc->aebfc", g, psi).reshape(-1)


def _single_qubit_layer(
    rng: np.random.Generator, n: int, model: GateModel, previous: list[int] | None
) -> tuple[list[np.ndarray], list[int] | None]:
    if model.single_qubit == "haar":
        return [haar_unitary(rng) for _ in range(n)], None
    if model.single_qubit != "discrete":
        raise InvalidSpec(f"unknown single-qubit model {model.single_qubit!r}")
    gates = []
    chosen = []
    for q in range(n):
        options = [0, 1, 2]
        if previous is not None:
            options.remove(previous[q])
        pick = int(rng.choice(options))
        chosen.append(pick)
        gates.append(DISCRETE_SET[pick])
    return gates, chosen


def simulate_statevector(
    circuit: CircuitLayout,
    seed: int,
    model: GateModel = GateModel(),
    cap: int = SIM_DEFAULT_CAP,
) -> np.ndarray:
    """Final state of the circuit from |0...0>, qubit axes in lattice id order.

    Applies depth+1 seeded random single-qubit layers (one before every cycle
    and one after the last) interleaved with the two-qubit gates of each
    cycle, and renormalizes the result.
    """
    state = _run_circuit(circuit, seed, model, cap)
    return state / np.linalg.norm(state)


def _run_circuit(circuit, seed, model, cap, per_cycle=None):
    n = circuit.lattice.n_qubits
    limit = min(cap, SIM_HARD_CAP)
    if n > limit:
        raise CapacityExceededError(f"{n} qubits exceeds the simulation cap {limit}")
    if not np.isfinite(model.theta) or not np.isfinite(model.phi):
        raise InvalidSpec("invalid fsim angles")
    rng = np.random.default_rng(seed)
    two_q = model.two_qubit()
    bonds = circuit.lattice.bonds

    state = np.zeros(2**n, dtype=complex)
    state[0] = 1.0
    previous: list[int] | None = None
    gates, previous = _single_qubit_layer(rng, n, model, previous)
    for q, g in enumerate(gates):
        state = _apply_1q(state, g, q)
    if per_cycle is not None:
        per_cycle(0, state)
    for t, cycle in enumerate(circuit.cycles):
        for bid in cycle:
            state = _apply_2q(state, two_q, bonds[bid].a, bonds[bid].b)
        gates, previous = _single_qubit_layer(rng, n, model, previous)
        for q, g in enumerate(gates):
            state = _apply_1q(state, g, q)
        if per_cycle is not None:
            per_cycle(t + 1, state)
    return state


@dataclass(frozen=True)
class EntropyProfile:
    """Entanglement entropy (bits) across a fixed cut after each cycle;
    entry 0 is the state before any two-qubit gate."""

    entropies: tuple[float, ...]
    n1: int
    n2: int
    seed: int
    pattern: str
    letters: str

    @property
    def depth(self) -> int:
        return len(self.entropies) - 1


def entanglement_entropy(state: np.ndarray, side_qubits: list[int], n: int) -> float:
    others = [q for q in range(n) if q not in side_qubits]
    psi = state.reshape([2] * n).transpose(side_qubits + others)
    mat = psi.reshape(2 ** len(side_qubits), -1)
    lam = np.linalg.svd(mat, compute_uv=False) ** 2
    return max(0.0, float(-np.sum(lam * np.log2(np.clip(lam, ENTROPY_CLAMP, None)))))


def entropy_profile(
    circuit: CircuitLayout,
    bip: Bipartition,
    seed: int,
    model: GateModel = GateModel(),
    cap: int = SIM_DEFAULT_CAP,
) -> EntropyProfile:
    n = circuit.lattice.n_qubits
    side1 = [q for q in range(n) if bip.sides[q] == 0]
    values: list[float] = []

    def record(_cycle: int, state: np.ndarray) -> None:
        values.append(entanglement_entropy(state, side1, n))

    _run_circuit(circuit, seed, model, cap, per_cycle=record)
    return EntropyProfile(
        entropies=tuple(values),
        n1=bip.n1,
        n2=bip.n2,
        seed=seed,
        pattern=circuit.code.text(),
        letters=circuit.sequence.letters,
    )


# -- operator Schmidt rank ------------------------------------------------------

def operator_schmidt_rank(
    operator: np.ndarray, side: list[int], rel_tol: float = SVD_REL_TOL
) -> int:
    """Schmidt rank of an operator across a split of its qubits.

    side lists the qubit positions (0 = most significant axis) forming one
    half of the split.  Singular values below rel_tol times the largest are
    treated as zero.
    """
    dim = operator.shape[0]
    if operator.shape != (dim, dim) or dim & (dim - 1):
        raise InvalidSpec("operator must be square with power-of-two dimension")
    if dim > 64:
        raise CapacityExceededError("operator Schmidt rank limited to 6 qubits")
    q = dim.bit_length() - 1
    if not side or not all(0 <= s < q for s in side) or len(set(side)) != len(side):
        raise InvalidSpec(f"invalid split {side} for a {q}-qubit operator")
    a = sorted(side)
    b = [s for s in range(q) if s not in side]
    if not b:
        raise InvalidSpec("split must leave qubits on both sides")
    tensor = operator.reshape([2] * (2 * q))
    # axes: outputs 0..q-1, inputs q..2q-1 -> group (A out, A in), (B out, B in)
    perm = a + [q + s for s in a] + b + [q + s for s in b]
    mat = tensor.transpose(perm).reshape(4 ** len(a), 4 ** len(b))
    sv = np.linalg.svd(mat, compute_uv=False)
    return int(np.sum(sv > rel_tol * sv[0]))
