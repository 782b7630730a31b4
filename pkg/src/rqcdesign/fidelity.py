"""Cross-entropy-benchmark fidelity prediction from per-component error rates.

The predicted fidelity is the product of (1 - error) over every single-qubit
gate, every two-qubit gate, and every qubit's preparation+readout.  A circuit
of depth d has d + 1 single-qubit layers: one between consecutive cycles and
one at each end.  The sample count keeps the 3-sigma statistical error below
the fidelity itself: Ns = sqrt(9 / F), rounded up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

from .errors import InvalidSpec
from .patterns import CircuitLayout

LN2 = math.log(2.0)


@dataclass(frozen=True)
class NoiseModel:
    """Uniform Pauli error rates, with optional per-qubit / per-bond overrides
    (keyed by qubit id for e1/er, bond id for e2)."""

    e1: float  # single-qubit gate
    e2: float  # two-qubit gate
    er: float  # preparation + measurement, per qubit
    e1_overrides: Mapping[int, float] = field(default_factory=dict)
    e2_overrides: Mapping[int, float] = field(default_factory=dict)
    er_overrides: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name, rate in ("e1", self.e1), ("e2", self.e2), ("er", self.er):
            if not 0.0 <= rate < 1.0:
                raise InvalidSpec(f"{name}={rate} must lie in [0, 1)")
        for overrides in (self.e1_overrides, self.e2_overrides, self.er_overrides):
            for rate in overrides.values():
                if not 0.0 <= rate < 1.0:
                    raise InvalidSpec(f"override rate {rate} must lie in [0, 1)")


class GateCounts(NamedTuple):
    n_1q: int  # |G1|
    n_2q: int  # |G2|
    n_qubits: int  # |Q|


class FidelityEstimate(NamedTuple):
    f: float
    log2_f: float  # always finite, even when f underflows
    n_samples: int
    counts: GateCounts


def gate_counts(circuit: CircuitLayout) -> GateCounts:
    n = circuit.lattice.n_qubits
    return GateCounts(
        n_1q=n * (circuit.depth + 1),
        n_2q=sum(len(cycle) for cycle in circuit.cycles),
        n_qubits=n,
    )


def _samples_from_log(log_f: float) -> int:
    # sqrt(9 / F); exact at F = 1 and safe against linear-domain underflow
    f = math.exp(log_f)
    if f > 1e-290:
        return math.ceil(math.sqrt(9.0 / f))
    # astronomically many samples: assemble the big integer from the base-2
    # magnitude, keeping float precision in the mantissa only
    log2_ns = 0.5 * (math.log2(9.0) - log_f / LN2)
    whole = math.floor(log2_ns)
    mantissa = 2.0 ** (log2_ns - whole)  # in [1, 2)
    if whole <= 53:
        return math.ceil(mantissa * (1 << whole))
    return math.ceil(mantissa * (1 << 53)) << (whole - 53)


def predict_fidelity(counts: GateCounts, noise: NoiseModel) -> FidelityEstimate:
    """Fidelity under uniform rates (overrides ignored; see circuit_fidelity)."""
    log_f = (
        counts.n_1q * math.log1p(-noise.e1)
        + counts.n_2q * math.log1p(-noise.e2)
        + counts.n_qubits * math.log1p(-noise.er)
    )
    return FidelityEstimate(
        f=math.exp(log_f),
        log2_f=log_f / LN2,
        n_samples=_samples_from_log(log_f),
        counts=counts,
    )


def circuit_fidelity(circuit: CircuitLayout, noise: NoiseModel) -> FidelityEstimate:
    """Fidelity for a specific circuit, honoring per-qubit/per-bond overrides."""
    counts = gate_counts(circuit)
    if not (noise.e1_overrides or noise.e2_overrides or noise.er_overrides):
        return predict_fidelity(counts, noise)
    layers = circuit.depth + 1
    log_f = 0.0
    for q in range(circuit.lattice.n_qubits):
        log_f += layers * math.log1p(-noise.e1_overrides.get(q, noise.e1))
        log_f += math.log1p(-noise.er_overrides.get(q, noise.er))
    for cycle in circuit.cycles:
        for bid in cycle:
            log_f += math.log1p(-noise.e2_overrides.get(bid, noise.e2))
    return FidelityEstimate(
        f=math.exp(log_f),
        log2_f=log_f / LN2,
        n_samples=_samples_from_log(log_f),
        counts=counts,
    )
