import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rqcdesign import (
    InvalidSpec,
    LatticeSpec,
    NoiseModel,
    assemble_circuit,
    baseline_code,
    build_lattice,
    circuit_fidelity,
    cycle_sequence,
    gate_counts,
    predict_fidelity,
)
from rqcdesign.fidelity import GateCounts


def grid(w, h):
    return build_lattice(LatticeSpec(mode="grid", width=w, height=h))


class TestGateCounts:
    def test_5x5_d20(self, grid5):
        circ = assemble_circuit(grid5, baseline_code(grid5), cycle_sequence(20))
        counts = gate_counts(circ)
        assert counts.n_1q == 25 * 21
        assert counts.n_qubits == 25

    def test_5x5_d8_two_qubit_count(self, grid5):
        circ = assemble_circuit(grid5, baseline_code(grid5), cycle_sequence(8))
        assert gate_counts(circ).n_2q == 80  # each of 40 bonds twice

    def test_single_qubit_lattice(self):
        lat = grid(1, 1)
        from rqcdesign import PatternCode

        circ = assemble_circuit(lat, PatternCode((), (), 0), cycle_sequence(4))
        counts = gate_counts(circ)
        assert counts == GateCounts(n_1q=5, n_2q=0, n_qubits=1)


class TestPredictFidelity:
    def test_zero_rates(self):
        est = predict_fidelity(GateCounts(100, 50, 25), NoiseModel(0, 0, 0))
        assert est.f == 1.0
        assert est.n_samples == 3

    def test_direct_arithmetic(self):
        est = predict_fidelity(GateCounts(4, 1, 2), NoiseModel(0.01, 0.01, 0.01))
        assert est.f == pytest.approx(0.99**7, rel=1e-12)
        assert est.n_samples == 4

    def test_table_fidelity_sample_count(self):
        # 0.0662% fidelity needs ceil(sqrt(9/0.000662)) = 117 samples
        assert math.ceil(math.sqrt(9 / 0.000662)) == 117
        # and the log-domain path agrees
        from rqcdesign.fidelity import _samples_from_log

        assert _samples_from_log(math.log(0.000662)) == 117

    def test_invalid_rates(self):
        with pytest.raises(InvalidSpec):
            NoiseModel(1.0, 0, 0)
        with pytest.raises(InvalidSpec):
            NoiseModel(0, -0.1, 0)

    def test_log_domain_matches_product(self):
        counts = GateCounts(2000, 800, 60)
        noise = NoiseModel(0.001, 0.006, 0.03)
        est = predict_fidelity(counts, noise)
        direct = (1 - 0.001) ** 2000 * (1 - 0.006) ** 800 * (1 - 0.03) ** 60
        assert est.f == pytest.approx(direct, rel=1e-12)
        assert est.log2_f == pytest.approx(math.log2(direct), rel=1e-12)

    def test_underflow_reports_log(self):
        est = predict_fidelity(GateCounts(10**6, 0, 0), NoiseModel(0.01, 0, 0))
        assert est.f == 0.0  # linear domain underflows
        assert math.isfinite(est.log2_f)
        assert est.n_samples > 10**300 or est.n_samples > 0

    @given(
        st.floats(0, 0.05),
        st.floats(0, 0.05),
        st.floats(0, 0.3),
        st.integers(4, 24),
    )
    @settings(max_examples=40, deadline=None)
    def test_monotone_in_rates_and_depth(self, e1, e2, er, depth):
        depth -= depth % 4
        lat = grid(3, 3)
        circ = assemble_circuit(lat, baseline_code(lat), cycle_sequence(max(4, depth)))
        counts = gate_counts(circ)
        base = predict_fidelity(counts, NoiseModel(e1, e2, er)).f
        assert predict_fidelity(counts, NoiseModel(min(e1 + 0.01, 0.99), e2, er)).f <= base
        assert predict_fidelity(counts, NoiseModel(e1, min(e2 + 0.01, 0.99), er)).f <= base
        deeper = assemble_circuit(
            lat, baseline_code(lat), cycle_sequence(max(4, depth) + 4)
        )
        if (e1, e2, er) != (0, 0, 0):
            assert predict_fidelity(gate_counts(deeper), NoiseModel(e1, e2, er)).f <= base


class TestOverrides:
    def test_uniform_matches_predict(self, grid5):
        circ = assemble_circuit(grid5, baseline_code(grid5), cycle_sequence(8))
        noise = NoiseModel(0.002, 0.005, 0.02)
        assert circuit_fidelity(circ, noise) == predict_fidelity(gate_counts(circ), noise)

    def test_per_qubit_override(self, grid5):
        circ = assemble_circuit(grid5, baseline_code(grid5), cycle_sequence(8))
        noise = NoiseModel(0.002, 0.005, 0.02, er_overrides={0: 0.5})
        est = circuit_fidelity(circ, noise)
        plain = circuit_fidelity(circ, NoiseModel(0.002, 0.005, 0.02))
        assert est.f == pytest.approx(plain.f * (1 - 0.5) / (1 - 0.02), rel=1e-9)

    def test_defective_qubits_not_counted(self):
        full = grid(5, 5)
        dented = build_lattice(
            LatticeSpec(mode="grid", width=5, height=5, defects=((2, 2),))
        )
        noise = NoiseModel(0.001, 0.005, 0.01)
        for lat, n in ((full, 25), (dented, 24)):
            circ = assemble_circuit(lat, baseline_code(lat), cycle_sequence(8))
            counts = gate_counts(circ)
            assert counts.n_qubits == n
            assert counts.n_1q == n * 9
        f_full = circuit_fidelity(
            assemble_circuit(full, baseline_code(full), cycle_sequence(8)), noise
        ).f
        f_dented = circuit_fidelity(
            assemble_circuit(dented, baseline_code(dented), cycle_sequence(8)), noise
        ).f
        assert f_dented > f_full  # fewer components, higher fidelity
