import math

import numpy as np
import pytest

from isingbraid.circuit import Circuit, Gate, GateKind
from isingbraid.noise import (
    NoiseModel,
    apply_measurement_error,
    noisy_fidelity,
    run_noisy,
)
from isingbraid.protocol import LogicalLabel, ProtocolParams, run_scenario
from isingbraid.statevector import SampleCounts, fidelity, run, zero_state

FAST = ProtocolParams(dh=0.5, T=0.5, dt=0.2, shots=2000)

BELL = Circuit(2, (Gate(GateKind.H, (0,)), Gate(GateKind.CNOT, (0, 1))))


def test_model_validation():
    NoiseModel(eps_bitflip=0.5, eps_phase=0.0)
    with pytest.raises(ValueError):
        NoiseModel(eps_bitflip=0.6)
    with pytest.raises(ValueError):
        NoiseModel(eps_phase=-0.1)
    with pytest.raises(ValueError):
        NoiseModel(trajectories=0)
    with pytest.raises(ValueError):
        NoiseModel(eps_bitflip_2q=0.7)


def test_per_arity_overrides():
    m = NoiseModel(eps_bitflip=0.1, eps_bitflip_2q=0.3)
    assert m.bitflip_for(1) == 0.1
    assert m.bitflip_for(2) == 0.3
    assert m.phase_for(1) == 0.0


def test_zero_noise_is_bit_exact():
    state = zero_state(2)
    noiseless = run(state, BELL)
    noisy = run_noisy(BELL, state, NoiseModel(), seed=0)
    assert np.array_equal(noisy.amplitudes, noiseless.amplitudes)


def test_bitflip_half_is_bernoulli():
    circ = Circuit(1, (Gate(GateKind.X, (0,)),))
    model = NoiseModel(eps_bitflip=0.5)
    outcomes = []
    for seed in range(400):
        out = run_noisy(circ, zero_state(1), model, seed)
        outcomes.append(abs(out.amplitudes[0]) > 0.5)  # flipped back to |0>
    frac = sum(outcomes) / len(outcomes)
    assert frac == pytest.approx(0.5, abs=0.1)


def test_phase_errors_trivial_on_z_diagonal_circuit():
    circ = Circuit(
        2, (Gate(GateKind.RZ, (0,), 0.7), Gate(GateKind.Z, (1,)),
            Gate(GateKind.RZ, (1,), -0.3))
    )
    noiseless = run(zero_state(2), circ)
    model = NoiseModel(eps_phase=0.4)
    for seed in range(10):
        noisy = run_noisy(circ, zero_state(2), model, seed)
        assert fidelity(noisy, noiseless) == pytest.approx(1.0, abs=1e-12)


def test_trajectory_determinism():
    model = NoiseModel(eps_bitflip=0.2, eps_phase=0.1)
    a = run_noisy(BELL, zero_state(2), model, seed=5)
    b = run_noisy(BELL, zero_state(2), model, seed=5)
    assert np.array_equal(a.amplitudes, b.amplitudes)


def _enumerated_bell_fidelity(px: float, pz: float) -> float:
    """Exact mixed-state fidelity for BELL under the per-gate channel,
    by enumerating every Pauli insertion pattern."""
    target = run(zero_state(2), BELL)

    def branches(qubits):
        # (probability, [paulis]) for one gate's touched qubits
        out = [(1.0, [])]
        for q in qubits:
            nxt = []
            for p, ops in out:
                nxt.append((p * (1 - px) * (1 - pz), ops))
                nxt.append((p * px * (1 - pz), ops + [(GateKind.X, q)]))
                nxt.append((p * (1 - px) * pz, ops + [(GateKind.Z, q)]))
                # X applied first, then Z, matching run_noisy's order
                nxt.append((p * px * pz, ops + [(GateKind.X, q), (GateKind.Z, q)]))
            out = nxt
        return out

    total = 0.0
    for p1, ops1 in branches((0,)):
        for p2, ops2 in branches((0, 1)):
            gates = [BELL.gates[0]]
            gates += [Gate(k, (q,)) for k, q in ops1]
            gates.append(BELL.gates[1])
            gates += [Gate(k, (q,)) for k, q in ops2]
            state = run(zero_state(2), Circuit(2, tuple(gates)))
            total += p1 * p2 * fidelity(state, target)
    return total


def test_trajectory_estimator_is_unbiased():
    px = pz = 0.1
    exact = _enumerated_bell_fidelity(px, pz)
    model = NoiseModel(eps_bitflip=px, eps_phase=pz)
    target = run(zero_state(2), BELL)
    n = 100_000
    vals = np.empty(n)
    for t in range(n):
        vals[t] = fidelity(run_noisy(BELL, zero_state(2), model, [9, t]), target)
    stderr = vals.std(ddof=1) / math.sqrt(n)
    assert vals.mean() == pytest.approx(exact, abs=3 * stderr)


def test_noisy_fidelity_zero_eps_equals_noiseless():
    noiseless = run_scenario(FAST, "translate_with_coupler", LogicalLabel.ALL_UP)
    mean, stderr = noisy_fidelity(
        FAST, "translate_with_coupler", LogicalLabel.ALL_UP,
        NoiseModel(trajectories=3),
    )
    assert mean == noiseless.exact_fidelity
    assert stderr == 0.0


def test_two_qubit_gate_dominance():
    eps = 3e-4
    only_2q = NoiseModel(eps_bitflip_2q=eps, eps_bitflip_1q=0.0,
                         eps_bitflip=0.0, trajectories=40)
    only_1q = NoiseModel(eps_bitflip_1q=eps, eps_bitflip_2q=0.0,
                         eps_bitflip=0.0, trajectories=40)
    f2, e2 = noisy_fidelity(FAST, "braid", LogicalLabel.ALL_UP, only_2q, seed=2)
    f1, e1 = noisy_fidelity(FAST, "braid", LogicalLabel.ALL_UP, only_1q, seed=2)
    # more two-qubit gate-qubit pairs per step -> larger degradation
    assert f2 < f1 + 2 * (e1 + e2)


def test_measurement_error_identity_and_full_flip():
    counts = SampleCounts(counts={"010": 5, "111": 3}, shots=8, n_bits=3)
    assert apply_measurement_error(counts, 0.0, seed=1) == counts
    flipped = apply_measurement_error(counts, 1.0, seed=1)
    assert flipped.counts == {"101": 5, "000": 3}


def test_measurement_error_binomial_rate():
    counts = SampleCounts(counts={"000000": 20_000}, shots=20_000, n_bits=6)
    out = apply_measurement_error(counts, 1e-2, seed=4)
    frac = out.counts.get("000000", 0) / out.shots
    assert frac == pytest.approx((1 - 1e-2) ** 6, abs=0.01)
