import numpy as np
import pytest

from isingbraid.analysis import (
    dense_coupler,
    dense_hamiltonian,
    dense_summands,
    dense_zeeman,
    dense_zz_layer,
    expm_hermitian,
    operator_norm,
    phase_aligned_distance,
)
from isingbraid.circuit import CircuitError, depth
from isingbraid.statevector import dense_unitary
from isingbraid.trotter import (
    GATES_PER_STEP_WITH_COUPLER,
    ChainConfig,
    chain_pairs,
    coupler_circuit,
    first_layer_pairs,
    pair_interaction_circuit,
    second_layer_pairs,
    trotter_step_circuit,
    zeeman_circuit,
    zz_layer_circuit,
)

CFG6 = ChainConfig(chain_len=3, J=1.0, J_C=0.3, fields=(0.01, 0.01, 0.01, 5, 5, 5))
DT = 0.2


def test_config_validation():
    with pytest.raises(ValueError):
        ChainConfig(chain_len=2, J=1.0, J_C=0.0, fields=(1, 1, 1, 1))
    with pytest.raises(ValueError):
        ChainConfig(chain_len=3, J=-1.0, J_C=0.0, fields=(1,) * 6)
    with pytest.raises(ValueError):
        ChainConfig(chain_len=3, J=1.0, J_C=-0.1, fields=(1,) * 6)
    with pytest.raises(ValueError):
        ChainConfig(chain_len=3, J=1.0, J_C=0.0, fields=(1,) * 5)


def test_register_layout():
    assert CFG6.n_qubits == 7
    assert CFG6.coupler_qubit == 3
    assert [CFG6.site_qubit(s) for s in range(6)] == [0, 1, 2, 4, 5, 6]
    assert CFG6.left_end_site == 2
    assert CFG6.right_start_site == 3


def test_pair_layers_partition_all_pairs():
    for chain_len in (3, 4, 5):
        cfg = ChainConfig(chain_len=chain_len, J=1.0, J_C=0.1,
                          fields=(1.0,) * (2 * chain_len))
        first, second = first_layer_pairs(cfg), second_layer_pairs(cfg)
        assert sorted(first + second) == sorted(chain_pairs(cfg))
        # pairs within one layer are disjoint -> schedulable in one layer
        for layer in (first, second):
            touched = [s for pair in layer for s in pair]
            assert len(touched) == len(set(touched))
        # the pair adjacent to the coupler is always in the second layer
        assert (chain_len - 2, chain_len - 1) in second


def test_pair_circuit_matches_exponential():
    # exact (not just up to phase): diag(e^{-iJdt}, e^{+iJdt}, ...) pattern
    from isingbraid.analysis import pauli_string

    u = dense_unitary(pair_interaction_circuit(CFG6, 0, 1, 1.0, DT))
    zz = pauli_string(7, {0: "z", 1: "z"})
    expected = expm_hermitian(zz, DT)  # exp(-i J dt Z0 Z1) with J = 1
    assert operator_norm(u - expected) < 1e-12


def test_pair_circuit_rejects_non_adjacent():
    with pytest.raises(CircuitError):
        pair_interaction_circuit(CFG6, 0, 2, 1.0, DT)
    with pytest.raises(CircuitError):
        pair_interaction_circuit(CFG6, 2, 3, 1.0, DT)  # junction is not a chain pair


def test_zz_layer_matches_exponential():
    for pairs_fn in (first_layer_pairs, second_layer_pairs):
        u = dense_unitary(zz_layer_circuit(CFG6, pairs_fn(CFG6), DT))
        h = dense_zz_layer(CFG6, pairs_fn(CFG6))
        assert operator_norm(u - expm_hermitian(h, DT)) < 1e-12


def test_zeeman_circuit_matches_exponential():
    u = dense_unitary(zeeman_circuit(CFG6, CFG6.fields, DT))
    h = dense_zeeman(CFG6)
    assert operator_norm(u - expm_hermitian(h, DT)) < 1e-12


def test_coupler_circuit_matches_exponential():
    u = dense_unitary(coupler_circuit(CFG6, CFG6.J_C, DT))
    h = dense_coupler(CFG6)
    assert operator_norm(u - expm_hermitian(h, DT)) < 1e-12


def test_zz_layers_commute():
    a = dense_unitary(zz_layer_circuit(CFG6, first_layer_pairs(CFG6), DT))
    b = dense_unitary(zz_layer_circuit(CFG6, second_layer_pairs(CFG6), DT))
    assert operator_norm(a @ b - b @ a) < 1e-12


def test_step_depth_is_size_independent():
    for chain_len in (3, 4, 5):
        cfg = ChainConfig(chain_len=chain_len, J=1.0, J_C=0.3,
                          fields=(1.0,) * (2 * chain_len))
        assert depth(trotter_step_circuit(cfg, DT)) == 12


def test_step_gate_count():
    assert len(trotter_step_circuit(CFG6, DT)) == GATES_PER_STEP_WITH_COUPLER
    no_coupler = ChainConfig(chain_len=3, J=1.0, J_C=0.0, fields=CFG6.fields)
    assert len(trotter_step_circuit(no_coupler, DT)) == 18


def test_step_error_within_first_order_bound():
    # ||step - exp(-iH dt)|| <= sum of pairwise commutator norms * dt^2 / 2
    for dt in (0.1, 0.2, 0.5):
        u = dense_unitary(trotter_step_circuit(CFG6, dt))
        exact = expm_hermitian(dense_hamiltonian(CFG6), dt)
        parts = list(dense_summands(CFG6).values())
        comm_sum = sum(
            operator_norm(a @ b - b @ a)
            for i, a in enumerate(parts)
            for b in parts[i + 1:]
        )
        err = phase_aligned_distance(u, exact)
        assert err <= 0.5 * comm_sum * dt**2 + 1e-12


def test_step_error_scales_quadratically():
    # asymptotic regime needs h_para * dt well below 1
    errs = []
    for dt in (0.05, 0.025, 0.0125):
        u = dense_unitary(trotter_step_circuit(CFG6, dt))
        exact = expm_hermitian(dense_hamiltonian(CFG6), dt)
        errs.append(phase_aligned_distance(u, exact))
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.1)
    assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.1)


def test_x_squared_is_identity():
    from isingbraid.circuit import Circuit, Gate, GateKind

    c = Circuit(1, (Gate(GateKind.X, (0,)), Gate(GateKind.X, (0,))))
    assert np.allclose(dense_unitary(c), np.eye(2))
