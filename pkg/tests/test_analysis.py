import math

import numpy as np
import pytest

from isingbraid.analysis import (
    STEP_DEPTH,
    adiabatic_margin,
    commutator_bounds,
    commutator_norms,
    dense_hamiltonian,
    dense_summands,
    depth_upper_bound,
    exact_evolve,
    expm_hermitian,
    operator_norm,
    pauli_string,
    per_step_error_bound,
    phase_aligned_distance,
    total_error_bound,
)
from isingbraid.protocol import (
    FieldSchedule,
    LogicalLabel,
    ProtocolParams,
    SetFields,
    initial_fields,
)
from isingbraid.statevector import dense_unitary, fidelity, zero_state
from isingbraid.trotter import ChainConfig, trotter_step_circuit

OPT = ProtocolParams()  # high-fidelity row
EFF = ProtocolParams(dt=0.7, h_para=1.5, dh=0.1, Gamma=math.pi / 2)  # efficient row

CFG6 = ChainConfig(chain_len=3, J=1.0, J_C=0.3, fields=(0.01, 0.01, 0.01, 5, 5, 5))


def test_pauli_string_little_endian():
    z0 = pauli_string(2, {0: "z"})
    assert np.allclose(z0, np.diag([1, -1, 1, -1]))  # qubit 0 is the LSB
    x1 = pauli_string(2, {1: "x"})
    expected = np.kron(np.array([[0, 1], [1, 0]]), np.eye(2))
    assert np.allclose(x1, expected)


def test_expm_hermitian_unitary_and_correct():
    z = pauli_string(1, {0: "z"})
    u = expm_hermitian(z, 0.5)
    assert np.allclose(u, np.diag([np.exp(-0.5j), np.exp(0.5j)]))


def test_phase_aligned_distance_ignores_global_phase():
    u = np.eye(4)
    assert phase_aligned_distance(u, np.exp(0.73j) * u) == pytest.approx(0.0, abs=1e-12)


def test_per_step_bound_values():
    assert per_step_error_bound(OPT) == pytest.approx(1.32)  # (6+0.6)*5*0.04
    assert per_step_error_bound(EFF) == pytest.approx((6 + 0.6) * 1.5 * 0.49)


def test_per_step_bound_quadratic_in_dt():
    from dataclasses import replace

    assert per_step_error_bound(replace(OPT, dt=0.4)) == pytest.approx(4 * 1.32)


def test_total_bound_value():
    assert total_error_bound(OPT) == pytest.approx(7920.0)  # 6*100*10*1.32


def test_adiabatic_margin_values():
    assert adiabatic_margin(OPT) == pytest.approx(400.0)
    assert adiabatic_margin(EFF) == pytest.approx(400 / 7, rel=1e-12)  # ~57.1


def test_depth_bound_values():
    d_opt = depth_upper_bound(OPT)
    assert d_opt.real == pytest.approx(72360.0)
    assert d_opt.integer == 72360
    d_eff = depth_upper_bound(EFF)
    assert d_eff.real == pytest.approx(3154.3, abs=0.05)
    # rounded conventions: 3 steps/hold, 15 updates/shift, 2 rotations
    assert d_eff.integer == STEP_DEPTH * 3 * (6 * 15 + 2)


def test_depth_bound_linear_in_system_size():
    from dataclasses import replace

    sizes = np.array([6, 10, 14, 18, 22], dtype=float)
    depths = np.array(
        [depth_upper_bound(replace(OPT, N_s=int(n))).real for n in sizes]
    )
    slope, intercept = np.polyfit(sizes, depths, 1)
    predicted = slope * sizes + intercept
    ss_res = np.sum((depths - predicted) ** 2)
    ss_tot = np.sum((depths - depths.mean()) ** 2)
    assert 1 - ss_res / ss_tot > 0.999


def test_commutator_bounds_values():
    bounds = commutator_bounds(CFG6)
    # first layer holds pairs (0,1) and (3,4); second (1,2) and (4,5)
    assert bounds["zz_first_zeeman"] == pytest.approx(2 * (0.01 + 0.01) + 2 * (5 + 5))
    assert bounds["zz_second_zeeman"] == pytest.approx(2 * (0.01 + 0.01) + 2 * (5 + 5))
    assert bounds["zeeman_coupler"] == pytest.approx(2 * 0.3 * (0.01 + 5))


def test_commutator_bound_zero_cases():
    no_field = ChainConfig(chain_len=3, J=1.0, J_C=0.3, fields=(0,) * 6)
    rep = commutator_norms(no_field)
    assert all(v == pytest.approx(0.0, abs=1e-12) for v in rep.exact.values())
    no_coupler = ChainConfig(chain_len=3, J=1.0, J_C=0.0, fields=CFG6.fields)
    rep = commutator_norms(no_coupler)
    assert rep.exact["zeeman_coupler"] == pytest.approx(0.0, abs=1e-12)


def test_commutator_norms_within_bounds_random_fields():
    rng = np.random.default_rng(123)
    for _ in range(20):
        fields = tuple(rng.uniform(0.0, 6.0, size=6))
        cfg = ChainConfig(chain_len=3, J=1.0, J_C=float(rng.uniform(0, 1)),
                          fields=fields)
        rep = commutator_norms(cfg)
        for key, bound in rep.bounds.items():
            assert rep.exact[key] <= bound * (1 + 1e-12) + 1e-12
        assert rep.max_vanishing_norm <= 1e-12


def test_exact_evolve_zero_schedule_is_identity():
    initial = zero_state(OPT.n_qubits)
    out = exact_evolve(FieldSchedule(()), OPT, initial)
    assert fidelity(out, initial) == pytest.approx(1.0)


def test_exact_evolve_single_hold_vs_trotter_steps():
    p = ProtocolParams(T=2.0, dt=0.2)
    fields = initial_fields(p)
    sched = FieldSchedule((SetFields(tuple(fields), p.T),))
    initial = zero_state(p.n_qubits)
    exact = exact_evolve(sched, p, initial)
    # 10 Trotter steps at the same fields
    from isingbraid.protocol import build_protocol_circuit, chain_config
    from isingbraid.statevector import run

    circ = build_protocol_circuit(p, sched)
    trotterized = run(initial, circ)
    k = 10
    bound = k * per_step_error_bound(p)
    err = np.linalg.norm(exact.amplitudes - trotterized.amplitudes)
    # state-vector distance bounded by phase-aligned operator distance
    assert 1 - fidelity(exact, trotterized) <= bound
    assert err >= 0  # sanity


def test_exact_evolve_rejects_oversized_register():
    from dataclasses import replace

    big = replace(OPT, N_s=10)
    with pytest.raises(ValueError):
        exact_evolve(FieldSchedule(()), big, zero_state(11))


def test_dense_summands_compose_to_hamiltonian():
    parts = dense_summands(CFG6)
    h = dense_hamiltonian(CFG6)
    assert np.allclose(sum(parts.values()), h)
    assert np.allclose(h, h.conj().T)


def test_step_unitary_close_to_exact_per_bound():
    for dt in (0.1, 0.2, 0.5):
        cfg = CFG6
        u = dense_unitary(trotter_step_circuit(cfg, dt))
        exact = expm_hermitian(dense_hamiltonian(cfg), dt)
        p = ProtocolParams(dt=dt)
        assert phase_aligned_distance(u, exact) <= per_step_error_bound(p)
