"""Compile the instantaneous chain Hamiltonian into first-order Trotter steps.

The Hamiltonian splits into four summands: two layers of nearest-neighbor
ZZ couplings (packed so disjoint pairs schedule simultaneously), the
transverse Zeeman terms, and the three-body coupler interaction. Each
subcircuit reproduces exp(-i H_X dt) of its summand exactly (up to global
phase); the product over summands is the first-order step.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, CircuitError, Gate, GateKind, concat


@dataclass(frozen=True)
class ChainConfig:
    """Static description of two coupled chains plus the coupler spin.

    Register layout: qubits 0..chain_len-1 are the left chain (left to
    right), the coupler sits at index chain_len, then the right chain.
    ``fields`` lists the transverse field h_n per chain site (coupler has
    none), in site order left chain then right chain.
    """

    chain_len: int
    J: float
    J_C: float
    fields: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "fields", tuple(float(h) for h in self.fields))
        if self.chain_len < 3:
            raise ValueError("each chain needs at least 3 sites")
        if self.J <= 0:
            raise ValueError("J must be positive")
        if self.J_C < 0:
            raise ValueError("J_C must be non-negative")
        if len(self.fields) != self.n_sites:
            raise ValueError(
                f"need {self.n_sites} field values, got {len(self.fields)}"
            )

    @property
    def n_sites(self) -> int:
        return 2 * self.chain_len

    @property
    def n_qubits(self) -> int:
        return self.n_sites + 1

    @property
    def coupler_qubit(self) -> int:
        return self.chain_len

    def site_qubit(self, site: int) -> int:
        """Register index of chain site ``site`` (coupler skipped)."""
        if not 0 <= site < self.n_sites:
            raise ValueError(f"site {site} out of range")
        return site if site < self.chain_len else site + 1

    @property
    def left_end_site(self) -> int:
        return self.chain_len - 1

    @property
    def right_start_site(self) -> int:
        return self.chain_len


def chain_pairs(cfg: ChainConfig) -> list[tuple[int, int]]:
    """All nearest-neighbor (site, site+1) pairs within each chain."""
    left = [(p, p + 1) for p in range(cfg.chain_len - 1)]
    right = [
        (cfg.chain_len + p, cfg.chain_len + p + 1) for p in range(cfg.chain_len - 1)
    ]
    return left + right


def first_layer_pairs(cfg: ChainConfig) -> list[tuple[int, int]]:
    """ZZ pairs emitted in the first scheduling layer (mutually disjoint)."""
    pairs = []
    for p in range(cfg.chain_len - 1):
        # Left chain: parity counted from the coupler end so the pair
        # adjacent to the coupler always lands in the second layer, which
        # keeps the step depth size-independent.
        if (cfg.chain_len - 2 - p) % 2 == 1:
            pairs.append((p, p + 1))
    for p in range(cfg.chain_len - 1):
        if p % 2 == 0:
            pairs.append((cfg.chain_len + p, cfg.chain_len + p + 1))
    return pairs


def second_layer_pairs(cfg: ChainConfig) -> list[tuple[int, int]]:
    """ZZ pairs emitted in the second scheduling layer (mutually disjoint)."""
    first = set(first_layer_pairs(cfg))
    return [pair for pair in chain_pairs(cfg) if pair not in first]


def pair_interaction_circuit(
    cfg: ChainConfig, i: int, j: int, J: float, dt: float
) -> Circuit:
    """Circuit whose unitary is exp(-i J dt Z_i Z_j), up to global phase.

    Realized as CNOT(i->j), RZ(2 J dt) on j, CNOT(i->j). Sites ``i`` and
    ``j`` must be adjacent within one chain.
    """
    if (i, j) not in chain_pairs(cfg) and (j, i) not in chain_pairs(cfg):
        raise CircuitError(f"sites ({i}, {j}) are not adjacent within a chain")
    qi, qj = cfg.site_qubit(i), cfg.site_qubit(j)
    gates = (
        Gate(GateKind.CNOT, (qi, qj)),
        Gate(GateKind.RZ, (qj,), 2.0 * J * dt),
        Gate(GateKind.CNOT, (qi, qj)),
    )
    return Circuit(cfg.n_qubits, gates)


def zeeman_circuit(cfg: ChainConfig, fields, dt: float) -> Circuit:
    """Circuit for exp(-i H_Z dt) with H_Z = -sum_n h_n X_n: RX(-2 h_n dt)."""
    fields = tuple(float(h) for h in fields)
    if len(fields) != cfg.n_sites:
        raise CircuitError(f"need {cfg.n_sites} field values, got {len(fields)}")
    gates = tuple(
        Gate(GateKind.RX, (cfg.site_qubit(site),), -2.0 * h * dt)
        for site, h in enumerate(fields)
    )
    return Circuit(cfg.n_qubits, gates)


def coupler_circuit(cfg: ChainConfig, J_C: float, dt: float) -> Circuit:
    """Circuit for exp(+i J_C dt Z Z Z) on (left end, coupler, right start).

    A CNOT ladder accumulates the three-qubit parity on the right-start
    qubit, where a single RZ(-2 J_C dt) applies the phase.
    """
    if J_C < 0:
        raise CircuitError("J_C must be non-negative")
    a = cfg.site_qubit(cfg.left_end_site)
    c = cfg.coupler_qubit
    b = cfg.site_qubit(cfg.right_start_site)
    gates = (
        Gate(GateKind.CNOT, (a, b)),
        Gate(GateKind.CNOT, (c, b)),
        Gate(GateKind.RZ, (b,), -2.0 * J_C * dt),
        Gate(GateKind.CNOT, (c, b)),
        Gate(GateKind.CNOT, (a, b)),
    )
    return Circuit(cfg.n_qubits, gates)


def zz_layer_circuit(cfg: ChainConfig, pairs, dt: float) -> Circuit:
    """One layer of pair interactions for H = -J sum Z_i Z_j over ``pairs``."""
    # Summand carries coefficient -J, hence the sign flip on J.
    return concat(
        [pair_interaction_circuit(cfg, i, j, -cfg.J, dt) for i, j in pairs]
    )


def trotter_step_circuit(cfg: ChainConfig, dt: float) -> Circuit:
    """One first-order step: ZZ layer 1, ZZ layer 2, Zeeman, coupler term."""
    parts = [
        zz_layer_circuit(cfg, first_layer_pairs(cfg), dt),
        zz_layer_circuit(cfg, second_layer_pairs(cfg), dt),
        zeeman_circuit(cfg, cfg.fields, dt),
    ]
    if cfg.J_C != 0.0:
        parts.append(coupler_circuit(cfg, cfg.J_C, dt))
    return concat(parts)


GATES_PER_STEP_WITH_COUPLER = 23  # 4 pairs x 3 + 6 RX + 5 coupler gates, N_s = 6
