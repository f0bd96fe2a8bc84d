"""Dense statevector engine: gate application, overlaps, sampling, dense oracles.

Conventions: qubit 0 is the least-significant bit of the basis index
(little-endian); spin-up maps to computational |0>. Bit-string keys in
``SampleCounts`` list qubit 0 as the leftmost character.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, GateKind

MAX_QUBITS = 26
MAX_DENSE_QUBITS = 10

_SQ2 = 1.0 / math.sqrt(2.0)
_H = np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def rotation_matrix(kind: GateKind, angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    if kind is GateKind.RX:
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if kind is GateKind.RY:
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind is GateKind.RZ:
        return np.array(
            [[np.exp(-0.5j * angle), 0], [0, np.exp(0.5j * angle)]], dtype=complex
        )
    raise ValueError(f"not a rotation: {kind}")


def gate_matrix(gate: Gate) -> np.ndarray:
    """2x2 matrix of a single-qubit gate."""
    if gate.kind is GateKind.H:
        return _H
    if gate.kind is GateKind.X:
        return _X
    if gate.kind is GateKind.Z:
        return _Z
    return rotation_matrix(gate.kind, gate.angle)


@dataclass
class QuantumState:
    """Normalized complex amplitude vector over 2**n_qubits basis states."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"register size {self.n_qubits} outside [1, {MAX_QUBITS}]")
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise ValueError("amplitude vector length must be 2**n_qubits")

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "QuantumState":
        return QuantumState(self.n_qubits, self.amplitudes.copy())


@dataclass(frozen=True)
class SampleCounts:
    """Shot tallies keyed by bit string (qubit 0 leftmost)."""

    counts: dict[str, int]
    shots: int
    n_bits: int

    def __post_init__(self) -> None:
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts must sum to total shots")


def zero_state(n: int) -> QuantumState:
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = 1.0
    return QuantumState(n, amps)


def _apply_1q_inplace(amps: np.ndarray, q: int, m: np.ndarray) -> None:
    view = amps.reshape(-1, 2, 1 << q)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = m[0, 0] * a0 + m[0, 1] * a1
    view[:, 1, :] = m[1, 0] * a0 + m[1, 1] * a1


def _apply_cnot_inplace(amps: np.ndarray, control: int, target: int) -> None:
    hi, lo = max(control, target), min(control, target)
    view = amps.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)
    if control == hi:
        tmp = view[:, 1, :, 0, :].copy()
        view[:, 1, :, 0, :] = view[:, 1, :, 1, :]
        view[:, 1, :, 1, :] = tmp
    else:
        tmp = view[:, 0, :, 1, :].copy()
        view[:, 0, :, 1, :] = view[:, 1, :, 1, :]
        view[:, 1, :, 1, :] = tmp


def apply_gate_inplace(amps: np.ndarray, n_qubits: int, gate: Gate) -> None:
    if max(gate.qubits) >= n_qubits:
        raise ValueError(f"gate on {gate.qubits} out of range for {n_qubits} qubits")
    if gate.kind is GateKind.CNOT:
        _apply_cnot_inplace(amps, *gate.qubits)
    else:
        _apply_1q_inplace(amps, gate.qubits[0], gate_matrix(gate))


def apply_gate(state: QuantumState, gate: Gate) -> QuantumState:
    """Return the state multiplied by the gate's unitary; norm preserved."""
    out = state.copy()
    apply_gate_inplace(out.amplitudes, out.n_qubits, gate)
    return out


def run(state: QuantumState, circuit: Circuit) -> QuantumState:
    """Apply all gates of ``circuit`` in order."""
    if circuit.n_qubits != state.n_qubits:
        raise ValueError(
            f"register mismatch: state {state.n_qubits}, circuit {circuit.n_qubits}"
        )
    out = state.copy()
    amps, n = out.amplitudes, out.n_qubits
    for gate in circuit.gates:
        apply_gate_inplace(amps, n, gate)
    return out


def fidelity(a: QuantumState, b: QuantumState) -> float:
    """Squared overlap |<a|b>|^2."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("register mismatch")
    f = abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2
    return float(min(max(f, 0.0), 1.0))


def index_to_bitstring(index: int, n_bits: int) -> str:
    """Bit string with qubit 0 as the leftmost character."""
    return "".join("1" if (index >> q) & 1 else "0" for q in range(n_bits))


def sample(state: QuantumState, shots: int, seed: int) -> SampleCounts:
    """Draw i.i.d. shots from the Born distribution; deterministic given seed."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    probs = np.abs(state.amplitudes) ** 2
    probs /= probs.sum()
    rng = np.random.default_rng(seed)
    tallies = rng.multinomial(shots, probs)
    counts = {
        index_to_bitstring(i, state.n_qubits): int(c)
        for i, c in enumerate(tallies)
        if c > 0
    }
    return SampleCounts(counts=counts, shots=shots, n_bits=state.n_qubits)


def dense_unitary(circuit: Circuit) -> np.ndarray:
    """Full 2^n x 2^n unitary, built column-by-column from basis states."""
    n = circuit.n_qubits
    if n > MAX_DENSE_QUBITS:
        raise ValueError(f"dense construction limited to {MAX_DENSE_QUBITS} qubits")
    dim = 1 << n
    # Rows are contiguous, so transform each basis state as a row and
    # transpose at the end: row r ends up holding U|r>.
    rows = np.eye(dim, dtype=complex)
    for r in range(dim):
        amps = rows[r]
        for gate in circuit.gates:
            apply_gate_inplace(amps, n, gate)
    return rows.T.copy()
