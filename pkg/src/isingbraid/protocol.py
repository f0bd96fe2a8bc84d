"""The four-stage exchange protocol: initialization, rightward domain
transport, mid-protocol coupler rotation, return transport, and logical
readout.

The ferromagnetic domain (sites with weak transverse field) starts on the
far left chain, is walked site-by-site to the right chain by simultaneous
extend/contract field updates, optionally picks up a coupler rotation, and
is walked back. Fidelity is measured against the expected chain state with
the coupler traced out.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from . import analysis
from .circuit import (
    Circuit,
    Gate,
    GateCounts,
    GateKind,
    concat,
    depth,
    empty,
    gate_counts,
    inverse,
)
from .statevector import (
    QuantumState,
    SampleCounts,
    run,
    sample,
    zero_state,
)
from .trotter import ChainConfig, trotter_step_circuit

SCENARIOS = ("translate_no_coupler", "translate_with_coupler", "braid")
COUPLER_PREPS = ("RX_half_pi", "H", "RY_half_pi")
UPDATE_MODES = ("stepped", "linear")


class LogicalLabel(str, Enum):
    L0 = "L0"
    L1 = "L1"
    ALL_UP = "ALL_UP"
    ALL_DOWN = "ALL_DOWN"


class AdiabaticityWarning(UserWarning):
    """Field updates are fast relative to the excitation gap."""


@dataclass(frozen=True)
class ProtocolParams:
    """All protocol tunables. Defaults are the optimized high-fidelity set
    for a 6-site system."""

    N_s: int = 6
    J: float = 1.0
    J_C: float = 0.3
    h_ferro: float = 0.01
    h_para: float = 5.0
    dt: float = 0.2
    dh: float = 0.05
    T: float = 2.0
    Gamma: float = math.pi / 3
    theta: float = math.pi
    shots: int = 10000
    seed: int = 1
    update_mode: str = "stepped"
    coupler_prep: str = "RX_half_pi"

    def __post_init__(self) -> None:
        if self.N_s < 6 or self.N_s % 2 != 0:
            raise ValueError("N_s must be an even count >= 6")
        if not 0 < self.h_ferro < self.J:
            raise ValueError("need 0 < h_ferro < J")
        if self.h_para <= self.h_ferro:
            raise ValueError("need h_para > h_ferro")
        if self.h_para <= self.J:
            # Weak phase separation is allowed (parameter sweeps cross it)
            # but transport cannot be expected to work there.
            warnings.warn(
                f"h_para = {self.h_para} <= J = {self.J}: ferromagnetic and "
                "paramagnetic regions are not well separated",
                AdiabaticityWarning,
                stacklevel=2,
            )
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if not 0 < self.dh <= self.h_para:
            raise ValueError("need 0 < dh <= h_para")
        if self.T < self.dt:
            raise ValueError("hold period T must be at least dt")
        if not 0 < self.Gamma <= math.pi:
            raise ValueError("need 0 < Gamma <= pi")
        if self.theta < 0:
            raise ValueError("theta must be non-negative")
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if self.update_mode not in UPDATE_MODES:
            raise ValueError(f"update_mode must be one of {UPDATE_MODES}")
        if self.coupler_prep not in COUPLER_PREPS:
            raise ValueError(f"coupler_prep must be one of {COUPLER_PREPS}")
        margin = analysis.adiabatic_margin(self)
        if margin < 10:
            warnings.warn(
                f"adiabatic margin {margin:.2f} < 10; field updates may be "
                "too fast for ground-state transport",
                AdiabaticityWarning,
                stacklevel=2,
            )

    @property
    def chain_len(self) -> int:
        return self.N_s // 2

    @property
    def n_qubits(self) -> int:
        return self.N_s + 1

    @property
    def coupler_qubit(self) -> int:
        return self.chain_len

    @property
    def domain_qubits(self) -> tuple[int, ...]:
        return tuple(range(self.chain_len))

    @property
    def data_qubits(self) -> tuple[int, ...]:
        """All chain qubits, coupler excluded."""
        return tuple(q for q in range(self.n_qubits) if q != self.coupler_qubit)


def initial_fields(params: ProtocolParams) -> tuple[float, ...]:
    """Ferromagnetic domain on the left chain, paramagnetic elsewhere."""
    half = params.chain_len
    return (params.h_ferro,) * half + (params.h_para,) * half


def chain_config(params: ProtocolParams, fields) -> ChainConfig:
    return ChainConfig(
        chain_len=params.chain_len,
        J=params.J,
        J_C=params.J_C,
        fields=tuple(fields),
    )


def updates_per_shift(params: ProtocolParams) -> int:
    """Field updates needed to move the domain boundary by one site."""
    return math.ceil((params.h_para - params.h_ferro) / params.dh)


def rotation_count(params: ProtocolParams) -> int:
    return math.ceil(params.theta / params.Gamma) if params.theta > 0 else 0


def steps_per_hold(params: ProtocolParams, hold: float | None = None) -> int:
    """Trotter steps per hold period: nearest integer, at least 1."""
    hold = params.T if hold is None else hold
    if hold < params.dt:
        raise ValueError("sub-step holds unsupported (hold < dt)")
    return max(1, round(hold / params.dt))


# ---------------------------------------------------------------------------
# Field schedule


@dataclass(frozen=True)
class SetFields:
    fields: tuple[float, ...]
    hold: float


@dataclass(frozen=True)
class RotateCoupler:
    angle: float


@dataclass(frozen=True)
class FieldSchedule:
    events: tuple = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.events)


def build_field_schedule(
    params: ProtocolParams, include_rotation: bool
) -> FieldSchedule:
    """Rightward shifts, optional stepwise coupler rotation, leftward shifts.

    Each shift consists of simultaneous extend/contract updates of the two
    domain-boundary fields by dh, clamped to [h_ferro, h_para], each held
    for T. Rotation events split theta into ceil(theta/Gamma) increments,
    each followed by one hold at fixed fields.
    """
    half = params.chain_len
    n_updates = updates_per_shift(params)
    fields = list(initial_fields(params))
    events: list = []

    def clamp(h: float) -> float:
        return min(max(h, params.h_ferro), params.h_para)

    def shift(entering: int, leaving: int) -> None:
        for _ in range(n_updates):
            fields[entering] = clamp(fields[entering] - params.dh)
            fields[leaving] = clamp(fields[leaving] + params.dh)
            events.append(SetFields(tuple(fields), params.T))
        # Clamping guarantees exact endpoint values after the final update.
        fields[entering] = params.h_ferro
        fields[leaving] = params.h_para

    for s in range(half):  # domain occupies sites [s, s + half - 1]
        shift(entering=s + half, leaving=s)

    if include_rotation and params.theta > 0:
        k = rotation_count(params)
        for step in range(k):
            angle = (
                params.Gamma
                if step < k - 1
                else params.theta - (k - 1) * params.Gamma
            )
            events.append(RotateCoupler(angle))
            events.append(SetFields(tuple(fields), params.T))

    for s in range(half, 0, -1):  # domain occupies sites [s, s + half - 1]
        shift(entering=s - 1, leaving=s + half - 1)

    return FieldSchedule(tuple(events))


def count_trotter_steps(params: ProtocolParams, schedule: FieldSchedule) -> int:
    return sum(
        steps_per_hold(params, ev.hold)
        for ev in schedule.events
        if isinstance(ev, SetFields)
    )


def build_protocol_circuit(
    params: ProtocolParams, schedule: FieldSchedule
) -> Circuit:
    """Compile the schedule into the full evolution circuit (no init/readout).

    Each hold emits its Trotter steps at the event's fields (``stepped``
    mode) or at linearly interpolated fields (``linear`` mode); coupler
    rotation events emit a single RY on the coupler qubit.
    """
    n = params.n_qubits
    parts: list[Circuit] = []
    prev_fields = initial_fields(params)
    for event in schedule.events:
        if isinstance(event, RotateCoupler):
            parts.append(
                Circuit(n, (Gate(GateKind.RY, (params.coupler_qubit,), event.angle),))
            )
            continue
        n_steps = steps_per_hold(params, event.hold)
        if params.update_mode == "linear":
            prev = np.asarray(prev_fields, dtype=float)
            target = np.asarray(event.fields, dtype=float)
            for m in range(1, n_steps + 1):
                f = prev + (m / n_steps) * (target - prev)
                parts.append(trotter_step_circuit(chain_config(params, f), params.dt))
        else:
            step = trotter_step_circuit(
                chain_config(params, event.fields), params.dt
            )
            parts.extend([step] * n_steps)
        prev_fields = event.fields
    if not parts:
        return empty(n)
    return concat(parts)


# ---------------------------------------------------------------------------
# Initialization and targets


def _coupler_prep_gate(params: ProtocolParams) -> Gate:
    q = params.coupler_qubit
    if params.coupler_prep == "RX_half_pi":
        return Gate(GateKind.RX, (q,), math.pi / 2)
    if params.coupler_prep == "RY_half_pi":
        return Gate(GateKind.RY, (q,), math.pi / 2)
    return Gate(GateKind.H, (q,))


def initialization_circuit(
    params: ProtocolParams,
    label: LogicalLabel,
    include_coupler_prep: bool = True,
) -> Circuit:
    """Prepare the domain logical state, paramagnetic superpositions, and
    the coupler superposition."""
    gates: list[Gate] = []
    d0 = params.domain_qubits[0]
    if label in (LogicalLabel.L0, LogicalLabel.L1):
        gates.append(Gate(GateKind.H, (d0,)))
        for a, b in zip(params.domain_qubits, params.domain_qubits[1:]):
            gates.append(Gate(GateKind.CNOT, (a, b)))
        if label is LogicalLabel.L1:
            gates.append(Gate(GateKind.Z, (d0,)))
    elif label is LogicalLabel.ALL_DOWN:
        gates.extend(Gate(GateKind.X, (q,)) for q in params.domain_qubits)
    for q in range(params.coupler_qubit + 1, params.n_qubits):
        gates.append(Gate(GateKind.H, (q,)))
    if include_coupler_prep:
        gates.append(_coupler_prep_gate(params))
    return Circuit(params.n_qubits, tuple(gates))


_LOGICAL_COEFFS = {
    LogicalLabel.L0: (1.0, 0.0),
    LogicalLabel.L1: (0.0, 1.0),
    LogicalLabel.ALL_UP: (1 / math.sqrt(2), 1 / math.sqrt(2)),
    LogicalLabel.ALL_DOWN: (1 / math.sqrt(2), -1 / math.sqrt(2)),
}


def domain_amplitudes(label: LogicalLabel, theta: float) -> tuple[complex, complex]:
    """Amplitudes (a, b) of the all-up and all-down domain strings after the
    exchange acts as RZ(-theta) on the logical subspace."""
    c0, c1 = _LOGICAL_COEFFS[label]
    c0 = c0 * np.exp(0.5j * theta)
    c1 = c1 * np.exp(-0.5j * theta)
    a = (c0 + c1) / math.sqrt(2)
    b = (c0 - c1) / math.sqrt(2)
    return complex(a), complex(b)


def target_chain_state(params: ProtocolParams, a: complex, b: complex) -> np.ndarray:
    """Expected chain state (coupler excluded): domain string superposition
    a|0..0> + b|1..1> on the domain, |+> on every paramagnetic site."""
    half = params.chain_len
    domain = np.zeros(1 << half, dtype=complex)
    domain[0] = a
    domain[-1] = b
    plus = np.full(2, 1 / math.sqrt(2), dtype=complex)
    para = np.array([1.0 + 0j])
    for _ in range(half):
        para = np.kron(plus, para)
    return np.kron(para, domain)  # paramagnetic sites are the high bits


def target_prep_circuit(params: ProtocolParams, a: complex, b: complex) -> Circuit:
    """Circuit on the full register preparing the target chain state from
    |0...0> while leaving the coupler untouched."""
    gates: list[Gate] = []
    d0 = params.domain_qubits[0]
    phi = 2.0 * math.atan2(abs(b), abs(a))
    if abs(phi) > 1e-15:
        gates.append(Gate(GateKind.RY, (d0,), phi))
    if abs(a) > 1e-15 and abs(b) > 1e-15:
        lam = math.atan2(b.imag, b.real) - math.atan2(a.imag, a.real)
        if abs(lam) > 1e-15:
            gates.append(Gate(GateKind.RZ, (d0,), lam))
    for x, y in zip(params.domain_qubits, params.domain_qubits[1:]):
        gates.append(Gate(GateKind.CNOT, (x, y)))
    for q in range(params.coupler_qubit + 1, params.n_qubits):
        gates.append(Gate(GateKind.H, (q,)))
    return Circuit(params.n_qubits, tuple(gates))


def chain_fidelity(
    state: QuantumState, target_chain: np.ndarray, coupler_qubit: int
) -> float:
    """<target| rho_chain |target> with the coupler qubit traced out."""
    idx = np.arange(state.amplitudes.size)
    bit = (idx >> coupler_qubit) & 1
    total = 0.0
    for b in (0, 1):
        sub = state.amplitudes[bit == b]
        total += abs(np.vdot(target_chain, sub)) ** 2
    return float(min(max(total, 0.0), 1.0))


def all_zeros_frequency(counts: SampleCounts, data_bits) -> float:
    """Fraction of shots where every listed bit position reads 0."""
    hits = sum(
        c
        for bits, c in counts.counts.items()
        if all(bits[q] == "0" for q in data_bits)
    )
    return hits / counts.shots


# ---------------------------------------------------------------------------
# Scenario execution


@dataclass(frozen=True)
class ScenarioRun:
    """All artifacts of one compiled scenario, before fidelity extraction."""

    params: ProtocolParams
    scenario: str
    init: LogicalLabel
    theta_applied: float
    schedule: FieldSchedule
    init_circuit: Circuit
    evolution_circuit: Circuit
    readout_circuit: Circuit
    target_chain: np.ndarray
    final_state: QuantumState


@dataclass(frozen=True)
class FidelityReport:
    scenario: str
    init: str
    exact_fidelity: float
    sampled_fidelity: float
    sampled_stderr: float
    depth_total: int
    depth_evolution_only: int
    gate_counts: GateCounts
    trotter_steps: int
    bound_values: dict[str, float]
    params: ProtocolParams

    def to_dict(self) -> dict:
        d = {
            "scenario": self.scenario,
            "init": self.init,
            "exact_fidelity": self.exact_fidelity,
            "sampled_fidelity": self.sampled_fidelity,
            "sampled_stderr": self.sampled_stderr,
            "depth_total": self.depth_total,
            "depth_evolution_only": self.depth_evolution_only,
            "gate_counts": {
                "one_qubit": self.gate_counts.one_qubit,
                "two_qubit": self.gate_counts.two_qubit,
            },
            "trotter_steps": self.trotter_steps,
            "bound_values": dict(self.bound_values),
            "params": {
                k: getattr(self.params, k)
                for k in (
                    "N_s", "J", "J_C", "h_ferro", "h_para", "dt", "dh", "T",
                    "Gamma", "theta", "shots", "seed", "update_mode",
                    "coupler_prep",
                )
            },
        }
        return d


def resolve_scenario(
    params: ProtocolParams, scenario: str
) -> tuple[ProtocolParams, bool, bool, float]:
    """Returns (effective params, coupler prep?, rotation?, theta applied)."""
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")
    if scenario == "translate_no_coupler":
        return replace(params, J_C=0.0), False, False, 0.0
    if scenario == "translate_with_coupler":
        return params, True, False, 0.0
    return params, True, True, params.theta


def compile_scenario(
    params: ProtocolParams, scenario: str, init: LogicalLabel
) -> ScenarioRun:
    """Build circuits, simulate, and assemble the target for one scenario."""
    eff, prep_coupler, rotate, theta_applied = resolve_scenario(params, scenario)
    schedule = build_field_schedule(eff, include_rotation=rotate)
    evo = build_protocol_circuit(eff, schedule)
    init_c = initialization_circuit(eff, init, include_coupler_prep=prep_coupler)
    a, b = domain_amplitudes(init, theta_applied)
    target = target_chain_state(eff, a, b)
    readout = inverse(target_prep_circuit(eff, a, b))
    final = run(zero_state(eff.n_qubits), concat([init_c, evo]))
    return ScenarioRun(
        params=eff,
        scenario=scenario,
        init=init,
        theta_applied=theta_applied,
        schedule=schedule,
        init_circuit=init_c,
        evolution_circuit=evo,
        readout_circuit=readout,
        target_chain=target,
        final_state=final,
    )


def readout_counts(run_: ScenarioRun, seed: int | None = None) -> SampleCounts:
    """Shot counts after applying the inverse target-preparation circuit."""
    params = run_.params
    measured = run(run_.final_state, run_.readout_circuit)
    sample_seed = seed if seed is not None else params.seed
    return sample(measured, params.shots, sample_seed)


def sampled_fidelity_from_counts(
    counts: SampleCounts, data_qubits
) -> tuple[float, float]:
    p = all_zeros_frequency(counts, data_qubits)
    stderr = math.sqrt(max(p * (1.0 - p), 0.0) / counts.shots)
    return p, stderr


def run_scenario(
    params: ProtocolParams, scenario: str, init: LogicalLabel
) -> FidelityReport:
    """Simulate one benchmark scenario and report fidelities, depths, and
    bound values."""
    run_ = compile_scenario(params, scenario, init)
    eff = run_.params
    exact = chain_fidelity(run_.final_state, run_.target_chain, eff.coupler_qubit)
    counts = readout_counts(run_)
    sampled, stderr = sampled_fidelity_from_counts(counts, eff.data_qubits)
    full = concat([run_.init_circuit, run_.evolution_circuit, run_.readout_circuit])
    bounds = {
        "per_step": analysis.per_step_error_bound(eff),
        "total": analysis.total_error_bound(eff),
        "adiabatic_margin": analysis.adiabatic_margin(eff),
    }
    return FidelityReport(
        scenario=scenario,
        init=init.value,
        exact_fidelity=exact,
        sampled_fidelity=sampled,
        sampled_stderr=stderr,
        depth_total=depth(full),
        depth_evolution_only=depth(run_.evolution_circuit),
        gate_counts=gate_counts(full),
        trotter_steps=count_trotter_steps(eff, run_.schedule),
        bound_values=bounds,
        params=eff,
    )
