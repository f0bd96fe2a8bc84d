"""Command-line front end: single runs, parameter sweeps, bound reports,
and OpenQASM export.

Config files are flat ``key = value`` text. Keys match ProtocolParams field
names, plus ``scenario``/``init`` and, for sweeps, ``axis``/``values``.
Angle values accept ``pi`` fractions like ``pi/3`` or ``2pi/3``. Unknown
keys are rejected (exit code 2); every emitted report echoes the fully
resolved parameter set so defaults are never silent.
"""
from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import math
import re
import sys
from concurrent.futures import ProcessPoolExecutor

from . import analysis
from .circuit import concat, depth, gate_counts, to_qasm
from .protocol import (
    SCENARIOS,
    LogicalLabel,
    ProtocolParams,
    build_field_schedule,
    build_protocol_circuit,
    chain_config,
    count_trotter_steps,
    initial_fields,
    resolve_scenario,
    run_scenario,
)


class ConfigError(ValueError):
    """Invalid configuration input (maps to exit code 2)."""


_INT_KEYS = {"N_s", "shots", "seed"}
_FLOAT_KEYS = {"J", "J_C", "h_ferro", "h_para", "dt", "dh", "T", "Gamma", "theta"}
_STR_KEYS = {"update_mode", "coupler_prep"}
_PARAM_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS
_EXTRA_KEYS = {"scenario", "init", "axis", "values"}

_PI_RE = re.compile(r"^([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d*\.?\d+))?$")


def parse_number(text: str) -> float:
    """Parse a float literal or a ``pi`` fraction such as pi, pi/3, 2pi/3."""
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_RE.match(text)
    if not m:
        raise ConfigError(f"cannot parse numeric value {text!r}")
    coef_txt = m.group(1)
    coef = {"": 1.0, "+": 1.0, "-": -1.0}.get(coef_txt)
    if coef is None:
        coef = float(coef_txt)
    denom = float(m.group(2)) if m.group(2) else 1.0
    return coef * math.pi / denom


def parse_config(text: str) -> dict[str, str]:
    """Parse flat ``key = value`` lines; '#' starts a comment."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _PARAM_KEYS | _EXTRA_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        out[key] = value
    return out


def build_params(cfg: dict[str, str], seed_override: int | None = None) -> ProtocolParams:
    kwargs: dict = {}
    for key, value in cfg.items():
        if key in _INT_KEYS:
            kwargs[key] = int(value)
        elif key in _FLOAT_KEYS:
            kwargs[key] = parse_number(value)
        elif key in _STR_KEYS:
            kwargs[key] = value
    if seed_override is not None:
        kwargs["seed"] = seed_override
    try:
        return ProtocolParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def resolve_scenario_init(cfg: dict[str, str]) -> tuple[str, LogicalLabel]:
    scenario = cfg.get("scenario", "braid")
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")
    init_name = cfg.get("init", "ALL_UP")
    try:
        init = LogicalLabel(init_name)
    except ValueError as exc:
        raise ConfigError(f"unknown init {init_name!r}") from exc
    return scenario, init


def derive_seed(master: int, axis_value: str, scenario: str) -> int:
    """Deterministic per-row seed fan-out.

    Keyed on the formatted axis value (not its list position) so permuting
    the sweep list permutes rows without changing their contents.
    """
    digest = hashlib.sha256(f"{master}:{axis_value}:{scenario}".encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _full_pipeline(params: ProtocolParams, scenario: str, init: LogicalLabel):
    """Compile init + evolution + readout without simulating."""
    from .protocol import (
        domain_amplitudes,
        initialization_circuit,
        target_prep_circuit,
    )
    from .circuit import inverse

    eff, prep_coupler, rotate, theta_applied = resolve_scenario(params, scenario)
    schedule = build_field_schedule(eff, include_rotation=rotate)
    evo = build_protocol_circuit(eff, schedule)
    init_c = initialization_circuit(eff, init, include_coupler_prep=prep_coupler)
    a, b = domain_amplitudes(init, theta_applied)
    readout = inverse(target_prep_circuit(eff, a, b))
    return eff, schedule, concat([init_c, evo, readout]), evo


# ---------------------------------------------------------------------------
# Subcommands


def _write_out(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)


def cmd_run(cfg: dict[str, str], out_path: str | None, seed: int | None,
            depth_only: bool) -> int:
    params = build_params(cfg, seed)
    scenario, init = resolve_scenario_init(cfg)
    if depth_only:
        eff, schedule, full, evo = _full_pipeline(params, scenario, init)
        counts = gate_counts(full)
        report = {
            "scenario": scenario,
            "init": init.value,
            "depth_total": depth(full),
            "depth_evolution_only": depth(evo),
            "gate_counts": {"one_qubit": counts.one_qubit,
                            "two_qubit": counts.two_qubit},
            "trotter_steps": count_trotter_steps(eff, schedule),
            "depth_bound": dataclasses.asdict(analysis.depth_upper_bound(eff)),
            "params": {f.name: getattr(eff, f.name)
                       for f in dataclasses.fields(eff)},
        }
    else:
        report = run_scenario(params, scenario, init).to_dict()
    _write_out(json.dumps(report, indent=2, sort_keys=True) + "\n", out_path)
    return 0


CSV_HEADER = (
    "axis_value,scenario,init,exact_fidelity,sampled_fidelity,sampled_stderr,"
    "depth_total,depth_evolution,trotter_steps,per_step_bound,total_bound,"
    "adiabatic_margin,seed"
)


def _sweep_point(args) -> str:
    cfg, axis, value, scenario, init_name, row_seed, depth_only = args
    point = dict(cfg)
    point[axis] = repr(value)
    params = build_params(point, row_seed)
    init = LogicalLabel(init_name)
    if depth_only:
        eff, schedule, full, evo = _full_pipeline(params, scenario, init)
        exact = sampled = stderr = float("nan")
        d_total, d_evo = depth(full), depth(evo)
        steps = count_trotter_steps(eff, schedule)
        bounds = {
            "per_step": analysis.per_step_error_bound(eff),
            "total": analysis.total_error_bound(eff),
            "adiabatic_margin": analysis.adiabatic_margin(eff),
        }
    else:
        rep = run_scenario(params, scenario, init)
        exact, sampled, stderr = (rep.exact_fidelity, rep.sampled_fidelity,
                                  rep.sampled_stderr)
        d_total, d_evo = rep.depth_total, rep.depth_evolution_only
        steps, bounds = rep.trotter_steps, rep.bound_values
    return ",".join([
        _fmt(value), scenario, init.value, _fmt(exact), _fmt(sampled),
        _fmt(stderr), str(d_total), str(d_evo), str(steps),
        _fmt(bounds["per_step"]), _fmt(bounds["total"]),
        _fmt(bounds["adiabatic_margin"]), str(row_seed),
    ])


def cmd_sweep(cfg: dict[str, str], out_path: str | None, seed: int | None,
              jobs: int, depth_only: bool) -> int:
    if "axis" not in cfg:
        raise ConfigError("sweep requires key 'axis'")
    if "values" not in cfg:
        raise ConfigError("sweep requires key 'values'")
    axis = cfg["axis"]
    if axis not in _PARAM_KEYS - _STR_KEYS:
        raise ConfigError(f"axis must be a numeric parameter, got {axis!r}")
    values = [parse_number(v) for v in cfg["values"].split(",") if v.strip()]
    if not values:
        raise ConfigError("values list is empty")
    if axis in _INT_KEYS:
        values = [int(v) for v in values]
    scenario, init = resolve_scenario_init(cfg)
    master = seed if seed is not None else int(cfg.get("seed", 1))
    base = {k: v for k, v in cfg.items()
            if k in _PARAM_KEYS and k != axis}
    work = [
        (base, axis, value, scenario, init.value,
         derive_seed(master, _fmt(value), scenario), depth_only)
        for value in values
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_point, work))
    else:
        rows = [_sweep_point(w) for w in work]
    _write_out("\n".join([CSV_HEADER, *rows]) + "\n", out_path)
    return 0


def cmd_bounds(cfg: dict[str, str], out_path: str | None, seed: int | None) -> int:
    params = build_params(cfg, seed)
    report: dict = {
        "per_step_bound": analysis.per_step_error_bound(params),
        "total_bound": analysis.total_error_bound(params),
        "adiabatic_margin": analysis.adiabatic_margin(params),
    }
    cfg_start = chain_config(params, initial_fields(params))
    bounds = analysis.commutator_bounds(cfg_start)
    report["commutator_norm_bounds"] = {
        "JZ_even": bounds["zz_first_zeeman"],
        "JZ_odd": bounds["zz_second_zeeman"],
        "Z_CI": bounds["zeeman_coupler"],
    }
    if params.n_qubits <= 10:
        rep = analysis.commutator_norms(cfg_start)
        report["exact_commutator_norms"] = {
            "JZ_even": rep.exact["zz_first_zeeman"],
            "JZ_odd": rep.exact["zz_second_zeeman"],
            "Z_CI": rep.exact["zeeman_coupler"],
            "max_vanishing_norm": rep.max_vanishing_norm,
        }
    else:
        report["exact_commutator_norms"] = None
        report["note"] = "exact norms omitted: register exceeds 10 qubits"
    report["params"] = {f.name: getattr(params, f.name)
                        for f in dataclasses.fields(params)}
    _write_out(json.dumps(report, indent=2, sort_keys=True) + "\n", out_path)
    return 0


def cmd_export(cfg: dict[str, str], out_path: str | None, seed: int | None) -> int:
    params = build_params(cfg, seed)
    scenario, init = resolve_scenario_init(cfg)
    _, _, full, _ = _full_pipeline(params, scenario, init)
    _write_out(to_qasm(full), out_path)
    return 0


# ---------------------------------------------------------------------------
# Entry point


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isingbraid",
        description="Ising-chain exchange protocol simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("run", "simulate one scenario and emit a JSON fidelity report"),
        ("sweep", "sweep one numeric parameter and emit CSV rows"),
        ("bounds", "emit analytic error bounds as JSON"),
        ("export", "export the full protocol circuit as OpenQASM 2.0"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to key=value config")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=None, help="master seed override")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers (sweep)")
        p.add_argument("--depth-only", action="store_true",
                       help="compile and report depth without simulating")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        with open(args.config) as fh:
            cfg = parse_config(fh.read())
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "run":
            return cmd_run(cfg, args.out, args.seed, args.depth_only)
        if args.command == "sweep":
            return cmd_sweep(cfg, args.out, args.seed, args.jobs, args.depth_only)
        if args.command == "bounds":
            return cmd_bounds(cfg, args.out, args.seed)
        return cmd_export(cfg, args.out, args.seed)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
