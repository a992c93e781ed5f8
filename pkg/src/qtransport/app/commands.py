"""Subcommand implementations; each returns data and optionally writes CSV."""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from ..dynamics import EvolutionConfig, TrajectoryRecord, fd_ratio, run_trajectory, state_at
from ..expansion import RatioStatus, coefficients, is_zero_cc, ratio
from ..measures import DIVERGENT, measure_report, skew_information
from ..scenarios import (
    ModelParams,
    build_two_qubit_system,
    product_scenario,
    reproduce_fig2,
    status_label,
    zero_cc_scenario,
)
from ..states import InvalidStateError, validate_state
from .config import ConfigError, RunConfig

TRAJECTORY_HEADER = [
    "t", "E_A", "E_B", "dE_cum", "S_A", "S_B", "S_AB", "I", "C", "J", "ratio_fd", "ratio_status",
]
COEFF_COLUMNS = ["f1", "g1", "f2", "g2", "g2r"]
FIG2_HEADER = ["t", "ratio_product", "ratio_p05", "ratio_p0", "status_p0"]
SWEEP_HEADER = [
    "value", "f1", "f2", "g1", "g2", "g2r", "ratio", "order_used",
    "ratio_status", "scenario", "skew_information", "status",
]


class VerificationError(RuntimeError):
    pass


def fmt(x) -> str:
    """Shortest round-trip decimal for floats; other values via ``str``."""
    if x is None:
        return ""
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def params_of(config: RunConfig) -> ModelParams:
    try:
        return ModelParams(T_A=config.T_A, T_B=config.T_B, omega=config.omega, gamma=config.gamma,
                           dt_probe=config.fd_dt)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def initial_state(config: RunConfig, params: ModelParams) -> np.ndarray:
    if config.scenario == "product":
        return product_scenario(params)
    if config.scenario == "zero_cc":
        try:
            return zero_cc_scenario(params, config.p)
        except InvalidStateError as exc:
            raise ConfigError(str(exc)) from None
    if config.state_file is not None:
        try:
            rho = np.load(config.state_file)
        except OSError as exc:
            raise ConfigError(f"cannot read state file: {exc}") from None
    else:
        rho = np.diag(np.asarray(config.populations, dtype=float)).astype(complex)
    if rho.shape != (4, 4):
        raise ConfigError(f"custom state must be 4x4, got {rho.shape}")
    try:
        return validate_state(rho)
    except InvalidStateError as exc:
        raise ConfigError(str(exc)) from None


def write_csv(header: list[str], rows: list[list], out: str | None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(x) for x in row])
    text = buf.getvalue()
    if out is not None:
        try:
            Path(out).write_text(text, encoding="utf-8", newline="")
        except OSError as exc:
            raise ConfigError(f"cannot write {out}: {exc}") from None
    return text


# coeffs

def cmd_coeffs(config: RunConfig) -> dict:
    """Expansion coefficients, leading-order ratio and scenario at ``t = 0``."""
    params = params_of(config)
    system = build_two_qubit_system(params)
    rho0 = initial_state(config, params)
    c = coefficients(rho0, system)
    r = ratio(c)
    skew = skew_information(system.h_total, rho0) if is_zero_cc(rho0, system) else None
    report = {
        "scenario": config.scenario,
        "f1": c.f1,
        "f2": c.f2,
        "g1": c.g1,
        "g2": c.g2,
        "g2r": c.g2r,
        "g2_divergent": c.g2_divergent,
        "ratio": r.value,
        "order_used": r.order_used,
        "status": r.status.value,
        "classification": r.scenario.value,
        "skew_information": "divergent" if skew is DIVERGENT else skew,
    }
    if r.status is RatioStatus.INDETERMINATE:
        # numerical fallback over one probe step; higher expansion orders are not derived
        value, status = fd_ratio(rho0, state_at(system, rho0, config.fd_dt), rho0, system)
        report["fd_fallback_ratio"] = value
        report["fd_fallback_status"] = status
    return report


def format_coeffs(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, float) and math.isfinite(value):
            value = f"{value:.6g}"
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


# trajectory

def trajectory_records(config: RunConfig) -> tuple[list[TrajectoryRecord], ModelParams]:
    params = params_of(config)
    system = build_two_qubit_system(params)
    rho0 = initial_state(config, params)
    try:
        evo = EvolutionConfig(t_max=config.t_max, dt=config.dt, fd_dt=config.fd_dt,
                              record_coeffs=config.emit_coeffs, fd_scheme=config.fd_scheme)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return run_trajectory(system, rho0, evo), params


def trajectory_rows(records: list[TrajectoryRecord], emit_coeffs: bool) -> list[list]:
    rows = []
    for r in records:
        row = [r.t, r.e_a, r.e_b, r.de_cum, r.s_a, r.s_b, r.s_ab, r.mutual_information,
               r.coherence, r.classical, r.ratio_fd, r.ratio_status]
        if emit_coeffs:
            c = r.coeffs
            row += [c.f1, c.g1, c.f2, c.g2, c.g2r]
        rows.append(row)
    return rows


def verify_trajectory(records: list[TrajectoryRecord]) -> list[str]:
    """Violations of the exact per-row identities (empty when all hold)."""
    problems = []
    first = records[0]
    e0 = first.e_a + first.e_b + first.e_int
    for r in records:
        if abs(r.mutual_information - r.coherence - r.classical) > 1e-10:
            problems.append(f"t={r.t}: I - C - J = {r.mutual_information - r.coherence - r.classical:.3e}")
        if abs(r.s_ab - first.s_ab) > 1e-8:
            problems.append(f"t={r.t}: S_AB drifted by {r.s_ab - first.s_ab:.3e}")
        drift = abs(r.e_a + r.e_b + r.e_int - e0)
        if drift > 1e-8 * max(abs(e0), 1e-300):
            problems.append(f"t={r.t}: total energy drifted by {drift:.3e}")
    return problems


def cmd_trajectory(config: RunConfig, verify: bool = False) -> str:
    records, _ = trajectory_records(config)
    if verify:
        problems = verify_trajectory(records)
        if problems:
            raise VerificationError("; ".join(problems[:5]))
    header = TRAJECTORY_HEADER + (COEFF_COLUMNS if config.emit_coeffs else [])
    return write_csv(header, trajectory_rows(records, config.emit_coeffs), config.out)


# fig2

def cmd_fig2(config: RunConfig, verify: bool = False) -> str:
    params = params_of(config)
    try:
        series = reproduce_fig2(params, t_max=config.t_max, dt=config.dt)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if verify:
        for scenario, p in (("product", 0.5), ("zero_cc", 0.5), ("zero_cc", 0.0)):
            records, _ = trajectory_records(replace(config, scenario=scenario, p=p, emit_coeffs=False))
            problems = verify_trajectory(records)
            if problems:
                raise VerificationError(f"{scenario} p={p}: " + "; ".join(problems[:5]))
    prod, p05, p0 = series["product"], series["p05"], series["p0"]
    rows = [
        [float(t), a, b, c, status_label(r)]
        for t, a, b, c, r in zip(prod.times, prod.values, p05.values, p0.values, p0.results)
    ]
    return write_csv(FIG2_HEADER, rows, config.out)


# sweep

def sweep_point(config: RunConfig, value: float) -> list:
    param = config.sweep.param
    cfg = replace(config, **{param: value}, **({"scenario": "zero_cc"} if param == "p" else {}))
    try:
        report = cmd_coeffs(cfg)
    except (ConfigError, ValueError) as exc:
        return [value] + [None] * 10 + [f"error: {exc}".replace(",", ";")]
    skew = report["skew_information"]
    return [
        value, report["f1"], report["f2"], report["g1"], report["g2"], report["g2r"],
        report["ratio"], report["order_used"], report["status"], report["classification"],
        skew, "ok",
    ]


def _verify_sweep_point(config: RunConfig, value: float) -> str | None:
    param = config.sweep.param
    cfg = replace(config, **{param: value}, **({"scenario": "zero_cc"} if param == "p" else {}))
    params = params_of(cfg)
    system = build_two_qubit_system(params)
    rep = measure_report(initial_state(cfg, params), system)
    gap = rep.mutual_information - rep.coherence - rep.classical
    if abs(gap) > 1e-10:
        return f"I - C - J = {gap:.3e}"
    return None


def cmd_sweep(config: RunConfig, verify: bool = False) -> str:
    if config.sweep is None:
        raise ConfigError("sweep command needs a sweep spec")
    values = config.sweep.values()
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(sweep_point, [config] * len(values), values))
    else:
        rows = [sweep_point(config, v) for v in values]
    if verify:
        for value, row in zip(values, rows):
            if row[-1] == "ok":
                problem = _verify_sweep_point(config, value)
                if problem:
                    raise VerificationError(f"{config.sweep.param}={value}: {problem}")
    return write_csv(SWEEP_HEADER, rows, config.out)
