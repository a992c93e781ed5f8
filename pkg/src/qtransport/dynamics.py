"""Exact unitary evolution and trajectory bookkeeping."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .expansion import ExpansionCoefficients, coefficients
from .linalg import SpectralDecomposition, commutator, hermitian_eig, matrix_log_psd, partial_trace
from .measures import measure_report, von_neumann_entropy
from .states import BipartiteSystem

UNITARY_TOL = 1e-10
DIVERGENT_DC = 1e-14


def propagator(h: np.ndarray | SpectralDecomposition, t: float) -> np.ndarray:
    """``U(t) = exp(-i H t)`` from the spectral decomposition of ``H``."""
    dec = h if isinstance(h, SpectralDecomposition) else hermitian_eig(h)
    return dec.apply(lambda w: np.exp(-1j * w * t))


def evolve(rho: np.ndarray, u: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    dev = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
    if dev > tol:
        raise ValueError(f"propagator is not unitary (max |U^H U - I| = {dev:.3e})")
    out = u @ rho @ u.conj().T
    return 0.5 * (out + out.conj().T)


def taylor_step(rho: np.ndarray, h: np.ndarray, dt: float) -> np.ndarray:
    """Second-order Taylor update ``rho - i[H, rho] dt - [H, [H, rho]] dt^2 / 2``.

    Only meant for checking the expansion against :func:`evolve`.
    """
    if np.linalg.norm(h, 2) * abs(dt) > 0.1:
        warnings.warn("taylor_step used with ||H|| dt > 0.1", RuntimeWarning, stacklevel=2)
    c = commutator(h, rho)
    return rho - 1j * dt * c - 0.5 * dt**2 * commutator(h, c)


@dataclass(frozen=True)
class EvolutionConfig:
    t_max: float
    dt: float
    fd_dt: float = 5e-4
    record_coeffs: bool = False
    fd_scheme: str = "forward"

    def __post_init__(self):
        if not (self.t_max > 0 and self.dt > 0 and self.fd_dt > 0):
            raise ValueError("t_max, dt and fd_dt must all be positive")
        if self.dt > self.t_max:
            raise ValueError(f"dt = {self.dt} exceeds t_max = {self.t_max}")
        if self.fd_dt > self.dt:
            raise ValueError(f"fd_dt = {self.fd_dt} exceeds dt = {self.dt}")
        if self.fd_scheme not in ("forward", "central"):
            raise ValueError(f"fd_scheme must be 'forward' or 'central', got {self.fd_scheme!r}")

    def times(self) -> np.ndarray:
        n = int(math.floor(self.t_max / self.dt + 1e-9))
        return np.arange(n + 1) * self.dt


@dataclass(frozen=True)
class TrajectoryRecord:
    t: float
    e_a: float
    e_b: float
    de_cum: float
    s_a: float
    s_b: float
    s_ab: float
    mutual_information: float
    coherence: float
    classical: float
    ratio_fd: float
    ratio_status: str
    e_int: float = 0.0
    coeffs: ExpansionCoefficients | None = None


def transport_term(rho: np.ndarray, delta: np.ndarray, dims: tuple[int, int]) -> float:
    """``-tr[delta ln(rho_A x rho_B)]`` with the marginals of ``rho``.

    For thermal marginals this is ``beta_A dE_A + beta_B dE_B``, i.e.
    ``(beta_B - beta_A) dE`` when the local energies change oppositely; the
    inverse temperatures are the instantaneous ones of the marginals.
    """
    log_a, sing_a = matrix_log_psd(partial_trace(rho, dims, "A"))
    log_b, sing_b = matrix_log_psd(partial_trace(rho, dims, "B"))
    if sing_a or sing_b:
        raise ValueError("singular marginal; transport term undefined")
    return float(
        -np.real(np.einsum("ij,ji->", partial_trace(delta, dims, "A"), log_a))
        - np.real(np.einsum("ij,ji->", partial_trace(delta, dims, "B"), log_b))
    )


def fd_ratio(
    rho_lo: np.ndarray, rho_hi: np.ndarray, rho_ref: np.ndarray, system: BipartiteSystem
) -> tuple[float, str]:
    """Finite-difference ``(beta_B - beta_A) dE / dC`` between two nearby states.

    ``rho_ref`` supplies the marginals whose logs set the local inverse
    temperatures. Returns ``(value, status)`` with status ``"ok"``,
    ``"divergent"`` (coherence change below 1e-14) or ``"indeterminate"``
    (both changes below 1e-14).
    """
    dc = _coherence(rho_hi, system) - _coherence(rho_lo, system)
    num = transport_term(rho_ref, rho_hi - rho_lo, system.dims)
    if abs(dc) < DIVERGENT_DC:
        if abs(num) < DIVERGENT_DC:
            return math.nan, "indeterminate"
        return math.nan, "divergent"
    return num / dc, "ok"


def _coherence(rho: np.ndarray, system: BipartiteSystem) -> float:
    return von_neumann_entropy(system.dephase(rho)) - von_neumann_entropy(rho)


def state_at(system: BipartiteSystem, rho0: np.ndarray, t: float, dec=None) -> np.ndarray:
    """``U(t) rho0 U(t)^H`` evaluated in the eigenbasis of ``H``.

    Phases enter as ``exp(-i (E_j - E_k) t)``, so populations of energy
    eigenstates are carried over exactly rather than through ``|exp(-iEt)|^2``.
    """
    dec = dec if dec is not None else hermitian_eig(system.h_total)
    v, w = dec.eigenvectors, dec.eigenvalues
    phases = np.exp(-1j * np.subtract.outer(w, w) * t)
    out = v @ ((v.conj().T @ rho0 @ v) * phases) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def run_trajectory(
    system: BipartiteSystem,
    rho0: np.ndarray,
    config: EvolutionConfig,
) -> list[TrajectoryRecord]:
    """Exact trajectory on the grid ``t_k = k dt`` up to ``t_max``.

    Every record is computed from ``U(t_k) rho0 U(t_k)^H`` directly, so
    errors do not accumulate along the grid. The finite-difference ratio
    uses the marginals' own logarithm at ``t_k`` (see :func:`transport_term`).
    """
    dec = hermitian_eig(system.h_total)
    e_b0 = None
    records = []
    for t in config.times():
        t = float(t)
        rho = state_at(system, rho0, t, dec)
        rep = measure_report(rho, system)
        if e_b0 is None:
            e_b0 = rep.e_b
        if config.fd_scheme == "forward":
            lo, hi = rho, state_at(system, rho0, t + config.fd_dt, dec)
        else:
            lo = state_at(system, rho0, t - config.fd_dt / 2, dec)
            hi = state_at(system, rho0, t + config.fd_dt / 2, dec)
        value, status = fd_ratio(lo, hi, rho, system)
        records.append(
            TrajectoryRecord(
                t=t,
                e_a=rep.e_a,
                e_b=rep.e_b,
                de_cum=rep.e_b - e_b0,
                s_a=rep.s_a,
                s_b=rep.s_b,
                s_ab=rep.s_ab,
                mutual_information=rep.mutual_information,
                coherence=rep.coherence,
                classical=rep.classical,
                ratio_fd=value,
                ratio_status=status,
                e_int=rep.e_int,
                coeffs=coefficients(rho, system) if config.record_coeffs else None,
            )
        )
    return records


def quasi_static_residual(
    records: list[TrajectoryRecord], beta_a: float, beta_b: float
) -> np.ndarray:
    """``(beta_B - beta_A) dE_cum(t) - dI(t)`` along a trajectory, fixed initial betas."""
    i0 = records[0].mutual_information
    return np.array(
        [(beta_b - beta_a) * r.de_cum - (r.mutual_information - i0) for r in records]
    )
