"""Short-time expansion of transported energy and correlated coherence.

For a state ``rho`` evolving under ``H`` over a short step ``dt``:

    (beta_B - beta_A) dE = f1 dt + f2 dt^2 + ...
    dC                   = g1 dt + (g2 - g2r) dt^2 + ...

with

    f1  = tr(i[H, rho] ln(rho_A x rho_B))
    f2  = tr([H, [H, rho]] ln(rho_A x rho_B)) / 2
    g1  = tr(i[H, rho] ln Pi(rho))
    g2  = tr([H, [H, rho]] ln Pi(rho)) / 2
    g2r = tr(Pi(-i[H, rho])^2 Pi(rho)^-1) / 2

``Pi`` pinches onto the local energy eigenbases. The ratio of the leading
non-vanishing orders says whether correlated coherence, classical
correlation, or both carry the energy flow.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .linalg import EIG_FLOOR, commutator, hermitian_eig, matrix_log_psd, partial_trace
from .measures import DIVERGENT, skew_information
from .states import BipartiteSystem

F_TOL = 1e-9
G_TOL = 1e-9
SCENARIO_TOL = 1e-3
KERNEL_COUPLING_TOL = 1e-12
ZERO_CC_TOL = 1e-10


class RatioStatus(str, enum.Enum):
    OK = "ok"
    DIVERGENT_TO_ZERO = "divergent_to_zero"
    DIVERGENT_TO_INFINITY = "divergent_to_infinity"
    INDETERMINATE = "indeterminate"


class Scenario(str, enum.Enum):
    COHERENCE_MANDATED = "coherence_mandated"
    CLASSICALLY_MANDATED = "classically_mandated"
    INTER_CONVERSION = "inter_conversion"
    MIXED = "mixed"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class ExpansionCoefficients:
    f1: float
    f2: float
    g1: float
    g2: float
    g2r: float
    g2_divergent: bool = False
    rho_dot_dephased_norm: float = 0.0

    @property
    def second_order_denominator(self) -> float:
        return self.g2 - self.g2r


@dataclass(frozen=True)
class RatioResult:
    value: float
    status: RatioStatus
    order_used: int | None
    scenario: Scenario

    @property
    def is_finite(self) -> bool:
        return self.status is RatioStatus.OK


def _local_log(rho_marg: np.ndarray, which: str) -> np.ndarray:
    log, singular = matrix_log_psd(rho_marg)
    if singular:
        raise ValueError(f"marginal rho_{which} is singular; ln(rho_A x rho_B) undefined")
    return log


def coefficients(rho: np.ndarray, system: BipartiteSystem) -> ExpansionCoefficients:
    """First- and second-order expansion coefficients at the state ``rho``.

    The coherence-side traces are evaluated in the eigenbasis of the pinched
    state, where its logarithm and inverse are diagonal. Kernel directions
    of the pinched state contribute nothing unless the dynamics couples into
    them, in which case ``g2`` (or ``g2r``) is infinite and ``g2_divergent``
    is set.
    """
    dims = system.dims
    h = system.h_total
    comm = commutator(h, rho)
    first = 1j * comm  # i[H, rho] = -drho/dt
    second = commutator(h, comm)

    log_prod = np.kron(_local_log(partial_trace(rho, dims, "A"), "A"), np.eye(dims[1]))
    log_prod = log_prod + np.kron(np.eye(dims[0]), _local_log(partial_trace(rho, dims, "B"), "B"))
    f1 = float(np.real(np.einsum("ij,ji->", first, log_prod)))
    f2 = float(np.real(np.einsum("ij,ji->", second, log_prod))) / 2

    pinched = system.dephase(rho)
    dec = hermitian_eig(pinched)
    mu, v = dec.eigenvalues, dec.eigenvectors
    if mu.min() < -EIG_FLOOR:
        raise ValueError(f"pinched state has negative eigenvalue {mu.min():.3e}")
    support = mu > EIG_FLOOR
    log_mu = np.zeros_like(mu)
    log_mu[support] = np.log(mu[support])

    first_d = np.real(np.einsum("ki,ij,jk->k", v.conj().T, first, v))
    second_d = np.real(np.einsum("ki,ij,jk->k", v.conj().T, second, v))
    g1 = float(first_d @ log_mu)
    g2 = float(second_d[support] @ log_mu[support]) / 2

    rho_dot_pinched = system.dephase(-first)
    rdp = v.conj().T @ rho_dot_pinched @ v
    row_weight = np.sum(np.abs(rdp) ** 2, axis=1)
    g2r = float(np.sum(row_weight[support] / mu[support])) / 2

    scale = max(1.0, float(np.linalg.norm(h, 2)) ** 2)
    kernel = ~support
    divergent = bool(
        np.any(np.abs(second_d[kernel]) > KERNEL_COUPLING_TOL * scale)
        or np.any(row_weight[kernel] > KERNEL_COUPLING_TOL * scale)
    )
    if divergent:
        g2 = math.inf
    return ExpansionCoefficients(
        f1=f1,
        f2=f2,
        g1=g1,
        g2=g2,
        g2r=g2r,
        g2_divergent=divergent,
        rho_dot_dephased_norm=float(np.linalg.norm(rho_dot_pinched)),
    )


def classify_scenario(
    value: float, status: RatioStatus, scenario_tol: float = SCENARIO_TOL
) -> Scenario:
    """Map a ratio onto the coherence / classical / inter-conversion cases."""
    if status is RatioStatus.INDETERMINATE:
        return Scenario.UNCLASSIFIED
    if status is RatioStatus.DIVERGENT_TO_INFINITY:
        return Scenario.CLASSICALLY_MANDATED
    if status is RatioStatus.DIVERGENT_TO_ZERO or abs(value) < scenario_tol:
        return Scenario.INTER_CONVERSION
    if abs(value - 1.0) < scenario_tol:
        return Scenario.COHERENCE_MANDATED
    return Scenario.MIXED


def ratio(
    coeffs: ExpansionCoefficients,
    f_tol: float = F_TOL,
    g_tol: float = G_TOL,
    scenario_tol: float = SCENARIO_TOL,
) -> RatioResult:
    """Leading-order value of ``(beta_B - beta_A) dE / dC``."""

    def result(value, status, order):
        return RatioResult(value, status, order, classify_scenario(value, status, scenario_tol))

    if abs(coeffs.f1) > f_tol or abs(coeffs.g1) > g_tol:
        if abs(coeffs.g1) <= g_tol:
            return result(math.inf, RatioStatus.DIVERGENT_TO_INFINITY, 1)
        return result(coeffs.f1 / coeffs.g1, RatioStatus.OK, 1)

    if coeffs.g2_divergent:
        return result(0.0, RatioStatus.DIVERGENT_TO_ZERO, 2)
    den = coeffs.second_order_denominator
    if abs(den) > g_tol:
        return result(coeffs.f2 / den, RatioStatus.OK, 2)
    if abs(coeffs.f2) > f_tol:
        return result(math.inf, RatioStatus.DIVERGENT_TO_INFINITY, 2)
    return result(math.nan, RatioStatus.INDETERMINATE, None)


def is_zero_cc(rho: np.ndarray, system: BipartiteSystem, tol: float = ZERO_CC_TOL) -> bool:
    return float(np.max(np.abs(system.dephase(rho) - rho))) <= tol


def initial_acceleration(rho0: np.ndarray, system: BipartiteSystem):
    """Second-order coefficient of the coherence gain from a zero-coherence state.

    Equals half the skew information ``-tr([H, rho0][H, ln rho0])``; returns
    :data:`DIVERGENT` for singular states whose kernel is fed by ``H``.
    """
    if not is_zero_cc(rho0, system):
        raise ValueError("initial_acceleration requires a state with zero correlated coherence")
    skew = skew_information(system.h_total, rho0)
    if skew is DIVERGENT:
        return DIVERGENT
    return skew / 2
