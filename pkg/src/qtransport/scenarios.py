"""Two resonant qubits with exchange coupling, and the initial states studied on them.

Defaults: ``k = hbar = 1``, ``T_A = 15``, ``T_B = 10``, ``omega = 100``,
``gamma = 10``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import EvolutionConfig, state_at
from .expansion import RatioResult, RatioStatus, coefficients, ratio
from .linalg import hermitian_eig
from .states import BipartiteSystem, ThermalParams, thermal_state, zero_cc_state

SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)  # |1><0|
SIGMA_PLUS = SIGMA_MINUS.T.copy()  # |0><1|


@dataclass(frozen=True)
class ModelParams:
    T_A: float = 15.0
    T_B: float = 10.0
    omega: float = 100.0
    gamma: float = 10.0
    dt_probe: float = 5e-4

    def __post_init__(self):
        if self.T_A <= 0 or self.T_B <= 0:
            raise ValueError("temperatures must be positive")
        if self.T_A == self.T_B:
            raise ValueError("T_A and T_B must differ")
        if self.omega <= 0 or self.gamma < 0:
            raise ValueError("omega must be positive and gamma non-negative")

    @property
    def beta_a(self) -> float:
        return 1.0 / self.T_A

    @property
    def beta_b(self) -> float:
        return 1.0 / self.T_B


def local_hamiltonian(omega: float) -> np.ndarray:
    return -0.5 * omega * SIGMA_Z


def exchange_coupling(gamma: float) -> np.ndarray:
    return 0.5 * gamma * (np.kron(SIGMA_PLUS, SIGMA_MINUS) + np.kron(SIGMA_MINUS, SIGMA_PLUS))


def build_two_qubit_system(params: ModelParams = ModelParams()) -> BipartiteSystem:
    h = local_hamiltonian(params.omega)
    return BipartiteSystem.from_hamiltonians(h, h, exchange_coupling(params.gamma))


def thermal_marginals(params: ModelParams = ModelParams()) -> tuple[np.ndarray, np.ndarray]:
    h = local_hamiltonian(params.omega)
    return (
        thermal_state(h, ThermalParams(params.T_A)),
        thermal_state(h, ThermalParams(params.T_B)),
    )


def product_scenario(params: ModelParams = ModelParams()) -> np.ndarray:
    rho_a, rho_b = thermal_marginals(params)
    return np.kron(rho_a, rho_b)


def zero_cc_scenario(params: ModelParams = ModelParams(), p: float = 0.5) -> np.ndarray:
    rho_a, rho_b = thermal_marginals(params)
    return zero_cc_state(rho_a, rho_b, p)


FIG2_SERIES = (("product", None), ("p05", 0.5), ("p0", 0.0))


@dataclass(frozen=True)
class Fig2Series:
    name: str
    times: np.ndarray
    results: list[RatioResult]

    @property
    def values(self) -> np.ndarray:
        return np.array([r.value if r.is_finite else 0.0 for r in self.results])


def ratio_series(
    system: BipartiteSystem, rho0: np.ndarray, times: np.ndarray
) -> list[RatioResult]:
    """Expansion-order ratio at each time along the exact trajectory."""
    dec = hermitian_eig(system.h_total)
    return [ratio(coefficients(state_at(system, rho0, float(t), dec), system)) for t in times]


def reproduce_fig2(
    params: ModelParams = ModelParams(), t_max: float = 0.5, dt: float = 1e-3
) -> dict[str, Fig2Series]:
    """Ratio-versus-time curves for the product, ``p = 0.5`` and ``p = 0`` states.

    Divergent-to-zero points (the singular ``p = 0`` state at ``t = 0``)
    are reported through their status; :attr:`Fig2Series.values` maps them
    to 0.
    """
    system = build_two_qubit_system(params)
    times = EvolutionConfig(t_max=t_max, dt=dt, fd_dt=min(params.dt_probe, dt)).times()
    out = {}
    for name, p in FIG2_SERIES:
        rho0 = product_scenario(params) if p is None else zero_cc_scenario(params, p)
        out[name] = Fig2Series(name, times, ratio_series(system, rho0, times))
    return out


def status_label(result: RatioResult) -> str:
    return {
        RatioStatus.OK: "ok",
        RatioStatus.DIVERGENT_TO_ZERO: "divergent",
        RatioStatus.DIVERGENT_TO_INFINITY: "divergent",
        RatioStatus.INDETERMINATE: "indeterminate",
    }[result.status]
