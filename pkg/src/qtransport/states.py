"""Thermal states, bipartite systems and the local-eigenbasis dephasing map."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    SpectralDecomposition,
    check_hermitian,
    hermitian_eig,
    hermiticity_deviation,
    partial_trace,
)

DEGENERACY_GAP = 1e-10
WEAK_COUPLING_WARN = 0.5


class WeakCouplingWarning(UserWarning):
    pass


class InvalidStateError(ValueError):
    pass


@dataclass(frozen=True)
class ThermalParams:
    temperature: float

    def __post_init__(self):
        if not (np.isfinite(self.temperature) and self.temperature > 0):
            raise ValueError(f"temperature must be positive and finite, got {self.temperature}")

    @property
    def beta(self) -> float:
        return 1.0 / self.temperature

    @classmethod
    def from_beta(cls, beta: float) -> "ThermalParams":
        if not (np.isfinite(beta) and beta > 0):
            raise ValueError(f"beta must be positive and finite, got {beta}")
        return cls(1.0 / beta)


def thermal_state(h: np.ndarray, params: ThermalParams | float) -> np.ndarray:
    """Gibbs state ``exp(-beta H) / Z``.

    ``params`` may be a :class:`ThermalParams` or a bare inverse temperature.
    The exponent is shifted by the ground energy, which leaves the normalised
    result unchanged but keeps ``exp`` from overflowing at large ``beta``.
    """
    beta = params.beta if isinstance(params, ThermalParams) else float(params)
    if not (np.isfinite(beta) and beta > 0):
        raise ValueError(f"beta must be positive and finite, got {beta}")
    dec = hermitian_eig(h)
    weights = np.exp(-beta * (dec.eigenvalues - dec.eigenvalues.min()))
    return dec.apply(lambda _: weights / weights.sum())


def eigenspace_labels(eigenvalues: np.ndarray, gap: float = DEGENERACY_GAP) -> np.ndarray:
    """Integer label per (ascending) eigenvalue; equal labels mark a degenerate level."""
    w = np.asarray(eigenvalues, dtype=float)
    scale = max(1.0, float(np.max(np.abs(w)))) if w.size else 1.0
    steps = np.diff(w) > gap * scale
    return np.concatenate([[0], np.cumsum(steps)]).astype(int)


@dataclass(frozen=True, eq=False)
class BipartiteSystem:
    """Two local Hamiltonians plus an interaction on the joint space.

    Build with :meth:`from_hamiltonians`; the total Hamiltonian and the local
    eigenbases are derived, not supplied.
    """

    h_a: np.ndarray
    h_b: np.ndarray
    h_int: np.ndarray
    h_total: np.ndarray = field(repr=False)
    basis_a: SpectralDecomposition = field(repr=False)
    basis_b: SpectralDecomposition = field(repr=False)
    coupling_ratio: float = 0.0

    @classmethod
    def from_hamiltonians(cls, h_a, h_b, h_int=None) -> "BipartiteSystem":
        h_a = check_hermitian(h_a)
        h_b = check_hermitian(h_b)
        d_a, d_b = h_a.shape[0], h_b.shape[0]
        if h_int is None:
            h_int = np.zeros((d_a * d_b, d_a * d_b), dtype=complex)
        h_int = check_hermitian(h_int)
        if h_int.shape != (d_a * d_b, d_a * d_b):
            raise ValueError(f"interaction shape {h_int.shape} != {(d_a * d_b,) * 2}")
        h_total = np.kron(h_a, np.eye(d_b)) + np.kron(np.eye(d_a), h_b) + h_int
        local = min(np.linalg.norm(h_a, 2), np.linalg.norm(h_b, 2))
        coupling = np.linalg.norm(h_int, 2)
        ratio = float(coupling / local) if local > 0 else (0.0 if coupling == 0 else np.inf)
        if ratio > WEAK_COUPLING_WARN:
            warnings.warn(
                f"interaction is not weak: ||H_I|| / min(||H_A||, ||H_B||) = {ratio:.3g}",
                WeakCouplingWarning,
                stacklevel=2,
            )
        return cls(h_a, h_b, h_int, h_total, hermitian_eig(h_a), hermitian_eig(h_b), ratio)

    @property
    def dims(self) -> tuple[int, int]:
        return self.h_a.shape[0], self.h_b.shape[0]

    @property
    def h_a_full(self) -> np.ndarray:
        return np.kron(self.h_a, np.eye(self.dims[1]))

    @property
    def h_b_full(self) -> np.ndarray:
        return np.kron(np.eye(self.dims[0]), self.h_b)

    def dephase(self, rho: np.ndarray) -> np.ndarray:
        return dephase(rho, self.basis_a, self.basis_b)


def dephase(
    rho: np.ndarray, basis_a: SpectralDecomposition, basis_b: SpectralDecomposition
) -> np.ndarray:
    """Pinch ``rho`` onto the joint blocks of the local energy eigenspaces.

    Degenerate local levels are pinched together, so the result does not
    depend on which eigenvectors were picked inside a degenerate level.
    """
    v_a, v_b = basis_a.eigenvectors, basis_b.eigenvectors
    d_a, d_b = v_a.shape[0], v_b.shape[0]
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d_a * d_b, d_a * d_b):
        raise ValueError(f"state shape {rho.shape} does not match local dims {(d_a, d_b)}")
    v = np.kron(v_a, v_b)
    la = eigenspace_labels(basis_a.eigenvalues)
    lb = eigenspace_labels(basis_b.eigenvalues)
    block = np.add.outer(la * d_b, lb).ravel()
    mask = block[:, None] == block[None, :]
    r = v.conj().T @ rho @ v
    return v @ np.where(mask, r, 0) @ v.conj().T


def product_of_marginals(rho: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    return np.kron(partial_trace(rho, dims, "A"), partial_trace(rho, dims, "B"))


def zero_cc_state(rho_a: np.ndarray, rho_b: np.ndarray, p: float) -> np.ndarray:
    """Diagonal two-qubit state with prescribed thermal marginals.

    Populations on ``|00>, |01>, |10>, |11>`` are
    ``(a0 - p b1, p b1, b0 + p b1 - a0, (1 - p) b1)`` where ``a0`` and
    ``b0, b1`` are the ground/excited populations of the marginals. The
    state has no coherence in the product eigenbasis, and its marginals
    reproduce ``rho_a`` and ``rho_b``.
    """
    rho_a = np.asarray(rho_a)
    rho_b = np.asarray(rho_b)
    if rho_a.shape != (2, 2) or rho_b.shape != (2, 2):
        raise ValueError("zero_cc_state is defined for qubit marginals only")
    for name, r in (("rho_a", rho_a), ("rho_b", rho_b)):
        if np.max(np.abs(r - np.diag(np.diag(r)))) > 1e-12:
            raise InvalidStateError(f"{name} must be diagonal in the energy basis")
    a0 = float(rho_a[0, 0].real)
    b0, b1 = float(rho_b[0, 0].real), float(rho_b[1, 1].real)
    if not 0.0 <= p <= 1.0:
        raise InvalidStateError(f"p = {p} outside [0, 1]")
    pops = np.array([a0 - p * b1, p * b1, b0 + p * b1 - a0, (1.0 - p) * b1])
    conditions = (
        "rho^A_00 - p rho^B_11 >= 0",
        "p rho^B_11 >= 0",
        "rho^B_00 + p rho^B_11 - rho^A_00 >= 0",
        "(1 - p) rho^B_11 >= 0",
    )
    for value, cond in zip(pops, conditions):
        if value < 0:
            raise InvalidStateError(f"inadmissible p = {p}: {cond} violated ({value:.3e})")
    return np.diag(pops).astype(complex)


def zero_cc_p_range(rho_a: np.ndarray, rho_b: np.ndarray) -> tuple[float, float]:
    """Closed interval of ``p`` for which :func:`zero_cc_state` is a valid state."""
    a0 = float(np.real(rho_a[0, 0]))
    b0, b1 = float(np.real(rho_b[0, 0])), float(np.real(rho_b[1, 1]))
    lo, hi = 0.0, 1.0
    if b1 > 0:
        hi = min(hi, a0 / b1)
        lo = max(lo, (a0 - b0) / b1)
    if lo > hi:
        raise InvalidStateError("no admissible p for these marginals")
    return lo, hi


def validate_state(
    rho: np.ndarray, *, full_output: bool = False
) -> np.ndarray | tuple[np.ndarray, float]:
    """Check the density-matrix invariants and repair roundoff.

    Eigenvalues in ``[-1e-10, 0)`` are clipped to zero and the trace is
    renormalised. With ``full_output=True`` the total clipped magnitude is
    returned alongside the state.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"expected a square matrix, got shape {rho.shape}")
    dev = hermiticity_deviation(rho)
    if dev > 1e-12:
        raise InvalidStateError(f"not Hermitian (deviation {dev:.3e})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > 1e-6:
        raise InvalidStateError(f"trace {tr:.6g} differs from 1")
    dec = hermitian_eig(rho)
    w = dec.eigenvalues
    if w.min() < -1e-10:
        raise InvalidStateError(f"negative eigenvalue {w.min():.3e}")
    clip = float(-w[w < 0].sum())
    if clip > 0 or abs(tr - 1.0) > 1e-10:
        w = np.clip(w, 0.0, None)
        w = w / w.sum()
        rho = dec.apply(lambda _: w)
    return (rho, clip) if full_output else rho
