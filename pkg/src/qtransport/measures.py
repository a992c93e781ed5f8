"""Entropic and energetic functionals of bipartite states (natural log units).

Quantities that can blow up on singular states (relative entropy, skew
information) return the :data:`DIVERGENT` sentinel instead of ``inf``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    EIG_FLOOR,
    SpectralDecomposition,
    commutator,
    hermitian_eig,
    matrix_log_psd,
    partial_trace,
    real_trace_product,
)
from .states import BipartiteSystem, dephase

KERNEL_OVERLAP_TOL = 1e-10


class Divergent:
    """Marker for a quantity that is infinite on the given input."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DIVERGENT"

    def __reduce__(self):
        return (Divergent, ())


DIVERGENT = Divergent()


def is_divergent(x) -> bool:
    return x is DIVERGENT


def _entropy_from_eigenvalues(w: np.ndarray) -> float:
    w = w[w > 0]
    return float(-np.sum(w * np.log(w)))


def von_neumann_entropy(rho: np.ndarray) -> float:
    return _entropy_from_eigenvalues(np.linalg.eigvalsh(rho))


def relative_entropy(rho: np.ndarray, sigma: np.ndarray, eig_floor: float = EIG_FLOOR):
    """``S(rho || sigma) = tr(rho ln rho) - tr(rho ln sigma)``.

    Returns :data:`DIVERGENT` when ``rho`` has weight larger than
    ``KERNEL_OVERLAP_TOL`` on the kernel of ``sigma``.
    """
    if rho.shape != sigma.shape:
        raise ValueError(f"shape mismatch {rho.shape} vs {sigma.shape}")
    dec = hermitian_eig(sigma)
    kernel = dec.eigenvalues <= eig_floor
    if np.any(kernel):
        vk = dec.eigenvectors[:, kernel]
        overlap = float(np.real(np.einsum("ik,ij,jk->", vk.conj(), rho, vk)))
        if overlap > KERNEL_OVERLAP_TOL:
            return DIVERGENT
    log_sigma, _ = matrix_log_psd(sigma, eig_floor)
    return -von_neumann_entropy(rho) - real_trace_product(rho, log_sigma)


def mutual_information(rho: np.ndarray, dims: tuple[int, int]) -> float:
    s_a = von_neumann_entropy(partial_trace(rho, dims, "A"))
    s_b = von_neumann_entropy(partial_trace(rho, dims, "B"))
    return s_a + s_b - von_neumann_entropy(rho)


def correlated_coherence(
    rho: np.ndarray, basis_a: SpectralDecomposition, basis_b: SpectralDecomposition
) -> float:
    """``S(Pi(rho)) - S(rho)`` with ``Pi`` the local-eigenbasis dephasing."""
    return von_neumann_entropy(dephase(rho, basis_a, basis_b)) - von_neumann_entropy(rho)


def classical_correlation(
    rho: np.ndarray, basis_a: SpectralDecomposition, basis_b: SpectralDecomposition
) -> float:
    """Mutual information left after removing the correlated coherence."""
    dims = (basis_a.eigenvectors.shape[0], basis_b.eigenvectors.shape[0])
    return mutual_information(rho, dims) - correlated_coherence(rho, basis_a, basis_b)


def energy(rho: np.ndarray, h: np.ndarray) -> float:
    return real_trace_product(rho, h, tol=1e-12)


def skew_information(h: np.ndarray, rho: np.ndarray, eig_floor: float = EIG_FLOOR):
    """``-tr([H, rho][H, ln rho])``.

    On a singular ``rho`` the log is taken on the support; if ``H`` moves
    weight from the support into the kernel the value is infinite and
    :data:`DIVERGENT` is returned.
    """
    dec = hermitian_eig(rho)
    w = dec.eigenvalues
    if np.any(w < -eig_floor):
        raise ValueError(f"not positive semidefinite: eigenvalue {w.min():.3e}")
    kernel = w <= eig_floor
    c = commutator(h, rho)
    if np.any(kernel):
        vk = dec.eigenvectors[:, kernel]
        leak = np.linalg.norm(vk.conj().T @ c)
        if leak > KERNEL_OVERLAP_TOL * max(1.0, np.linalg.norm(h, 2)):
            return DIVERGENT
    log_rho, _ = matrix_log_psd(rho, eig_floor)
    return -real_trace_product(c, commutator(h, log_rho))


@dataclass(frozen=True)
class MeasureReport:
    s_a: float
    s_b: float
    s_ab: float
    mutual_information: float
    coherence: float
    classical: float
    e_a: float
    e_b: float
    e_int: float

    @property
    def e_total(self) -> float:
        return self.e_a + self.e_b + self.e_int


def measure_report(rho: np.ndarray, system: BipartiteSystem) -> MeasureReport:
    """All scalar measures of ``rho`` at once, sharing the entropy evaluations."""
    dims = system.dims
    rho_a = partial_trace(rho, dims, "A")
    rho_b = partial_trace(rho, dims, "B")
    s_a = von_neumann_entropy(rho_a)
    s_b = von_neumann_entropy(rho_b)
    s_ab = von_neumann_entropy(rho)
    s_pinched = von_neumann_entropy(system.dephase(rho))
    mi = s_a + s_b - s_ab
    cc = s_pinched - s_ab
    return MeasureReport(
        s_a=s_a,
        s_b=s_b,
        s_ab=s_ab,
        mutual_information=mi,
        coherence=cc,
        classical=mi - cc,
        e_a=energy(rho_a, system.h_a),
        e_b=energy(rho_b, system.h_b),
        e_int=energy(rho, system.h_int),
    )
