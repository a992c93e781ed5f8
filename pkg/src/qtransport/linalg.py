"""Dense Hermitian linear algebra for small bipartite systems.

Everything here works on plain complex ``numpy`` arrays. Matrix functions go
through the spectral decomposition so that logarithms of density matrices
can detect rank deficiency instead of returning ``-inf`` entries.
"""
from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

HERMITICITY_TOL = 1e-12
EIG_FLOOR = 1e-12


class NotHermitianError(ValueError):
    def __init__(self, deviation: float, tol: float):
        super().__init__(
            f"matrix is not Hermitian: max |A - A^H| = {deviation:.3e} > {tol:.1e}"
        )
        self.deviation = deviation


class SpectralDecomposition(NamedTuple):
    """Ascending eigenvalues and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def apply(self, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        v = self.eigenvectors
        return (v * f(self.eigenvalues)) @ v.conj().T


def hermiticity_deviation(a: np.ndarray) -> float:
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - a.conj().T)))


def check_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    # scale-aware so Hamiltonians with O(100) entries are not rejected for roundoff
    dev = hermiticity_deviation(a)
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 1.0)
    if dev > tol * scale:
        raise NotHermitianError(dev, tol * scale)
    return a


def hermitian_eig(a: np.ndarray, tol: float = HERMITICITY_TOL) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues come back ascending. Each eigenvector is rotated so that its
    largest-magnitude component is real and positive (ties broken by the
    lowest index), which makes the output reproducible across runs.
    """
    a = check_hermitian(a, tol)
    a = 0.5 * (a + a.conj().T)
    w, v = np.linalg.eigh(a)
    idx = np.argmax(np.abs(v) > np.max(np.abs(v), axis=0) * (1 - 1e-12), axis=0)
    pivots = v[idx, np.arange(v.shape[1])]
    v = v * (np.abs(pivots) / pivots)
    return SpectralDecomposition(w, v)


def func_hermitian(a: np.ndarray, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix, ``V f(L) V^H``."""
    dec = hermitian_eig(a)
    with np.errstate(all="ignore"):
        fw = np.asarray(f(dec.eigenvalues))
    bad = ~np.isfinite(fw)
    if np.any(bad):
        raise ValueError(f"function undefined at eigenvalue {dec.eigenvalues[bad][0]!r}")
    return dec.apply(lambda _: fw)


def expm_hermitian(a: np.ndarray, scale: complex = 1.0) -> np.ndarray:
    """``exp(scale * A)`` for Hermitian ``A`` and any complex ``scale``."""
    dec = hermitian_eig(a)
    return dec.apply(lambda w: np.exp(scale * w))


def matrix_log_psd(
    rho: np.ndarray, eig_floor: float = EIG_FLOOR
) -> tuple[np.ndarray, bool]:
    """Logarithm of a positive semidefinite matrix on its support.

    Returns ``(log, singular)``. Eigenvalues at or below ``eig_floor`` are
    treated as the kernel: their log is set to zero in the returned matrix
    and ``singular`` is True, so callers must decide what a kernel
    contribution means for them.
    """
    dec = hermitian_eig(rho)
    w = dec.eigenvalues
    if np.any(w < -eig_floor):
        raise ValueError(f"not positive semidefinite: eigenvalue {w.min():.3e}")
    support = w > eig_floor
    logw = np.zeros_like(w)
    logw[support] = np.log(w[support])
    return dec.apply(lambda _: logw), bool(not np.all(support))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def partial_trace(rho: np.ndarray, dims: tuple[int, int], keep: str) -> np.ndarray:
    """Reduced matrix of a bipartite operator; ``keep`` is ``"A"`` or ``"B"``."""
    d_a, d_b = dims
    rho = np.asarray(rho)
    if rho.shape != (d_a * d_b, d_a * d_b):
        raise ValueError(f"shape {rho.shape} does not match dims {dims}")
    r = rho.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.einsum("ikjk->ij", r)
    if keep == "B":
        return np.einsum("kikj->ij", r)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValueError(f"commutator needs equal square shapes, got {a.shape}, {b.shape}")
    return a @ b - b @ a


def trace_product(a: np.ndarray, b: np.ndarray) -> complex:
    """``tr(AB)`` without forming the product."""
    return complex(np.einsum("ij,ji->", a, b))


def real_trace_product(a: np.ndarray, b: np.ndarray, tol: float = 1e-10) -> float:
    """``tr(AB)`` for a product expected to have a real trace."""
    z = trace_product(a, b)
    scale = max(1.0, float(np.linalg.norm(a)) * float(np.linalg.norm(b)))
    if abs(z.imag) > tol * scale:
        raise ValueError(f"trace has imaginary residue {z.imag:.3e}")
    return z.real
