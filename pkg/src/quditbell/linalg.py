"""Dense complex linear algebra used by the quantum and reporting layers.

Operators are plain 2-D ``complex128`` numpy arrays and states are 1-D
``complex128`` arrays.  Nothing here mutates its inputs.
"""
from __future__ import annotations

from functools import reduce

import numpy as np
from scipy.sparse.linalg import eigsh

from .errors import DimensionLimitError, HermiticityError

DIM_CAP = 4096
DENSE_EIGEN_MAX = 1024
HERMITIAN_REJECT_TOL = 1e-8
NORM_TOL = 1e-12


def as_matrix(m) -> np.ndarray:
    """Validate and return ``m`` as a square, finite complex matrix."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def state_vector(amplitudes, normalize: bool = False) -> np.ndarray:
    """Return a validated unit-norm state.

    With ``normalize=True`` the amplitudes are rescaled first; otherwise a
    norm off by more than 1e-12 is an error.
    """
    v = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if v.size < 1 or not np.all(np.isfinite(v)):
        raise ValueError("state must be a non-empty finite vector")
    norm = np.linalg.norm(v)
    if normalize:
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return v / norm
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"state norm is {norm!r}, expected 1")
    return v


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def kron(a, b, cap: int = DIM_CAP) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    dim = a.shape[0] * b.shape[0]
    if dim > cap:
        raise DimensionLimitError(f"Kronecker product of dimension {dim} exceeds cap {cap}")
    return np.kron(a, b)


def kron_all(mats, cap: int = DIM_CAP) -> np.ndarray:
    """Left-to-right Kronecker product; the first factor is most significant."""
    return reduce(lambda x, y: kron(x, y, cap), mats)


def matpow(m, n: int) -> np.ndarray:
    if n < 0:
        raise ValueError("matrix power must be non-negative")
    return np.linalg.matrix_power(as_matrix(m), n)


def expectation(state, op) -> complex:
    """<state|op|state>."""
    psi = np.asarray(state, dtype=np.complex128).reshape(-1)
    op = as_matrix(op)
    if psi.shape[0] != op.shape[0]:
        raise ValueError(f"state length {psi.shape[0]} does not match operator dim {op.shape[0]}")
    return complex(np.vdot(psi, op @ psi))


def hermitian_part(m, tol: float = HERMITIAN_REJECT_TOL) -> np.ndarray:
    """Return (m + m^dagger)/2 after checking ``m`` is Hermitian to ``tol``."""
    m = as_matrix(m)
    dev = np.max(np.abs(m - dagger(m)))
    if dev > tol:
        raise HermiticityError(f"matrix deviates from Hermitian by {dev:.3e} > {tol:.0e}")
    return (m + dagger(m)) / 2


def max_hermitian_eigenvalue(m, tol: float = HERMITIAN_REJECT_TOL) -> float:
    """Largest eigenvalue of a Hermitian matrix.

    Dense ``eigvalsh`` up to dimension 1024; above that, Lanczos (ARPACK)
    started from the normalized all-ones vector so repeated calls agree.
    A second fixed-seed start covers top eigenvectors orthogonal to all-ones.
    """
    h = hermitian_part(m, tol)
    dim = h.shape[0]
    if dim <= DENSE_EIGEN_MAX:
        return float(np.linalg.eigvalsh(h)[-1])
    rng = np.random.default_rng(0)
    starts = [
        np.full(dim, 1 / np.sqrt(dim), dtype=np.complex128),
        rng.standard_normal(dim) + 1j * rng.standard_normal(dim),
    ]
    return max(
        float(eigsh(h, k=1, which="LA", v0=v0, tol=1e-10, return_eigenvectors=False)[0])
        for v0 in starts
    )
