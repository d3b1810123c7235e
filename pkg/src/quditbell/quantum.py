"""Quantum side: roots of unity, observables, GHZ states and Bell operators.

Conventions
-----------
* ``omega(d, x)`` is ``exp(-2*pi*i*x/d)``.  With this primitive root the
  eigenbases below give A = sigma_x and B = sigma_y at d = 2, and the
  half power ``omega(d, 1/2) = exp(-i*pi/d)`` satisfies
  J = (A + omega^(1/2) B)/2 for every d.
* Computational basis |0>, ..., |d-1>.  Multiparty indices are big-endian:
  party 1 is the most significant digit.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DimensionLimitError
from .linalg import DIM_CAP, dagger, expectation, identity, kron_all, matpow, state_vector

INT64_MAX = 2**63 - 1


def parse_rational(value) -> Fraction:
    """Exact rational from an int, Fraction or a ``"p/q"`` / ``"p"`` literal.

    Floats and decimal strings are rejected so that variant phases stay exact.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"decimal literal {value!r} not accepted; write it as p/q")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True, order=True)
class Scenario:
    """One Bell inequality: N parties, d outcomes, variant phase nu (0 = generic)."""

    parties: int
    dim: int
    nu: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "nu", parse_rational(self.nu))
        if self.parties < 2:
            raise ValueError("need at least two parties")
        if self.dim < 2:
            raise ValueError("need dimension d >= 2")
        if self.strategy_count > INT64_MAX:
            raise ValueError(f"d^(2N) = {self.strategy_count} does not fit a 64-bit count")

    @property
    def hilbert_dim(self) -> int:
        return self.dim**self.parties

    @property
    def strategy_count(self) -> int:
        return self.dim ** (2 * self.parties)

    @property
    def nu_text(self) -> str:
        return str(self.nu)

    def __str__(self):
        return f"(N={self.parties}, d={self.dim}, nu={self.nu})"


def omega(d: int, exponent=1) -> complex:
    """omega^exponent for the d-th root omega = exp(-2 pi i / d).

    The exponent is reduced modulo d exactly before it becomes an angle.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    x = Fraction(exponent) % d
    return cmath.exp(-2j * math.pi * float(x) / d)


def fourier_matrix(d: int) -> np.ndarray:
    """F[beta, alpha] = omega^(-alpha*beta) / sqrt(d), so column alpha is |alpha>_A."""
    k = np.arange(d)
    return np.array([[omega(d, -a * b) for a in k] for b in k]) / math.sqrt(d)


def phase_shift(d: int, nu) -> np.ndarray:
    """Diagonal P_nu with P_nu |alpha> = omega^(-nu*alpha) |alpha>."""
    nu = parse_rational(nu)
    return np.diag([omega(d, -nu * a) for a in range(d)])


@dataclass(frozen=True)
class Observable:
    label: str
    matrix: np.ndarray
    eigenbasis: np.ndarray  # column alpha is the eigenvector for omega^alpha
    eigenvalues: np.ndarray


@lru_cache(maxsize=None)
def observable(d: int, label: str) -> Observable:
    """Two-setting observable built from its spectral decomposition.

    A has eigenvectors F|alpha>, B has P_{1/2} F |alpha>; both carry eigenvalue
    omega^alpha on the alpha-th vector.
    """
    if label not in ("A", "B"):
        raise ValueError(f"observable label must be 'A' or 'B', got {label!r}")
    basis = fourier_matrix(d)
    if label == "B":
        basis = phase_shift(d, Fraction(1, 2)) @ basis
    vals = np.array([omega(d, a) for a in range(d)])
    m = basis @ np.diag(vals) @ dagger(basis)
    for arr in (m, basis, vals):
        arr.setflags(write=False)
    return Observable(label, m, basis, vals)


def ghz_state(parties: int, d: int, cap: int = DIM_CAP) -> np.ndarray:
    """(1/sqrt d) sum_alpha |alpha>^(x N)."""
    dim = d**parties
    if dim > cap:
        raise DimensionLimitError(f"state dimension {dim} exceeds cap {cap}")
    psi = np.zeros(dim, dtype=np.complex128)
    # |alpha,...,alpha> sits at alpha * (1 + d + ... + d^(N-1))
    stride = sum(d**k for k in range(parties))
    psi[np.arange(d) * stride] = 1 / math.sqrt(d)
    return psi


def raising_operator(d: int) -> np.ndarray:
    """J|alpha> = |alpha+1> for alpha < d-1 and J|d-1> = 0."""
    return np.eye(d, k=-1, dtype=np.complex128)


def bell_operator(s: Scenario, cap: int = DIM_CAP) -> np.ndarray:
    """sum_{n=1}^{d-1} omega^(nu n) J^n (x) ... (x) J^n  +  h.c."""
    d, N = s.dim, s.parties
    if s.hilbert_dim > cap:
        raise DimensionLimitError(f"Bell operator dimension {s.hilbert_dim} exceeds cap {cap}")
    J = raising_operator(d)
    half = np.zeros((s.hilbert_dim,) * 2, dtype=np.complex128)
    for n in range(1, d):
        Jn = matpow(J, n)
        half += omega(d, s.nu * n) * kron_all([Jn] * N, cap)
    return half + dagger(half)


def local_phase_unitary(s: Scenario, cap: int = DIM_CAP) -> np.ndarray:
    """I (x) ... (x) I (x) P_nu, the last-party phase rotation linking variants."""
    if s.hilbert_dim > cap:
        raise DimensionLimitError(f"dimension {s.hilbert_dim} exceeds cap {cap}")
    return np.kron(identity(s.dim ** (s.parties - 1)), phase_shift(s.dim, s.nu))


def optimal_state(s: Scenario, cap: int = DIM_CAP) -> np.ndarray:
    """GHZ state rotated by U^dagger; reaches d-1 on ``bell_operator(s)``."""
    psi = ghz_state(s.parties, s.dim, cap)
    if s.nu == 0:
        return psi
    # U is diagonal, so U^dagger psi is an elementwise product
    diag = np.diag(local_phase_unitary(s, cap))
    return np.conj(diag) * psi


def _setting_powers(d: int, settings: Sequence[str], n: int) -> list[np.ndarray]:
    return [matpow(observable(d, v).matrix, n) for v in settings]


def correlation(state, settings: Sequence[str], n: int, d: int | None = None) -> complex:
    """n-th order correlator <psi| V_1^n (x) ... (x) V_N^n |psi>.

    ``d`` is inferred from the state length when omitted.
    """
    psi = np.asarray(state, dtype=np.complex128).reshape(-1)
    N = len(settings)
    if N < 1:
        raise ValueError("need at least one setting")
    if d is None:
        d = round(psi.shape[0] ** (1 / N))
    if d**N != psi.shape[0]:
        raise ValueError(f"state length {psi.shape[0]} is not d^N for N={N}")
    if not 1 <= n <= d - 1:
        raise ValueError(f"correlator order n={n} outside 1..{d - 1}")
    # apply factor by factor on the reshaped tensor instead of forming d^N x d^N
    t = psi.reshape((d,) * N)
    for j, op in enumerate(_setting_powers(d, settings, n)):
        t = np.moveaxis(np.tensordot(op, t, axes=([1], [j])), 0, j)
    return complex(np.vdot(psi, t.reshape(-1)))


def bell_value_correlator_form(state, d: int) -> float:
    """Tripartite Bell value written through correlators.

    (1/4) sum_n [E^n_AAA + omega^n (E^n_ABB + E^n_BAB + E^n_BBA)]
    """
    psi = np.asarray(state, dtype=np.complex128).reshape(-1)
    if psi.shape[0] != d**3:
        raise ValueError(f"state length {psi.shape[0]} is not d^3 = {d**3}")
    total = 0j
    for n in range(1, d):
        total += correlation(psi, "AAA", n, d)
        total += omega(d, n) * sum(correlation(psi, v, n, d) for v in ("ABB", "BAB", "BBA"))
    return float((total / 4).real)


def quantum_expectation(s: Scenario, cap: int = DIM_CAP) -> float:
    """Bell operator expectation in ``optimal_state(s)``."""
    return expectation(state_vector(optimal_state(s, cap)), bell_operator(s, cap)).real
