"""State-vector and density-matrix helpers shared across modules."""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "DenseLimitError",
    "DEFAULT_DENSE_LIMIT",
    "dense_limit",
    "check_state_vector",
    "check_density_matrix",
    "random_state_vector",
    "random_density_matrix",
    "maximally_mixed",
    "basis_state",
    "pure_density",
]

DEFAULT_DENSE_LIMIT = 256


class DenseLimitError(ValueError):
    """A dense-matrix path was asked to exceed the configured size cap."""


def dense_limit() -> int:
    """Dense-matrix dimension cap; override with WEHRL_DENSE_LIMIT."""
    raw = os.environ.get("WEHRL_DENSE_LIMIT")
    if raw is None:
        return DEFAULT_DENSE_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"WEHRL_DENSE_LIMIT must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"WEHRL_DENSE_LIMIT must be >= 1, got {value}")
    return value


def check_state_vector(vec, dim: int | None = None, tol: float = 1e-12) -> np.ndarray:
    """Validate and return a unit vector as complex128."""
    arr = np.asarray(vec, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError(f"state vector must be one-dimensional, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise ValueError(f"state vector has dimension {arr.shape[0]}, expected {dim}")
    norm = float(np.linalg.norm(arr))
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state vector norm {norm!r} is not 1 within {tol}")
    return arr


def check_density_matrix(
    rho,
    dim: int | None = None,
    *,
    herm_tol: float = 1e-12,
    eig_tol: float = 1e-10,
    trace_tol: float = 1e-10,
) -> np.ndarray:
    """Validate a density matrix: Hermitian, PSD and trace one, within tolerance."""
    arr = np.asarray(rho, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise ValueError(f"density matrix has dimension {arr.shape[0]}, expected {dim}")
    if np.abs(arr - arr.conj().T).max() > herm_tol:
        raise ValueError("density matrix is not Hermitian")
    trace = complex(np.trace(arr))
    if abs(trace - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace {trace!r} is not 1")
    smallest = float(np.linalg.eigvalsh(arr)[0])
    if smallest < -eig_tol:
        raise ValueError(
            f"density matrix is not positive semidefinite (min eigenvalue {smallest})"
        )
    return arr


def random_state_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


def random_density_matrix(
    dim: int, rng: np.random.Generator, rank: int | None = None
) -> np.ndarray:
    """Ginibre construction A A^dagger / tr, optionally rank-limited."""
    r = dim if rank is None else rank
    a = rng.standard_normal((dim, r)) + 1j * rng.standard_normal((dim, r))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def maximally_mixed(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128) / dim


def basis_state(dim: int, index: int) -> np.ndarray:
    vec = np.zeros(dim, dtype=np.complex128)
    vec[index] = 1.0
    return vec


def pure_density(vec) -> np.ndarray:
    arr = np.asarray(vec, dtype=np.complex128)
    return np.outer(arr, arr.conj())
