"""Wehrl-entropy minimisation over pure states by projected gradient descent.

Minimising over pure states suffices: the entropy is concave in rho, so its
minimum over the (compact, convex) state space is attained at an extreme
point. The iteration walks the unit sphere: Euclidean gradient, tangent
projection, renormalisation retraction, monotone line search with step
halving.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import pure_amplitudes, pure_state_entropy
from .frames import CoherentFrame
from .groups import PhaseSpacePoint, Subgroup, difference_index_table
from .states import random_state_vector

__all__ = [
    "MinimizerConfig",
    "MinimizerResult",
    "entropy_gradient",
    "descend",
    "minimize",
    "nearest_coherent",
    "scan_fiducials",
]

# Husimi values below this contribute no gradient (the Q -> 0 limit of
# Q log Q is 0, but log Q blows up; such points are skipped)
GRAD_SKIP = 1e-12
# consecutive accepted steps with decrease < tol_entropy that count as converged
PLATEAU_STEPS = 20
MIN_STEP = 1e-14


@dataclass(frozen=True)
class MinimizerConfig:
    max_iters: int = 5000
    step_size: float = 0.1  # halved on non-decrease
    tol_grad: float = 1e-8
    tol_entropy: float = 1e-9
    restarts: int = 16
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_iters < 0 or self.restarts < 1:
            raise ValueError("max_iters must be >= 0 and restarts >= 1")
        if self.step_size <= 0 or self.tol_grad <= 0 or self.tol_entropy <= 0:
            raise ValueError("step_size and tolerances must be positive")


@dataclass(eq=False)
class MinimizerResult:
    best_state: np.ndarray
    best_entropy: float
    nearest_point: PhaseSpacePoint
    nearest_overlap: float
    iterations: int
    converged: bool
    restart_index: int


def _synthesis(frame: CoherentFrame, coeffs: np.ndarray) -> np.ndarray:
    """sum_z coeffs_z |z>, via inverse FFTs (adjoint of pure_amplitudes)."""
    group = frame.group
    d = group.order
    axes = tuple(range(1, len(group.orders) + 1))
    spectra = np.fft.ifftn(coeffs.reshape((d,) + group.orders), axes=axes) * d
    idx = difference_index_table(group)
    return (frame.fiducial[idx] * spectra.reshape(d, d)).sum(axis=0)


def entropy_gradient(frame: CoherentFrame, psi: np.ndarray) -> np.ndarray:
    """Tangent gradient of the pure-state Wehrl entropy at a unit psi.

    Euclidean gradient -sum_z w (log Q + 1) <z|psi> |z> (conjugate-gradient
    convention), projected onto the sphere tangent at psi. Points with
    Q < 1e-12 are skipped.
    """
    c = pure_amplitudes(frame, psi)
    q = np.abs(c) ** 2
    m = np.zeros_like(q)
    mask = q >= GRAD_SKIP
    m[mask] = np.log(q[mask]) + 1.0
    grad = -_synthesis(frame, frame.haar_weight * m * c)
    return grad - np.real(np.vdot(psi, grad)) * psi


def descend(
    frame: CoherentFrame, start: np.ndarray, config: MinimizerConfig
) -> tuple[np.ndarray, float, int, bool]:
    """One gradient-descent run from `start`; (state, entropy, iters, converged)."""
    psi = np.asarray(start, dtype=np.complex128)
    psi = psi / np.linalg.norm(psi)
    energy = pure_state_entropy(frame, psi)
    step = config.step_size
    plateau = 0
    iterations = 0
    for _ in range(config.max_iters):
        grad = entropy_gradient(frame, psi)
        if np.linalg.norm(grad) <= config.tol_grad:
            return psi, energy, iterations, True
        candidate = None
        while step > MIN_STEP:
            trial = psi - step * grad
            trial = trial / np.linalg.norm(trial)
            trial_energy = pure_state_entropy(frame, trial)
            if trial_energy < energy:
                candidate = (trial, trial_energy)
                break
            step *= 0.5
        if candidate is None:
            # no descent direction at machine resolution: stationary
            return psi, energy, iterations, True
        drop = energy - candidate[1]
        psi, energy = candidate
        iterations += 1
        if drop < config.tol_entropy:
            plateau += 1
            if plateau >= PLATEAU_STEPS:
                return psi, energy, iterations, True
        else:
            plateau = 0
    return psi, energy, iterations, False


def minimize(frame: CoherentFrame, config: MinimizerConfig | None = None) -> MinimizerResult:
    """Best entropy over `restarts` random unit starts, deterministic in the seed.

    The result is the minimum over restart indices (ties broken by the
    lowest index). Non-convergence returns the best iterate found, it does
    not raise.
    """
    config = config or MinimizerConfig()
    rng = np.random.default_rng(config.seed)
    d = frame.group.order
    starts = [random_state_vector(d, rng) for _ in range(config.restarts)]
    best: tuple[np.ndarray, float, bool, int] | None = None
    total_iterations = 0
    for index, start in enumerate(starts):
        state, energy, iters, converged = descend(frame, start, config)
        total_iterations += iters
        if best is None or energy < best[1]:
            best = (state, energy, converged, index)
    state, energy, converged, index = best
    point, overlap = nearest_coherent(frame, state)
    return MinimizerResult(
        best_state=state,
        best_entropy=energy,
        nearest_point=point,
        nearest_overlap=overlap,
        iterations=total_iterations,
        converged=converged,
        restart_index=index,
    )


def nearest_coherent(
    frame: CoherentFrame, psi: np.ndarray
) -> tuple[PhaseSpacePoint, float]:
    """Frame point with the largest |<z|psi>|, and that overlap."""
    c = np.abs(pure_amplitudes(frame, psi))
    idx = int(np.argmax(c))
    return PhaseSpacePoint.by_index(frame.group, idx), float(c[idx])


def scan_fiducials(
    group,
    subgroup: Subgroup | None = None,
    trials: int = 8,
    config: MinimizerConfig | None = None,
) -> dict:
    """Minimise over states for random fiducials, with a vacuum control row.

    Gathers evidence about non-vacuum frames; the report carries the
    observed minima and is never turned into an assertion.
    """
    config = config or MinimizerConfig()
    H = subgroup if subgroup is not None else Subgroup.whole(group)
    rows = []

    def row(kind: str, frame: CoherentFrame) -> dict:
        result = minimize(frame, config)
        return {
            "fiducial_kind": kind,
            "best_entropy": result.best_entropy,
            "overlap": result.nearest_overlap,
            "iterations": result.iterations,
            "converged": result.converged,
        }

    rows.append(row("vacuum", CoherentFrame.vacuum(H)))
    fid_rng = np.random.default_rng([config.seed, 0xF1D])
    for t in range(trials):
        fiducial = random_state_vector(group.order, fid_rng)
        rows.append(row(f"random:{t}", CoherentFrame(group, fiducial)))
    return {
        "group": str(group),
        "subgroup": str(H),
        "trials": trials,
        "seed": config.seed,
        "rows": rows,
    }
