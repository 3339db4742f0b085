"""Weyl operators on C^|G| and the twisted group law of phase space.

The natural action is (W(g, chi) f)(h) = chi(h) f(h - g): a cyclic
translation followed by a diagonal of character values, O(|G|) per apply.
Dense matrices exist only as oracles behind a size cap. Central phases of
the Heisenberg extension are exact rationals mod 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .groups import (
    FiniteAbelianGroup,
    PhaseSpacePoint,
    character_row,
    difference_index_table,
    phase_space,
    phase_to_complex,
)
from .states import DenseLimitError, dense_limit

__all__ = [
    "cocycle_phase",
    "cocycle",
    "compose_phase",
    "HeisenbergElement",
    "heis_mul",
    "weyl_apply",
    "weyl_matrix",
    "CcrReport",
    "verify_ccr",
]


def cocycle_phase(z: PhaseSpacePoint, w: PhaseSpacePoint) -> Fraction:
    """Exact phase of omega(z, w) = chi_z(g_w) * conj(chi_w(g_z))."""
    return (z.chi.phase(w.g) - w.chi.phase(z.g)) % 1


def cocycle(z: PhaseSpacePoint, w: PhaseSpacePoint) -> complex:
    return phase_to_complex(cocycle_phase(z, w))


def compose_phase(z: PhaseSpacePoint, w: PhaseSpacePoint) -> Fraction:
    """W(z) W(w) = exp(2*pi*i * compose_phase(z, w)) * W(z + w)."""
    return (-w.chi.phase(z.g)) % 1


@dataclass(frozen=True)
class HeisenbergElement:
    """(z, t) with t = exp(2*pi*i*t_phase) on the central circle.

    Multiplication: (z, t)(w, s) = (z + w, t s omega(z, w)).
    """

    z: PhaseSpacePoint
    t_phase: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "t_phase", Fraction(self.t_phase) % 1)

    @property
    def t(self) -> complex:
        return phase_to_complex(self.t_phase)

    @classmethod
    def identity(cls, group: FiniteAbelianGroup) -> "HeisenbergElement":
        return cls(PhaseSpacePoint(group.zero(), group.trivial_character()))

    def __mul__(self, other: "HeisenbergElement") -> "HeisenbergElement":
        return HeisenbergElement(
            self.z + other.z,
            self.t_phase + other.t_phase + cocycle_phase(self.z, other.z),
        )

    def inverse(self) -> "HeisenbergElement":
        # omega(z, -z) = 1 exactly, so only the central phase flips
        return HeisenbergElement(-self.z, -self.t_phase)


def heis_mul(a: HeisenbergElement, b: HeisenbergElement) -> HeisenbergElement:
    return a * b


def weyl_apply(z: PhaseSpacePoint, vec) -> np.ndarray:
    """Apply W(z) in O(|G|): translate by g, then multiply character values."""
    group = z.group
    d = group.order
    vec = np.asarray(vec, dtype=np.complex128)
    if vec.shape != (d,):
        raise ValueError(f"state has shape {vec.shape}, expected ({d},)")
    axes = tuple(range(len(group.orders)))
    shifted = np.roll(vec.reshape(group.orders), z.g.coords, axis=axes)
    return character_row(group, z.chi.coords) * shifted.reshape(d)


def _weyl_apply_batch(z: PhaseSpacePoint, mat: np.ndarray) -> np.ndarray:
    """weyl_apply on the columns of a (|G|, m) array at once."""
    group = z.group
    d = group.order
    axes = tuple(range(len(group.orders)))
    shifted = np.roll(mat.reshape(group.orders + (-1,)), z.g.coords, axis=axes)
    return character_row(group, z.chi.coords)[:, None] * shifted.reshape(d, -1)


def weyl_matrix(z: PhaseSpacePoint, limit: int | None = None) -> np.ndarray:
    """Dense monomial matrix of W(z); oracle path, capped at the dense limit."""
    group = z.group
    d = group.order
    cap = dense_limit() if limit is None else limit
    if d > cap:
        raise DenseLimitError(f"|G| = {d} exceeds the dense-matrix limit {cap}")
    row = character_row(group, z.chi.coords)
    cols = difference_index_table(group)[z.g.index]
    mat = np.zeros((d, d), dtype=np.complex128)
    mat[np.arange(d), cols] = row
    return mat


@dataclass(frozen=True)
class CcrReport:
    group: str
    mode: str  # "exhaustive" or "randomized"
    pairs_checked: int
    max_residual: float
    tolerance: float
    passed: bool


def verify_ccr(
    group: FiniteAbelianGroup,
    *,
    seed: int = 0,
    tolerance: float = 1e-12,
    exhaustive_limit: int = 256,
    samples: int = 10_000,
) -> CcrReport:
    """Check W(z) W(w) = omega(z, w) W(w) W(z) on random probe vectors.

    All |F|^2 pairs when |F| <= exhaustive_limit, otherwise `samples`
    random pairs.
    """
    rng = np.random.default_rng(seed)
    d = group.order
    probes = rng.standard_normal((d, 3)) + 1j * rng.standard_normal((d, 3))
    probes /= np.linalg.norm(probes, axis=0)
    total = d * d
    if total <= exhaustive_limit:
        points = list(phase_space(group))
        pairs = ((a, b) for a in points for b in points)
        n_pairs = total * total
        mode = "exhaustive"
    else:
        idx = rng.integers(0, total, size=(samples, 2))
        pairs = (
            (
                PhaseSpacePoint.by_index(group, int(i)),
                PhaseSpacePoint.by_index(group, int(j)),
            )
            for i, j in idx
        )
        n_pairs = samples
        mode = "randomized"
    worst = 0.0
    for a, b in pairs:
        left = _weyl_apply_batch(a, _weyl_apply_batch(b, probes))
        right = cocycle(a, b) * _weyl_apply_batch(b, _weyl_apply_batch(a, probes))
        residual = float(np.abs(left - right).max())
        if residual > worst:
            worst = residual
    return CcrReport(str(group), mode, n_pairs, worst, tolerance, worst <= tolerance)
