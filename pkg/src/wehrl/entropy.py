"""Husimi functions, Wehrl and von Neumann entropies, the measuring channel.

The Husimi function of rho is Q(z) = <z|rho|z> over phase space F, and the
Wehrl entropy is -sum_z w Q log Q with Haar weight w = 1/|G|. With this
normalisation the compact subgroup K has volume 1, the frame resolves the
identity with constant 1, and the entropy lower bound for vacuum frames is
exactly 0, attained precisely on coherent states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frames import CoherentFrame, NotVacuumError
from .groups import difference_index_table, product_subgroup
from .groups import direct_product as _direct_product
from .states import check_density_matrix, check_state_vector

__all__ = [
    "ZERO_LOG_THRESHOLD",
    "HusimiTable",
    "husimi",
    "husimi_fast",
    "pure_amplitudes",
    "wehrl_entropy",
    "pure_state_entropy",
    "wehrl_entropy_coset",
    "husimi_coset_spread",
    "von_neumann_entropy",
    "EntropyReport",
    "entropy_report",
    "measurement_channel",
    "product_frame",
    "tensor",
    "partial_trace",
    "husimi_marginal",
    "subadditivity_gap",
]

# below this, Q log Q is taken as 0
ZERO_LOG_THRESHOLD = 1e-15


def _log_divisor(log_base: str) -> float:
    if log_base == "e":
        return 1.0
    if log_base == "2":
        return math.log(2.0)
    raise ValueError(f"log_base must be 'e' or '2', got {log_base!r}")


@dataclass(eq=False)
class HusimiTable:
    """Q(z) over all of F in lex point order, with the 1/|G| Haar weight."""

    frame: CoherentFrame
    values: np.ndarray

    @property
    def haar_weight(self) -> float:
        return self.frame.haar_weight

    def mass(self) -> float:
        """sum_z w Q(z); equals tr rho = 1 for any unit fiducial."""
        return float(self.values.sum() * self.haar_weight)


def husimi(frame: CoherentFrame, rho) -> HusimiTable:
    """Q(z) = <z|rho|z> for every z; dense reference path."""
    d = frame.group.order
    rho = check_density_matrix(rho, d)
    S = frame.state_matrix()
    tmp = S.conj() @ rho
    values = np.einsum("zk,zk->z", tmp, S).real
    return HusimiTable(frame, values)


def pure_amplitudes(frame: CoherentFrame, psi: np.ndarray) -> np.ndarray:
    """<z|psi> for all z in lex order, via group Fourier transforms.

    For fixed g the map chi -> <W(g,chi) phi | psi> is the Fourier
    transform of h -> conj(phi(h-g)) psi(h); the multidimensional FFT
    convention exp(-2*pi*i * sum_j a_j h_j / n_j) matches conj(chi_a)
    exactly, so one FFT per translate fills the whole table in
    O(|G|^2 log |G|) without materialising any |F|-by-|G| matrix.
    """
    group = frame.group
    d = group.order
    idx = difference_index_table(group)  # [g, h] -> index of h - g
    u = frame.fiducial.conj()[idx] * psi[None, :]
    axes = tuple(range(1, len(group.orders) + 1))
    spectra = np.fft.fftn(u.reshape((d,) + group.orders), axes=axes)
    return spectra.reshape(d * d)


def husimi_fast(frame: CoherentFrame, psi) -> HusimiTable:
    """Husimi table of the pure state |psi><psi| (FFT path, pure states only)."""
    psi = check_state_vector(psi, frame.group.order)
    amps = pure_amplitudes(frame, psi)
    return HusimiTable(frame, np.abs(amps) ** 2)


def _entropy_sum(values: np.ndarray, weight: float) -> float:
    v = values[values > ZERO_LOG_THRESHOLD]
    if v.size == 0:
        return 0.0
    return float(-(weight * v * np.log(v)).sum())


def wehrl_entropy(table: HusimiTable, log_base: str = "e") -> float:
    """-sum_z w Q log Q, with Q log Q := 0 below the zero threshold."""
    return _entropy_sum(table.values, table.haar_weight) / _log_divisor(log_base)


def pure_state_entropy(frame: CoherentFrame, psi: np.ndarray) -> float:
    """Wehrl entropy of |psi><psi| without building the dense table."""
    amps = pure_amplitudes(frame, psi)
    return _entropy_sum(np.abs(amps) ** 2, frame.haar_weight)


def wehrl_entropy_coset(frame: CoherentFrame, rho, log_base: str = "e") -> float:
    """Wehrl entropy from one Husimi value per coset of K.

    Valid for vacuum frames only, where Q is constant on K-cosets:
    S = -vol(K) * sum_{cosets} Q(rep) log Q(rep), and vol(K) = |K|/|G| = 1
    with this normalisation. |G| evaluations instead of |G|^2.
    """
    try:
        K, reps = frame.cosets()
    except NotVacuumError:
        raise NotVacuumError("coset formula requires vacuum frame") from None
    d = frame.group.order
    rho = check_density_matrix(rho, d)
    R = np.stack([frame.state(z) for z in reps])
    tmp = R.conj() @ rho
    values = np.einsum("ak,ak->a", tmp, R).real
    vol = K.order / d
    return vol * _entropy_sum(values, 1.0) / _log_divisor(log_base)


def husimi_coset_spread(table: HusimiTable) -> float:
    """Largest within-coset variation of Q; ~0 for vacuum frames."""
    K, reps = table.frame.cosets()
    worst = 0.0
    for rep in reps:
        vals = table.values[[(rep + u).index for u in K.points]]
        spread = float(vals.max() - vals.min())
        if spread > worst:
            worst = spread
    return worst


def von_neumann_entropy(rho, log_base: str = "e") -> float:
    """-tr rho log rho; eigenvalues below 1e-12 are clamped to zero."""
    rho = check_density_matrix(rho)
    eig = np.linalg.eigvalsh(rho)
    eig = eig[eig > 1e-12]
    return float(-(eig * np.log(eig)).sum()) / _log_divisor(log_base)


@dataclass(frozen=True)
class EntropyReport:
    wehrl: float
    von_neumann: float
    gap: float
    log_base: str


def entropy_report(frame: CoherentFrame, rho, log_base: str = "e") -> EntropyReport:
    """Wehrl and von Neumann entropies of rho; gap = wehrl - von_neumann >= 0."""
    w = wehrl_entropy(husimi(frame, rho), log_base=log_base)
    s = von_neumann_entropy(rho, log_base=log_base)
    return EntropyReport(w, s, w - s, log_base)


def measurement_channel(frame: CoherentFrame, rho) -> np.ndarray:
    """Phi[rho] = sum_z w Q(z) |z><z|; trace preserving, entropy non-decreasing."""
    table = husimi(frame, rho)
    S = frame.state_matrix()
    weights = frame.haar_weight * table.values
    out = (S.T * weights) @ S.conj()
    return 0.5 * (out + out.conj().T)


def product_frame(a: CoherentFrame, b: CoherentFrame) -> CoherentFrame:
    """Frame on G1 x G2 with fiducial phi1 (x) phi2; coherent states factorise."""
    group = _direct_product(a.group, b.group)
    sub = None
    if a.subgroup is not None and b.subgroup is not None:
        sub = product_subgroup(a.subgroup, b.subgroup)
    return CoherentFrame(group, np.kron(a.fiducial, b.fiducial), subgroup=sub)


def tensor(rho_a, rho_b) -> np.ndarray:
    return np.kron(
        np.asarray(rho_a, dtype=np.complex128), np.asarray(rho_b, dtype=np.complex128)
    )


def partial_trace(rho, dims: tuple[int, int], trace_out: int = 2) -> np.ndarray:
    d1, d2 = dims
    r = np.asarray(rho, dtype=np.complex128).reshape(d1, d2, d1, d2)
    if trace_out == 2:
        return np.einsum("ijkj->ik", r)
    if trace_out == 1:
        return np.einsum("ijil->jl", r)
    raise ValueError(f"trace_out must be 1 or 2, got {trace_out}")


def husimi_marginal(
    table: HusimiTable, dims: tuple[int, int], keep: int = 1
) -> np.ndarray:
    """Integrate a product-group Husimi table over one factor's phase space.

    Returns values over the kept factor's phase space (lex order); equals
    the Husimi table of the corresponding reduced density matrix.
    """
    d1, d2 = dims
    v = table.values.reshape(d1, d2, d1, d2)  # axes (g1, g2, a1, a2)
    if keep == 1:
        return v.sum(axis=(1, 3)).reshape(d1 * d1) / d2
    if keep == 2:
        return v.sum(axis=(0, 2)).reshape(d2 * d2) / d1
    raise ValueError(f"keep must be 1 or 2, got {keep}")


def subadditivity_gap(frame_a: CoherentFrame, frame_b: CoherentFrame, rho12) -> float:
    """Exploratory: lhs - rhs of the strengthened subadditivity

        S^W(rho12) >= S^W(rho1) + S^W(rho2) + S(rho12) - S(rho1) - S(rho2).

    Evaluated and reported only, never asserted.
    """
    fr12 = product_frame(frame_a, frame_b)
    dims = (frame_a.group.order, frame_b.group.order)
    rho12 = check_density_matrix(rho12, dims[0] * dims[1])
    rho1 = partial_trace(rho12, dims, trace_out=2)
    rho2 = partial_trace(rho12, dims, trace_out=1)
    lhs = wehrl_entropy(husimi(fr12, rho12))
    rhs = (
        wehrl_entropy(husimi(frame_a, rho1))
        + wehrl_entropy(husimi(frame_b, rho2))
        + von_neumann_entropy(rho12)
        - von_neumann_entropy(rho1)
        - von_neumann_entropy(rho2)
    )
    return lhs - rhs
