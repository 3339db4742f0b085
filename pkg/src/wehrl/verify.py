"""Residual checks for the structural facts; shared by tests and the CLI.

Each check returns a `CheckResult` with the observed residual and the
tolerance it is held to. Checks come in independent pairs on purpose
(closed form vs numerical null space, coset formula vs full sum, FFT vs
dense, analytic gradient vs finite differences); the two routes are never
collapsed into one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .entropy import (
    ZERO_LOG_THRESHOLD,
    husimi,
    husimi_fast,
    husimi_marginal,
    measurement_channel,
    product_frame,
    pure_state_entropy,
    von_neumann_entropy,
    wehrl_entropy,
    wehrl_entropy_coset,
)
from .frames import (
    CoherentFrame,
    invariant_subspace_dim,
    overlap_matrix,
    coset_basis,
    resolution_residual,
    vacuum_vector,
)
from .groups import (
    FiniteAbelianGroup,
    PhaseSpacePoint,
    PhaseSpaceSubgroup,
    Subgroup,
    all_subgroups,
    annihilator,
    dual_annihilator,
    maximal_compact,
    parse_group,
    phase_space,
)
from .minimize import entropy_gradient
from .states import pure_density, random_state_vector
from .weyl import verify_ccr, weyl_apply, weyl_matrix

__all__ = [
    "CheckResult",
    "standard_suite",
    "suite_pairs",
    "run_checks",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool
    note: str = ""


def _result(name: str, residual, tolerance: float, note: str = "") -> CheckResult:
    residual = float(residual)
    return CheckResult(name, residual, tolerance, residual <= tolerance, note)


def standard_suite() -> tuple[FiniteAbelianGroup, ...]:
    specs = ("Z2", "Z3", "Z4", "Z6", "Z8", "Z2xZ2", "Z4xZ2", "Z3xZ3", "Z9", "Z2xZ2xZ2")
    return tuple(parse_group(s) for s in specs)


def suite_pairs() -> list[tuple[FiniteAbelianGroup, Subgroup]]:
    """Every (group, subgroup) pair of the standard verification suite."""
    return [(g, H) for g in standard_suite() for H in all_subgroups(g)]


# ---------------------------------------------------------------------------
# shared numeric helpers (batched rho handling)


def random_density_batch(d: int, n: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d))
    rho = a @ np.conj(np.swapaxes(a, 1, 2))
    tr = np.trace(rho, axis1=1, axis2=2).real
    return rho / tr[:, None, None]


def batch_husimi(frame: CoherentFrame, rhos: np.ndarray) -> np.ndarray:
    """(n, |F|) Husimi values for a stack of density matrices."""
    S = frame.state_matrix()
    tmp = np.einsum("zh,nhk->nzk", S.conj(), rhos, optimize=True)
    return np.einsum("nzk,zk->nz", tmp, S, optimize=True).real


def batch_entropy(values: np.ndarray, weight: float) -> np.ndarray:
    safe = np.where(values > ZERO_LOG_THRESHOLD, values, 1.0)
    return -(weight * values * np.log(safe)).sum(axis=-1)


def batch_von_neumann(rhos: np.ndarray) -> np.ndarray:
    eig = np.linalg.eigvalsh(rhos)
    safe = np.where(eig > 1e-12, eig, 1.0)
    return -(eig * np.log(safe)).sum(axis=-1)


def coset_ids(frame: CoherentFrame) -> np.ndarray:
    """(|F|,) array labelling each phase-space point by its K-coset ordinal."""
    K, reps = frame.cosets()
    ids = np.full(frame.point_count, -1, dtype=np.int64)
    for ordinal, rep in enumerate(reps):
        for u in K.points:
            ids[(rep + u).index] = ordinal
    return ids


def _point_coord_arrays(points: Sequence[PhaseSpacePoint]):
    g = np.array([p.g.coords for p in points], dtype=np.int64)
    a = np.array([p.chi.coords for p in points], dtype=np.int64)
    return g, a


def cocycle_phase_matrix(
    group: FiniteAbelianGroup,
    left: Sequence[PhaseSpacePoint],
    right: Sequence[PhaseSpacePoint],
) -> np.ndarray:
    """Integer cocycle phases (numerators mod L): omega = exp(2 pi i M / L)."""
    L = math.lcm(*group.orders)
    w = np.array([L // n for n in group.orders], dtype=np.int64)
    g1, a1 = _point_coord_arrays(left)
    g2, a2 = _point_coord_arrays(right)
    return ((a1 * w) @ g2.T - g1 @ (a2 * w).T) % L


# ---------------------------------------------------------------------------
# group-level checks


def check_group_laws(group: FiniteAbelianGroup, rng: np.random.Generator) -> CheckResult:
    els = list(group.elements())
    bad = 0
    for a in els:
        if not (a + (-a)).is_zero():
            bad += 1
        for b in els:
            if (a + b).coords != (b + a).coords:
                bad += 1
    if group.order <= 16:
        triples = [(a, b, c) for a in els for b in els for c in els]
    else:
        pick = rng.integers(0, group.order, size=(1000, 3))
        triples = [
            (els[int(i)], els[int(j)], els[int(k)]) for i, j, k in pick
        ]
    for a, b, c in triples:
        if ((a + b) + c).coords != (a + (b + c)).coords:
            bad += 1
    return _result("group-laws", bad, 0.0, f"{len(triples)} associativity triples")


def check_character_values(group: FiniteAbelianGroup) -> CheckResult:
    worst = 0.0
    for chi in group.characters():
        row = chi.values()
        worst = max(worst, float(np.abs(np.abs(row) - 1.0).max()))
    return _result("character-unit-modulus", worst, 1e-14)


def check_character_multiplicativity(
    group: FiniteAbelianGroup, rng: np.random.Generator
) -> CheckResult:
    els = list(group.elements())
    chars = list(group.characters())
    if group.order <= 16:
        triples = [(chi, g, h) for chi in chars for g in els for h in els]
    else:
        pick = rng.integers(0, group.order, size=(1000, 3))
        triples = [(chars[int(i)], els[int(j)], els[int(k)]) for i, j, k in pick]
    worst = 0.0
    for chi, g, h in triples:
        worst = max(worst, abs(chi(g + h) - chi(g) * chi(h)))
    return _result(
        "character-multiplicativity", worst, 1e-12, f"{len(triples)} triples"
    )


def check_annihilator_duality(subgroup: Subgroup) -> CheckResult:
    ann = annihilator(subgroup)
    residual = abs(ann.order * subgroup.order - subgroup.group.order)
    return _result("annihilator-duality", residual, 0.0, f"|A| = {ann.order}")


def check_double_annihilator(subgroup: Subgroup) -> CheckResult:
    double = dual_annihilator(annihilator(subgroup))
    mismatch = len(set(double._coord_set) ^ set(subgroup._coord_set))
    return _result("double-annihilator", mismatch, 0.0)


def check_compact_maximality(subgroup: Subgroup) -> CheckResult:
    group = subgroup.group
    K = maximal_compact(subgroup)
    bad = abs(K.order - group.order)
    ann = K.dual_part
    for g in group.elements():
        if g in subgroup:
            continue
        if all(chi.phase(g) == 0 for chi in ann.characters):
            bad += 1
    return _result("compact-maximality", bad, 0.0, f"|K| = {K.order}")


def check_cocycle_trivial_on_K(K: PhaseSpaceSubgroup) -> CheckResult:
    phases = cocycle_phase_matrix(K.group, K.points, K.points)
    return _result("cocycle-trivial-on-K", int(np.count_nonzero(phases)), 0.0)


def check_cocycle_bilinearity(
    group: FiniteAbelianGroup, rng: np.random.Generator, samples: int = 1000
) -> CheckResult:
    from .weyl import cocycle_phase

    total = group.order ** 2
    bad = 0
    idx = rng.integers(0, total, size=(samples, 3))
    for i, j, k in idx:
        z = PhaseSpacePoint.by_index(group, int(i))
        w = PhaseSpacePoint.by_index(group, int(j))
        v = PhaseSpacePoint.by_index(group, int(k))
        if cocycle_phase(z + w, v) != (cocycle_phase(z, v) + cocycle_phase(w, v)) % 1:
            bad += 1
        if cocycle_phase(v, z + w) != (cocycle_phase(v, z) + cocycle_phase(v, w)) % 1:
            bad += 1
    return _result("cocycle-bilinearity", bad, 0.0, f"{samples} random triples")


def check_ccr(group: FiniteAbelianGroup, seed: int) -> CheckResult:
    report = verify_ccr(group, seed=seed)
    return _result(
        "ccr-commutation",
        report.max_residual,
        report.tolerance,
        f"{report.mode}, {report.pairs_checked} pairs",
    )


def check_weyl_unitarity(
    group: FiniteAbelianGroup, rng: np.random.Generator
) -> CheckResult:
    d = group.order
    eye = np.eye(d)
    if d <= 16:
        points = list(phase_space(group))
    else:
        points = [
            PhaseSpacePoint.by_index(group, int(i))
            for i in rng.integers(0, d * d, size=100)
        ]
    worst = 0.0
    for z in points:
        W = weyl_matrix(z)
        worst = max(worst, float(np.abs(W.conj().T @ W - eye).max()))
    return _result("weyl-unitarity", worst, 1e-12, f"{len(points)} points")


def check_weyl_dense_vs_apply(
    group: FiniteAbelianGroup, rng: np.random.Generator, samples: int = 1000
) -> CheckResult:
    d = group.order
    worst = 0.0
    for i in rng.integers(0, d * d, size=samples):
        z = PhaseSpacePoint.by_index(group, int(i))
        f = random_state_vector(d, rng)
        worst = max(worst, float(np.abs(weyl_matrix(z) @ f - weyl_apply(z, f)).max()))
    return _result("weyl-dense-vs-apply", worst, 1e-13, f"{samples} random (z, f)")


# ---------------------------------------------------------------------------
# frame-level checks (vacuum frame of a given subgroup)


def check_vacuum_invariance(frame: CoherentFrame) -> CheckResult:
    K, _ = frame.cosets()
    worst = 0.0
    for u in K.points:
        worst = max(
            worst, float(np.abs(weyl_apply(u, frame.fiducial) - frame.fiducial).max())
        )
    return _result("vacuum-invariance", worst, 1e-13)


def check_vacuum_uniqueness(K: PhaseSpaceSubgroup) -> CheckResult:
    dim = invariant_subspace_dim(K)
    return _result("vacuum-uniqueness-dim", abs(dim - 1), 0.0, f"dim = {dim}")


def check_vacuum_nullspace_match(subgroup: Subgroup) -> CheckResult:
    """Closed-form indicator vacuum vs the numerically computed null vector."""
    K = maximal_compact(subgroup)
    d = subgroup.group.order
    acc = np.zeros((d, d), dtype=np.complex128)
    eye = np.eye(d)
    for u in K.points:
        acc += eye - weyl_matrix(u)
    _, _, vh = np.linalg.svd(acc)
    numeric = vh[-1].conj()
    closed = vacuum_vector(subgroup)
    residual = 1.0 - abs(np.vdot(closed, numeric))
    return _result("vacuum-closed-form-vs-nullspace", residual, 1e-10)


def check_resolution_vacuum(frame: CoherentFrame) -> CheckResult:
    return _result("resolution-of-identity", resolution_residual(frame), 1e-11)


def check_resolution_random(
    group: FiniteAbelianGroup, rng: np.random.Generator, samples: int = 5
) -> CheckResult:
    worst = 0.0
    for _ in range(samples):
        fr = CoherentFrame(group, random_state_vector(group.order, rng))
        worst = max(worst, resolution_residual(fr))
    return _result(
        "resolution-of-identity-random", worst, 1e-11, f"{samples} random fiducials"
    )


def check_overlap_dichotomy(frame: CoherentFrame) -> CheckResult:
    O = overlap_matrix(frame)
    dist = np.minimum(np.abs(O), np.abs(O - 1.0))
    return _result("overlap-dichotomy", float(dist.max()), 1e-12)


def check_overlap_coset_match(frame: CoherentFrame) -> CheckResult:
    O = overlap_matrix(frame)
    ids = coset_ids(frame)
    relation = ids[:, None] == ids[None, :]
    mismatches = int(np.count_nonzero((O > 0.5) != relation))
    return _result("overlap-coset-match", mismatches, 0.0)


def check_offcoset_vanishing(frame: CoherentFrame) -> CheckResult:
    """eq-mechanism part 1: <0|W(z)|0> = 0 for z outside K."""
    K, _ = frame.cosets()
    worst = 0.0
    for z in phase_space(frame.group):
        if z in K:
            continue
        worst = max(worst, abs(np.vdot(frame.fiducial, weyl_apply(z, frame.fiducial))))
    return _result("offcoset-vanishing", worst, 1e-13)


def check_offcoset_witness(frame: CoherentFrame) -> CheckResult:
    """eq-mechanism part 2: every z outside K has u in K with omega(z, u) != 1."""
    K, _ = frame.cosets()
    outside = [z for z in phase_space(frame.group) if z not in K]
    if not outside:
        return _result("offcoset-witness", 0, 0.0, "K = F")
    phases = cocycle_phase_matrix(frame.group, outside, list(K.points))
    missing = int(np.count_nonzero(~np.any(phases != 0, axis=1)))
    return _result("offcoset-witness", missing, 0.0, f"{len(outside)} points")


def check_coset_basis(frame: CoherentFrame) -> CheckResult:
    basis = coset_basis(frame)
    gram = basis.vectors.conj() @ basis.vectors.T
    residual = np.abs(gram - np.eye(len(basis.representatives))).max()
    return _result("coset-basis-gram", residual, 1e-12)


def check_husimi_mass_and_range(
    frame: CoherentFrame, rng: np.random.Generator, samples: int = 100
) -> list[CheckResult]:
    d = frame.group.order
    rhos = random_density_batch(d, samples, rng)
    q = batch_husimi(frame, rhos)
    mass = np.abs(q.sum(axis=1) * frame.haar_weight - 1.0).max()
    low = max(0.0, float(-q.min()))
    high = max(0.0, float(q.max() - 1.0))
    return [
        _result("husimi-mass", mass, 1e-10, f"{samples} random rho"),
        _result("husimi-range", max(low, high), 1e-12),
    ]


def check_coset_constancy(
    frame: CoherentFrame, rng: np.random.Generator, samples: int = 100
) -> CheckResult:
    d = frame.group.order
    rhos = random_density_batch(d, samples, rng)
    q = batch_husimi(frame, rhos)
    ids = coset_ids(frame)
    worst = 0.0
    for ordinal in range(ids.max() + 1):
        cols = q[:, ids == ordinal]
        worst = max(worst, float((cols.max(axis=1) - cols.min(axis=1)).max()))
    return _result("husimi-coset-spread", worst, 1e-12, f"{samples} random rho")


def check_coset_formula(
    frame: CoherentFrame, rng: np.random.Generator, samples: int = 100
) -> CheckResult:
    d = frame.group.order
    worst = 0.0
    for _ in range(samples):
        rho = random_density_batch(d, 1, rng)[0]
        full = wehrl_entropy(husimi(frame, rho))
        collapsed = wehrl_entropy_coset(frame, rho)
        worst = max(worst, abs(full - collapsed))
    return _result("coset-formula-vs-full", worst, 1e-10, f"{samples} random rho")


def check_fast_vs_dense(
    frame: CoherentFrame, rng: np.random.Generator, samples: int = 100
) -> CheckResult:
    d = frame.group.order
    worst = 0.0
    for _ in range(samples):
        psi = random_state_vector(d, rng)
        dense = husimi(frame, pure_density(psi)).values
        fast = husimi_fast(frame, psi).values
        worst = max(worst, float(np.abs(dense - fast).max()))
    return _result("husimi-fast-vs-dense", worst, 1e-11, f"{samples} pure states")


def check_wehrl_bounds(
    frame: CoherentFrame, rng: np.random.Generator, samples: int = 1000
) -> list[CheckResult]:
    d = frame.group.order
    rhos = random_density_batch(d, samples, rng)
    q = batch_husimi(frame, rhos)
    entropies = batch_entropy(q, frame.haar_weight)
    lower = max(0.0, float(-entropies.min()))
    out = [
        _result(
            "wehrl-lower-bound", lower, 1e-9, f"min = {entropies.min():.3e}"
        )
    ]
    O = overlap_matrix(frame)
    coherent_entropies = batch_entropy((O ** 2).T, frame.haar_weight)
    out.append(
        _result(
            "wehrl-coherent-zero",
            float(coherent_entropies.max()),
            1e-12,
            f"{frame.point_count} coherent projectors",
        )
    )
    noncoherent = q.max(axis=1) < 1.0 - 1e-6
    if np.any(noncoherent):
        floor = float(entropies[noncoherent].min())
        residual = max(0.0, 1e-3 - floor)
        note = f"min = {floor:.3e} over {int(noncoherent.sum())} states"
    else:
        residual, note = 0.0, "no non-coherent samples"
    out.append(_result("wehrl-noncoherent-floor", residual, 0.0, note))
    return out


def check_wehrl_vs_von_neumann(
    frame: CoherentFrame, rng: np.random.Generator, samples: int = 1000
) -> list[CheckResult]:
    d = frame.group.order
    rhos = random_density_batch(d, samples, rng)
    gaps = batch_entropy(batch_husimi(frame, rhos), frame.haar_weight) - (
        batch_von_neumann(rhos)
    )
    out = [
        _result(
            "wehrl-vs-von-neumann",
            max(0.0, float(-gaps.min())),
            1e-9,
            f"min gap = {gaps.min():.3e}",
        )
    ]
    flat = np.eye(d) / d
    sw = wehrl_entropy(husimi(frame, flat))
    sv = von_neumann_entropy(flat)
    residual = max(abs(sw - math.log(d)), abs(sv - math.log(d)))
    out.append(_result("flat-state-entropies", residual, 1e-10))
    return out


def check_channel(
    frame: CoherentFrame, rng: np.random.Generator, samples: int = 100
) -> list[CheckResult]:
    d = frame.group.order
    worst_trace = 0.0
    for _ in range(samples):
        rho = random_density_batch(d, 1, rng)[0]
        out = measurement_channel(frame, rho)
        worst_trace = max(worst_trace, abs(np.trace(out).real - 1.0))
    flat = np.eye(d) / d
    flat_res = float(np.abs(measurement_channel(frame, flat) - flat).max())
    _, reps = frame.cosets()
    worst_coherent = 0.0
    for rep in reps[: min(3, len(reps))]:
        proj = pure_density(frame.state(rep))
        worst_coherent = max(
            worst_coherent, float(np.abs(measurement_channel(frame, proj) - proj).max())
        )
    return [
        _result("channel-trace", worst_trace, 1e-10, f"{samples} random rho"),
        _result("channel-flat-fixed-point", flat_res, 1e-12),
        _result("channel-coherent-fixed-point", worst_coherent, 1e-11),
    ]


def fd_tangent_gradient(
    frame: CoherentFrame, psi: np.ndarray, h: float = 1e-6
) -> np.ndarray:
    """Finite-difference oracle for the tangent entropy gradient."""
    d = len(psi)
    grad = np.zeros(d, dtype=np.complex128)
    for j in range(d):
        step = np.zeros(d, dtype=np.complex128)
        step[j] = h
        real_part = (
            pure_state_entropy(frame, psi + step)
            - pure_state_entropy(frame, psi - step)
        ) / (4 * h)
        imag_part = (
            pure_state_entropy(frame, psi + 1j * step)
            - pure_state_entropy(frame, psi - 1j * step)
        ) / (4 * h)
        grad[j] = real_part + 1j * imag_part
    return grad - np.real(np.vdot(psi, grad)) * psi


def check_gradient_oracle(
    frame: CoherentFrame, rng: np.random.Generator, samples: int = 4
) -> CheckResult:
    from .entropy import pure_amplitudes

    d = frame.group.order
    worst = 0.0
    tested = 0
    attempts = 0
    while tested < samples and attempts < 50 * samples:
        attempts += 1
        psi = random_state_vector(d, rng)
        q = np.abs(pure_amplitudes(frame, psi)) ** 2
        if q.min() < 1e-6:  # keep log Q smooth across the FD stencil
            continue
        analytic = entropy_gradient(frame, psi)
        numeric = fd_tangent_gradient(frame, psi)
        scale = max(float(np.linalg.norm(numeric)), 1e-12)
        worst = max(worst, float(np.linalg.norm(analytic - numeric)) / scale)
        tested += 1
    note = f"{tested} states" if tested else "no admissible states found"
    return _result("gradient-vs-finite-differences", worst, 1e-4, note)


def check_product_structure(
    group: FiniteAbelianGroup, rng: np.random.Generator, samples: int = 100
) -> list[CheckResult]:
    """Marginalisation and entropy monotonicity for a first-factor split."""
    g1 = FiniteAbelianGroup(group.orders[:1])
    g2 = FiniteAbelianGroup(group.orders[1:])
    fr1 = CoherentFrame.vacuum(Subgroup.whole(g1))
    fr2 = CoherentFrame.vacuum(Subgroup.whole(g2))
    fr12 = product_frame(fr1, fr2)
    d1, d2 = g1.order, g2.order
    rhos = random_density_batch(d1 * d2, samples, rng)
    worst_marginal = 0.0
    worst_mono = 0.0
    for rho in rhos:
        table12 = husimi(fr12, rho)
        rho1 = np.einsum("ijkj->ik", rho.reshape(d1, d2, d1, d2))
        marginal = husimi_marginal(table12, (d1, d2), keep=1)
        direct = husimi(fr1, rho1).values
        worst_marginal = max(worst_marginal, float(np.abs(marginal - direct).max()))
        drop = wehrl_entropy(husimi(fr1, rho1)) - wehrl_entropy(table12)
        worst_mono = max(worst_mono, drop)
    return [
        _result(
            "husimi-marginalisation", worst_marginal, 1e-10, f"{samples} random rho"
        ),
        _result(
            "wehrl-monotonicity",
            max(0.0, worst_mono),
            1e-9,
            f"{samples} random rho, first factor kept",
        ),
    ]


# ---------------------------------------------------------------------------
# runner


def run_checks(
    group: FiniteAbelianGroup,
    subgroup: Subgroup,
    seed: int = 0,
    *,
    rho_samples: int = 1000,
    state_samples: int = 100,
) -> list[CheckResult]:
    """The full invariant suite for one (G, H); deterministic in the seed."""
    rng = np.random.default_rng(seed)
    results: list[CheckResult] = []
    results.append(check_group_laws(group, rng))
    results.append(check_character_values(group))
    results.append(check_character_multiplicativity(group, rng))
    results.append(check_annihilator_duality(subgroup))
    results.append(check_double_annihilator(subgroup))
    results.append(check_compact_maximality(subgroup))
    K = maximal_compact(subgroup)
    results.append(check_cocycle_trivial_on_K(K))
    results.append(check_cocycle_bilinearity(group, rng))
    results.append(check_ccr(group, seed))
    results.append(check_weyl_unitarity(group, rng))
    results.append(check_weyl_dense_vs_apply(group, rng))
    results.append(check_vacuum_uniqueness(K))
    results.append(check_vacuum_nullspace_match(subgroup))
    frame = CoherentFrame.vacuum(subgroup)
    results.append(check_vacuum_invariance(frame))
    results.append(check_resolution_vacuum(frame))
    results.append(check_resolution_random(group, rng))
    results.append(check_overlap_dichotomy(frame))
    results.append(check_overlap_coset_match(frame))
    results.append(check_offcoset_vanishing(frame))
    results.append(check_offcoset_witness(frame))
    results.append(check_coset_basis(frame))
    results.extend(check_husimi_mass_and_range(frame, rng, state_samples))
    results.append(check_coset_constancy(frame, rng, state_samples))
    results.append(check_coset_formula(frame, rng, state_samples))
    results.append(check_fast_vs_dense(frame, rng, state_samples))
    results.extend(check_wehrl_bounds(frame, rng, rho_samples))
    results.extend(check_wehrl_vs_von_neumann(frame, rng, rho_samples))
    results.extend(check_channel(frame, rng, state_samples))
    results.append(check_gradient_oracle(frame, rng))
    if len(group.orders) >= 2:
        results.extend(check_product_structure(group, rng, state_samples))
    return results
