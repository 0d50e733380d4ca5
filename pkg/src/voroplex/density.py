"""Adaptive Gaussian density estimation and landmark selection.

Each data point z_i carries its own bandwidth beta_i, fixed by requiring that
the kernel mass it sees over the whole dataset equals a target h:
sum_j exp(-beta_i ||z_j - z_i||^2) = h.  The filtration objective is
f = -log rho with rho(z) = (hN)^{-1} sum_i exp(-beta_i ||z - z_i||^2), so
denser regions enter the sublevel filtration earlier.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import LandmarkSet, Objective

__all__ = [
    "DensityModel",
    "DegenerateData",
    "fit_bandwidths",
    "neg_log_density",
    "select_landmarks_maxmin",
    "covering_radius",
]


class DegenerateData(ValueError):
    """The target kernel mass h is unattainable (duplicate-heavy data)."""


@dataclass(frozen=True)
class DensityModel:
    data: np.ndarray  # (N, d)
    h: float
    betas: np.ndarray  # (N,)

    def residuals(self) -> np.ndarray:
        """Defining-equation residuals |sum_j exp(-beta_i d2_ij) - h| per i."""
        d2 = _sq_dists(self.data, self.data)
        return np.abs(np.exp(-self.betas[:, None] * d2).sum(axis=1) - self.h)


def _sq_dists(xs: np.ndarray, zs: np.ndarray) -> np.ndarray:
    """Pairwise squared Euclidean distances, (len(xs), len(zs)), clipped at 0."""
    x2 = np.einsum("ij,ij->i", xs, xs)
    z2 = np.einsum("ij,ij->i", zs, zs)
    d2 = x2[:, None] + z2[None, :] - 2.0 * (xs @ zs.T)
    return np.maximum(d2, 0.0)


def fit_bandwidths(data, h: float, residual_tol: float = 1e-10) -> DensityModel:
    """Solve the per-point bandwidth equations by vectorized bisection.

    The map beta -> sum_j exp(-beta d2_ij) is strictly decreasing from N
    (beta -> 0) to the multiplicity of z_i (beta -> inf), so a bracket found
    by doubling from beta = 1 always contains the unique root.
    """
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[0] < 2:
        raise ValueError("need at least two data points in a 2-D array")
    n = data.shape[0]
    if not 1.0 < h < n:
        raise ValueError(f"h must lie strictly between 1 and N={n}, got {h}")
    d2 = _sq_dists(data, data)
    multiplicity = (d2 <= 0.0).sum(axis=1)
    if np.any(multiplicity >= h):
        worst = int(np.argmax(multiplicity))
        raise DegenerateData(
            f"point {worst} has {multiplicity[worst]} coincident copies; "
            f"the kernel-mass target h={h} is unattainable"
        )

    def masses(beta: np.ndarray) -> np.ndarray:
        return np.exp(-beta[:, None] * d2).sum(axis=1)

    lo = np.zeros(n)
    hi = np.ones(n)
    for _ in range(200):
        high_mass = masses(hi) > h
        if not high_mass.any():
            break
        lo = np.where(high_mass, hi, lo)
        hi = np.where(high_mass, hi * 2.0, hi)
    else:
        raise DegenerateData("bandwidth bracket did not close; data nearly degenerate")

    beta = 0.5 * (lo + hi)
    for _ in range(200):
        m = masses(beta)
        resid = np.abs(m - h)
        if np.all(resid <= residual_tol):
            break
        too_heavy = m > h
        lo = np.where(too_heavy, beta, lo)
        hi = np.where(too_heavy, hi, beta)
        new_beta = 0.5 * (lo + hi)
        if np.array_equal(new_beta, beta):
            break  # float interval exhausted
        beta = new_beta
    model = DensityModel(data=data, h=float(h), betas=beta)
    worst = float(model.residuals().max())
    if worst > 1e-8:
        raise DegenerateData(f"bandwidth fit residual {worst:.2e} exceeds 1e-8")
    return model


def neg_log_density(model: DensityModel) -> Objective:
    """f = -log rho as a batched Objective with analytic gradient.

    Each kernel is at most 1, so rho <= N/(hN) = 1/h and f >= log h: that
    bound is declared as the objective's lower_bound.
    """
    data = model.data
    betas = model.betas
    log_hn = float(np.log(model.h) + np.log(data.shape[0]))

    def value(xs: np.ndarray) -> np.ndarray:
        e = -betas[None, :] * _sq_dists(xs, data)
        m = e.max(axis=1)
        s = np.exp(e - m[:, None]).sum(axis=1)
        return log_hn - (m + np.log(s))

    def gradient(xs: np.ndarray) -> np.ndarray:
        e = -betas[None, :] * _sq_dists(xs, data)
        m = e.max(axis=1)
        w = np.exp(e - m[:, None])
        s = w.sum(axis=1)
        u = w * betas[None, :]
        a = u.sum(axis=1) / s
        return 2.0 * (xs * a[:, None] - (u @ data) / s[:, None])

    return Objective(
        dim=data.shape[1],
        fn=value,
        grad=gradient,
        lower_bound=float(np.log(model.h)),
        batched=True,
        name="neg_log_density",
    )


def select_landmarks_maxmin(
    candidates,
    count: int,
    seed_count: int = 1,
    rng_seed: int = 0,
) -> LandmarkSet:
    """Greedy farthest-point selection: after ``seed_count`` random picks, keep
    appending the candidate farthest from everything chosen so far.
    Deterministic given the seed; ties resolve to the lowest candidate index.
    """
    pts = np.asarray(candidates, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("candidates must be a nonempty (N, d) array")
    n = pts.shape[0]
    if not 1 <= count <= n:
        raise ValueError(f"count must be in [1, {n}], got {count}")
    seed_count = min(max(1, seed_count), count)
    rng = np.random.default_rng(rng_seed)
    chosen = list(rng.choice(n, size=seed_count, replace=False))
    min_d2 = np.full(n, np.inf)
    for idx in chosen:
        diff = pts - pts[idx]
        min_d2 = np.minimum(min_d2, np.einsum("ij,ij->i", diff, diff))
    while len(chosen) < count:
        nxt = int(np.argmax(min_d2))
        chosen.append(nxt)
        diff = pts - pts[nxt]
        min_d2 = np.minimum(min_d2, np.einsum("ij,ij->i", diff, diff))
    return LandmarkSet(pts[chosen])


def covering_radius(landmarks: LandmarkSet, region_sample) -> float:
    """Empirical covering radius: max over the sample of the distance to the
    nearest landmark (the delta for which the sample lies in B_delta(landmarks))."""
    sample = np.asarray(region_sample, dtype=float)
    if sample.ndim != 2 or sample.shape[0] == 0:
        raise ValueError("region_sample must be a nonempty (M, d) array")
    worst = 0.0
    pts = landmarks.points
    for start in range(0, sample.shape[0], 4096):
        block = sample[start : start + 4096]
        d2 = _sq_dists(block, pts)
        worst = max(worst, float(d2.min(axis=1).max()))
    return float(np.sqrt(worst))
