"""Built-in objectives, domains, and landmark constructions.

Registry names accepted by the CLI: ising_interval, ising_circle, config3,
figure1, density.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .geometry import ConvexDomain, LandmarkSet, Objective

__all__ = [
    "MODEL_NAMES",
    "ising_objective",
    "ising_landmarks",
    "config3_objective",
    "config3_candidate_pool",
    "figure1_model",
    "figure_eight_cluster_cloud",
]

MODEL_NAMES = ("ising_interval", "ising_circle", "config3", "figure1", "density")


def ising_objective(sites: int, circular: bool = False) -> tuple[Objective, ConvexDomain]:
    """Nearest-neighbor coupling energy H(s) = -sum_i s_i s_{i+1} over the box
    [-1, 1]^sites; ``circular`` adds the wrap-around bond s_{d-1} s_0.

    The energy of any configuration is at least -(number of bonds), attained
    at the two constant corners, so that bound is declared as lower_bound.
    """
    d = int(sites)
    if d < 2:
        raise ValueError(f"need at least 2 sites, got {sites}")

    def value(xs: np.ndarray) -> np.ndarray:
        v = -np.einsum("ij,ij->i", xs[:, :-1], xs[:, 1:])
        if circular:
            v = v - xs[:, -1] * xs[:, 0]
        return v

    def gradient(xs: np.ndarray) -> np.ndarray:
        g = np.zeros_like(xs)
        g[:, :-1] -= xs[:, 1:]
        g[:, 1:] -= xs[:, :-1]
        if circular:
            g[:, -1] -= xs[:, 0]
            g[:, 0] -= xs[:, -1]
        return g

    n_bonds = d if circular else d - 1
    objective = Objective(
        dim=d,
        fn=value,
        grad=gradient,
        lower_bound=-float(n_bonds),
        batched=True,
        name="ising_circle" if circular else "ising_interval",
    )
    domain = ConvexDomain.box(-np.ones(d), np.ones(d))
    return objective, domain


def ising_landmarks(sites: int, count: int, circular: bool = False) -> LandmarkSet:
    """The ``count`` lowest-energy states with entries in {-1, +1}, energy ties
    broken lexicographically (with -1 before +1) for reproducibility."""
    d = int(sites)
    if d < 2:
        raise ValueError(f"need at least 2 sites, got {sites}")
    if not 1 <= count <= 2**d:
        raise ValueError(f"count must be in [1, {2**d}], got {count}")
    states = np.array(list(product((-1.0, 1.0), repeat=d)))
    objective, _ = ising_objective(d, circular=circular)
    energy = objective.value_many(states)
    keys = tuple(states[:, k] for k in range(d - 1, -1, -1)) + (energy,)
    order = np.lexsort(keys)
    return LandmarkSet(states[order[:count]])


def _config3_value(xs: np.ndarray) -> np.ndarray:
    """Worst per-point penalty for the nearest neighbor straying from unit
    distance: max_i ((min_{j != i} ||p_i - p_j||^2) - 1)^2.

    Zero exactly on configurations where every point has a nearest neighbor at
    distance 1; any collision costs at least 1 because the collided pair's
    nearest-neighbor squared distance is 0.
    """
    p = xs.reshape(-1, 3, 2)
    d01 = np.einsum("ij,ij->i", p[:, 0] - p[:, 1], p[:, 0] - p[:, 1])
    d02 = np.einsum("ij,ij->i", p[:, 0] - p[:, 2], p[:, 0] - p[:, 2])
    d12 = np.einsum("ij,ij->i", p[:, 1] - p[:, 2], p[:, 1] - p[:, 2])
    v0 = (np.minimum(d01, d02) - 1.0) ** 2
    v1 = (np.minimum(d01, d12) - 1.0) ** 2
    v2 = (np.minimum(d02, d12) - 1.0) ** 2
    return np.maximum(v0, np.maximum(v1, v2))


# squared pair distances indexed (0,1), (0,2), (1,2); row i of _C3_TOUCH lists
# the two pair slots involving point i, in the tie order of _config3_value
_C3_PAIRS = np.array([[0, 1], [0, 2], [1, 2]])
_C3_TOUCH = np.array([[0, 1], [0, 2], [1, 2]])


def _config3_grad(xs: np.ndarray) -> np.ndarray:
    """Selection gradient of the active max/min branch of ``_config3_value``:
    differentiate ((||p_a - p_b||^2 - 1)^2 for the pair realizing the worst
    point's nearest-neighbor distance.  Ties pick the first branch, a valid
    subgradient choice on the kink set (measure zero)."""
    p = xs.reshape(-1, 3, 2)
    m = p.shape[0]
    diffs = p[:, _C3_PAIRS[:, 0]] - p[:, _C3_PAIRS[:, 1]]
    dsq = np.einsum("ijk,ijk->ij", diffs, diffs)
    cand = dsq[:, _C3_TOUCH]
    which = np.argmin(cand, axis=2)
    nearest = np.take_along_axis(cand, which[:, :, None], axis=2)[:, :, 0]
    rows = np.arange(m)
    worst = np.argmax((nearest - 1.0) ** 2, axis=1)
    pair = _C3_TOUCH[worst, which[rows, worst]]
    vec = (4.0 * (dsq[rows, pair] - 1.0))[:, None] * diffs[rows, pair]
    g = np.zeros_like(p)
    g[rows, _C3_PAIRS[pair, 0]] = vec
    g[rows, _C3_PAIRS[pair, 1]] = -vec
    return g.reshape(m, 6)


def config3_objective() -> tuple[Objective, ConvexDomain]:
    """Objective on (R^2)^3 = R^6 whose zero set is the space of centered
    3-point configurations with all nearest-neighbor distances exactly 1; the
    domain carries the two centering equalities p_1 + p_2 + p_3 = (0, 0).

    Piecewise smooth (max/min switching); the declared gradient is the
    selection gradient of the active branch, which agrees with the true
    gradient off the kink set and is a subgradient on it.
    """
    objective = Objective(
        dim=6,
        fn=_config3_value,
        grad=_config3_grad,
        lower_bound=0.0,
        batched=True,
        name="config3",
    )
    center_x = (np.array([1.0, 0.0, 1.0, 0.0, 1.0, 0.0]), 0.0)
    center_y = (np.array([0.0, 1.0, 0.0, 1.0, 0.0, 1.0]), 0.0)
    domain = ConvexDomain.from_constraints(6, equalities=(center_x, center_y))
    return objective, domain


def config3_candidate_pool(
    count: int,
    rng_seed: int = 0,
    level: float = 0.1,
    half_width: float = 2.0,
    batch: int = 8192,
) -> np.ndarray:
    """Rejection-sample centered configurations with objective value <= level,
    for use as a maxmin landmark candidate pool.

    Sampling happens in an orthonormal basis of the centering plane (uniform
    over [-half_width, half_width]^4), which covers every sublevel
    configuration: the chain of near-unit nearest-neighbor distances bounds
    the diameter, and centering bounds each coordinate.
    """
    objective, domain = config3_objective()
    eq, _ = domain.equality_rows()
    _, _, vt = np.linalg.svd(eq)
    basis = vt[2:].T  # (6, 4)
    rng = np.random.default_rng(rng_seed)
    out: list[np.ndarray] = []
    have = 0
    for _ in range(5000):
        ys = rng.uniform(-half_width, half_width, size=(batch, 4))
        xs = ys @ basis.T
        keep = objective.value_many(xs) <= level
        if keep.any():
            out.append(xs[keep])
            have += int(keep.sum())
        if have >= count:
            break
    else:
        raise RuntimeError(f"rejection sampling stalled: {have}/{count} accepted")
    return np.vstack(out)[:count]


def figure1_model() -> tuple[Objective, ConvexDomain, LandmarkSet]:
    """Fixed 2-D counterexample: saddle objective f(x, y) = 8y^2 - x^2 - 1 on
    all of R^2 with a kite of four landmarks (top, left, right, deep bottom).

    The zero sublevel set is the band between two hyperbola branches
    (contractible), yet the landmark complex at level 0 is a hollow loop:
    the ordered cell of the bottom triangle {2, 3, 4} is a bounded patch on
    which f >= 9071, while the cells of that triangle's edges and vertices
    all reach -1 or descend without bound.  The bottom landmark sits at
    depth 80 so its Voronoi wedge (boundary slope 10 in x per y) crosses
    the slope-sqrt(8) negative wedges of the saddle; a shallow placement
    would leave that wedge entirely positive and fill the loop.

    f is unbounded below (no lower_bound), which exercises the trust-region
    clamp-and-flag path of the builder.
    """

    def value(xs: np.ndarray) -> np.ndarray:
        return 8.0 * xs[:, 1] ** 2 - xs[:, 0] ** 2 - 1.0

    def gradient(xs: np.ndarray) -> np.ndarray:
        return np.stack([-2.0 * xs[:, 0], 16.0 * xs[:, 1]], axis=1)

    objective = Objective(dim=2, fn=value, grad=gradient, batched=True, name="figure1")
    domain = ConvexDomain.full_space(2)
    landmarks = LandmarkSet(np.array([[0.0, 8.0], [-8.0, 0.0], [8.0, 0.0], [0.0, -80.0]]))
    return objective, domain, landmarks


def figure_eight_cluster_cloud(n_points: int = 1000, rng_seed: int = 0) -> np.ndarray:
    """Synthetic 2-D benchmark cloud: two tangent circles of radius 2 traced
    with light noise, plus five tight clusters sitting on the curve.  Designed
    so a density filtration shows five prominent component features and two
    prominent loop features."""
    rng = np.random.default_rng(rng_seed)
    n_curve = int(round(0.6 * n_points))
    n_left = n_curve // 2
    n_right = n_curve - n_left
    centers = np.array([[-4.0, 0.0], [-2.0, 2.0], [-2.0, -2.0], [2.0, 2.0], [2.0, -2.0]])
    n_cluster = n_points - n_curve
    sizes = np.full(len(centers), n_cluster // len(centers))
    sizes[: n_cluster % len(centers)] += 1

    def circle(n: int, cx: float) -> np.ndarray:
        theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
        pts = np.stack([cx + 2.0 * np.cos(theta), 2.0 * np.sin(theta)], axis=1)
        return pts + rng.normal(scale=0.08, size=(n, 2))

    parts = [circle(n_left, -2.0), circle(n_right, 2.0)]
    for center, size in zip(centers, sizes):
        parts.append(center + rng.normal(scale=0.1, size=(size, 2)))
    return np.vstack(parts)
