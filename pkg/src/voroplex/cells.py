"""Ordered higher-order Voronoi cells as H-polytopes.

A cell for the ordering (i_1, ..., i_m) is the set of points whose distances
to the listed landmarks are nondecreasing in that order and no unlisted
landmark is nearer than the last listed one.  Squaring distances makes every
constraint linear: ||p - a||^2 <= ||p - b||^2  <=>  2(b - a).p <= ||b||^2 - ||a||^2.
"""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

import numpy as np

from .geometry import ConvexDomain, LandmarkSet, ToleranceConfig
from .linprog import ConstraintSystem, LpResult, max_slack_point

__all__ = [
    "BisectorCache",
    "check_ordering",
    "ordered_cell",
    "cell_nonempty",
    "delaunay_membership",
]


class BisectorCache:
    """Precomputed bisector half-space rows for one landmark set.

    rows[i, j] . p <= rhs[i, j] encodes d(p, lam_i) <= d(p, lam_j); building
    these once per landmark set dominates nothing mathematically but saves the
    O(n^2 d) recomputation in the inner enumeration loops.
    """

    def __init__(self, landmarks: LandmarkSet):
        pts = landmarks.points
        sq = np.einsum("ij,ij->i", pts, pts)
        self.rows = 2.0 * (pts[None, :, :] - pts[:, None, :])
        self.rhs = sq[None, :] - sq[:, None]
        self.n = landmarks.n
        self.dim = landmarks.dim


def check_ordering(ordering: Sequence[int], n: int) -> Tuple[int, ...]:
    """Validate and canonicalize an ordering: nonempty, distinct, in range."""
    idx = tuple(int(i) for i in ordering)
    if not idx:
        raise ValueError("ordering must be nonempty")
    if len(set(idx)) != len(idx):
        raise ValueError(f"ordering has repeated indices: {idx}")
    if min(idx) < 0 or max(idx) >= n:
        raise ValueError(f"ordering {idx} out of range for {n} landmarks")
    return idx


def _cell_rows(ordering: Tuple[int, ...], cache: BisectorCache):
    """Chain rows for consecutive pairs plus exclusion rows: last listed
    landmark at least as near as every unlisted one."""
    inside = set(ordering)
    outside = [j for j in range(cache.n) if j not in inside]
    first = list(ordering[:-1])
    second = list(ordering[1:])
    last = ordering[-1]
    a = np.vstack([cache.rows[first, second], cache.rows[last, outside]]) \
        if (first or outside) else np.zeros((0, cache.dim))
    b = np.concatenate([cache.rhs[first, second], cache.rhs[last, outside]]) \
        if (first or outside) else np.zeros(0)
    return a, b


def ordered_cell(
    ordering: Sequence[int],
    landmarks: LandmarkSet,
    domain: Optional[ConvexDomain] = None,
    cache: Optional[BisectorCache] = None,
) -> ConstraintSystem:
    """Constraint system of the ordered Voronoi cell intersected with the domain."""
    if cache is None:
        cache = BisectorCache(landmarks)
    idx = check_ordering(ordering, cache.n)
    a, b = _cell_rows(idx, cache)
    d = cache.dim
    if domain is None:
        return ConstraintSystem(d, a, b, np.zeros((0, d)), np.zeros(0))
    if domain.dim != d:
        raise ValueError(f"domain dim {domain.dim} != landmark dim {d}")
    da, db = domain.inequality_rows()
    ea, eb = domain.equality_rows()
    return ConstraintSystem(
        d,
        np.vstack([a, da]) if da.size else a,
        np.concatenate([b, db]),
        ea,
        eb,
    )


def cell_nonempty(
    system: ConstraintSystem,
    tol: ToleranceConfig = ToleranceConfig(),
    stop_at: Optional[float] = None,
) -> Tuple[bool, Optional[np.ndarray]]:
    """Decide nonemptiness via the maximal-slack LP; slack >= -tol_feas accepts,
    so degenerate (co-spherical) cells that collapse to a single point pass.

    Returns (nonempty, witness); the witness is the slack-optimal point.
    ``stop_at`` (slack units) lets callers accept the first basic solution with
    at least that much slack instead of solving to the true center.
    """
    res: LpResult = max_slack_point(system, tol_feas=tol.tol_feas, stop_at=stop_at)
    if res.status == "infeasible":
        return False, None
    if res.value >= -tol.tol_feas:
        return True, res.point
    return False, None


def delaunay_membership(
    simplex: Sequence[int],
    landmarks: LandmarkSet,
    tol_feas: float = 1e-9,
) -> bool:
    """True iff some point p is equidistant (distance c >= 0) from all simplex
    landmarks with no other landmark nearer.

    Expanding d(p, lam_i)^2 = c^2 and substituting t = c^2 - ||p||^2 turns the
    condition into an LP over (p, t): equalities -2 lam_i . p - t = -||lam_i||^2
    for members, inequalities 2 lam_j . p + t <= ||lam_j||^2 for the rest.
    c^2 = t + ||p||^2 is automatically nonnegative through the equalities.
    """
    idx = sorted({int(i) for i in simplex})
    if not idx:
        raise ValueError("simplex must be nonempty")
    if idx[0] < 0 or idx[-1] >= landmarks.n:
        raise ValueError(f"simplex {idx} out of range for {landmarks.n} landmarks")
    pts = landmarks.points
    d = landmarks.dim
    sq = np.einsum("ij,ij->i", pts, pts)
    inside = np.array(idx, dtype=int)
    outside = np.array([j for j in range(landmarks.n) if j not in set(idx)], dtype=int)
    a_eq = np.hstack([-2.0 * pts[inside], -np.ones((inside.size, 1))])
    b_eq = -sq[inside]
    if outside.size:
        a_ub = np.hstack([2.0 * pts[outside], np.ones((outside.size, 1))])
        b_ub = sq[outside]
    else:
        a_ub = np.zeros((0, d + 1))
        b_ub = np.zeros(0)
    system = ConstraintSystem(d + 1, a_ub, b_ub, a_eq, b_eq)
    res = max_slack_point(system, tol_feas=tol_feas)
    return res.status == "optimal" and res.value >= -tol_feas
