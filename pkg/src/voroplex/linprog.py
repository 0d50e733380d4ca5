"""Dense two-phase simplex for small H-polytope linear programs.

Provides feasibility certificates, optimal vertices, and maximal-slack
interior points (Chebyshev-style centers).  Systems here are small (at most
a few hundred rows, dimension ~20), so a dense tableau with Bland's
anti-cycling rule beats sparse machinery on both simplicity and robustness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import ConvexDomain

__all__ = ["ConstraintSystem", "LpResult", "SolverStalled", "solve_lp", "max_slack_point"]

_RC_TOL = 1e-9  # reduced-cost threshold for entering columns
_PIV_TOL = 1e-9  # minimum magnitude of a pivot element
_ZERO_ROW = 1e-14  # row norm below this counts as the zero row


class SolverStalled(RuntimeError):
    """Numerical failure after the bounded pivot count; never a wrong status."""


@dataclass(frozen=True)
class ConstraintSystem:
    """An H-polytope {p : a_ub p <= b_ub, a_eq p = b_eq} in R^dim."""

    dim: int
    a_ub: np.ndarray
    b_ub: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray

    def __post_init__(self):
        d = self.dim
        object.__setattr__(self, "a_ub", np.asarray(self.a_ub, dtype=float).reshape(-1, d))
        object.__setattr__(self, "b_ub", np.asarray(self.b_ub, dtype=float).reshape(-1))
        object.__setattr__(self, "a_eq", np.asarray(self.a_eq, dtype=float).reshape(-1, d))
        object.__setattr__(self, "b_eq", np.asarray(self.b_eq, dtype=float).reshape(-1))
        if self.a_ub.shape[0] != self.b_ub.shape[0] or self.a_eq.shape[0] != self.b_eq.shape[0]:
            raise ValueError("constraint matrix/rhs row counts disagree")

    @classmethod
    def empty(cls, dim: int) -> "ConstraintSystem":
        return cls(dim, np.zeros((0, dim)), np.zeros(0), np.zeros((0, dim)), np.zeros(0))

    @classmethod
    def from_domain(cls, domain: ConvexDomain) -> "ConstraintSystem":
        a_ub, b_ub = domain.inequality_rows()
        a_eq, b_eq = domain.equality_rows()
        return cls(domain.dim, a_ub, b_ub, a_eq, b_eq)

    def with_inequalities(self, a: np.ndarray, b: np.ndarray) -> "ConstraintSystem":
        a = np.asarray(a, dtype=float).reshape(-1, self.dim)
        b = np.asarray(b, dtype=float).reshape(-1)
        return ConstraintSystem(
            self.dim,
            np.vstack([self.a_ub, a]) if self.a_ub.size else a,
            np.concatenate([self.b_ub, b]),
            self.a_eq,
            self.b_eq,
        )

    @property
    def n_rows(self) -> int:
        return self.a_ub.shape[0] + self.a_eq.shape[0]

    def violation(self, x: np.ndarray) -> float:
        """Largest constraint violation at x (0 when feasible), on the raw rows."""
        x = np.asarray(x, dtype=float)
        v = 0.0
        if self.a_ub.shape[0]:
            v = max(v, float(np.max(self.a_ub @ x - self.b_ub)))
        if self.a_eq.shape[0]:
            v = max(v, float(np.max(np.abs(self.a_eq @ x - self.b_eq))))
        return max(v, 0.0)

    def contains(self, x: np.ndarray, tol: float = 1e-9) -> bool:
        return self.violation(x) <= tol


@dataclass(frozen=True)
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    point: Optional[np.ndarray] = None
    value: Optional[float] = None


def _normalized_rows(system: ConstraintSystem, tol_feas: float):
    """Unit-normalize rows; returns None when a zero row makes the system
    trivially infeasible, else (a_ub, b_ub, a_eq, b_eq)."""
    a, b = system.a_ub, system.b_ub
    norms = np.linalg.norm(a, axis=1) if a.shape[0] else np.zeros(0)
    zero = norms < _ZERO_ROW
    if np.any(b[zero] < -tol_feas):
        return None
    keep = ~zero
    a_ub = a[keep] / norms[keep, None] if keep.any() else np.zeros((0, system.dim))
    b_ub = b[keep] / norms[keep] if keep.any() else np.zeros(0)

    e, c = system.a_eq, system.b_eq
    enorms = np.linalg.norm(e, axis=1) if e.shape[0] else np.zeros(0)
    ezero = enorms < _ZERO_ROW
    if np.any(np.abs(c[ezero]) > tol_feas):
        return None
    ekeep = ~ezero
    a_eq = e[ekeep] / enorms[ekeep, None] if ekeep.any() else np.zeros((0, system.dim))
    b_eq = c[ekeep] / enorms[ekeep] if ekeep.any() else np.zeros(0)
    return a_ub, b_ub, a_eq, b_eq


def _pivot(T: np.ndarray, r: int, j: int) -> None:
    T[r, :] /= T[r, j]
    col = T[:, j].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r, :])


def _pivot_loop(T, basis, n_cols, *, stop_at=None, max_pivots) -> str:
    """Run simplex pivots minimizing the cost row T[-1].  Dantzig pricing,
    permanently switching to Bland's rule after a degenerate streak so cycling
    cannot occur.  Current objective value is -T[-1, -1]."""
    bland = False
    degen = 0
    for _ in range(max_pivots):
        rc = T[-1, :n_cols]
        if bland:
            candidates = np.flatnonzero(rc < -_RC_TOL)
            if candidates.size == 0:
                return "optimal"
            j = int(candidates[0])
        else:
            j = int(np.argmin(rc))
            if rc[j] >= -_RC_TOL:
                return "optimal"
        col = T[:-1, j]
        pos = col > _PIV_TOL
        if not pos.any():
            return "unbounded"
        rhs = np.maximum(T[:-1, -1], 0.0)
        ratios = np.full(col.shape, np.inf)
        ratios[pos] = rhs[pos] / col[pos]
        rmin = ratios.min()
        ties = np.flatnonzero(ratios <= rmin + 1e-12 * (1.0 + rmin))
        r = int(ties[np.argmin(basis[ties])])  # Bland-compatible leaving tie-break
        _pivot(T, r, j)
        basis[r] = j
        if rmin <= 1e-13:
            degen += 1
            if degen > 25:
                bland = True
        else:
            degen = 0
        if stop_at is not None and -T[-1, -1] <= stop_at:
            return "optimal"
    raise SolverStalled(f"simplex exceeded {max_pivots} pivots")


def _simplex(c, a_ub, b_ub, a_eq, b_eq, *, stop_at=None):
    """Minimize c.x over the normalized rows with x free (split internally).
    Returns (status, x)."""
    d = c.size
    m1, m2 = b_ub.size, b_eq.size
    m = m1 + m2
    n = 2 * d + m1  # u, v, slacks
    M = np.zeros((m, n))
    if m1:
        M[:m1, :d] = a_ub
        M[:m1, d : 2 * d] = -a_ub
        M[np.arange(m1), 2 * d + np.arange(m1)] = 1.0
    if m2:
        M[m1:, :d] = a_eq
        M[m1:, d : 2 * d] = -a_eq
    q = np.concatenate([b_ub, b_eq])
    neg = q < 0
    M[neg] *= -1.0
    q = np.abs(q)

    art_rows = [r for r in range(m) if r >= m1 or neg[r]]
    n_art = len(art_rows)
    basis = np.empty(m, dtype=int)
    for r in range(m1):
        basis[r] = 2 * d + r
    T = np.zeros((m + 1, n + n_art + 1))
    T[:m, :n] = M
    T[:m, -1] = q
    for k, r in enumerate(art_rows):
        T[r, n + k] = 1.0
        basis[r] = n + k

    max_pivots = 1000 + 60 * (m + n)
    if n_art:
        for r in art_rows:
            T[-1, :] -= T[r, :]
        T[-1, n : n + n_art] = 0.0
        status = _pivot_loop(T, basis, n + n_art, stop_at=1e-12, max_pivots=max_pivots)
        if status != "optimal":
            raise SolverStalled("phase 1 reported unbounded")
        if -T[-1, -1] > 1e-9 * (1.0 + float(np.max(q, initial=0.0))):
            return "infeasible", None
        # Drive surviving artificials out of the basis; dependent rows go dead.
        for r in range(m):
            if basis[r] >= n:
                row = np.abs(T[r, :n])
                j = int(np.argmax(row))
                if row[j] > _PIV_TOL:
                    _pivot(T, r, j)
                    basis[r] = j
                else:
                    T[r, :] = 0.0
                    basis[r] = -1
    T2 = np.hstack([T[:, :n], T[:, -1:]])

    c2 = np.zeros(n)
    c2[:d] = c
    c2[d : 2 * d] = -c
    T2[-1, :] = 0.0
    T2[-1, :n] = c2
    for r in range(m):
        j = basis[r]
        if j >= 0 and c2[j] != 0.0:
            T2[-1, :] -= c2[j] * T2[r, :]
    status = _pivot_loop(T2, basis, n, stop_at=stop_at, max_pivots=max_pivots)
    if status == "unbounded":
        return "unbounded", None
    y = np.zeros(n)
    for r in range(m):
        if basis[r] >= 0:
            y[basis[r]] = T2[r, -1]
    return "optimal", y[:d] - y[d : 2 * d]


def solve_lp(
    objective_vector: np.ndarray,
    sense: str,
    system: ConstraintSystem,
    tol_feas: float = 1e-9,
) -> LpResult:
    """Optimize a linear functional over an H-polytope.

    Status "optimal" comes with a point attaining the optimum and feasible
    within ``tol_feas``; "infeasible" is returned iff no point satisfies the
    system; numerical trouble raises SolverStalled rather than guessing.
    """
    c = np.asarray(objective_vector, dtype=float).reshape(-1)
    if c.size != system.dim:
        raise ValueError(f"objective vector has length {c.size}, system dim is {system.dim}")
    if sense not in ("min", "max"):
        raise ValueError("sense must be 'min' or 'max'")
    rows = _normalized_rows(system, tol_feas)
    if rows is None:
        return LpResult("infeasible")
    a_ub, b_ub, a_eq, b_eq = rows
    status, x = _simplex(c if sense == "min" else -c, a_ub, b_ub, a_eq, b_eq)
    if status != "optimal":
        return LpResult(status)
    if system.violation(x) > tol_feas:
        raise SolverStalled("optimal basis violates constraints beyond tol_feas")
    return LpResult("optimal", x, float(c @ x))


def max_slack_point(
    system: ConstraintSystem,
    tol_feas: float = 1e-9,
    stop_at: Optional[float] = None,
) -> LpResult:
    """Maximize the uniform normalized slack s with a_i p + s ||a_i|| <= b_i and
    all equalities exact; s is capped at 1 so unbounded polytopes stay bounded.

    Returns the witness point and the slack as ``value``; the system is
    nonempty iff the slack is >= -tol_feas.  ``stop_at`` trades optimality for
    speed: the search may stop early at any basic solution whose slack already
    reaches it (the returned point is then still feasible for the augmented
    rows, just not the true center).
    """
    rows = _normalized_rows(system, tol_feas)
    if rows is None:
        return LpResult("infeasible")
    a_ub, b_ub, a_eq, b_eq = rows
    d = system.dim
    m1 = b_ub.size
    # Augmented variables (x, s): normalized rows gain +s; cap row s <= 1.
    a_aug = np.hstack([a_ub, np.ones((m1, 1))]) if m1 else np.zeros((0, d + 1))
    cap = np.zeros((1, d + 1))
    cap[0, d] = 1.0
    a_aug = np.vstack([a_aug, cap])
    b_aug = np.concatenate([b_ub, [1.0]])
    e_aug = np.hstack([a_eq, np.zeros((a_eq.shape[0], 1))]) if a_eq.shape[0] else np.zeros((0, d + 1))
    c = np.zeros(d + 1)
    c[d] = -1.0  # maximize s
    status, xs = _simplex(c, a_aug, b_aug, e_aug, b_eq, stop_at=None if stop_at is None else -stop_at)
    if status == "infeasible":
        return LpResult("infeasible")
    if status != "optimal":
        raise SolverStalled("slack LP reported unbounded despite the cap")
    x, s = xs[:d], float(xs[d])
    return LpResult("optimal", x, s)
