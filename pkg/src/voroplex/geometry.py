"""Core domain types: landmark sets, convex domains, objectives, tolerances.

Everything here is immutable after construction and safe to share across
workers.  Points are plain float64 numpy arrays of shape (d,).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

__all__ = [
    "LandmarkSet",
    "ConvexDomain",
    "Objective",
    "ToleranceConfig",
    "Finding",
    "ValidationReport",
    "validate",
    "fd_gradient",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LandmarkSet:
    """Ordered landmark points, one row per point; indices label all simplices."""

    points: np.ndarray  # (n, d)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError(f"landmarks must be a nonempty (n, d) array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("landmark coordinates must be finite")
        object.__setattr__(self, "points", _freeze(pts))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def duplicate_pairs(self, tol_dup: float = 1e-12) -> list[tuple[int, int]]:
        """Index pairs closer than ``tol_dup`` (these break every Voronoi ordering)."""
        pts = self.points
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        pairs = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if dist[i, j] <= tol_dup:
                    pairs.append((i, j))
        return pairs


@dataclass(frozen=True)
class ConvexDomain:
    """The ambient region X as an H-polytope: a·p <= b rows, e·p = c rows, optional box."""

    dim: int
    a_ub: np.ndarray  # (m, dim)
    b_ub: np.ndarray  # (m,)
    a_eq: np.ndarray  # (p, dim)
    b_eq: np.ndarray  # (p,)
    lower: Optional[np.ndarray] = None  # per-coordinate bounds, -inf allowed
    upper: Optional[np.ndarray] = None

    def __post_init__(self):
        d = self.dim
        a_ub = np.asarray(self.a_ub, dtype=float).reshape(-1, d)
        b_ub = np.asarray(self.b_ub, dtype=float).reshape(-1)
        a_eq = np.asarray(self.a_eq, dtype=float).reshape(-1, d)
        b_eq = np.asarray(self.b_eq, dtype=float).reshape(-1)
        if a_ub.shape[0] != b_ub.shape[0] or a_eq.shape[0] != b_eq.shape[0]:
            raise ValueError("constraint matrix/rhs row counts disagree")
        object.__setattr__(self, "a_ub", _freeze(a_ub))
        object.__setattr__(self, "b_ub", _freeze(b_ub))
        object.__setattr__(self, "a_eq", _freeze(a_eq))
        object.__setattr__(self, "b_eq", _freeze(b_eq))
        for name in ("lower", "upper"):
            v = getattr(self, name)
            if v is not None:
                v = np.asarray(v, dtype=float).reshape(-1)
                if v.shape != (d,):
                    raise ValueError(f"{name} bound must have length {d}")
                object.__setattr__(self, name, _freeze(v))

    @classmethod
    def full_space(cls, dim: int) -> "ConvexDomain":
        return cls(dim, np.zeros((0, dim)), np.zeros(0), np.zeros((0, dim)), np.zeros(0))

    @classmethod
    def box(cls, lower: Sequence[float], upper: Sequence[float]) -> "ConvexDomain":
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        d = lower.shape[0]
        dom = cls.full_space(d)
        return cls(d, dom.a_ub, dom.b_ub, dom.a_eq, dom.b_eq, lower=lower, upper=upper)

    @classmethod
    def from_constraints(
        cls,
        dim: int,
        inequalities: Sequence[tuple[Sequence[float], float]] = (),
        equalities: Sequence[tuple[Sequence[float], float]] = (),
        lower: Optional[Sequence[float]] = None,
        upper: Optional[Sequence[float]] = None,
    ) -> "ConvexDomain":
        a_ub = np.array([a for a, _ in inequalities], dtype=float).reshape(-1, dim)
        b_ub = np.array([b for _, b in inequalities], dtype=float)
        a_eq = np.array([e for e, _ in equalities], dtype=float).reshape(-1, dim)
        b_eq = np.array([c for _, c in equalities], dtype=float)
        return cls(dim, a_ub, b_ub, a_eq, b_eq, lower=lower, upper=upper)

    def inequality_rows(self) -> tuple[np.ndarray, np.ndarray]:
        """All inequality rows with box bounds expanded to half-spaces."""
        rows = [self.a_ub]
        rhs = [self.b_ub]
        d = self.dim
        eye = np.eye(d)
        if self.lower is not None:
            keep = np.isfinite(self.lower)
            if keep.any():
                rows.append(-eye[keep])
                rhs.append(-self.lower[keep])
        if self.upper is not None:
            keep = np.isfinite(self.upper)
            if keep.any():
                rows.append(eye[keep])
                rhs.append(self.upper[keep])
        return np.vstack(rows), np.concatenate(rhs)

    def equality_rows(self) -> tuple[np.ndarray, np.ndarray]:
        return self.a_eq, self.b_eq

    @property
    def is_free(self) -> bool:
        a, b = self.inequality_rows()
        return a.shape[0] == 0 and self.a_eq.shape[0] == 0


@dataclass(frozen=True)
class Objective:
    """Evaluation contract for the filtration function f.

    ``fn`` maps a point (d,) to a float; with ``batched=True`` it also accepts
    an (m, d) block and returns (m,).  ``grad`` is the analytic gradient with
    the same batching convention; leave None to fall back to central finite
    differences.  ``lower_bound`` is a known global bound used to rule out
    unbounded descent.
    """

    dim: int
    fn: Callable
    grad: Optional[Callable] = None
    lower_bound: Optional[float] = None
    batched: bool = False
    name: str = ""

    def value(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        if self.batched:
            return float(self.fn(x[None, :])[0])
        return float(self.fn(x))

    def value_many(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        if self.batched:
            return np.asarray(self.fn(xs), dtype=float)
        return np.array([self.fn(x) for x in xs], dtype=float)

    def gradient_many(self, xs: np.ndarray) -> np.ndarray:
        """Analytic gradients when available, else batched central differences."""
        xs = np.asarray(xs, dtype=float)
        if self.grad is not None:
            if self.batched:
                return np.asarray(self.grad(xs), dtype=float)
            return np.array([self.grad(x) for x in xs], dtype=float)
        return fd_gradient(self.value_many, xs)

    def gradient(self, x: np.ndarray) -> np.ndarray:
        return self.gradient_many(np.asarray(x, dtype=float)[None, :])[0]


def fd_gradient(value_many: Callable, xs: np.ndarray) -> np.ndarray:
    """Central finite differences with step 1e-6 * (1 + |x|), batched over rows."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    m, d = xs.shape
    h = 1e-6 * (1.0 + np.linalg.norm(xs, axis=1))  # (m,)
    grads = np.empty((m, d))
    for k in range(d):
        step = np.zeros((m, d))
        step[:, k] = h
        grads[:, k] = (value_many(xs + step) - value_many(xs - step)) / (2.0 * h)
    return grads


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical knobs shared by the whole pipeline."""

    tol_feas: float = 1e-9  # LP feasibility slack threshold
    tol_dup: float = 1e-12  # duplicate-landmark threshold
    tol_opt: float = 1e-8  # optimizer step convergence
    n_starts: int = 8  # multi-start count per cell
    max_dim: Optional[int] = None  # maximum simplex dimension; None -> ambient d

    def __post_init__(self):
        if not (self.tol_feas > 0 and self.tol_dup > 0 and self.tol_opt > 0):
            raise ValueError("tolerances must be strictly positive")
        if self.n_starts < 1:
            raise ValueError("n_starts must be >= 1")
        if self.max_dim is not None and self.max_dim < 0:
            raise ValueError("max_dim must be >= 0")


@dataclass(frozen=True)
class Finding:
    fatal: bool
    code: str
    message: str


@dataclass
class ValidationReport:
    findings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(f.fatal for f in self.findings)

    def add(self, fatal: bool, code: str, message: str) -> None:
        self.findings.append(Finding(fatal, code, message))

    def summary(self) -> str:
        if not self.findings:
            return "OK"
        return "\n".join(
            ("FATAL" if f.fatal else "warn ") + f" [{f.code}] {f.message}" for f in self.findings
        )


def validate(
    landmarks: LandmarkSet,
    domain: ConvexDomain,
    objective: Objective,
    tol: ToleranceConfig = ToleranceConfig(),
) -> ValidationReport:
    """Check inputs for dimension mismatches, duplicate landmarks, an empty
    domain, and (when an analytic gradient is supplied) gradient consistency.

    Report-returning: never raises on bad inputs; a fatal finding means the
    pipeline must refuse to proceed.
    """
    from . import linprog

    report = ValidationReport()
    if landmarks.dim != domain.dim:
        report.add(True, "dimension-mismatch",
                   f"landmarks have dim {landmarks.dim} but domain has dim {domain.dim}")
    if objective.dim != domain.dim:
        report.add(True, "dimension-mismatch",
                   f"objective has dim {objective.dim} but domain has dim {domain.dim}")
    for i, j in landmarks.duplicate_pairs(tol.tol_dup):
        report.add(True, "duplicate-landmark", f"landmarks {i} and {j} coincide within {tol.tol_dup}")
    if not report.ok:
        return report

    system = linprog.ConstraintSystem.from_domain(domain)
    try:
        res = linprog.max_slack_point(system, tol_feas=tol.tol_feas)
    except linprog.SolverStalled as exc:
        report.add(True, "domain-check-failed", f"LP solver stalled while checking the domain: {exc}")
        return report
    if res.status == "infeasible" or (res.value is not None and res.value < -tol.tol_feas):
        report.add(True, "empty-domain", "domain constraints admit no point")
        return report

    witness = res.point if res.point is not None else np.zeros(domain.dim)
    try:
        fw = objective.value(witness)
    except Exception as exc:  # noqa: BLE001 - reported, not raised
        report.add(True, "objective-error", f"objective raised at a domain point: {exc!r}")
        return report
    if not np.isfinite(fw):
        report.add(True, "objective-error", f"objective is not finite at domain point {witness}")

    if objective.grad is not None:
        rng = np.random.default_rng(0)
        probes = witness[None, :] + 0.05 * rng.standard_normal((8, domain.dim))
        analytic = objective.gradient_many(probes)
        numeric = fd_gradient(objective.value_many, probes)
        err = np.linalg.norm(analytic - numeric, axis=1)
        scale = 1.0 + np.linalg.norm(numeric, axis=1)
        worst = float(np.max(err / scale))
        if worst > 1e-4:
            report.add(True, "gradient-mismatch",
                       f"analytic gradient deviates from finite differences (rel err {worst:.2e})")
    return report
