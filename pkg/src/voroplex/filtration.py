"""Enumeration of the landmark complex and assignment of filtration values.

A simplex enters the complex iff every ordering of its vertices yields a
nonempty ordered Voronoi cell inside the domain; its filtration value is the
largest, over orderings, of the infimum of the objective on that ordering's
cell.  Candidates are generated level-wise (all facets must already be
admitted — cell feasibility is antitone in ordering length, so this prunes
soundly), orderings are checked lexicographically with an early exit, and
values are monotonized upward after assignment to absorb optimizer noise.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .cells import BisectorCache, _cell_rows, cell_nonempty
from .geometry import ConvexDomain, LandmarkSet, Objective, ToleranceConfig
from .linprog import ConstraintSystem
from .minimize import (
    DEFAULT_TRUST_RADIUS,
    POSSIBLY_UNBOUNDED,
    infimum_status,
    minimize_over_cell,
)
from .seeding import subseed

__all__ = ["FilteredComplex", "ComplexBuildError", "build_complex", "sorted_filtration"]

Simplex = Tuple[int, ...]


class ComplexBuildError(RuntimeError):
    """Wraps optimizer/LP failures with the offending simplex and ordering."""


@dataclass
class FilteredComplex:
    """Simplices (sorted index tuples) with filtration values and an
    unbounded-clamp flag; closed under faces, values monotone face-to-coface."""

    simplices: Dict[Simplex, Tuple[float, bool]] = field(default_factory=dict)
    max_dim: int = 0
    n_landmarks: int = 0

    def value(self, simplex) -> float:
        return self.simplices[tuple(simplex)][0]

    def flagged(self, simplex) -> bool:
        return self.simplices[tuple(simplex)][1]

    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def of_dim(self, k: int) -> List[Simplex]:
        return sorted(s for s in self.simplices if len(s) == k + 1)

    def dims(self) -> Iterator[int]:
        return iter(range(self.max_dim + 1))

    def check_valid(self, atol: float = 0.0) -> None:
        for simplex, (value, _) in self.simplices.items():
            if list(simplex) != sorted(set(simplex)):
                raise AssertionError(f"simplex {simplex} is not a sorted index tuple")
            if len(simplex) > 1:
                for facet in combinations(simplex, len(simplex) - 1):
                    if facet not in self.simplices:
                        raise AssertionError(f"{simplex} present but facet {facet} missing")
                    if self.simplices[facet][0] > value + atol:
                        raise AssertionError(
                            f"monotonicity violated: f{facet}={self.simplices[facet][0]} "
                            f"> f{simplex}={value}"
                        )


def _facet_stats(entries: Dict[Simplex, Tuple[float, bool]], simplex: Simplex) -> Tuple[float, bool]:
    """Max facet value and whether a facet attaining it is flagged."""
    best = -np.inf
    flagged = False
    for facet in combinations(simplex, len(simplex) - 1):
        v, fl = entries[facet]
        if v > best:
            best, flagged = v, fl
        elif v == best and fl:
            flagged = True
    return best, flagged


def build_complex(
    landmarks: LandmarkSet,
    domain: ConvexDomain,
    objective: Objective,
    tol: ToleranceConfig = ToleranceConfig(),
    rng_seed: int = 0,
    trust_radius: float = DEFAULT_TRUST_RADIUS,
    slack_stop: Optional[float] = None,
    progress: bool = False,
) -> FilteredComplex:
    """Build the filtered landmark complex up to ``tol.max_dim`` (default: the
    ambient dimension).

    ``rng_seed`` is fanned out deterministically per ordering, so results do
    not depend on enumeration order.  ``slack_stop`` optionally lets the
    feasibility LPs stop at the first witness with that much slack instead of
    the exact max-slack point (faster, slightly worse optimizer seeds).
    """
    cache = BisectorCache(landmarks)
    n, d = landmarks.n, landmarks.dim
    if domain.dim != d:
        raise ValueError(f"domain dim {domain.dim} != landmark dim {d}")
    max_dim = tol.max_dim if tol.max_dim is not None else d
    dom_a, dom_b = domain.inequality_rows()
    dom_e, dom_c = domain.equality_rows()

    def cell_system(order: Simplex) -> ConstraintSystem:
        a, b = _cell_rows(order, cache)
        if dom_a.size:
            a = np.vstack([a, dom_a]) if a.size else dom_a
            b = np.concatenate([b, dom_b])
        return ConstraintSystem(d, a, b, dom_e, dom_c)

    def assign_value(simplex: Simplex, witnesses, base: float) -> Tuple[float, bool]:
        """Max over orderings of the cell infimum, skipping orderings whose
        witness value already cannot raise the running max (the infimum over a
        cell never exceeds the objective at any of its points)."""
        pts = np.array([w for _, w in witnesses])
        try:
            f_wit = np.asarray(objective.value_many(pts), dtype=float)
        except Exception as exc:  # noqa: BLE001
            raise ComplexBuildError(f"objective failed on witnesses of simplex {simplex}") from exc
        best = base
        flagged = False
        for t in np.argsort(-f_wit, kind="stable"):
            if f_wit[t] <= best:
                continue
            order, wit = witnesses[t]
            system = cell_system(order)
            seed = subseed(rng_seed, "minimize", order)
            try:
                res = minimize_over_cell(
                    objective,
                    system,
                    tol,
                    rng_seed=seed,
                    witness=wit,
                    trust_radius=trust_radius,
                    stop_below=best,
                )
                if res.value > best:
                    if objective.lower_bound is None:
                        status = infimum_status(
                            objective, system, tol, result=res, trust_radius=trust_radius
                        )
                        if status == POSSIBLY_UNBOUNDED:
                            flagged = True
                    best = res.value
            except Exception as exc:  # noqa: BLE001
                raise ComplexBuildError(f"simplex {simplex}, ordering {order}") from exc
        return best, flagged

    entries: Dict[Simplex, Tuple[float, bool]] = {}

    vertices: List[int] = []
    for i in range(n):
        simplex = (i,)
        try:
            ok, wit = cell_nonempty(cell_system(simplex), tol, stop_at=slack_stop)
        except Exception as exc:  # noqa: BLE001
            raise ComplexBuildError(f"simplex {simplex}, ordering {simplex}") from exc
        if ok:
            entries[simplex] = assign_value(simplex, [(simplex, wit)], -np.inf)
            vertices.append(i)
    if progress:
        print(f"[build] dim 0: {len(vertices)}/{n} vertices admitted", file=sys.stderr)

    prev = [(i,) for i in vertices]
    top_dim = 0
    for k in range(1, max_dim + 1):
        admitted_set = set(prev)
        level: List[Simplex] = []
        for s in prev:
            for v in vertices:
                if v <= s[-1]:
                    continue
                cand = s + (v,)
                if any(f not in admitted_set for f in combinations(cand, k)):
                    continue
                witnesses = []
                ok = True
                for order in permutations(cand):  # lexicographic: cand is sorted
                    try:
                        nonempty, wit = cell_nonempty(cell_system(order), tol, stop_at=slack_stop)
                    except Exception as exc:  # noqa: BLE001
                        raise ComplexBuildError(f"simplex {cand}, ordering {order}") from exc
                    if not nonempty:
                        ok = False
                        break
                    witnesses.append((order, wit))
                if not ok:
                    continue
                base, base_flag = _facet_stats(entries, cand)
                value, own_flag = assign_value(cand, witnesses, base)
                flagged = own_flag or (value == base and base_flag)
                entries[cand] = (value, flagged)
                level.append(cand)
        if progress:
            print(f"[build] dim {k}: {len(level)} simplices admitted", file=sys.stderr)
        if not level:
            break
        top_dim = k
        prev = level

    return FilteredComplex(entries, max_dim=max(top_dim, 0), n_landmarks=n)


def sorted_filtration(complex_: FilteredComplex) -> List[Tuple[Simplex, float]]:
    """Simplices sorted by (value, dimension, lexicographic indices); with
    monotone values this puts every face before every coface."""
    items = sorted(complex_.simplices.items(), key=lambda kv: (kv[1][0], len(kv[0]), kv[0]))
    return [(s, v) for s, (v, _) in items]
