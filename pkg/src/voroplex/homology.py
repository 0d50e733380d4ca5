"""Z/2 persistent homology of a sorted filtered complex.

Standard boundary-matrix column reduction with the clearing optimization:
dimensions are processed top-down, and every simplex that was paired as a
birth by a higher-dimensional death is skipped (its column would reduce to
zero anyway).  Columns are stored as Python integer bitmasks, so the
symmetric-difference merge is a single XOR and the pivot is bit_length - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

__all__ = ["PersistenceDiagram", "OrderViolation", "reduce", "persistent_betti"]


class OrderViolation(ValueError):
    """A coface preceded one of its faces in the input order."""


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of (dimension, birth, death) points; death is math.inf for
    essential classes.  Zero-persistence pairs (birth == death) are kept in
    ``zero_pairs`` and excluded from ``points``."""

    points: Tuple[Tuple[int, float, float], ...] = ()
    zero_pairs: Tuple[Tuple[int, float], ...] = ()

    def in_dim(self, k: int) -> List[Tuple[float, float]]:
        return [(b, d) for dim, b, d in self.points if dim == k]

    def max_dim(self) -> int:
        return max((dim for dim, _, _ in self.points), default=-1)


def reduce(sorted_simplices: Sequence[Tuple[Tuple[int, ...], float]]) -> PersistenceDiagram:
    """Reduce a face-precedence-ordered filtration to its persistence diagram.

    Raises OrderViolation if any facet appears after (or not at all before)
    its coface.
    """
    index: Dict[Tuple[int, ...], int] = {}
    values: List[float] = []
    dims: List[int] = []
    boundary: List[int] = []
    for pos, (simplex, value) in enumerate(sorted_simplices):
        simplex = tuple(simplex)
        col = 0
        if len(simplex) > 1:
            for facet in combinations(simplex, len(simplex) - 1):
                fpos = index.get(facet)
                if fpos is None:
                    raise OrderViolation(f"facet {facet} of {simplex} does not precede it")
                col ^= 1 << fpos
        index[simplex] = pos
        values.append(float(value))
        dims.append(len(simplex) - 1)
        boundary.append(col)

    n = len(values)
    top = max(dims, default=0)
    cleared = bytearray(n)
    reduced: Dict[int, int] = {}
    pairs: List[Tuple[int, int]] = []
    for dim in range(top, 0, -1):
        pivot: Dict[int, int] = {}
        for j in range(n):
            if dims[j] != dim or cleared[j]:
                continue
            col = boundary[j]
            while col:
                low = col.bit_length() - 1
                other = pivot.get(low)
                if other is None:
                    break
                col ^= reduced[other]
            if col:
                low = col.bit_length() - 1
                reduced[j] = col
                pivot[low] = j
                pairs.append((low, j))
                cleared[low] = 1

    paired = set()
    points: List[Tuple[int, float, float]] = []
    zero_pairs: List[Tuple[int, float]] = []
    for i, j in pairs:
        paired.add(i)
        paired.add(j)
        if values[j] > values[i]:
            points.append((dims[i], values[i], values[j]))
        else:
            zero_pairs.append((dims[i], values[i]))
    for i in range(n):
        if i not in paired:
            points.append((dims[i], values[i], math.inf))
    points.sort(key=lambda p: (p[0], p[1], p[2]))
    zero_pairs.sort()
    return PersistenceDiagram(tuple(points), tuple(zero_pairs))


def persistent_betti(diagram: PersistenceDiagram, k: int, a: float, b: float) -> int:
    """Number of dimension-k classes born by a and still alive strictly after b
    (so persistent_betti(k, a, a) is the ordinary Betti number at level a)."""
    if a > b:
        raise ValueError(f"require a <= b, got a={a}, b={b}")
    return sum(1 for dim, birth, death in diagram.points if dim == k and birth <= a and death > b)
