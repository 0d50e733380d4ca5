"""Sublevel-set persistent homology of a function on a convex domain, computed
through a landmark-indexed filtered complex: ordered higher-order Voronoi cells
decide which simplices exist, and constrained minimization of the function over
those cells assigns filtration values."""

from .geometry import ConvexDomain, LandmarkSet, Objective, ToleranceConfig, validate
from .linprog import ConstraintSystem, LpResult, SolverStalled, max_slack_point, solve_lp

__version__ = "0.1.0"
