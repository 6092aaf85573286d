"""Optimal-transport lab: discrete, semi-discrete, and entropic solvers.

Submodules
----------
geometry      convex regions, clipping, quadrature, power cells
measures      discrete / density measures and Voronoi discretization
lp_transport  transportation LP: network simplex, Sinkhorn, rounding
semidiscrete  Laguerre decompositions and the semi-discrete dual solver
plans         plan functionals: projections, gluing, stability bounds
testproblems  analytic transport problems with known maps and distances
harness       convergence studies, rate fits, CSV/JSON reports
"""

from . import geometry, harness, lp_transport, measures, plans, semidiscrete, testproblems

__all__ = [
    "geometry",
    "measures",
    "lp_transport",
    "semidiscrete",
    "plans",
    "testproblems",
    "harness",
]
