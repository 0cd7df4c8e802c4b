"""Numerical laboratory for the generalized Hardy function.

Regularized Dirichlet sums, the binomial-series decomposition, Gram
points of three kinds, zero hunting and Lehmer/Gordon pair analysis,
with an independent Euler-Maclaurin zeta oracle for cross-checks.
"""

__version__ = "0.1.0"
