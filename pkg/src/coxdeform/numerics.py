"""Numerical rank with an explicit tolerance policy, plus finite differences.

Rank decisions drive every conclusion drawn from the Jacobians, so the policy
is never implicit: the full spectrum, the threshold actually used, and the
spectral gap at the cut are always reported.  A small gap marks the decision
as uncertain instead of silently picking a side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RankPolicy:
    """Threshold = max(shape) * sigma_max * rel_tol; gap ratios below
    ``gap_threshold`` flag the rank as uncertain."""

    rel_tol: float = 1e-12
    gap_threshold: float = 1e3

    def threshold(self, shape, sigma_max):
        return max(shape) * sigma_max * self.rel_tol


DEFAULT_RANK_POLICY = RankPolicy()


@dataclass
class RankResult:
    rank: int
    singular_values: np.ndarray
    threshold: float
    gap: float
    uncertain: bool

    def kernel_dimension(self, ncols):
        return ncols - self.rank


def numerical_rank(M, policy=DEFAULT_RANK_POLICY):
    """Numerical rank of a matrix from its full singular spectrum."""
    M = np.asarray(M, dtype=float)
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    if M.size == 0:
        return RankResult(0, np.zeros(0), 0.0, np.inf, False)
    s = np.linalg.svd(M, compute_uv=False)
    smax = s[0] if len(s) else 0.0
    tau = policy.threshold(M.shape, smax)
    rank = int(np.sum(s > tau))
    if rank == 0 or rank == len(s) or s[rank] == 0.0:
        gap = np.inf
    else:
        gap = s[rank - 1] / s[rank]
    uncertain = gap < policy.gap_threshold
    return RankResult(rank, s, tau, gap, uncertain)


def finite_difference_jacobian(func, x, step=1e-6):
    """Central-difference Jacobian of ``func`` at ``x`` (both 1-d arrays)."""
    x = np.asarray(x, dtype=float)
    f0 = np.asarray(func(x), dtype=float)
    J = np.zeros((f0.size, x.size))
    for j in range(x.size):
        xp, xm = x.copy(), x.copy()
        xp[j] += step
        xm[j] -= step
        J[:, j] = (np.asarray(func(xp)) - np.asarray(func(xm))) / (2 * step)
    return J
