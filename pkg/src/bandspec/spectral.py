"""Empirical spectral statistics: ECDF, Shannon transform, moments, distances.

Everything here is a pure function of immutable inputs.  Moments are
available through two routes that the tests hold against each other: via the
eigenvalues, or directly as normalized traces of small powers computed in
band storage without any eigendecomposition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .band_matrix import BandedHermitian, ChannelParams

__all__ = [
    "EmpiricalSpectrum",
    "trace_moment",
    "power_profile",
    "power_profile_sup_diff",
]


@dataclass(frozen=True)
class EmpiricalSpectrum:
    """Sorted eigenvalue sample with distribution-style queries."""

    eigenvalues: np.ndarray

    def __post_init__(self):
        vals = np.sort(np.asarray(self.eigenvalues, dtype=float))
        object.__setattr__(self, "eigenvalues", vals)

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def ecdf(self, x):
        """Right-continuous empirical CDF: fraction of eigenvalues <= x."""
        counts = np.searchsorted(self.eigenvalues, x, side="right")
        return counts / self.n

    def shannon_transform(self, rho: float) -> float:
        """Normalized log-determinant statistic ``mean(log(1 + rho * lam))``
        in natural log units."""
        if rho < 0:
            raise ValueError("rho must be nonnegative")
        return float(np.mean(np.log1p(rho * self.eigenvalues)))

    def moment(self, p: int) -> float:
        """p-th spectral moment ``mean(lam^p)``."""
        if p < 1:
            raise ValueError("moment order must be >= 1")
        return float(np.mean(self.eigenvalues**p))

    def ks_distance(self, cdf) -> float:
        """Kolmogorov-Smirnov distance to a reference CDF callable.

        The supremum over the ECDF jump points compares the reference's value
        at each jump with the post-jump level and its left limit (one ulp
        below) with the pre-jump level, which is exact for continuous
        references and for step references such as another ECDF.
        """
        uniq, counts = np.unique(self.eigenvalues, return_counts=True)
        ranks = np.cumsum(counts)
        hi = ranks / self.n
        lo = (ranks - counts) / self.n
        f_hi = np.asarray(cdf(uniq), dtype=float)
        f_lo = np.asarray(cdf(np.nextafter(uniq, -np.inf)), dtype=float)
        return float(np.maximum(np.abs(f_hi - hi), np.abs(f_lo - lo)).max())

    def scaled(self, factor: float) -> "EmpiricalSpectrum":
        """Spectrum of the matrix scaled by a positive factor."""
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return EmpiricalSpectrum(self.eigenvalues * factor)


def trace_moment(a: BandedHermitian, p: int) -> float:
    """Normalized trace ``trace(A^p) / n`` for p in {1, 2, 3}.

    Works entirely in band storage in O(n * bandwidth^p); higher powers go
    through the eigenvalue route instead.
    """
    n = a.n
    if p == 1:
        return float(a.diag.mean())
    if p == 2:
        return a.frobenius_sq() / n
    if p == 3:
        b = a.bandwidth
        diags = {d: a.diagonal_entries(d) for d in range(-b, b + 1)}
        total = 0.0
        for u in range(-b, b + 1):
            gu = diags[u]
            for v in range(-b, b + 1):
                w = -(u + v)
                if abs(w) > b:
                    continue
                term = gu * _shift(diags[v], u) * _shift(diags[w], u + v)
                total += term.sum().real
        return total / n
    raise ValueError("trace_moment supports p in {1, 2, 3}")


def _shift(g: np.ndarray, s: int) -> np.ndarray:
    """out[i] = g[i + s], zero outside the index range."""
    if s == 0:
        return g
    out = np.zeros_like(g)
    if s > 0:
        out[:-s] = g[s:]
    else:
        out[-s:] = g[:s]
    return out


def power_profile(
    params: ChannelParams, n_rows: int | None = None, n_cols: int | None = None
) -> np.ndarray:
    """Expected squared-magnitude profile of the channel on the unit square.

    The profile is the piecewise-constant function that assigns cell
    ``(i, j)`` of the ``N x N*K`` matrix the exact ensemble value
    ``gain^2 * E|h|^2`` of whichever diagonal covers it (zero elsewhere);
    no sampling is involved.  It is returned sampled at the cell centers of
    an ``n_rows x n_cols`` grid, which is exact whenever the grid refines
    the matrix cells (n_rows a multiple of N, n_cols a multiple of N*K).
    """
    n, k = params.n_cells, params.users_per_cell
    if n_rows is None:
        n_rows = n
    if n_cols is None:
        n_cols = n * k
    r = (np.arange(n_rows) + 0.5) / n_rows
    t = (np.arange(n_cols) + 0.5) / n_cols
    i = np.minimum((r * n).astype(int), n - 1)
    j = np.minimum((t * n * k).astype(int), n * k - 1)
    block = j // k
    d = block[None, :] - i[:, None]
    out = np.zeros((n_rows, n_cols))
    for spec in params.diagonals:
        mass = spec.gain**2 * spec.fading.amplitude_moment(2)
        out += np.where(d == spec.offset, mass, 0.0)
    return out


def power_profile_sup_diff(pa: ChannelParams, pb: ChannelParams) -> float:
    """Sup-cell difference of two profiles on their common grid refinement.

    Both profiles are evaluated exactly on the finest grid that both matrix
    cell partitions refine; the result is the exact supremum of the absolute
    difference of the two piecewise-constant functions.
    """
    if pa.users_per_cell != pb.users_per_cell:
        raise ValueError("profiles must share users_per_cell")
    rows = math.lcm(pa.n_cells, pb.n_cells)
    cols = rows * pa.users_per_cell
    grid_a = power_profile(pa, rows, cols)
    grid_b = power_profile(pb, rows, cols)
    return float(np.abs(grid_a - grid_b).max())
