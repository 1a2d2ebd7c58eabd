"""Mean and variance estimators for RSS data, and corrected SRS moments.

The corrected moments come from the piecewise-uniform density that puts
mass 1/n on each interval between consecutive breakpoints built from the
order statistics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateBreakpoints,
    InsufficientCycles,
    InsufficientData,
    InsufficientSetSize,
    InvalidWindow,
)
from .sampling import RankedSetSample, SimpleSample

__all__ = [
    "RssMoments",
    "ParkBreakpoints",
    "rss_mean",
    "stokes_variance",
    "maceachern_variance",
    "rss_moments",
    "park_breakpoints",
    "corrected_moments",
    "stokes_variance_array",
    "maceachern_variance_array",
    "breakpoints_array",
    "corrected_moments_array",
]


@dataclass(frozen=True)
class RssMoments:
    mean: float
    stokes_var: float
    maceachern_var: float | None
    mst: float | None
    mse: float | None
    per_rank_means: np.ndarray


@dataclass(frozen=True)
class ParkBreakpoints:
    eta: np.ndarray
    m: int
    n: int


def stokes_variance_array(x: np.ndarray) -> np.ndarray:
    """Pooled variance with divisor ``rk - 1``; ``x`` has shape ``(..., r, k)``."""
    flat = x.reshape(*x.shape[:-2], -1)
    return flat.var(axis=-1, ddof=1)


def _mst_mse(x: np.ndarray):
    r, k = x.shape[-2:]
    mu = x.mean(axis=(-2, -1), keepdims=True)
    rank_means = x.mean(axis=-2, keepdims=True)
    sst = ((x - mu) ** 2).sum(axis=(-2, -1))
    ssw = ((x - rank_means) ** 2).sum(axis=(-2, -1))
    return (sst - ssw) / (k - 1), ssw / (k * (r - 1))


def maceachern_variance_array(x: np.ndarray) -> np.ndarray:
    r, k = x.shape[-2:]
    mst, mse = _mst_mse(x)
    return ((k - 1) * mst + (r * k - k + 1) * mse) / (r * k)


def rss_mean(rss: RankedSetSample) -> float:
    return float(rss.values.mean())


def stokes_variance(rss: RankedSetSample) -> float:
    if rss.n < 2:
        raise InsufficientData("Stokes variance needs at least 2 values")
    return float(stokes_variance_array(rss.values))


def _check_maceachern(rss: RankedSetSample):
    if rss.k < 2:
        raise InsufficientSetSize("MacEachern variance needs set size k >= 2")
    if rss.r < 2:
        raise InsufficientCycles("MacEachern variance needs r >= 2 cycles")


def maceachern_variance(rss: RankedSetSample) -> float:
    """Unbiased RSS variance built from between-rank and within-rank sums of squares."""
    _check_maceachern(rss)
    return float(maceachern_variance_array(rss.values))


def rss_moments(rss: RankedSetSample) -> RssMoments:
    """All RSS moment estimates at once; MacEachern terms are ``None`` when r < 2."""
    mst = mse = mac = None
    if rss.r >= 2 and rss.k >= 2:
        mst, mse = (float(v) for v in _mst_mse(rss.values))
        mac = maceachern_variance(rss)
    return RssMoments(
        mean=rss_mean(rss),
        stokes_var=stokes_variance(rss),
        maceachern_var=mac,
        mst=mst,
        mse=mse,
        per_rank_means=rss.values.mean(axis=0),
    )


def breakpoints_array(xs: np.ndarray, m: int) -> np.ndarray:
    """Breakpoints eta_1..eta_{n+1} for sorted ``xs`` along the last axis."""
    n = xs.shape[-1]
    cs = np.concatenate([np.zeros(xs.shape[:-1] + (1,)), np.cumsum(xs, axis=-1)], axis=-1)
    # interior i = m+1..n-m+1 (1-based): mean of x_(i-m)..x_(i+m-1)
    i = np.arange(m + 1, n - m + 2)
    interior = (cs[..., i + m - 1] - cs[..., i - m - 1]) / (2 * m)
    x1 = xs[..., :1]
    xn = xs[..., -1:]
    # lower tail: eta_i = eta_{m+1} - sum_{j=i}^{m} (x_(m+j) - x_(1)) / (m+j-1)
    j = np.arange(1, m + 1)
    low_terms = (xs[..., m + j - 1] - x1) / (m + j - 1)
    low_suffix = np.cumsum(low_terms[..., ::-1], axis=-1)[..., ::-1]
    lower = interior[..., :1] - low_suffix
    # upper tail: eta_i = eta_{n-m+1} + sum_{j=n-m+2}^{i} (x_(n) - x_(j-m-1)) / (n+m-j+1)
    j = np.arange(n - m + 2, n + 2)
    up_terms = (xn - xs[..., j - m - 2]) / (n + m - j + 1)
    upper = interior[..., -1:] + np.cumsum(up_terms, axis=-1)
    return np.concatenate([lower, interior, upper], axis=-1)


def corrected_moments_array(eta: np.ndarray):
    """Mean and variance of the piecewise-uniform density on breakpoints ``eta``."""
    n = eta.shape[-1] - 1
    a, b = eta[..., :-1], eta[..., 1:]
    mean = ((a + b) / 2).sum(axis=-1) / n
    # E[X^2] on (a, b) is (a^2 + ab + b^2) / 3
    second = ((a * a + a * b + b * b) / 3).sum(axis=-1) / n
    return mean, second - mean**2


def park_breakpoints(sample, m: int) -> ParkBreakpoints:
    if isinstance(sample, SimpleSample):
        xs = sample.sorted().values
    else:
        xs = np.sort(np.asarray(sample, dtype=float).reshape(-1))
    n = xs.size
    if int(m) != m or m < 1 or n < 2 * m:
        raise InvalidWindow(f"breakpoints need 1 <= m and n >= 2m (n={n}, m={m})")
    eta = breakpoints_array(xs, int(m))
    if np.any(np.diff(eta) < 0):
        raise DegenerateBreakpoints("breakpoints are not monotone (tied data?)")
    return ParkBreakpoints(eta=eta, m=int(m), n=n)


def corrected_moments(bp: ParkBreakpoints) -> tuple[float, float]:
    """Corrected (mean, variance) of the density implied by ``bp``.

    Raises :class:`DegenerateBreakpoints` unless the breakpoints are
    strictly increasing.
    """
    eta = np.asarray(bp.eta if isinstance(bp, ParkBreakpoints) else bp, dtype=float)
    if np.any(np.diff(eta) <= 0):
        raise DegenerateBreakpoints("corrected moments need strictly increasing breakpoints")
    mean, var = corrected_moments_array(eta)
    return float(mean), float(max(var, 0.0))
