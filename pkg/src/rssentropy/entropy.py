"""Spacings-based entropy estimators for SRS and RSS data.

The ``*_array`` functions work on the last axis of already sorted arrays
and return ``nan`` where a window spacing is not positive; the Monte Carlo
driver uses them directly.  The scalar front ends validate their input and
raise instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpacing, InsufficientData, InvalidWindow
from .sampling import RankedSetSample, SimpleSample

__all__ = [
    "EntropyEstimate",
    "check_window",
    "ebrahimi_weights",
    "vasicek",
    "ebrahimi",
    "h1",
    "h2",
    "vasicek_array",
    "ebrahimi_array",
    "h2_array",
]


@dataclass(frozen=True)
class EntropyEstimate:
    value: float
    estimator: str
    n: int
    m: int

    def __float__(self):
        return self.value


def check_window(m: int, size: int) -> int:
    """Validate ``1 <= m <= size // 2`` for an ordered (sub)sample of ``size``."""
    if size < 2:
        raise InsufficientData(f"need at least 2 observations, got {size}")
    if int(m) != m or not 1 <= m <= size // 2:
        raise InvalidWindow(f"window m={m} outside 1..{size // 2} for size {size}")
    return int(m)


def ebrahimi_weights(n: int, m: int) -> np.ndarray:
    """Boundary weights c_1..c_n: 1 + (i-1)/m, then 2, then 1 + (n-i)/m."""
    i = np.arange(1, n + 1)
    c = np.full(n, 2.0)
    lo = i <= m
    hi = i >= n - m + 1
    c[lo] = 1 + (i[lo] - 1) / m
    c[hi] = 1 + (n - i[hi]) / m
    return c


def _spacings(xs: np.ndarray, m: int) -> np.ndarray:
    n = xs.shape[-1]
    i = np.arange(n)
    return xs[..., np.minimum(i + m, n - 1)] - xs[..., np.maximum(i - m, 0)]


def _log_terms(xs: np.ndarray, scale: np.ndarray) -> np.ndarray:
    # scale already holds n / (c_i m); non-positive spacings become nan
    with np.errstate(divide="ignore", invalid="ignore"):
        d = scale * xs
        return np.where(d > 0, np.log(np.where(d > 0, d, 1.0)), np.nan)


def vasicek_array(xs: np.ndarray, m: int) -> np.ndarray:
    n = xs.shape[-1]
    return _log_terms(_spacings(xs, m), np.full(n, n / (2.0 * m))).mean(axis=-1)


def ebrahimi_array(xs: np.ndarray, m: int) -> np.ndarray:
    n = xs.shape[-1]
    return _log_terms(_spacings(xs, m), n / (ebrahimi_weights(n, m) * m)).mean(axis=-1)


def h2_array(cycles: np.ndarray, m: int) -> np.ndarray:
    """Per-cycle estimator on ``cycles`` of shape ``(..., r, k)``, each row sorted."""
    return ebrahimi_array(cycles, m).mean(axis=-1)


def _sorted_values(sample) -> np.ndarray:
    if isinstance(sample, SimpleSample):
        return sample.sorted().values
    return np.sort(np.asarray(sample, dtype=float).reshape(-1))


def _finish(value: float, estimator: str, n: int, m: int) -> EntropyEstimate:
    if not np.isfinite(value):
        raise DegenerateSpacing(
            f"{estimator}: a window of half-width m={m} spans tied values; "
            "spacings-based estimates need distinct data"
        )
    return EntropyEstimate(float(value), estimator, n, m)


def vasicek(sample, m: int) -> EntropyEstimate:
    """Vasicek's sample-spacings estimate of differential entropy (nats).

    Parameters
    ----------
    sample : SimpleSample or array_like
        Observations; sorted internally if needed.
    m : int
        Window half-width, ``1 <= m <= n // 2``.
    """
    xs = _sorted_values(sample)
    m = check_window(m, xs.size)
    return _finish(vasicek_array(xs, m), "vasicek", xs.size, m)


def ebrahimi(sample, m: int) -> EntropyEstimate:
    """Vasicek's estimate with Ebrahimi's boundary-corrected weights."""
    xs = _sorted_values(sample)
    m = check_window(m, xs.size)
    return _finish(ebrahimi_array(xs, m), "ebrahimi", xs.size, m)


def h1(rss: RankedSetSample, m: int) -> EntropyEstimate:
    """RSS estimator on the pooled, fully ordered sample of size ``r * k``."""
    xs = np.sort(rss.values, axis=None)
    m = check_window(m, xs.size)
    return _finish(ebrahimi_array(xs, m), "h1", xs.size, m)


def h2(rss: RankedSetSample, m: int) -> EntropyEstimate:
    """RSS estimator that orders each cycle separately and averages over cycles."""
    m = check_window(m, rss.k)
    value = h2_array(np.sort(rss.values, axis=1), m)
    return _finish(value, "h2", rss.n, m)
