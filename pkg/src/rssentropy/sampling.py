"""Simple random and balanced ranked set samples (perfect ranking)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .distributions import Distribution
from .errors import ConfigError
from .streams import RandomStream

__all__ = [
    "SimpleSample",
    "RankedSetSample",
    "draw_srs",
    "draw_rss",
    "draw_rss_batch",
    "pool_and_sort",
    "sort_within_cycles",
]


@dataclass(frozen=True)
class SimpleSample:
    values: np.ndarray
    sorted_flag: bool = False

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if values.size < 1:
            raise ConfigError("a sample needs at least one value")
        if self.sorted_flag and np.any(np.diff(values) < 0):
            raise ConfigError("sorted_flag set on non-monotone values")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.size

    def sorted(self) -> SimpleSample:
        if self.sorted_flag:
            return self
        return SimpleSample(np.sort(self.values), sorted_flag=True)

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class RankedSetSample:
    """Balanced RSS data: ``values[i, j]`` is the rank-``j`` unit of cycle ``i``."""

    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values[np.newaxis, :]
        if values.ndim != 2 or values.size == 0:
            raise ConfigError("RSS values must be a non-empty r x k matrix")
        if not np.all(np.isfinite(values)):
            raise ConfigError("RSS values must be finite")
        object.__setattr__(self, "values", values)

    @property
    def r(self) -> int:
        return self.values.shape[0]

    @property
    def k(self) -> int:
        return self.values.shape[1]

    @property
    def n(self) -> int:
        return self.values.size

    def __repr__(self):
        return f"RankedSetSample(r={self.r}, k={self.k})"


def draw_srs(dist: Distribution, n: int, rng: RandomStream) -> SimpleSample:
    if n < 1:
        raise ConfigError("n must be >= 1")
    return SimpleSample(dist.rvs(rng, n))


def draw_rss_batch(
    dist: Distribution,
    k: int,
    r: int,
    reps: int,
    rng: RandomStream,
    method: str = "sort",
) -> np.ndarray:
    """Generate ``reps`` RSS datasets at once, shape ``(reps, r, k)``.

    ``method="sort"`` draws k sets of k units per cycle, sorts each set and
    keeps the diagonal.  ``method="beta"`` draws the j-th order statistic
    directly as ``F^-1(U)`` with ``U ~ Beta(j, k - j + 1)``.
    """
    if k < 2 or r < 1:
        raise ConfigError("RSS needs k >= 2 and r >= 1")
    if method == "sort":
        sets = np.sort(dist.rvs(rng, (reps, r, k, k)), axis=-1)
        idx = np.arange(k)
        return sets[..., idx, idx]
    if method == "beta":
        j = np.arange(1, k + 1)
        u = rng.beta(j, k - j + 1, size=(reps, r, k))
        return dist.to_scipy().ppf(u)
    raise ConfigError(f"unknown RSS generation method {method!r}")


def draw_rss(
    dist: Distribution, k: int, r: int, rng: RandomStream, method: str = "sort"
) -> RankedSetSample:
    """One balanced RSS dataset with ``r`` cycles of set size ``k``."""
    return RankedSetSample(draw_rss_batch(dist, k, r, 1, rng, method)[0])


def pool_and_sort(rss: RankedSetSample) -> SimpleSample:
    return SimpleSample(np.sort(rss.values, axis=None), sorted_flag=True)


def sort_within_cycles(rss: RankedSetSample) -> list[SimpleSample]:
    return [SimpleSample(row, sorted_flag=True) for row in np.sort(rss.values, axis=1)]
