"""Kullback-Leibler goodness-of-fit statistics for exponentiality and normality.

Each statistic is a plug-in estimate of the KL divergence between the data
and the fitted null family, ``-H + (cross entropy under the fitted null)``,
so large values are evidence against the null.  ``variant`` names:

``tc``
    SRS baseline using the corrected moments and the Ebrahimi entropy.
``kl1``
    RSS mean and the Stokes pooled variance.
``kl2``
    RSS mean and the MacEachern variance (normality only, needs r >= 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import entropy as ent
from .distributions import Distribution, exponential, normal
from .errors import (
    ConfigError,
    DegenerateVariance,
    InsufficientCycles,
    InvalidScale,
    KeyMismatch,
)
from .moments import (
    corrected_moments,
    maceachern_variance,
    park_breakpoints,
    stokes_variance,
)
from .sampling import RankedSetSample, SimpleSample

__all__ = [
    "TESTS",
    "GofStatistic",
    "null_distribution",
    "check_variant",
    "exp_statistic_srs",
    "exp_statistic_rss",
    "norm_statistic_srs",
    "kl1",
    "kl2",
    "i_mn",
    "k_mn",
    "compute_statistic",
    "decide",
]

TESTS = ("exp", "norm")
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


@dataclass(frozen=True)
class GofStatistic:
    test: str
    scheme: str
    variant: str
    value: float
    n: int
    m: int
    entropy: str
    k: int
    r: int

    def __float__(self):
        return self.value


def null_distribution(test: str) -> Distribution:
    """Exp(1) or N(0, 1); every statistic here is invariant to the nuisance parameters."""
    if test == "exp":
        return exponential(1.0)
    if test == "norm":
        return normal(0.0, 1.0)
    raise ConfigError(f"unknown test {test!r}; expected one of {TESTS}")


def check_variant(test: str, variant: str) -> str:
    """Return the scheme ('srs' or 'rss') a (test, variant) pair runs under."""
    if test not in TESTS:
        raise ConfigError(f"unknown test {test!r}")
    if variant == "tc":
        return "srs"
    if variant == "kl1" or (variant == "kl2" and test == "norm"):
        return "rss"
    raise ConfigError(f"variant {variant!r} is not defined for test {test!r}")


def _rss_entropy(rss: RankedSetSample, m: int, entropy: str) -> float:
    if entropy == "h1":
        return ent.h1(rss, m).value
    if entropy == "h2":
        return ent.h2(rss, m).value
    raise ConfigError(f"unknown RSS entropy estimator {entropy!r}")


def _as_sample(sample) -> SimpleSample:
    if isinstance(sample, SimpleSample):
        return sample.sorted()
    return SimpleSample(np.sort(np.asarray(sample, dtype=float).reshape(-1)), sorted_flag=True)


def _log_scale(scale: float) -> float:
    if not scale > 0:
        raise InvalidScale(f"estimated mean {scale:g} is not positive")
    return math.log(scale)


def _log_sd(var: float) -> float:
    if not var > 0:
        raise DegenerateVariance(f"estimated variance {var:g} is not positive")
    return 0.5 * math.log(var)


def exp_statistic_srs(sample, m: int) -> GofStatistic:
    """``1 + log(corrected mean) - H_c`` on a simple random sample."""
    s = _as_sample(sample)
    h = ent.ebrahimi(s, m).value
    mean, _ = corrected_moments(park_breakpoints(s, m))
    value = 1.0 + _log_scale(mean) - h
    return GofStatistic("exp", "srs", "tc", value, s.n, m, "ebrahimi", s.n, 1)


def exp_statistic_rss(rss: RankedSetSample, m: int, entropy: str = "h1") -> GofStatistic:
    """``1 + log(RSS mean) - H`` with H the pooled (default) or per-cycle estimator."""
    log_mean = _log_scale(rss.values.mean())
    value = 1.0 + log_mean - _rss_entropy(rss, m, entropy)
    return GofStatistic("exp", "rss", "kl1", value, rss.n, m, entropy, rss.k, rss.r)


def norm_statistic_srs(sample, m: int) -> GofStatistic:
    s = _as_sample(sample)
    h = ent.ebrahimi(s, m).value
    _, var = corrected_moments(park_breakpoints(s, m))
    value = _HALF_LOG_2PI + _log_sd(var) + 0.5 - h
    return GofStatistic("norm", "srs", "tc", value, s.n, m, "ebrahimi", s.n, 1)


def kl1(rss: RankedSetSample, m: int, entropy: str = "h1") -> GofStatistic:
    """Normality statistic with the Stokes variance."""
    log_sd = _log_sd(stokes_variance(rss))
    value = _HALF_LOG_2PI + log_sd + 0.5 - _rss_entropy(rss, m, entropy)
    return GofStatistic("norm", "rss", "kl1", value, rss.n, m, entropy, rss.k, rss.r)


def kl2(rss: RankedSetSample, m: int, entropy: str = "h1") -> GofStatistic:
    """Normality statistic with the MacEachern variance.

    The quadratic term is not identically 1/2 here because the variance
    estimate is not the pooled mean square.
    """
    if rss.r < 2:
        raise InsufficientCycles("kl2 needs r >= 2 cycles for the MacEachern variance")
    var = maceachern_variance(rss)
    log_sd = _log_sd(var)
    x = rss.values
    quad = ((x - x.mean()) ** 2).sum() / (2 * rss.n * var)
    value = _HALF_LOG_2PI + log_sd + quad - _rss_entropy(rss, m, entropy)
    return GofStatistic("norm", "rss", "kl2", float(value), rss.n, m, entropy, rss.k, rss.r)


def i_mn(sample, m: int, mu: float, sigma: float) -> float:
    """KL estimate against N(mu, sigma^2) with known parameters (Vasicek entropy)."""
    s = _as_sample(sample)
    h = ent.vasicek(s, m).value
    quad = (((s.values - mu) / sigma) ** 2).sum() / (2 * s.n)
    return _HALF_LOG_2PI + math.log(sigma) + quad - h


def k_mn(rss: RankedSetSample, m: int, mu: float, sigma: float, entropy: str = "h1") -> float:
    """RSS analogue of :func:`i_mn`."""
    h = _rss_entropy(rss, m, entropy)
    quad = (((rss.values - mu) / sigma) ** 2).sum() / (2 * rss.n)
    return _HALF_LOG_2PI + math.log(sigma) + quad - h


def compute_statistic(test: str, variant: str, data, m: int, entropy: str = "h1") -> GofStatistic:
    """Dispatch on (test, variant); ``data`` is a sample for ``tc`` and RSS otherwise."""
    scheme = check_variant(test, variant)
    if scheme == "srs":
        if isinstance(data, RankedSetSample):
            data = data.values.reshape(-1)
        return exp_statistic_srs(data, m) if test == "exp" else norm_statistic_srs(data, m)
    if not isinstance(data, RankedSetSample):
        data = RankedSetSample(data)
    if test == "exp":
        return exp_statistic_rss(data, m, entropy)
    if variant == "kl1":
        return kl1(data, m, entropy)
    return kl2(data, m, entropy)


def decide(stat: GofStatistic, critical) -> bool:
    """True (reject the null) iff the statistic exceeds the critical value.

    ``critical`` is either a plain number or a stored entry with a ``key``;
    entries calibrated for another (test, variant, k, r, m, estimator) raise
    :class:`KeyMismatch`.
    """
    key = getattr(critical, "key", None)
    if key is not None:
        expected = (stat.test, stat.variant, stat.entropy, stat.k, stat.r, stat.m)
        got = (key.test, key.variant, key.estimator, key.k, key.r, key.m)
        if expected != got:
            raise KeyMismatch(f"critical value calibrated for {got}, statistic is {expected}")
        critical = critical.value
    return bool(stat.value > float(critical))
