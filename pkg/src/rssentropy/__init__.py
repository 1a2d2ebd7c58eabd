"""Entropy estimation and Kullback-Leibler goodness-of-fit tests under
simple random and ranked set sampling."""

from .distributions import Distribution, parse_distribution
from .entropy import EntropyEstimate, ebrahimi, h1, h2, vasicek
from .errors import RssEntropyError
from .gof import GofStatistic, decide, exp_statistic_rss, exp_statistic_srs, kl1, kl2, norm_statistic_srs
from .moments import corrected_moments, maceachern_variance, park_breakpoints, rss_mean, stokes_variance
from .montecarlo import MonteCarloConfig, MonteCarloReport
from .sampling import RankedSetSample, SimpleSample, draw_rss, draw_srs, pool_and_sort, sort_within_cycles

__version__ = "0.1.0"

__all__ = [
    "Distribution",
    "parse_distribution",
    "EntropyEstimate",
    "ebrahimi",
    "h1",
    "h2",
    "vasicek",
    "RssEntropyError",
    "GofStatistic",
    "decide",
    "exp_statistic_rss",
    "exp_statistic_srs",
    "kl1",
    "kl2",
    "norm_statistic_srs",
    "corrected_moments",
    "maceachern_variance",
    "park_breakpoints",
    "rss_mean",
    "stokes_variance",
    "MonteCarloConfig",
    "MonteCarloReport",
    "RankedSetSample",
    "SimpleSample",
    "draw_rss",
    "draw_srs",
    "pool_and_sort",
    "sort_within_cycles",
]
