"""Null and alternative distributions used throughout the simulations.

Gamma, Weibull and lognormal have unit scale (zero log-mean for the
lognormal), exactly the parameterisations used in the power studies.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import ConfigError, UnsupportedDistribution
from .streams import RandomStream

__all__ = [
    "Distribution",
    "uniform",
    "exponential",
    "normal",
    "gamma",
    "weibull",
    "lognormal",
    "chisquare",
    "student_t",
    "parse_distribution",
    "pdf",
    "sample",
    "true_entropy",
]

_KINDS = {
    # kind: (parameter names, defaults)
    "uniform": ((), ()),
    "exponential": (("rate",), (1.0,)),
    "normal": (("mean", "sd"), (0.0, 1.0)),
    "gamma": (("shape",), None),
    "weibull": (("shape",), None),
    "lognormal": (("sigma",), None),
    "chisquare": (("df",), None),
    "t": (("df",), None),
}

_ALIASES = {
    "uniform": "uniform",
    "u": "uniform",
    "unif": "uniform",
    "exp": "exponential",
    "e": "exponential",
    "exponential": "exponential",
    "normal": "normal",
    "norm": "normal",
    "n": "normal",
    "gamma": "gamma",
    "weibull": "weibull",
    "lognormal": "lognormal",
    "lognorm": "lognormal",
    "chisq": "chisquare",
    "chi2": "chisquare",
    "chisquare": "chisquare",
    "t": "t",
    "student_t": "t",
}


@dataclass(frozen=True)
class Distribution:
    """A named continuous law with fixed parameters.

    Use the module-level constructors (:func:`gamma`, :func:`student_t`,
    ...) or :func:`parse_distribution` rather than building this directly.
    """

    kind: str
    params: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise UnsupportedDistribution(f"unknown distribution kind {self.kind!r}")
        names, defaults = _KINDS[self.kind]
        params = tuple(float(p) for p in self.params)
        if not params and defaults:
            params = defaults
        if len(params) != len(names):
            raise ConfigError(
                f"{self.kind} takes {len(names)} parameter(s) {names}, got {len(params)}"
            )
        object.__setattr__(self, "params", params)
        for name, value in zip(names, params):
            if name == "mean":
                if not math.isfinite(value):
                    raise ConfigError("normal mean must be finite")
            elif not (value > 0 and math.isfinite(value)):
                raise ConfigError(f"{self.kind} {name} must be positive, got {value}")
        if self.kind in ("chisquare", "t") and not params[0].is_integer():
            raise ConfigError(f"{self.kind} degrees of freedom must be an integer")
        if self.kind == "t" and params[0] <= 2:
            raise ConfigError("t distribution requires df > 2")

    @property
    def name(self) -> str:
        """Canonical ``name(params)`` label, parseable by :func:`parse_distribution`."""
        if not self.params:
            return self.kind
        return f"{self.kind}({','.join(f'{p:g}' for p in self.params)})"

    def __str__(self):
        return self.name

    def pdf(self, x):
        """Density at ``x`` (scalar or array); zero outside the support."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        kind, p = self.kind, self.params
        if kind == "uniform":
            out[(x > 0) & (x < 1)] = 1.0
        elif kind == "exponential":
            rate = p[0]
            s = x >= 0
            out[s] = rate * np.exp(-rate * x[s])
        elif kind == "normal":
            mu, sd = p
            out = np.exp(-0.5 * ((x - mu) / sd) ** 2) / (sd * math.sqrt(2 * math.pi))
        elif kind == "gamma":
            a = p[0]
            s = x > 0
            out[s] = x[s] ** (a - 1) * np.exp(-x[s]) / math.gamma(a)
        elif kind == "weibull":
            b = p[0]
            s = x > 0
            out[s] = b * x[s] ** (b - 1) * np.exp(-x[s] ** b)
        elif kind == "lognormal":
            sigma = p[0]
            s = x > 0
            out[s] = np.exp(-np.log(x[s]) ** 2 / (2 * sigma**2)) / (
                sigma * math.sqrt(2 * math.pi) * x[s]
            )
        elif kind == "chisquare":
            h = p[0] / 2
            s = x > 0
            out[s] = 0.5**h * x[s] ** (h - 1) * np.exp(-x[s] / 2) / math.gamma(h)
        elif kind == "t":
            nu = p[0]
            const = math.gamma((nu + 1) / 2) / (math.gamma(nu / 2) * math.sqrt(nu * math.pi))
            out = const * (1 + x**2 / nu) ** (-(nu + 1) / 2)
        return out if out.ndim else float(out)

    def rvs(self, rng: RandomStream, size=None):
        """Draw variates of the given ``size`` from ``rng``."""
        kind, p = self.kind, self.params
        if kind == "uniform":
            return rng.random(size)
        if kind == "exponential":
            return rng.exponential(1.0 / p[0], size)
        if kind == "normal":
            return rng.normal(p[0], p[1], size)
        if kind == "gamma":
            return rng.standard_gamma(p[0], size)
        if kind == "weibull":
            return rng.weibull(p[0], size)
        if kind == "lognormal":
            return rng.lognormal(0.0, p[0], size)
        if kind == "chisquare":
            return rng.chisquare(p[0], size)
        return rng.standard_t(p[0], size)

    def to_scipy(self):
        """Equivalent frozen :mod:`scipy.stats` distribution (cdf/ppf/moments)."""
        kind, p = self.kind, self.params
        if kind == "uniform":
            return stats.uniform()
        if kind == "exponential":
            return stats.expon(scale=1.0 / p[0])
        if kind == "normal":
            return stats.norm(p[0], p[1])
        if kind == "gamma":
            return stats.gamma(p[0])
        if kind == "weibull":
            return stats.weibull_min(p[0])
        if kind == "lognormal":
            return stats.lognorm(p[0])
        if kind == "chisquare":
            return stats.chi2(p[0])
        return stats.t(p[0])

    def entropy(self) -> float:
        """Exact differential entropy in nats.

        Only the uniform, exponential and normal laws are supported.
        """
        kind, p = self.kind, self.params
        if kind == "uniform":
            return 0.0
        if kind == "exponential":
            return 1.0 - math.log(p[0])
        if kind == "normal":
            return 0.5 * math.log(2 * math.pi * math.e * p[1] ** 2)
        raise UnsupportedDistribution(f"true entropy unavailable for {self.name}")


def uniform() -> Distribution:
    return Distribution("uniform")


def exponential(rate: float = 1.0) -> Distribution:
    return Distribution("exponential", (rate,))


def normal(mean: float = 0.0, sd: float = 1.0) -> Distribution:
    return Distribution("normal", (mean, sd))


def gamma(shape: float) -> Distribution:
    return Distribution("gamma", (shape,))


def weibull(shape: float) -> Distribution:
    return Distribution("weibull", (shape,))


def lognormal(sigma: float) -> Distribution:
    return Distribution("lognormal", (sigma,))


def chisquare(df: int) -> Distribution:
    return Distribution("chisquare", (df,))


def student_t(df: int) -> Distribution:
    return Distribution("t", (df,))


_SPEC_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\(([^)]*)\))?\s*$")


def parse_distribution(text: str) -> Distribution:
    """Parse ``name(params)`` strings such as ``gamma(1.5)``, ``t(5)`` or ``uniform``.

    >>> parse_distribution("weibull(2)")
    Distribution(kind='weibull', params=(2.0,))
    """
    match = _SPEC_RE.match(text)
    if not match:
        raise ConfigError(f"cannot parse distribution {text!r}")
    name, args = match.group(1).lower(), match.group(2)
    if name not in _ALIASES:
        raise ConfigError(f"unknown distribution {name!r} in {text!r}")
    params: tuple[float, ...] = ()
    if args is not None and args.strip():
        try:
            params = tuple(float(a) for a in args.split(","))
        except ValueError:
            raise ConfigError(f"non-numeric parameter in {text!r}") from None
    return Distribution(_ALIASES[name], params)


def pdf(dist: Distribution, x):
    return dist.pdf(x)


def sample(dist: Distribution, rng: RandomStream) -> float:
    """One variate from ``dist``."""
    return float(dist.rvs(rng))


def true_entropy(dist: Distribution) -> float:
    return dist.entropy()
