"""Monte Carlo driver: bias/RMSE, critical values, power and window selection.

Replications are generated in fixed-size blocks.  Block ``b`` of a
simulation labelled ``label`` always draws from
``make_stream(master_seed, label, b)``, so results do not depend on how
many worker processes evaluate the blocks.  Every m in the window range is
evaluated on the same datasets.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import distributions as D
from .distributions import Distribution
from .entropy import ebrahimi_array, h2_array, vasicek_array
from .errors import ConfigError, InvalidWindow, TooManyDegenerate
from .gof import check_variant, null_distribution
from .moments import (
    breakpoints_array,
    corrected_moments_array,
    maceachern_variance_array,
    stokes_variance_array,
)
from .sampling import draw_rss_batch
from .store import CriticalEntry, CriticalKey
from .streams import make_stream

__all__ = [
    "EXP_ALTERNATIVES",
    "NORM_ALTERNATIVES",
    "MonteCarloConfig",
    "MonteCarloReport",
    "MinSummary",
    "OptimalWindow",
    "PowerProfile",
    "critical_value",
    "simulate",
    "estimate_bias_rmse",
    "summarize_min",
    "calibrate_critical_values",
    "estimate_power",
    "power_profile",
    "average_power",
    "optimal_window",
    "max_power_per_alternative",
]

EXP_ALTERNATIVES = (
    D.gamma(1.5),
    D.lognormal(1.0),
    D.weibull(1.5),
    D.gamma(2.0),
    D.gamma(3.0),
    D.uniform(),
    D.weibull(2.0),
    D.lognormal(0.5),
)
NORM_ALTERNATIVES = (
    D.student_t(5),
    D.student_t(3),
    D.uniform(),
    D.chisquare(4),
    D.chisquare(2),
    D.chisquare(1),
)
_MAX_DEGENERATE = 0.001
_MAX_REDRAW_ROUNDS = 100


@dataclass(frozen=True)
class MonteCarloConfig:
    """Simulation settings shared by every driver.

    ``m_range`` is inclusive; ``None`` means every valid window.  The block
    size fixes how replications map onto random streams and is therefore
    part of the reproducibility key, unlike ``workers``.
    """

    reps: int = 10_000
    master_seed: int = 20_061_017
    k: int = 10
    r: int = 1
    m_range: tuple[int, int] | None = None
    alpha_levels: tuple[float, ...] = (0.1, 0.05, 0.025, 0.01)
    entropy: str = "h1"
    block_size: int = 1000
    workers: int = 1
    rss_method: str = "sort"

    def __post_init__(self):
        if self.reps < 100:
            raise ConfigError("reps must be >= 100")
        if self.k < 2 or self.r < 1:
            raise ConfigError("need k >= 2 and r >= 1")
        if self.block_size < 1 or self.workers < 1:
            raise ConfigError("block_size and workers must be positive")
        if self.entropy not in ("h1", "h2"):
            raise ConfigError(f"entropy must be h1 or h2, got {self.entropy!r}")
        for a in self.alpha_levels:
            if not 0 < a < 1:
                raise ConfigError(f"alpha {a} outside (0, 1)")
        if self.m_range is not None:
            lo, hi = self.m_range
            if not 1 <= lo <= hi:
                raise ConfigError(f"bad m_range {self.m_range}")
            object.__setattr__(self, "m_range", (int(lo), int(hi)))
        object.__setattr__(self, "alpha_levels", tuple(float(a) for a in self.alpha_levels))

    @property
    def n(self) -> int:
        return self.r * self.k

    def windows(self, max_m: int) -> list[int]:
        """Windows to evaluate, checked against the estimator bound ``max_m``."""
        if self.m_range is None:
            return list(range(1, max_m + 1))
        lo, hi = self.m_range
        if hi > max_m:
            raise InvalidWindow(f"m_range {self.m_range} exceeds the bound {max_m}")
        return list(range(lo, hi + 1))

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("workers")
        return d


def config_hash(cfg: MonteCarloConfig, **extra) -> str:
    payload = json.dumps({**cfg.echo(), **extra}, sort_keys=True, default=str)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def critical_value(values, alpha: float) -> float:
    """Upper empirical quantile: the ceil((1 - alpha) * N)-th order statistic."""
    s = np.sort(np.asarray(values, dtype=float))
    return float(s[_quantile_index(s.size, alpha)])


def _quantile_index(size: int, alpha: float) -> int:
    # round first so that e.g. 0.95 * 100 does not become 95.000...01
    j = math.ceil(round((1.0 - alpha) * size, 9))
    return min(max(j, 1), size) - 1


def _quantile_stderr(s: np.ndarray, alpha: float) -> float:
    # half-width of the +-1 binomial-sd band of ranks around the quantile
    size = s.size
    j = _quantile_index(size, alpha)
    d = max(1, int(round(math.sqrt(size * alpha * (1 - alpha)))))
    return float((s[min(j + d, size - 1)] - s[max(j - d, 0)]) / 2)


# ---------------------------------------------------------------------------
# batch quantities: callables mapping generated data to (batch, len(ms))


@dataclass(frozen=True)
class EntropyQuantity:
    estimator: str
    ms: tuple[int, ...]

    @property
    def scheme(self) -> str:
        return "srs" if self.estimator in ("vasicek", "ebrahimi") else "rss"

    def __call__(self, data: np.ndarray) -> np.ndarray:
        if self.estimator == "h2":
            cycles = np.sort(data, axis=-1)
            return np.stack([h2_array(cycles, m) for m in self.ms], axis=-1)
        xs = np.sort(data.reshape(data.shape[0], -1), axis=-1)
        f = vasicek_array if self.estimator == "vasicek" else ebrahimi_array
        return np.stack([f(xs, m) for m in self.ms], axis=-1)


@dataclass(frozen=True)
class StatisticQuantity:
    test: str
    variant: str
    entropy: str
    ms: tuple[int, ...]

    @property
    def scheme(self) -> str:
        return check_variant(self.test, self.variant)

    def __call__(self, data: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.scheme == "srs":
                return self._srs(data)
            return self._rss(data)

    def _srs(self, data):
        xs = np.sort(data.reshape(data.shape[0], -1), axis=-1)
        out = []
        for m in self.ms:
            h = ebrahimi_array(xs, m)
            eta = breakpoints_array(xs, m)
            mean, var = corrected_moments_array(eta)
            ok = np.all(np.diff(eta, axis=-1) > 0, axis=-1)
            if self.test == "exp":
                val = 1.0 + _log_pos(mean) - h
            else:
                val = 0.5 * _log_pos(2 * np.pi * var) + 0.5 - h
            out.append(np.where(ok, val, np.nan))
        return np.stack(out, axis=-1)

    def _rss(self, data):
        b = data.shape[0]
        pooled = data.reshape(b, -1)
        n = pooled.shape[1]
        if self.test == "exp":
            base = 1.0 + _log_pos(pooled.mean(axis=1))
        elif self.variant == "kl1":
            base = 0.5 * _log_pos(2 * np.pi * stokes_variance_array(data)) + 0.5
        else:
            var = maceachern_variance_array(data)
            ss = ((pooled - pooled.mean(axis=1, keepdims=True)) ** 2).sum(axis=1)
            base = 0.5 * _log_pos(2 * np.pi * var) + ss / (2 * n * var)
        if self.entropy == "h1":
            xs = np.sort(pooled, axis=1)
            hs = [ebrahimi_array(xs, m) for m in self.ms]
        else:
            cycles = np.sort(data, axis=-1)
            hs = [h2_array(cycles, m) for m in self.ms]
        return np.stack([base - h for h in hs], axis=-1)


def _log_pos(x):
    x = np.asarray(x, dtype=float)
    return np.where(x > 0, np.log(np.where(x > 0, x, 1.0)), np.nan)


def _max_window(scheme: str, estimator: str, cfg: MonteCarloConfig) -> int:
    if estimator == "h2":
        return cfg.k // 2
    return cfg.n // 2


# ---------------------------------------------------------------------------
# block runner


def _generate(dist: Distribution, scheme: str, cfg: MonteCarloConfig, size: int, rng):
    if scheme == "rss":
        return draw_rss_batch(dist, cfg.k, cfg.r, size, rng, cfg.rss_method)
    return dist.rvs(rng, (size, cfg.n))


def _run_block(task):
    quantity, dist, scheme, cfg, label, block, size = task
    rng = make_stream(cfg.master_seed, label, block)
    vals = quantity(_generate(dist, scheme, cfg, size, rng))
    redrawn = 0
    for attempt in range(_MAX_REDRAW_ROUNDS):
        bad = ~np.all(np.isfinite(vals), axis=1)
        nbad = int(bad.sum())
        if not nbad:
            return vals, redrawn
        redrawn += nbad
        rng = make_stream(cfg.master_seed, label, block, "redraw", attempt)
        vals[bad] = quantity(_generate(dist, scheme, cfg, nbad, rng))
    raise TooManyDegenerate(f"{label}: block {block} still degenerate after redraws")


def simulate(quantity, dist: Distribution, cfg: MonteCarloConfig, label: str):
    """Evaluate ``quantity`` on ``cfg.reps`` datasets drawn from ``dist``.

    Returns ``(values, redrawn)`` where ``values`` has shape
    ``(reps, len(quantity.ms))`` and ``redrawn`` counts degenerate
    replications that were replaced.
    """
    scheme = quantity.scheme
    sizes = [cfg.block_size] * (cfg.reps // cfg.block_size)
    if cfg.reps % cfg.block_size:
        sizes.append(cfg.reps % cfg.block_size)
    full_label = f"{label}|{dist.name}|{scheme}|k={cfg.k}|r={cfg.r}|{cfg.rss_method}"
    tasks = [(quantity, dist, scheme, cfg, full_label, b, s) for b, s in enumerate(sizes)]
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_block, tasks))
    else:
        results = [_run_block(t) for t in tasks]
    values = np.concatenate([v for v, _ in results], axis=0)
    return values, sum(c for _, c in results)


# ---------------------------------------------------------------------------
# reports


@dataclass
class MonteCarloReport:
    """Tabulated simulation output.

    ``rows`` are dicts sorted by their key columns; every value column has a
    matching ``*_se`` column holding its Monte Carlo standard error.
    """

    kind: str
    key_columns: list[str]
    value_columns: list[str]
    rows: list[dict]
    config: MonteCarloConfig
    params: dict = field(default_factory=dict)
    degenerate: int = 0
    replications: int = 0

    @property
    def columns(self) -> list[str]:
        return self.key_columns + self.value_columns

    @property
    def config_hash(self) -> str:
        return config_hash(self.config, kind=self.kind, **self.params)

    def validate(self):
        if self.replications and self.degenerate > _MAX_DEGENERATE * self.replications:
            raise TooManyDegenerate(
                f"{self.degenerate} of {self.replications} replications were degenerate"
            )
        return self

    def column(self, name: str) -> list:
        return [row[name] for row in self.rows]

    def where(self, **match) -> list[dict]:
        return [row for row in self.rows if all(row.get(k) == v for k, v in match.items())]

    def to_csv(self, fh=None, digits: int = 4) -> str:
        """CSV text (also written to ``fh`` if given), prefixed by a comment
        line carrying the config hash and master seed."""
        buf = io.StringIO()
        buf.write(
            f"# rssentropy {self.kind} config_hash={self.config_hash} "
            f"seed={self.config.master_seed} reps={self.config.reps}\n"
        )
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_fmt(row[c], digits) for c in self.columns])
        text = buf.getvalue()
        if fh is not None:
            fh.write(text)
        return text

    def critical_entries(self) -> list[CriticalEntry]:
        if self.kind != "critical_values":
            raise ConfigError("only critical-value reports can be stored")
        h = self.config_hash
        p = self.params
        return [
            CriticalEntry(
                CriticalKey(
                    p["test"], p["variant"], p["estimator"], row["k"], row["r"],
                    row["m"], row["alpha"], self.config.reps,
                ),
                row["critical"],
                row["critical_se"],
                h,
            )
            for row in self.rows
        ]


def _fmt(value, digits):
    if isinstance(value, (float, np.floating)):
        if math.isnan(value):
            return "NA"
        return f"{value:.{digits}f}"
    return value


# ---------------------------------------------------------------------------
# bias and RMSE


def estimate_bias_rmse(dist: Distribution, scheme: str, estimator, cfg: MonteCarloConfig) -> MonteCarloReport:
    """Bias and RMSE of an entropy estimator for every window in the range.

    ``estimator`` is one of ``vasicek``/``ebrahimi`` (``scheme="srs"``) or
    ``h1``/``h2`` (``scheme="rss"``), or a callable ``f(data, m)`` returning
    one estimate per dataset in the batch.
    """
    truth = dist.entropy()
    name = estimator if isinstance(estimator, str) else getattr(estimator, "__name__", "custom")
    if isinstance(estimator, str):
        quantity = EntropyQuantity(estimator, ())
        if quantity.scheme != scheme:
            raise ConfigError(f"estimator {estimator!r} does not apply to scheme {scheme!r}")
        ms = cfg.windows(_max_window(scheme, estimator, cfg))
        quantity = EntropyQuantity(estimator, tuple(ms))
    else:
        ms = cfg.windows(cfg.n // 2)
        quantity = _CallableQuantity(estimator, tuple(ms), scheme)
    values, redrawn = simulate(quantity, dist, cfg, f"bias:{name}")
    err = values - truth
    rows = []
    reps = err.shape[0]
    for col, m in enumerate(ms):
        e = err[:, col]
        mse = float(np.mean(e * e))
        rmse = math.sqrt(mse)
        rmse_se = float(np.std(e * e, ddof=1) / math.sqrt(reps)) / (2 * rmse) if rmse > 0 else 0.0
        rows.append(
            dict(
                distribution=dist.name, scheme=scheme, estimator=name,
                n=cfg.n, k=cfg.k, r=cfg.r, m=m,
                bias=float(e.mean()), bias_se=float(e.std(ddof=1) / math.sqrt(reps)),
                rmse=rmse, rmse_se=rmse_se,
            )
        )
    return MonteCarloReport(
        "bias_rmse",
        ["distribution", "scheme", "estimator", "n", "k", "r", "m"],
        ["bias", "bias_se", "rmse", "rmse_se"],
        rows, cfg,
        params=dict(distribution=dist.name, scheme=scheme, estimator=name),
        degenerate=redrawn, replications=reps,
    ).validate()


@dataclass(frozen=True)
class _CallableQuantity:
    func: object
    ms: tuple[int, ...]
    scheme: str

    def __call__(self, data):
        return np.stack([np.asarray(self.func(data, m), dtype=float) for m in self.ms], axis=-1)


@dataclass(frozen=True)
class MinSummary:
    mrmse: float
    m_at_mrmse: tuple[int, ...]
    mab: float
    m_at_mab: tuple[int, ...]


def summarize_min(report: MonteCarloReport) -> MinSummary:
    """Minimum RMSE and minimum absolute bias over m, with their tie sets.

    A window ties with the minimum when its value is within its own Monte
    Carlo standard error of the minimum.  The first element of each tie set
    is the exact argmin.
    """
    if report.kind != "bias_rmse":
        raise ConfigError("summarize_min needs a bias_rmse report")
    ms = report.column("m")
    rmse = np.array(report.column("rmse"))
    rmse_se = np.array(report.column("rmse_se"))
    ab = np.abs(report.column("bias"))
    ab_se = np.array(report.column("bias_se"))

    def ties(vals, ses):
        best = int(np.argmin(vals))
        others = [ms[i] for i in range(len(ms)) if i != best and vals[i] - vals[best] <= ses[i]]
        return float(vals[best]), (ms[best], *others)

    mrmse, m_r = ties(rmse, rmse_se)
    mab, m_b = ties(ab, ab_se)
    return MinSummary(mrmse, m_r, mab, m_b)


# ---------------------------------------------------------------------------
# critical values and power


def _statistic_quantity(test, variant, cfg):
    scheme = check_variant(test, variant)
    if variant == "kl2" and cfg.r < 2:
        raise InvalidWindow("kl2 is unavailable for r = 1 (MacEachern variance undefined)")
    entropy = cfg.entropy if scheme == "rss" else "ebrahimi"
    ms = cfg.windows(_max_window(scheme, entropy, cfg))
    return StatisticQuantity(test, variant, cfg.entropy, tuple(ms)), entropy


def calibrate_critical_values(test: str, variant: str, cfg: MonteCarloConfig) -> MonteCarloReport:
    """Upper-tail critical values under the null for every (m, alpha)."""
    quantity, entropy = _statistic_quantity(test, variant, cfg)
    null = null_distribution(test)
    values, redrawn = simulate(quantity, null, cfg, f"null:{test}:{variant}:{cfg.entropy}")
    # SRS statistics are keyed by their sample size alone
    k, r = (cfg.n, 1) if quantity.scheme == "srs" else (cfg.k, cfg.r)
    rows = []
    for col, m in enumerate(quantity.ms):
        s = np.sort(values[:, col])
        for a in cfg.alpha_levels:
            rows.append(
                dict(
                    test=test, variant=variant, n=cfg.n, k=k, r=r, m=m, alpha=a,
                    critical=float(s[_quantile_index(s.size, a)]),
                    critical_se=_quantile_stderr(s, a),
                )
            )
    rows.sort(key=lambda row: (row["m"], -row["alpha"]))
    return MonteCarloReport(
        "critical_values",
        ["test", "variant", "n", "k", "r", "m", "alpha"],
        ["critical", "critical_se"],
        rows, cfg,
        params=dict(test=test, variant=variant, estimator=entropy),
        degenerate=redrawn, replications=values.shape[0],
    ).validate()


def _crit_lookup(crit, ms, alpha):
    if isinstance(crit, MonteCarloReport):
        table = {row["m"]: row["critical"] for row in crit.rows if math.isclose(row["alpha"], alpha)}
    elif isinstance(crit, dict):
        table = dict(crit)
    else:
        if len(ms) != 1:
            raise ConfigError("a single critical value needs a single-window m_range")
        table = {ms[0]: float(crit)}
    missing = [m for m in ms if m not in table]
    if missing:
        raise ConfigError(f"no critical value for m = {missing} at alpha = {alpha}")
    return np.array([table[m] for m in ms])


def _power_cells(test, variant, alternative, crits, cfg, quantity):
    values, redrawn = simulate(quantity, alternative, cfg, f"power:{test}:{variant}:{cfg.entropy}")
    power = (values > crits).mean(axis=0)
    se = np.sqrt(power * (1 - power) / values.shape[0])
    return power, se, redrawn, values.shape[0]


def estimate_power(test, variant, alternative: Distribution, crit, cfg: MonteCarloConfig, alpha: float = 0.05) -> MonteCarloReport:
    """Rejection rate against ``alternative`` for every window in the range.

    ``crit`` is a calibration report, a ``{m: critical}`` mapping, or a
    single number when the range holds one window.
    """
    quantity, _ = _statistic_quantity(test, variant, cfg)
    crits = _crit_lookup(crit, quantity.ms, alpha)
    power, se, redrawn, reps = _power_cells(test, variant, alternative, crits, cfg, quantity)
    rows = [
        dict(test=test, variant=variant, alternative=alternative.name, n=cfg.n, k=cfg.k,
             r=cfg.r, m=m, alpha=alpha, critical=float(c), power=float(p), power_se=float(s))
        for m, c, p, s in zip(quantity.ms, crits, power, se)
    ]
    return MonteCarloReport(
        "power",
        ["test", "variant", "alternative", "n", "k", "r", "m", "alpha"],
        ["critical", "power", "power_se"],
        rows, cfg,
        params=dict(test=test, variant=variant, alternative=alternative.name, alpha=alpha),
        degenerate=redrawn, replications=reps,
    ).validate()


@dataclass
class PowerProfile:
    """Power of one test for each alternative (rows) and window (columns)."""

    test: str
    variant: str
    alternatives: list[str]
    ms: list[int]
    critical: np.ndarray
    power: np.ndarray
    power_se: np.ndarray
    alpha: float
    config: MonteCarloConfig
    degenerate: int = 0
    replications: int = 0


def power_profile(test, variant, alternatives, cfg: MonteCarloConfig, crit=None, alpha: float = 0.05) -> PowerProfile:
    """Powers against every alternative; calibrates the critical values when
    ``crit`` is not supplied."""
    alternatives = list(alternatives) or list(EXP_ALTERNATIVES if test == "exp" else NORM_ALTERNATIVES)
    quantity, _ = _statistic_quantity(test, variant, cfg)
    if crit is None:
        crit = calibrate_critical_values(test, variant, replace(cfg, alpha_levels=(alpha,)))
    crits = _crit_lookup(crit, quantity.ms, alpha)
    power, se = [], []
    degenerate = total = 0
    for alt in alternatives:
        p, s, d, reps = _power_cells(test, variant, alt, crits, cfg, quantity)
        power.append(p)
        se.append(s)
        degenerate += d
        total += reps
    return PowerProfile(
        test, variant, [a.name for a in alternatives], list(quantity.ms), crits,
        np.array(power), np.array(se), alpha, cfg, degenerate, total,
    )


def _profile_params(profile: PowerProfile):
    return dict(test=profile.test, variant=profile.variant, alpha=profile.alpha,
                alternatives=",".join(profile.alternatives))


def average_power(test, variant, alternatives, cfg: MonteCarloConfig, crit=None, alpha: float = 0.05, profile: PowerProfile | None = None) -> MonteCarloReport:
    """Mean power over the alternatives for each window."""
    profile = profile or power_profile(test, variant, alternatives, cfg, crit, alpha)
    ap = profile.power.mean(axis=0)
    ap_se = np.sqrt((profile.power_se**2).sum(axis=0)) / len(profile.alternatives)
    rows = [
        dict(test=test, variant=variant, n=cfg.n, k=cfg.k, r=cfg.r, m=m, alpha=alpha,
             average_power=float(a), average_power_se=float(s))
        for m, a, s in zip(profile.ms, ap, ap_se)
    ]
    return MonteCarloReport(
        "average_power",
        ["test", "variant", "n", "k", "r", "m", "alpha"],
        ["average_power", "average_power_se"],
        rows, cfg, params=_profile_params(profile),
        degenerate=profile.degenerate, replications=profile.replications,
    ).validate()


@dataclass(frozen=True)
class OptimalWindow:
    m_star: int
    ap_star: float
    ties: tuple[int, ...]
    report: MonteCarloReport


def optimal_window(test, variant, alternatives, cfg: MonteCarloConfig, crit=None, alpha: float = 0.05, report: MonteCarloReport | None = None) -> OptimalWindow:
    """Window with the largest average power (smallest m on exact ties).

    ``ties`` lists every window whose average power is within its standard
    error of the maximum, starting with ``m_star``.
    """
    report = report or average_power(test, variant, alternatives, cfg, crit, alpha)
    ms = report.column("m")
    ap = np.array(report.column("average_power"))
    se = np.array(report.column("average_power_se"))
    best = int(np.argmax(ap))
    ties = tuple(sorted((ms[i] for i in range(len(ms)) if ap[best] - ap[i] <= se[i] and i != best)))
    return OptimalWindow(ms[best], float(ap[best]), (ms[best], *ties), report)


def format_m_set(ms) -> str:
    """Compact window list: contiguous runs as ``a-b``, otherwise comma separated."""
    runs: list[list[int]] = []
    for m in sorted(ms):
        if runs and m == runs[-1][1] + 1:
            runs[-1][1] = m
        else:
            runs.append([m, m])
    return ",".join(f"{a}" if a == b else f"{a}-{b}" for a, b in runs)


def max_power_per_alternative(test, variant, alternatives, cfg: MonteCarloConfig, crit=None, alpha: float = 0.05, profile: PowerProfile | None = None) -> MonteCarloReport:
    """Largest power over m for each alternative and the windows attaining it
    (equal at four decimals)."""
    profile = profile or power_profile(test, variant, alternatives, cfg, crit, alpha)
    rows = []
    for name, p, s in zip(profile.alternatives, profile.power, profile.power_se):
        best = int(np.argmax(p))
        top = round(float(p[best]), 4)
        attaining = [m for m, v in zip(profile.ms, p) if round(float(v), 4) == top]
        rows.append(
            dict(test=test, variant=variant, alternative=name, n=cfg.n, k=cfg.k, r=cfg.r,
                 alpha=alpha, m_max=profile.ms[best], m_set=format_m_set(attaining),
                 max_power=float(p[best]), max_power_se=float(s[best]))
        )
    return MonteCarloReport(
        "max_power",
        ["test", "variant", "alternative", "n", "k", "r", "alpha", "m_max", "m_set"],
        ["max_power", "max_power_se"],
        rows, cfg, params=_profile_params(profile),
        degenerate=profile.degenerate, replications=profile.replications,
    ).validate()
