"""Command-line interface.

Exit status: 0 on success, 1 for invalid arguments, configuration or input
files, 2 when the data are degenerate (tied spacings, zero variance, ...).
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from dataclasses import dataclass, field, replace

from . import montecarlo as mc
from .config import SCHEMA, load_config, parse_value
from .datafiles import read_rss_matrix, read_srs
from .errors import DEGENERATE_ERRORS, ConfigError, RssEntropyError
from .gof import check_variant, compute_statistic, decide
from .entropy import ebrahimi, h1, h2, vasicek
from .store import CriticalKey, CriticalValueStore

log = logging.getLogger("rssentropy")

SIM_COMMANDS = ("bias-rmse", "calibrate", "power", "average-power", "optimal-m", "max-power")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


@dataclass
class RunConfig:
    subcommand: str
    config_path: str | None = None
    overrides: dict = field(default_factory=dict)
    output_path: str | None = None
    seed: int = mc.MonteCarloConfig.master_seed

    def settings(self) -> dict:
        settings = load_config(self.config_path) if self.config_path else {}
        settings.update(self.overrides)
        if "seed" in settings:
            self.seed = settings["seed"]
        return settings


def _override_args(p):
    g = p.add_argument_group("config overrides")
    for key in SCHEMA:
        g.add_argument(f"--{key.replace('_', '-')}", dest=f"ov_{key}", metavar=key.upper())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rssentropy", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("entropy", help="estimate entropy of a data file")
    p.add_argument("--input", required=True)
    p.add_argument("--scheme", choices=("srs", "rss"), required=True)
    p.add_argument("--estimator", choices=("vasicek", "ebrahimi", "h1", "h2"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--output")

    p = sub.add_parser("gof", help="goodness-of-fit test on a data file")
    p.add_argument("--test", choices=("exp", "norm"), required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--scheme", choices=("srs", "rss"), required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--variant", choices=("kl1", "kl2", "tc"))
    p.add_argument("--entropy", choices=("h1", "h2"), default="h1")
    p.add_argument("--crit-table", help="critical-value store (default: $RSSENTROPY_STORE)")
    p.add_argument("--reps", type=int, default=10_000, help="replications when calibrating")
    p.add_argument("--seed", type=int, default=mc.MonteCarloConfig.master_seed)
    p.add_argument("--header", action="store_true", help="print a CSV header line first")
    p.add_argument("--output")

    for name in SIM_COMMANDS:
        p = sub.add_parser(name, help=f"Monte Carlo: {name}")
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--output")
        _override_args(p)
    return parser


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_line(values) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(values)
    return buf.getvalue()


def cmd_entropy(args) -> str:
    if args.scheme == "rss":
        data = read_rss_matrix(args.input, args.k)
        if args.estimator not in ("h1", "h2"):
            raise ConfigError("RSS data take --estimator h1 or h2")
        est = (h1 if args.estimator == "h1" else h2)(data, args.m)
    else:
        data = read_srs(args.input)
        if args.estimator not in ("vasicek", "ebrahimi"):
            raise ConfigError("SRS data take --estimator vasicek or ebrahimi")
        est = (vasicek if args.estimator == "vasicek" else ebrahimi)(data, args.m)
    return _csv_line(["estimator", "scheme", "n", "m", "value"]) + _csv_line(
        [est.estimator, args.scheme, est.n, est.m, f"{est.value:.6f}"]
    )


def _critical_for(store, key: CriticalKey, cfg: mc.MonteCarloConfig):
    entry = store.get(key)
    if entry is None:
        log.info("calibrating %s", key)
        report = mc.calibrate_critical_values(key.test, key.variant, cfg)
        store.add(report.critical_entries())
        entry = store.lookup(key)
    return entry


def cmd_gof(args) -> str:
    variant = args.variant or ("tc" if args.scheme == "srs" else "kl1")
    if check_variant(args.test, variant) != args.scheme:
        raise ConfigError(f"variant {variant} does not run under scheme {args.scheme}")
    if args.scheme == "rss":
        data = read_rss_matrix(args.input, args.k)
        k, r = data.k, data.r
    else:
        data = read_srs(args.input)
        k, r = data.n, 1
    stat = compute_statistic(args.test, variant, data, args.m, args.entropy)
    store = CriticalValueStore(args.crit_table)
    if args.scheme == "srs":
        # SRS calibration draws samples of size n = r * k with r = 1
        cfg = mc.MonteCarloConfig(reps=args.reps, master_seed=args.seed, k=k, r=1,
                                  m_range=(args.m, args.m), alpha_levels=(args.alpha,))
    else:
        cfg = mc.MonteCarloConfig(reps=args.reps, master_seed=args.seed, k=k, r=r,
                                  m_range=(args.m, args.m), alpha_levels=(args.alpha,),
                                  entropy=args.entropy)
    key = CriticalKey(args.test, variant, stat.entropy, k, r, args.m, args.alpha, args.reps)
    entry = _critical_for(store, key, cfg)
    reject = decide(stat, entry)
    header = ["test", "scheme", "variant", "n", "m", "alpha", "statistic", "critical", "decision"]
    record = [args.test, args.scheme, variant, stat.n, stat.m, args.alpha,
              f"{stat.value:.4f}", f"{entry.value:.4f}", "reject" if reject else "accept"]
    return (_csv_line(header) if args.header else "") + _csv_line(record)


def _mc_config(s: dict) -> mc.MonteCarloConfig:
    kwargs = {}
    for key, attr in (("reps", "reps"), ("seed", "master_seed"), ("k", "k"), ("r", "r"),
                      ("m_range", "m_range"), ("alphas", "alpha_levels"), ("entropy", "entropy"),
                      ("block_size", "block_size"), ("workers", "workers"),
                      ("rss_method", "rss_method")):
        if key in s:
            kwargs[attr] = s[key]
    return mc.MonteCarloConfig(**kwargs)


def _require(s: dict, *keys):
    missing = [k for k in keys if k not in s]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")


def _test_variant(s):
    _require(s, "test")
    variant = s.get("variant", "kl1")
    check_variant(s["test"], variant)
    return s["test"], variant


def _stored_or_calibrated(s, test, variant, cfg, alpha):
    """Critical values for every window, reusing the store where possible."""
    store = CriticalValueStore(s.get("store"))
    quantity, estimator = mc._statistic_quantity(test, variant, cfg)
    k, r = (cfg.n, 1) if quantity.scheme == "srs" else (cfg.k, cfg.r)
    keys = {m: CriticalKey(test, variant, estimator, k, r, m, alpha, cfg.reps) for m in quantity.ms}
    if not all(key in store for key in keys.values()):
        report = mc.calibrate_critical_values(test, variant, replace(cfg, alpha_levels=(alpha,)))
        store.add(report.critical_entries())
    return {m: store.lookup(key).value for m, key in keys.items()}


def cmd_simulation(command: str, run: RunConfig) -> str:
    s = run.settings()
    cfg = _mc_config(s)
    if command == "bias-rmse":
        _require(s, "distribution")
        estimator = s.get("estimator", "h1")
        scheme = s.get("scheme", "rss" if estimator in ("h1", "h2") else "srs")
        return mc.estimate_bias_rmse(s["distribution"], scheme, estimator, cfg).to_csv()
    test, variant = _test_variant(s)
    if command == "calibrate":
        report = mc.calibrate_critical_values(test, variant, cfg)
        CriticalValueStore(s.get("store")).add(report.critical_entries())
        return report.to_csv()
    alpha = s.get("alpha", 0.05)
    crit = _stored_or_calibrated(s, test, variant, cfg, alpha)
    alternatives = s.get("alternatives") or (
        mc.EXP_ALTERNATIVES if test == "exp" else mc.NORM_ALTERNATIVES
    )
    if command == "power":
        reports = [mc.estimate_power(test, variant, alt, crit, cfg, alpha) for alt in alternatives]
        text = reports[0].to_csv()
        for rep in reports[1:]:
            text += "".join(rep.to_csv().splitlines(keepends=True)[2:])
        return text
    profile = mc.power_profile(test, variant, alternatives, cfg, crit, alpha)
    if command == "max-power":
        return mc.max_power_per_alternative(test, variant, alternatives, cfg, profile=profile).to_csv()
    ap = mc.average_power(test, variant, alternatives, cfg, alpha=alpha, profile=profile)
    if command == "average-power":
        return ap.to_csv()
    best = mc.optimal_window(test, variant, alternatives, cfg, report=ap)
    header = f"# rssentropy optimal_m config_hash={ap.config_hash} seed={cfg.master_seed} reps={cfg.reps}\n"
    return header + _csv_line(["test", "variant", "n", "k", "r", "alpha", "m_star", "average_power", "ties"]) + _csv_line(
        [test, variant, cfg.n, cfg.k, cfg.r, alpha, best.m_star, f"{best.ap_star:.4f}",
         mc.format_m_set(best.ties)]
    )


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        if args.command == "entropy":
            text = cmd_entropy(args)
        elif args.command == "gof":
            text = cmd_gof(args)
        else:
            overrides = {}
            for key in SCHEMA:
                value = getattr(args, f"ov_{key}")
                if value is not None:
                    overrides[key] = parse_value(key, value, "--" + key.replace("_", "-") + ": ")
            rc = RunConfig(args.command, args.config, overrides, args.output)
            text = cmd_simulation(args.command, rc)
        _emit(text, args.output)
    except DEGENERATE_ERRORS as exc:
        print(f"rssentropy: degenerate data: {exc}", file=sys.stderr)
        return 2
    except (RssEntropyError, KeyError) as exc:
        print(f"rssentropy: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())
