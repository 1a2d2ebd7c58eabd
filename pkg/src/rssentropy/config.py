"""Flat ``key = value`` configuration files for the simulation subcommands.

Blank lines and ``#`` comments are ignored.  Every key is validated and
unknown keys are rejected with the offending line number.
"""

from __future__ import annotations

import re
from pathlib import Path

from .distributions import parse_distribution
from .errors import ConfigError


def _int(text):
    return int(text)


def _float(text):
    return float(text)


def _choice(*options):
    def parse(text):
        if text not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return text

    return parse


def parse_m_range(text) -> tuple[int, int]:
    """``"3"``, ``"1-5"`` or ``"1..5"`` -> inclusive (lo, hi)."""
    parts = re.split(r"\s*(?:\.\.|-|:)\s*", str(text).strip())
    if len(parts) == 1:
        lo = hi = int(parts[0])
    elif len(parts) == 2:
        lo, hi = int(parts[0]), int(parts[1])
    else:
        raise ValueError("expected M or LO-HI")
    if not 1 <= lo <= hi:
        raise ValueError("need 1 <= LO <= HI")
    return lo, hi


def _floats(text):
    return tuple(float(v) for v in re.split(r"[,\s]+", text.strip()) if v)


_DIST_TOKEN = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\s*(?:\([^)]*\))?")


def parse_distribution_list(text):
    text = text.strip()
    tokens = _DIST_TOKEN.findall(text)
    leftover = _DIST_TOKEN.sub("", text)
    if not tokens or re.sub(r"[,;\s]", "", leftover):
        raise ValueError(f"cannot parse distribution list {text!r}")
    return tuple(parse_distribution(t) for t in tokens)


SCHEMA = {
    "test": _choice("exp", "norm"),
    "variant": _choice("tc", "kl1", "kl2"),
    "estimator": _choice("vasicek", "ebrahimi", "h1", "h2"),
    "entropy": _choice("h1", "h2"),
    "scheme": _choice("srs", "rss"),
    "distribution": parse_distribution,
    "alternatives": parse_distribution_list,
    "k": _int,
    "r": _int,
    "m_range": parse_m_range,
    "alphas": _floats,
    "alpha": _float,
    "reps": _int,
    "seed": _int,
    "block_size": _int,
    "workers": _int,
    "rss_method": _choice("sort", "beta"),
    "store": str,
}


def parse_value(key: str, text: str, where: str = ""):
    if key not in SCHEMA:
        raise ConfigError(f"{where}unknown key {key!r}")
    try:
        return SCHEMA[key](text)
    except (ValueError, ConfigError) as exc:
        raise ConfigError(f"{where}bad value for {key!r}: {exc}") from None


def parse_config_text(text: str, source: str = "<config>") -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}: "
        if "=" not in line:
            raise ConfigError(f"{where}expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key in out:
            raise ConfigError(f"{where}duplicate key {key!r}")
        out[key] = parse_value(key, value, where)
    return out


def load_config(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config_text(text, str(path))
