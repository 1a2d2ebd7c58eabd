"""Plain-text data files: RSS matrices (r lines of k values) and SRS columns."""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .sampling import RankedSetSample, SimpleSample

_SPLIT = re.compile(r"[,\s]+")


def _numeric_lines(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [f for f in _SPLIT.split(line) if f]
        try:
            values = [float(f) for f in fields]
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: non-numeric field in {line!r}") from None
        if not all(np.isfinite(values)):
            raise ConfigError(f"{path}:{lineno}: non-finite value")
        yield lineno, values


def read_rss_matrix(path, k: int | None = None) -> RankedSetSample:
    """Read an RSS data file; column j holds the rank-j measurements."""
    rows = []
    width = k
    for lineno, values in _numeric_lines(path):
        if width is None:
            width = len(values)
        if len(values) != width:
            raise ConfigError(f"{path}:{lineno}: expected {width} values, found {len(values)}")
        rows.append(values)
    if not rows:
        raise ConfigError(f"{path}: no data")
    return RankedSetSample(np.array(rows))


def write_rss_matrix(path, rss: RankedSetSample):
    with Path(path).open("w") as fh:
        for row in rss.values:
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def read_srs(path) -> SimpleSample:
    values = []
    for lineno, vals in _numeric_lines(path):
        if len(vals) != 1:
            raise ConfigError(f"{path}:{lineno}: expected one value per line")
        values.append(vals[0])
    if not values:
        raise ConfigError(f"{path}: no data")
    return SimpleSample(np.array(values))


def write_srs(path, sample: SimpleSample):
    with Path(path).open("w") as fh:
        for v in sample.values:
            fh.write(repr(float(v)) + "\n")
