"""Turning timeseries into weighted transition networks."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import IO, Sequence

import numpy as np

from .graph import WeightedDigraph

__all__ = [
    "LabelSeries",
    "Trajectory",
    "OrdinalEncoding",
    "transitions_to_network",
    "coarse_grain",
    "ordinal_encode",
    "ordinal_counts",
    "optimal_window",
    "permutation_index",
    "permutation_from_index",
    "load_trajectory",
    "dump_trajectory",
    "load_labels",
    "dump_labels",
]


@dataclass(frozen=True)
class LabelSeries:
    labels: np.ndarray
    alphabet_size: int

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        if len(labels) and (labels.min() < 0 or labels.max() >= self.alphabet_size):
            raise ValueError(f"labels must lie in [0, {self.alphabet_size})")
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class Trajectory:
    """Sampled states, one row per time point."""

    samples: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        x = np.asarray(self.samples, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        if x.ndim != 2 or x.shape[0] < 2 or x.shape[1] < 1:
            raise ValueError(f"trajectory must be a T x d array, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise ValueError("trajectory contains non-finite values")
        object.__setattr__(self, "samples", x)

    @property
    def length(self) -> int:
        return self.samples.shape[0]

    @property
    def dim(self) -> int:
        return self.samples.shape[1]


@dataclass(frozen=True)
class OrdinalEncoding:
    window: int
    series: LabelSeries
    m: int

    def rank_tuples(self) -> list[tuple[int, ...]]:
        return [permutation_from_index(int(k), self.window) for k in self.series.labels]


def transitions_to_network(s: LabelSeries, occupied_only: bool = False) -> tuple[WeightedDigraph, int]:
    """Weight src->dst by the number of consecutive (src, dst) pairs.

    Self-transitions cannot be encoded as links and are dropped; their count
    is returned alongside the graph. With ``occupied_only`` the nodes are
    restricted to labels that actually occur, renumbered in increasing order.
    """
    x = s.labels
    if len(x) < 2:
        raise ValueError("need at least two labels to form a transition")
    n = s.alphabet_size
    if occupied_only:
        present, x = np.unique(x, return_inverse=True)
        n = len(present)
    src, dst = x[:-1], x[1:]
    moving = src != dst
    dropped = int(len(src) - moving.sum())
    codes, counts = np.unique(src[moving] * n + dst[moving], return_counts=True)
    links = tuple(
        (int(c // n), int(c % n), float(k)) for c, k in zip(codes.tolist(), counts.tolist())
    )
    return WeightedDigraph(n, links), dropped


def coarse_grain(t: Trajectory, cells_per_dim: int) -> LabelSeries:
    """Uniform binning of each coordinate over its recorded range.

    A state's label is the mixed-radix number of its per-dimension bin
    indices, first coordinate least significant. Constant coordinates get a
    single bin.
    """
    if cells_per_dim < 1:
        raise ValueError(f"cells_per_dim must be >= 1, got {cells_per_dim}")
    x = t.samples
    lo, hi = x.min(axis=0), x.max(axis=0)
    labels = np.zeros(x.shape[0], dtype=np.int64)
    radix = 1
    for j in range(x.shape[1]):
        if hi[j] == lo[j]:
            warnings.warn(f"coordinate {j} is constant; using a single bin", stacklevel=2)
            continue
        b = np.floor((x[:, j] - lo[j]) / (hi[j] - lo[j]) * cells_per_dim).astype(np.int64)
        np.clip(b, 0, cells_per_dim - 1, out=b)
        labels += b * radix
        radix *= cells_per_dim
    return LabelSeries(labels, radix)


def permutation_index(perm: Sequence[int]) -> int:
    """Lexicographic rank of a permutation of 1..w (Lehmer code)."""
    w = len(perm)
    idx = 0
    for i in range(w):
        smaller = sum(1 for j in range(i + 1, w) if perm[j] < perm[i])
        idx += smaller * math.factorial(w - 1 - i)
    return idx


def permutation_from_index(idx: int, w: int) -> tuple[int, ...]:
    pool = list(range(1, w + 1))
    out = []
    for i in range(w - 1, -1, -1):
        f = math.factorial(i)
        q, idx = divmod(idx, f)
        out.append(pool.pop(q))
    return tuple(out)


def _window_ranks(x: np.ndarray, w: int) -> np.ndarray:
    windows = np.lib.stride_tricks.sliding_window_view(x, w)
    order = np.argsort(windows, axis=1, kind="stable")
    ranks = np.empty_like(order)
    rows = np.arange(windows.shape[0])[:, None]
    ranks[rows, order] = np.arange(1, w + 1)
    return ranks


def _lehmer(ranks: np.ndarray) -> np.ndarray:
    w = ranks.shape[1]
    idx = np.zeros(ranks.shape[0], dtype=np.int64)
    for i in range(w):
        smaller = (ranks[:, i + 1:] < ranks[:, i:i + 1]).sum(axis=1)
        idx += smaller * math.factorial(w - 1 - i)
    return idx


def _scalar(t: Trajectory) -> np.ndarray:
    if t.dim != 1:
        raise ValueError(f"ordinal encoding needs a scalar series, got dimension {t.dim}")
    return t.samples[:, 0]


def ordinal_encode(t: Trajectory, w: int) -> OrdinalEncoding:
    """Rank each length-w window (smallest value -> 1, ties by position).

    Labels are lexicographic permutation indices, so the alphabet is w!.
    """
    x = _scalar(t)
    if w < 2 or len(x) < w:
        raise ValueError(f"need 2 <= w <= T, got w={w}, T={len(x)}")
    labels = _lehmer(_window_ranks(x, w))
    m = len(np.unique(labels))
    return OrdinalEncoding(w, LabelSeries(labels, math.factorial(w)), m)


def ordinal_counts(t: Trajectory, w_max: int) -> dict[int, int]:
    """m(w) for w = 1..w_max, with m(1) = 1."""
    x = _scalar(t)
    counts = {1: 1}
    for w in range(2, w_max + 1):
        counts[w] = len(np.unique(_lehmer(_window_ranks(x, w))))
    return counts


def optimal_window(t: Trajectory, w_max: int) -> int:
    """Smallest w in 2..w_max maximising m(w) - m(w-1)."""
    if w_max < 3:
        raise ValueError(f"w_max must be >= 3, got {w_max}")
    if t.length < w_max:
        raise ValueError(f"series of length {t.length} too short for w_max={w_max}")
    m = ordinal_counts(t, w_max)
    deltas = {w: m[w] - m[w - 1] for w in range(2, w_max + 1)}
    if len(set(deltas.values())) == 1:
        warnings.warn("flat m(w) curve; defaulting to w=2", stacklevel=2)
        return 2
    best = max(deltas.values())
    return min(w for w, d in deltas.items() if d == best)


def load_trajectory(source: IO[str]) -> Trajectory:
    rows = []
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([float(v) for v in line.split(",")])
        except ValueError:
            raise ValueError(f"line {lineno}: unparseable trajectory row {line!r}") from None
    if not rows:
        raise ValueError("empty trajectory")
    if len({len(r) for r in rows}) != 1:
        raise ValueError("trajectory rows have differing column counts")
    return Trajectory(np.array(rows))


def dump_trajectory(t: Trajectory, sink: IO[str], header: Sequence[str] = ()) -> None:
    for line in header:
        sink.write(f"# {line}\n")
    for row in t.samples:
        sink.write(",".join(repr(float(v)) for v in row) + "\n")


def load_labels(source: IO[str], alphabet_size: int | None = None) -> LabelSeries:
    vals = [int(line) for line in source if line.strip() and not line.startswith("#")]
    x = np.array(vals, dtype=np.int64)
    return LabelSeries(x, alphabet_size if alphabet_size is not None else int(x.max()) + 1)


def dump_labels(s: LabelSeries, sink: IO[str], header: Sequence[str] = ()) -> None:
    for line in header:
        sink.write(f"# {line}\n")
    for v in s.labels.tolist():
        sink.write(f"{v}\n")

