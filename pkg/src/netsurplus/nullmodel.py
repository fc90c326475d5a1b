"""Weight-preserving random shuffles and the complexity-surplus statistics."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .automorphism import DEFAULT_BUDGET
from .complexity import complexity_weighted
from .graph import WeightedDigraph

__all__ = [
    "ShuffleStats",
    "shuffle",
    "shuffled_complexities",
    "surplus_analysis",
    "stats_from_samples",
    "preferential_attachment",
    "seed_sequence",
    "DEGENERATE",
    "TABLE_COLUMNS",
]

DEGENERATE = "degenerate"
TABLE_COLUMNS = ("dataset", "nodes", "links", "C", "geo_mean_shuffled", "surplus", "sigmas")


def seed_sequence(seed, *key: int) -> np.random.SeedSequence:
    """Substream of a 64-bit master seed addressed by an integer key.

    An existing SeedSequence is passed through (or spawned from, given a key).
    """
    if isinstance(seed, np.random.SeedSequence):
        if not key:
            return seed
        return np.random.SeedSequence(
            seed.entropy, spawn_key=tuple(seed.spawn_key) + tuple(key), pool_size=seed.pool_size
        )
    return np.random.SeedSequence(entropy=int(seed) & (2**64 - 1), spawn_key=tuple(key))


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed_sequence(seed))


def shuffle(g: WeightedDigraph, rng_seed) -> WeightedDigraph:
    """Erdos-Renyi rewiring that keeps n, l and the multiset of weights.

    The l ordered pairs are drawn uniformly without replacement from the
    n(n-1) off-diagonal pairs; weights are dealt onto them in random order.
    """
    rng = _rng(rng_seed)
    n, l = g.n, g.l
    if l == 0:
        return WeightedDigraph(n)
    codes = rng.choice(n * (n - 1), size=l, replace=False)
    src = codes // (n - 1)
    r = codes % (n - 1)
    dst = r + (r >= src)
    weights = rng.permutation(np.asarray(g.weights(), dtype=float))
    return WeightedDigraph(n, tuple(zip(src.tolist(), dst.tolist(), weights.tolist())))


@dataclass(frozen=True)
class ShuffleStats:
    c: float
    samples: tuple[float, ...]
    ln_c_mean: float
    ln_c_std: float
    geo_mean: float
    surplus: float
    sigmas: float | None  # None when the shuffled ensemble has zero spread

    @property
    def sample_count(self) -> int:
        return len(self.samples)

    @property
    def degenerate(self) -> bool:
        return self.sigmas is None


def stats_from_samples(c: float, samples: Sequence[float]) -> ShuffleStats:
    """Log-space ensemble statistics; samples are sorted before reduction."""
    if len(samples) < 2:
        raise ValueError("need at least two shuffled samples")
    ordered = sorted(float(x) for x in samples)
    logs = np.log(np.asarray(ordered))
    ln_mean = float(np.mean(logs))
    ln_std = float(np.std(logs, ddof=1))
    geo = math.exp(ln_mean)
    if ordered[0] == ordered[-1]:
        sigmas = None
        ln_std = 0.0
    else:
        sigmas = abs(math.log(c) - ln_mean) / ln_std
    return ShuffleStats(c, tuple(ordered), ln_mean, ln_std, geo, c - geo, sigmas)


def _member(args) -> float:
    g, seed, budget = args
    return complexity_weighted(shuffle(g, seed), budget=budget).c_bits


def shuffled_complexities(
    g: WeightedDigraph, samples: int, rng_seed: int, workers: int = 1, budget: int = DEFAULT_BUDGET
) -> list[float]:
    """Complexity of ``samples`` independent shuffles, member i on substream i."""
    children = seed_sequence(rng_seed).spawn(samples)
    jobs = [(g, child, budget) for child in children]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_member, jobs, chunksize=max(1, samples // (4 * workers))))
    return [_member(job) for job in jobs]


def surplus_analysis(
    g: WeightedDigraph,
    samples: int = 100,
    rng_seed: int = 0,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
    c: float | None = None,
) -> ShuffleStats:
    if samples < 2:
        raise ValueError(f"samples must be >= 2, got {samples}")
    if c is None:
        c = complexity_weighted(g, budget=budget).c_bits
    values = shuffled_complexities(g, samples, rng_seed, workers=workers, budget=budget)
    return stats_from_samples(c, values)


def preferential_attachment(n: int, out_degree: int = 1, rng_seed: int = 0) -> WeightedDigraph:
    """Growth network: node t links to ``out_degree`` distinct earlier nodes.

    Targets are drawn without replacement with probability proportional to
    total degree + 1. Early nodes with fewer than ``out_degree`` predecessors
    link to all of them.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if out_degree < 1:
        raise ValueError(f"out_degree must be positive, got {out_degree}")
    rng = _rng(rng_seed)
    degree = np.zeros(n, dtype=float)
    links = []
    for t in range(1, n):
        k = min(out_degree, t)
        kernel = degree[:t] + 1.0
        targets = rng.choice(t, size=k, replace=False, p=kernel / kernel.sum())
        for d in sorted(targets.tolist()):
            links.append((t, d, 1.0))
            degree[d] += 1
        degree[t] += k
    return WeightedDigraph(n, tuple(links))
