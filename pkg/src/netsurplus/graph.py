"""Directed weighted graphs, their binary encoding length, and log-space helpers."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import IO, Iterable

__all__ = [
    "GraphParseError",
    "WeightedDigraph",
    "EncodingLength",
    "description_length",
    "log2_factorial",
    "log2_binomial",
    "ceil_log2_binomial",
    "load_graph",
    "loads_graph",
    "dump_graph",
    "dumps_graph",
]

_EXACT_FACTORIAL_LIMIT = 1000
_LN2 = math.log(2.0)
# Distance from an integer below which a float ceil(log2) is not trusted.
_CEIL_GUARD = 1e-6


class GraphParseError(ValueError):
    """Malformed edge-list input; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class WeightedDigraph:
    """Node count plus directed, positively weighted links without self-loops.

    ``links`` is stored as a tuple of ``(src, dst, weight)`` sorted by
    ``(src, dst)`` so that equal graphs compare and hash equal regardless of
    construction order. ``labels`` optionally records external node names;
    it takes no part in equality.
    """

    n: int
    links: tuple[tuple[int, int, float], ...] = ()
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        n = self.n
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"node count must be a positive integer, got {n!r}")
        cleaned = []
        seen = set()
        for src, dst, w in self.links:
            src, dst, w = int(src), int(dst), float(w)
            if not (0 <= src < n and 0 <= dst < n):
                raise ValueError(f"link {src}->{dst} out of node range [0, {n})")
            if src == dst:
                raise ValueError(f"self-loop {src}->{dst} not allowed")
            if not (w > 0.0) or not math.isfinite(w):
                raise ValueError(f"link {src}->{dst} has non-positive weight {w}")
            if (src, dst) in seen:
                raise ValueError(f"duplicate link {src}->{dst}")
            seen.add((src, dst))
            cleaned.append((src, dst, w))
        cleaned.sort(key=lambda t: (t[0], t[1]))
        object.__setattr__(self, "links", tuple(cleaned))
        if self.labels is not None:
            if len(self.labels) != n:
                raise ValueError("labels must have one entry per node")
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def l(self) -> int:
        return len(self.links)

    @property
    def max_links(self) -> int:
        return self.n * (self.n - 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(s, d) for s, d, _ in self.links]

    def weights(self) -> list[float]:
        return [w for _, _, w in self.links]

    def distinct_weights(self) -> list[float]:
        """Distinct link weights, largest first."""
        return sorted(set(self.weights()), reverse=True)

    def threshold(self, w: float) -> "WeightedDigraph":
        """All n nodes, keeping only links of weight >= ``w``."""
        return WeightedDigraph(self.n, tuple(t for t in self.links if t[2] >= w))

    def unweighted(self) -> "WeightedDigraph":
        return WeightedDigraph(self.n, tuple((s, d, 1.0) for s, d, _ in self.links))

    def relabel(self, perm: Iterable[int]) -> "WeightedDigraph":
        """Image of the graph under node map ``i -> perm[i]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise ValueError("relabel needs a permutation of range(n)")
        return WeightedDigraph(self.n, tuple((perm[s], perm[d], w) for s, d, w in self.links))

    def isolated_count(self) -> int:
        touched = set()
        for s, d, _ in self.links:
            touched.add(s)
            touched.add(d)
        return self.n - len(touched)


@dataclass(frozen=True)
class EncodingLength:
    """Bit length of the prefix-free description of an n-node, l-link digraph."""

    prefix_bits: int
    linkcount_bits: int
    linklist_bits: int

    @property
    def total_bits(self) -> int:
        # the extra 1 is the stop bit closing the unary prefix
        return 1 + self.prefix_bits + self.linkcount_bits + self.linklist_bits


def _exact_table(limit: int) -> list[float]:
    table = [0.0] * (limit + 1)
    acc = []
    for k in range(2, limit + 1):
        acc.append(math.log2(k))
        table[k] = math.fsum(acc)
    return table


_LOG2_FACT = _exact_table(_EXACT_FACTORIAL_LIMIT)


def log2_factorial(k: int) -> float:
    """log2(k!); exact summation up to 1000, log-gamma above."""
    if k < 0:
        raise ValueError(f"factorial of negative number {k}")
    if k <= _EXACT_FACTORIAL_LIMIT:
        return _LOG2_FACT[k]
    return math.lgamma(k + 1) / _LN2


def log2_binomial(big: int, small: int) -> float:
    """log2 C(big, small) evaluated in floating point."""
    if small < 0 or small > big:
        raise ValueError(f"binomial({big}, {small}) undefined")
    k = min(small, big - small)
    if k == 0:
        return 0.0
    if k <= 64:
        return math.fsum(math.log2(big - i) - math.log2(i + 1) for i in range(k))
    return (math.lgamma(big + 1) - math.lgamma(k + 1) - math.lgamma(big - k + 1)) / _LN2


def _log2_binomial_error(big: int, small: int) -> float:
    k = min(small, big - small)
    if k <= 64:
        return 1e-13 * max(1, k)
    # lgamma carries ~1 ulp relative error in each of three large terms
    return 8 * 2.3e-16 * (math.lgamma(big + 1) / _LN2 + 1.0)


def ceil_log2_binomial(big: int, small: int) -> int:
    """Exact ceil(log2 C(big, small)).

    The float estimate is used unless it lies within the rounding guard of an
    integer, in which case the binomial is formed exactly.
    """
    est = log2_binomial(big, small)
    guard = max(_CEIL_GUARD, _log2_binomial_error(big, small))
    nearest = round(est)
    if abs(est - nearest) > guard:
        return math.ceil(est)
    omega = math.comb(big, small)
    return (omega - 1).bit_length()


def _ceil_log2_int(x: int) -> int:
    return 0 if x <= 1 else (x - 1).bit_length()


def description_length(n: int, l: int) -> EncodingLength:
    """Encoding length of a directed graph with ``n`` nodes and ``l`` links.

    Unary prefix of ceil(log2 n) ones, a stop bit, n itself in ceil(log2 n)
    bits, the link count in ceil(log2(n(n-1))) bits, then the rank of the
    linklist among the C(n(n-1), l) possibilities.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"node count must be >= 1, got n={n!r}")
    pairs = n * (n - 1)
    if not isinstance(l, int) or l < 0 or l > pairs:
        raise ValueError(f"link count l={l!r} outside [0, {pairs}] for n={n}")
    node_bits = _ceil_log2_int(n)
    # ceil(log2 n + log2(n-1)) == ceil(log2(n(n-1))) for integer arguments
    linkcount_bits = _ceil_log2_int(pairs)
    return EncodingLength(
        prefix_bits=2 * node_bits,
        linkcount_bits=linkcount_bits,
        linklist_bits=ceil_log2_binomial(pairs, l),
    )


def _format_weight(w: float) -> str:
    if w.is_integer() and abs(w) < 2**53:
        return str(int(w))
    return repr(w)


def loads_graph(text: str) -> WeightedDigraph:
    return load_graph(io.StringIO(text))


def load_graph(source: IO[str] | IO[bytes]) -> WeightedDigraph:
    """Parse the edge-list format: ``n <count>`` then ``src dst weight`` lines."""
    n = None
    links: list[tuple[int, int, float]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(source, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphParseError(f"expected 'n <count>', got {line!r}", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphParseError(f"bad node count {parts[1]!r}", lineno) from None
            if n < 1:
                raise GraphParseError(f"node count must be positive, got {n}", lineno)
            continue
        if len(parts) != 3:
            raise GraphParseError(f"expected 'src dst weight', got {line!r}", lineno)
        try:
            src, dst = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise GraphParseError(f"unparseable link {line!r}", lineno) from None
        if not (0 <= src < n and 0 <= dst < n):
            raise GraphParseError(f"node id out of range [0, {n}) in {line!r}", lineno)
        if src == dst:
            raise GraphParseError(
                f"self-loop {src}->{dst}: the encoding counts only n(n-1) ordered pairs", lineno
            )
        if not (w > 0.0) or not math.isfinite(w):
            raise GraphParseError(f"weight must be positive and finite, got {parts[2]}", lineno)
        if (src, dst) in seen:
            raise GraphParseError(
                f"duplicate link {src}->{dst} (first seen on line {seen[(src, dst)]})", lineno
            )
        seen[(src, dst)] = lineno
        links.append((src, dst, w))
    if n is None:
        raise GraphParseError("missing 'n <count>' header")
    return WeightedDigraph(n, tuple(links))


def dump_graph(g: WeightedDigraph, sink: IO[str], header: Iterable[str] = ()) -> None:
    for line in header:
        sink.write(f"# {line}\n")
    sink.write(f"n {g.n}\n")
    for s, d, w in g.links:
        sink.write(f"{s} {d} {_format_weight(w)}\n")


def dumps_graph(g: WeightedDigraph, header: Iterable[str] = ()) -> str:
    buf = io.StringIO()
    dump_graph(g, buf, header)
    return buf.getvalue()
