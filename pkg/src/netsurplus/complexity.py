"""Information content of a digraph and its weighted-threshold decomposition.

For an unweighted graph the complexity in bits is the encoding length minus
log2 of the number of linklists describing the same unlabelled graph,
``omega = n! / |Aut|``. Weighted graphs are handled as a weighted sum over the
threshold graphs ``G_{>=w}`` for each distinct weight ``w``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import IO

from .automorphism import DEFAULT_BUDGET, AutResult, automorphism_log_size
from .graph import EncodingLength, WeightedDigraph, description_length, log2_factorial

__all__ = [
    "LevelComplexity",
    "ComplexityReport",
    "level_complexity",
    "complexity_unweighted",
    "complexity_weighted",
    "write_report_csv",
    "REPORT_COLUMNS",
]

REPORT_COLUMNS = ("threshold", "coefficient", "n", "l", "length_bits", "log2_aut", "c_bits")


@dataclass(frozen=True)
class LevelComplexity:
    threshold: float
    coefficient: float
    n: int
    l: int
    length: EncodingLength
    log2_aut: float
    c_bits: float

    @property
    def log2_omega(self) -> float:
        return log2_factorial(self.n) - self.log2_aut


@dataclass(frozen=True)
class ComplexityReport:
    c_bits: float
    n: int
    l: int
    levels: tuple[LevelComplexity, ...] = field(default_factory=tuple)


def level_complexity(
    g: WeightedDigraph, aut: AutResult | None = None, budget: int = DEFAULT_BUDGET
) -> tuple[float, EncodingLength, AutResult]:
    if aut is None:
        aut = automorphism_log_size(g, budget=budget)
    length = description_length(g.n, g.l)
    c = length.total_bits - (log2_factorial(g.n) - aut.log2_aut)
    return c, length, aut


def complexity_unweighted(g: WeightedDigraph, budget: int = DEFAULT_BUDGET) -> float:
    """Bits of ``g`` with weights ignored: ``l_{n,l} - log2(n!/|Aut|)``."""
    return level_complexity(g, budget=budget)[0]


def complexity_weighted(g: WeightedDigraph, budget: int = DEFAULT_BUDGET) -> ComplexityReport:
    """Weighted sum of threshold-graph complexities.

    With distinct weights ``w_1 > ... > w_k`` normalised by ``w_1`` and
    ``w_{k+1} = 0``, level ``i`` keeps links of weight ``>= w_i`` and carries
    coefficient ``(w_i - w_{i+1}) / w_1``. A link-free graph is a single level
    with coefficient 1.
    """
    weights = g.distinct_weights()
    if not weights:
        c, length, aut = level_complexity(g, budget=budget)
        level = LevelComplexity(0.0, 1.0, g.n, 0, length, aut.log2_aut, c)
        return ComplexityReport(c, g.n, 0, (level,))
    top = weights[0]
    levels = []
    for i, w in enumerate(weights):
        nxt = weights[i + 1] if i + 1 < len(weights) else 0.0
        coef = (w - nxt) / top
        sub = g.threshold(w)
        c, length, aut = level_complexity(sub, budget=budget)
        levels.append(LevelComplexity(w, coef, sub.n, sub.l, length, aut.log2_aut, c))
    if len(levels) == 1:
        total = levels[0].c_bits
    else:
        total = sum(lv.coefficient * lv.c_bits for lv in levels)
    return ComplexityReport(total, g.n, g.l, tuple(levels))


def _fmt(x: float) -> str:
    return repr(float(x))


def write_report_csv(report: ComplexityReport, sink: IO[str], header: tuple[str, ...] = ()) -> None:
    for line in header:
        sink.write(f"# {line}\n")
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for lv in report.levels:
        w.writerow([
            _fmt(lv.threshold), _fmt(lv.coefficient), lv.n, lv.l,
            lv.length.total_bits, _fmt(lv.log2_aut), _fmt(lv.c_bits),
        ])
    w.writerow(["summary", "1.0", report.n, report.l, "", "", _fmt(report.c_bits)])


def report_csv(report: ComplexityReport, header: tuple[str, ...] = ()) -> str:
    buf = io.StringIO()
    write_report_csv(report, buf, header)
    return buf.getvalue()
