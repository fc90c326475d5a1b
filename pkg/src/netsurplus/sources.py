"""Timeseries sources: RK4 flows and elementary cellular automata."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .automorphism import DEFAULT_BUDGET
from .graph import WeightedDigraph
from .nullmodel import seed_sequence, surplus_analysis
from .ts2net import LabelSeries, Trajectory, transitions_to_network

__all__ = [
    "IntegrationError",
    "OdeSystem",
    "rk4_integrate",
    "lorenz_system",
    "henon_heiles_system",
    "henon_heiles_energy",
    "henon_heiles_initial_state",
    "LORENZ_DEFAULTS",
    "HENON_DEFAULTS",
    "CaRule",
    "langton_lambda",
    "ca_step_table",
    "ca_run",
    "ca_network",
    "SweepRow",
    "ca_rule_row",
    "ca_sweep",
]


class IntegrationError(ArithmeticError):
    def __init__(self, step: int, state):
        self.step = step
        super().__init__(f"non-finite state at integration step {step}: {tuple(state)}")


@dataclass(frozen=True)
class OdeSystem:
    name: str
    dimension: int
    derivative: Callable[[Sequence[float]], Sequence[float]]
    parameters: dict = field(default_factory=dict)


def rk4_integrate(
    sys: OdeSystem,
    x0: Sequence[float],
    dt: float,
    steps: int,
    transient: int = 0,
    stride: int = 1,
) -> Trajectory:
    """Classical fixed-step RK4.

    Runs ``transient`` unrecorded steps, then ``steps`` more, recording the
    state at the start of that stretch and after every ``stride``-th step.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if steps < 1 or stride < 1 or transient < 0:
        raise ValueError("need steps >= 1, stride >= 1, transient >= 0")
    x = [float(v) for v in x0]
    d = sys.dimension
    if len(x) != d:
        raise ValueError(f"initial state has dimension {len(x)}, system needs {d}")
    f = sys.derivative
    h2, h6 = dt / 2.0, dt / 6.0
    out = np.empty((steps // stride + 1, d))
    row = 0
    total = transient + steps
    for step in range(total + 1):
        if step >= transient and (step - transient) % stride == 0:
            out[row] = x
            row += 1
        if step == total:
            break
        k1 = f(x)
        k2 = f([a + h2 * b for a, b in zip(x, k1)])
        k3 = f([a + h2 * b for a, b in zip(x, k2)])
        k4 = f([a + dt * b for a, b in zip(x, k3)])
        x = [a + h6 * (b1 + 2.0 * (b2 + b3) + b4) for a, b1, b2, b3, b4 in zip(x, k1, k2, k3, k4)]
        if not all(math.isfinite(v) for v in x):
            raise IntegrationError(step + 1, x)
    meta = {"system": sys.name, "dt": dt, "steps": steps, "transient": transient, "stride": stride}
    return Trajectory(out[:row], meta)


LORENZ_DEFAULTS = {"sigma": 10.0, "rho": 28.0, "beta": 8.0 / 3.0}


def lorenz_system(sigma: float = 10.0, rho: float = 28.0, beta: float = 8.0 / 3.0) -> OdeSystem:
    def f(s):
        x, y, z = s
        return (sigma * (y - x), x * (rho - z) - y, x * y - beta * z)

    return OdeSystem("lorenz", 3, f, {"sigma": sigma, "rho": rho, "beta": beta})


def henon_heiles_system() -> OdeSystem:
    """First-order form over (x, y, x', y')."""

    def f(s):
        x, y, px, py = s
        return (px, py, -x - 2.0 * x * y, -y - (x * x - y * y))

    return OdeSystem("henon-heiles", 4, f, {})


def henon_heiles_energy(state) -> float:
    x, y, px, py = state
    return 0.5 * (px * px + py * py) + 0.5 * (x * x + y * y) + x * x * y - y**3 / 3.0


def henon_heiles_initial_state(energy: float = 0.125, y0: float = 0.1) -> tuple[float, ...]:
    """(0, y0, x', 0) with x' > 0 chosen to put the orbit on the given energy shell."""
    potential = 0.5 * y0 * y0 - y0**3 / 3.0
    kinetic = energy - potential
    if kinetic < 0:
        raise ValueError(f"energy {energy} below the potential at y0={y0}")
    return (0.0, y0, math.sqrt(2.0 * kinetic), 0.0)


HENON_DEFAULTS = {"energy": 0.125, "y0": 0.1}


@dataclass(frozen=True)
class CaRule:
    rule_number: int

    def __post_init__(self) -> None:
        if not 0 <= self.rule_number <= 255:
            raise ValueError(f"elementary CA rule must be in 0..255, got {self.rule_number}")

    @property
    def lam(self) -> float:
        return langton_lambda(self.rule_number)

    def output(self, left: int, centre: int, right: int) -> int:
        return (self.rule_number >> (4 * left + 2 * centre + right)) & 1


def langton_lambda(rule_number: int) -> float:
    """Fraction of the 8 neighbourhoods mapped to the non-quiescent state 1."""
    if not 0 <= rule_number <= 255:
        raise ValueError(f"elementary CA rule must be in 0..255, got {rule_number}")
    return bin(rule_number).count("1") / 8.0


def ca_step_table(rule: int, cells: int) -> np.ndarray:
    """Successor of every global state of a periodic ring of ``cells`` cells.

    Bit i of a state is cell i; cell i's left neighbour is cell i-1.
    """
    states = np.arange(1 << cells, dtype=np.int64)
    nxt = np.zeros_like(states)
    for i in range(cells):
        left = (states >> ((i - 1) % cells)) & 1
        centre = (states >> i) & 1
        right = (states >> ((i + 1) % cells)) & 1
        nxt |= ((rule >> (4 * left + 2 * centre + right)) & 1) << i
    return nxt


def ca_run(rule: int | CaRule, cells: int, transient: int, steps: int, rng_seed) -> LabelSeries:
    """Random initial ring, ``transient`` updates discarded, then ``steps`` states recorded."""
    rule = rule.rule_number if isinstance(rule, CaRule) else int(rule)
    CaRule(rule)
    if not 1 <= cells <= 20:
        raise ValueError(f"cells must be in 1..20, got {cells}")
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    table = ca_step_table(rule, cells)
    rng = np.random.default_rng(seed_sequence(rng_seed))
    state = int(rng.integers(0, 1 << cells))
    for _ in range(transient):
        state = int(table[state])
    labels = np.empty(steps, dtype=np.int64)
    for t in range(steps):
        labels[t] = state
        state = int(table[state])
    return LabelSeries(labels, 1 << cells)


def ca_network(rule: int, cells: int, transient: int, steps: int, seeds: Sequence) -> tuple[WeightedDigraph, int]:
    """Transition network with counts summed over one run per seed."""
    counts: dict[tuple[int, int], float] = {}
    dropped = 0
    for seed in seeds:
        g, d = transitions_to_network(ca_run(rule, cells, transient, steps, seed))
        dropped += d
        for s, t, w in g.links:
            counts[(s, t)] = counts.get((s, t), 0.0) + w
    n = 1 << cells
    return WeightedDigraph(n, tuple((s, t, w) for (s, t), w in counts.items())), dropped


@dataclass(frozen=True)
class SweepRow:
    rule: int
    lam: float
    nodes: int
    links: int
    c: float
    geo_mean_shuffled: float
    surplus: float
    sigmas: float | None


def ca_rule_row(
    rule: int,
    cells: int = 10,
    transient: int = 1000,
    steps: int = 1000,
    seeds_per_rule: int = 1,
    ensemble_samples: int = 100,
    master_seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> SweepRow:
    streams = seed_sequence(master_seed, rule).spawn(seeds_per_rule + 1)
    g, _ = ca_network(rule, cells, transient, steps, streams[:-1])
    st = surplus_analysis(g, ensemble_samples, streams[-1], budget=budget)
    return SweepRow(rule, langton_lambda(rule), g.n, g.l, st.c, st.geo_mean, st.surplus, st.sigmas)


def _row_job(kwargs) -> SweepRow:
    return ca_rule_row(**kwargs)


def ca_sweep(
    cells: int = 10,
    transient: int = 1000,
    steps: int = 1000,
    seeds_per_rule: int = 1,
    ensemble_samples: int = 100,
    master_seed: int = 0,
    rules: Sequence[int] = range(256),
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[SweepRow]:
    """Yield one row per rule in rule order; each rule has its own seed substream."""
    jobs = [
        dict(rule=r, cells=cells, transient=transient, steps=steps, seeds_per_rule=seeds_per_rule,
             ensemble_samples=ensemble_samples, master_seed=master_seed, budget=budget)
        for r in rules
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(_row_job, jobs)
    else:
        for job in jobs:
            yield _row_job(job)
