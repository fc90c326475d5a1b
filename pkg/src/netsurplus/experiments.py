"""End-to-end pipelines: flow -> coarse-grained labels -> transition network."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .graph import WeightedDigraph
from .nullmodel import seed_sequence
from .sources import (
    henon_heiles_energy,
    henon_heiles_initial_state,
    henon_heiles_system,
    lorenz_system,
    rk4_integrate,
)
from .ts2net import Trajectory, coarse_grain, transitions_to_network

__all__ = ["FlowConfig", "LORENZ", "HENON", "flow_trajectory", "flow_network"]


@dataclass(frozen=True)
class FlowConfig:
    system: str
    bins: int
    dt: float
    steps: int
    transient: int = 1000
    stride: int = 1
    jitter: float = 0.0  # scale of a seeded perturbation of the initial condition
    energy: float = 0.125  # Henon-Heiles only
    occupied_only: bool = False

    def replace(self, **kw) -> "FlowConfig":
        return FlowConfig(**{**asdict(self), **kw})


LORENZ = FlowConfig("lorenz", bins=20, dt=0.01, steps=1000)
HENON = FlowConfig("henon", bins=10, dt=0.001, steps=100_000)


def _initial_state(cfg: FlowConfig, seed: int) -> tuple[float, ...]:
    rng = np.random.default_rng(seed_sequence(seed, 1))
    if cfg.system == "lorenz":
        x0 = np.array([1.0, 1.0, 1.0])
        if cfg.jitter:
            x0 = x0 + cfg.jitter * rng.standard_normal(3)
        return tuple(x0.tolist())
    if cfg.system == "henon":
        y0 = 0.1
        if cfg.jitter:
            y0 += cfg.jitter * float(rng.standard_normal())
        return henon_heiles_initial_state(cfg.energy, y0)
    raise ValueError(f"unknown flow {cfg.system!r}")


def flow_trajectory(cfg: FlowConfig, seed: int = 0) -> Trajectory:
    system = lorenz_system() if cfg.system == "lorenz" else henon_heiles_system()
    x0 = _initial_state(cfg, seed)
    traj = rk4_integrate(system, x0, cfg.dt, cfg.steps, cfg.transient, cfg.stride)
    traj.meta["x0"] = list(x0)
    if cfg.system == "henon":
        e = np.array([henon_heiles_energy(r) for r in traj.samples])
        e0 = henon_heiles_energy(x0)
        traj.meta["energy_drift"] = float(np.max(np.abs(e - e0)) / abs(e0))
    return traj


def flow_network(cfg: FlowConfig, seed: int = 0) -> tuple[WeightedDigraph, Trajectory, int]:
    """Transition network over the full bins**d cell grid (unless occupied_only)."""
    traj = flow_trajectory(cfg, seed)
    labels = coarse_grain(traj, cfg.bins)
    g, dropped = transitions_to_network(labels, occupied_only=cfg.occupied_only)
    return g, traj, dropped
