"""Information-based complexity of weighted digraphs and its shuffle surplus."""

from .automorphism import AutResult, AutomorphismBudgetError, automorphism_brute_force, automorphism_log_size
from .complexity import ComplexityReport, complexity_unweighted, complexity_weighted
from .graph import (
    EncodingLength,
    GraphParseError,
    WeightedDigraph,
    description_length,
    load_graph,
    loads_graph,
    log2_factorial,
)
from .nullmodel import ShuffleStats, preferential_attachment, shuffle, surplus_analysis
from .sources import (
    CaRule,
    IntegrationError,
    ca_run,
    ca_sweep,
    henon_heiles_system,
    langton_lambda,
    lorenz_system,
    rk4_integrate,
)
from .ts2net import (
    LabelSeries,
    Trajectory,
    coarse_grain,
    optimal_window,
    ordinal_encode,
    transitions_to_network,
)

__version__ = "0.1.0"
