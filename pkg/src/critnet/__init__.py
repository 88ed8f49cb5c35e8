"""critnet: critical scale-free network generation and distance measurement.

Preferential attachment graphs with concave attachment rules at the
power-law boundary, Norros-Reittu rank-one graphs with matching heavy
tails, exact analytic diagnostics for both, and experiment drivers for
typical-distance scaling.
"""

__version__ = "0.1.0"

from .backend import backend_name
from .rules import AttachmentRule, TruncationSequence, truncation_sequence, xi, phi, phi_inverse, mu
from .graph import Graph, bfs_distance, components, load_edge_list, save_edge_list, subset_diameter
from .pa import generate, reference_generate, simulate_evolution
from .nr import WeightDistribution, generate_nr, reference_generate_nr, sample_weight, weight_diagnostics
from .explore import Configuration, new_exploration, run_to_score, is_proper

__all__ = [
    "__version__", "backend_name",
    "AttachmentRule", "TruncationSequence", "truncation_sequence", "xi", "phi",
    "phi_inverse", "mu",
    "Graph", "bfs_distance", "components", "load_edge_list", "save_edge_list",
    "subset_diameter",
    "generate", "reference_generate", "simulate_evolution",
    "WeightDistribution", "generate_nr", "reference_generate_nr", "sample_weight",
    "weight_diagnostics",
    "Configuration", "new_exploration", "run_to_score", "is_proper",
]
