"""Edge coloring of multigraphs: regularization, decomposition and overfull certificates."""

from .decompose import DecompositionResult, run_pipeline
from .edge_color import EdgeColoring, check_proper, chromatic_index_exact
from .errors import DomainError, InputError, InternalError, MgColorError, ResourceError
from .multigraph import Multigraph
from .overfull import find_delta_overfull_subgraph

__version__ = "0.1.0"

__all__ = [
    "DecompositionResult", "run_pipeline", "EdgeColoring", "check_proper", "chromatic_index_exact",
    "DomainError", "InputError", "InternalError", "MgColorError", "ResourceError", "Multigraph",
    "find_delta_overfull_subgraph",
]
