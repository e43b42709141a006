"""Node embeddings from context graphs."""

from ._core import (
    Error,
    Graph,
    ParseError,
    PreconditionError,
    SplitError,
    __version__,
    clustering_coefficient,
    diameter,
    embed,
    erdos_renyi,
    factorize,
    layered_dag,
    link_prediction,
    load_edge_list,
    methods,
    profile,
    reciprocity,
    roc_auc,
    spectral_separation,
    transitivity,
    verify,
)

__all__ = [
    "Error",
    "Graph",
    "ParseError",
    "PreconditionError",
    "SplitError",
    "__version__",
    "clustering_coefficient",
    "diameter",
    "embed",
    "erdos_renyi",
    "factorize",
    "layered_dag",
    "link_prediction",
    "load_edge_list",
    "methods",
    "profile",
    "reciprocity",
    "roc_auc",
    "spectral_separation",
    "transitivity",
    "verify",
]
