"""Spectral ordering and clustering of graphs, compared through the label continuity error."""

from .graph import Graph, is_connected, load_edge_list, read_edge_list
from .kernels import BACKEND
from .matrices import (MatrixKind, MatrixSpec, build_matrix, default_bethe_r,
                       default_reg_tau)
from .eigen import End, SpectrumResult, eig_symmetric
from .ordering import Ordering, bethe_sweep, h2, rank_discretize, spectral_order
from .partition import Partition
from .clustering import bipartition_by_sign, kmeans, spectral_cluster, spectral_embed
from .metrics import (kendall_tau, label_continuity, lce, max_group_fraction, max_lce,
                      mean_lce, nested_lce_bounds, nmi, normalized_lce, null_pmf, var_lce)
from .models import (OrgmParams, SbmParams, orgm_generate, orgm_params, sbm_generate,
                     sbm_planted_params)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "End", "Graph", "MatrixKind", "MatrixSpec", "Ordering", "OrgmParams",
    "Partition", "SbmParams", "SpectrumResult", "bethe_sweep", "bipartition_by_sign",
    "build_matrix", "default_bethe_r", "default_reg_tau", "eig_symmetric", "h2",
    "is_connected", "kendall_tau", "kmeans", "label_continuity", "lce", "load_edge_list",
    "max_group_fraction", "max_lce", "mean_lce", "nested_lce_bounds", "nmi",
    "normalized_lce", "null_pmf", "orgm_generate", "orgm_params", "rank_discretize",
    "read_edge_list", "sbm_generate", "sbm_planted_params", "spectral_cluster",
    "spectral_embed", "spectral_order", "var_lce",
]
