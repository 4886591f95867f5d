"""Mutuality-tendency-aware spectral clustering for directed graphs.

Directed social graphs mix mutual (bidirectional) and one-way links.
This package measures how strongly node pairs tend to reciprocate
relative to a degree-preserving chance model, assembles those
tendencies into a symmetric (indefinite) Laplacian, and clusters by
minimizing the cross-cluster tendency ratio cut.  Classical
symmetrization baselines, a planted-partition generator, and a CLI for
reproduction experiments are included.
"""

from .cluster import (
    ClusterOptions,
    ClusteringResult,
    adjusted_rand_index,
    kmeans,
    sign_bipartition,
    tendency_spectral_clustering,
)
from .baselines import (
    SymmetricAffinity,
    baseline_spectral_clustering,
    cut_objectives,
    standard_laplacian,
    symmetrize,
)
from .eigen import (
    MatrixOperator,
    Spectrum,
    dense_symmetric_eig,
    deflated_dense_eig,
    eigengap_select,
    smallest_eigenpairs,
)
from .graph import (
    DegreeProfile,
    Digraph,
    degree_profile,
    extract_core,
    from_edges,
    induced_subgraph,
    largest_scc,
    load_edge_list,
    strongly_connected_components,
    write_edge_list,
)
from .laplacian import (
    TendencyOperator,
    bilinear_form,
    build_tendency_operator,
    dense_tendency_laplacian,
    dense_tendency_matrix,
)
from .synth import (
    SyntheticSpec,
    generate_planted,
    paper_three_cluster_spec,
    paper_two_cluster_spec,
    planted_ari_experiment,
)
from .tendency import (
    DyadCensus,
    TendencyStats,
    average_tendency_report,
    cluster_tendency,
    cross_tendency,
    dyad_census,
    dyad_tendency,
    graph_tendency,
    trcut,
    wolfe_rho,
    wolfe_rho_graph,
)

__version__ = "0.1.0"

__all__ = [
    "ClusterOptions",
    "ClusteringResult",
    "DegreeProfile",
    "Digraph",
    "DyadCensus",
    "MatrixOperator",
    "Spectrum",
    "SymmetricAffinity",
    "SyntheticSpec",
    "TendencyOperator",
    "TendencyStats",
    "adjusted_rand_index",
    "average_tendency_report",
    "baseline_spectral_clustering",
    "bilinear_form",
    "build_tendency_operator",
    "cluster_tendency",
    "cross_tendency",
    "cut_objectives",
    "degree_profile",
    "dense_symmetric_eig",
    "dense_tendency_laplacian",
    "dense_tendency_matrix",
    "deflated_dense_eig",
    "dyad_census",
    "dyad_tendency",
    "eigengap_select",
    "extract_core",
    "from_edges",
    "generate_planted",
    "graph_tendency",
    "induced_subgraph",
    "kmeans",
    "largest_scc",
    "load_edge_list",
    "paper_three_cluster_spec",
    "paper_two_cluster_spec",
    "planted_ari_experiment",
    "sign_bipartition",
    "smallest_eigenpairs",
    "standard_laplacian",
    "strongly_connected_components",
    "symmetrize",
    "tendency_spectral_clustering",
    "trcut",
    "wolfe_rho",
    "wolfe_rho_graph",
    "write_edge_list",
]
