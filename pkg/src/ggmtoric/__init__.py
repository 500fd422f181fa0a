"""Exact algebra for Gaussian graphical models on block graphs.

Conditional independence ideals, the shortest path toric map, fiber-graph
Markov checks and the degree-two generation theorem, all over the rationals.
"""

from .ci import (
    GeneratorSet, check_degree2_theorem, ci_generators_1clique, ci_generators_full,
    counterexample_suite, graded_membership, graded_piece_dim, partition_minors,
    sagbi_homogeneity_check,
)
from .graph import (
    Graph, OneCliquePartition, Separation, biconnected_components, central_vertices,
    contract_to_center, is_block_graph, one_clique_partitions, separations, shortest_path,
)
from .maps import (
    ExponentMatrix, build_matrix, contraction_check, kernel_member, kii_relation_check,
    maps_share_kernel, phi_image, psi_image, row_space_equal,
)
from .poly import Monomial, Polynomial, TermOrder, Var, parse_polynomial
from .symlinalg import (
    adjugate_entry, check_shortest_path_term, model_dimension, rho_star_check,
    rho_star_substitute, rho_star_vanishes,
)
from .toric import (
    CircularEmbedding, Fiber, Move, buchberger_binomial, circular_weight, enumerate_fiber,
    fiber_graph_connected, nonintersecting_basis, restrict_to_Gcircle, verify_markov,
)

__version__ = "0.1.0"
