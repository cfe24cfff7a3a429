"""Exact combinatorics of dual complexes of Hilbert schemes of points on simple degenerations."""

from .delta_complex import (
    CellAction,
    DeltaComplex,
    HomologyResult,
    IntMatrix,
    SmithForm,
    Violation,
    boundary_matrix,
    cell_vertices,
    euler_characteristic,
    f_vector,
    homology,
    is_simplicial,
    quotient,
    relabel,
    smith_normal_form,
    spanned_subcomplex,
    validate,
)
from .expansion import BlackNode, ExpandedGraph, IndexSet, WhiteNode, all_index_sets, expand
from .graph import (
    Arrow,
    GraphError,
    OrientedGraph,
    OrientationError,
    bipartite_partition,
    has_directed_cycle,
    has_odd_cycle,
    is_bipartitely_oriented,
    is_tree,
    parse_graph,
)
from .stability import (
    StabilityError,
    StratumIndex,
    enumerate_strata,
    enumerate_tuples,
    is_stable,
    stratum_facet,
    tuple_counts,
    tuple_facet,
)
from .sym_product import (
    ComplexTooLargeError,
    ProductCell,
    SymCell,
    compare,
    induced_weights,
    minimal_span,
    product_complex,
    quotient_sym,
    simplicial_for_all_n,
    skeleton_complex,
    sym_complex,
    sym_face,
)

__version__ = "0.1.0"

__all__ = [
    "Arrow",
    "BlackNode",
    "CellAction",
    "ComplexTooLargeError",
    "DeltaComplex",
    "ExpandedGraph",
    "GraphError",
    "HomologyResult",
    "IndexSet",
    "IntMatrix",
    "OrientationError",
    "OrientedGraph",
    "ProductCell",
    "SmithForm",
    "StabilityError",
    "StratumIndex",
    "SymCell",
    "Violation",
    "WhiteNode",
    "all_index_sets",
    "bipartite_partition",
    "boundary_matrix",
    "cell_vertices",
    "compare",
    "enumerate_strata",
    "enumerate_tuples",
    "euler_characteristic",
    "expand",
    "f_vector",
    "has_directed_cycle",
    "has_odd_cycle",
    "homology",
    "induced_weights",
    "is_bipartitely_oriented",
    "is_simplicial",
    "is_stable",
    "is_tree",
    "minimal_span",
    "parse_graph",
    "product_complex",
    "quotient",
    "quotient_sym",
    "relabel",
    "simplicial_for_all_n",
    "skeleton_complex",
    "smith_normal_form",
    "spanned_subcomplex",
    "stratum_facet",
    "sym_complex",
    "sym_face",
    "tuple_counts",
    "tuple_facet",
    "validate",
]
