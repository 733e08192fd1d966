"""Edge-labeled phylogenetic trees and the single-event path relations they
induce, in both directions: compute the relations of a labeled tree, and
reconstruct explaining trees from observed relations."""

from .core import (
    EdgeLabeling,
    PhyloTree,
    QuotientGraph,
    RelationGraph,
    RootedTriple,
    canonical_form,
    contract_edge,
    displays_triple,
    is_binary,
    is_phylogenetic,
    lca,
    tree_path,
)
from .binary import classify_star, count_binary, least_resolved_trees, refine_all_binary
from .directed import (
    close_triples,
    infer_rooted,
    infer_rooted_component,
    reconstruct_rooted,
    triples_for_component,
    triples_for_path,
    verify_displays,
)
from .errors import RGCError
from .formats import parse_newick, parse_relation, serialize_dot, serialize_newick, serialize_relation
from .mixed import admissible_roots, orient, reconstruct_mixed
from .quotient import build_quotient, lift_tree
from .recognize import Accepted, Rejection, central_vertices, check_directed, check_mixed, check_undirected
from .relations import (
    PathSummary,
    explains,
    induced_relation,
    path_summary,
    relation_at_least_k,
    relation_directed1,
    relation_single1,
    relation_squiggle,
    relation_zero,
)
from .undirected import (
    alg1_component,
    alg2_forest,
    component_tree,
    forest_tree,
    make_least_resolved,
    minimally_resolved,
    phi,
    phi_inverse,
)

__version__ = "0.1.0"
