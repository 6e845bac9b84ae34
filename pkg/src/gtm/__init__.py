"""Generalised tree modules over zero-relation algebras: push-downs,
hom-space generators via graph maps on mixed networks, ghost detection,
and (in)decomposability certificates with an exact linear-algebra oracle."""

from .dynkin import (
    CatalogReport,
    DynkinDSpec,
    dynkin_d_quiver,
    module_for_root,
    positive_roots,
    standard_spec,
    verify_catalog,
    wrong_choice_variants,
)
from .fields import GF3, PrimeField, QQ, Rationals
from .graphmap import (
    Ghost,
    GhostObstruction,
    GraphMap,
    ModulePair,
    PreconditionError,
    Subnetwork,
    carve_block_free,
    carve_graph_map,
    components,
    decompose_hom,
    enumerate_ghosts,
    enumerate_graph_maps,
    hom_of_subnetwork,
    is_block_free,
    is_complete,
    is_connected,
    is_ghost_free,
    is_involution_free,
    is_involution_invariant,
    witness_counts,
)
from .indec import (
    Verdict,
    certify_indecomposable,
    classify,
    coefficient_conditions,
    fork_decompose,
    sibling_pairs,
    tree_module_criterion,
)
from .network import (
    Cover,
    MixedNetwork,
    Traversal,
    TriangleClass,
    TriangleSystem,
    end_set,
    enumerate_traversals,
    is_blocked,
    is_traversal,
    pullback_network,
    start_set,
    to_dot,
    traversal_inverse,
    triangle_systems,
    triangles_and_classes,
    two_cover,
    word_of_traversal,
)
from .problemfile import ParseError, Problem, parse_problem, render_problem
from .quiver import (
    Arrow,
    BoundQuiver,
    MorphismReport,
    Path,
    Tree,
    TreeMorphism,
    path_in_ideal,
    validate_morphism,
    validate_tree,
)
from .rep import (
    Homomorphism,
    OracleVerdict,
    Representation,
    decompose_by_idempotent,
    hom_defects,
    hom_space,
    identity_hom,
    is_indecomposable_oracle,
    pushdown,
    reduce_mod,
    support_pairs,
    verify_hom,
    zero_hom,
)

__all__ = [name for name in dir() if not name.startswith("_")]
