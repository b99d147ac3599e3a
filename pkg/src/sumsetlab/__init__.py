"""Exact sumset computation and cardinality-inequality verification."""

from .algebra import (
    AmbientStructure,
    DirectPower,
    Integers,
    IntersectionSemigroup,
    Lattice,
    Permutations,
    Residues,
    StructureMismatchError,
    canonical_order,
    compose,
    is_commutative,
    structure_from_json,
    structure_to_json,
)
from .hunts import (
    HuntConfig,
    HuntRecord,
    HuntSummary,
    eval_question1,
    eval_question2,
    replay,
    run_hunt,
)
from .inequalities import (
    InequalityReport,
    LexDecomposition,
    PlunneckeWitness,
    SuperadditivityWitness,
    TheoremViolationError,
    build_graph_counterexample,
    cauchy_davenport_check,
    construct_large_subset,
    endpoint_sets,
    find_plunnecke_subset,
    find_plunnecke_subset_multi,
    greedy_distinct_triple_sums,
    lex_min_decomposition,
    smoothed_growth_bound,
    tensor_power_identity_check,
    torsion_free_reduce,
    verify_lev_monotonicity,
    verify_projection_lemma,
    verify_restricted_three_sum,
    verify_submultiplicativity,
    verify_superadditivity,
)
from .sumsets import (
    AdditionGraph,
    FiniteSet,
    direct_power,
    graph_triple_sumset,
    instance_from_json,
    instance_to_json,
    iterated_sum,
    leave_one_out,
    restricted_pair_sumset,
    sumset,
)

__all__ = [
    "AdditionGraph",
    "AmbientStructure",
    "DirectPower",
    "FiniteSet",
    "HuntConfig",
    "HuntRecord",
    "HuntSummary",
    "InequalityReport",
    "Integers",
    "IntersectionSemigroup",
    "Lattice",
    "LexDecomposition",
    "Permutations",
    "PlunneckeWitness",
    "Residues",
    "StructureMismatchError",
    "SuperadditivityWitness",
    "TheoremViolationError",
    "build_graph_counterexample",
    "canonical_order",
    "cauchy_davenport_check",
    "compose",
    "construct_large_subset",
    "direct_power",
    "endpoint_sets",
    "eval_question1",
    "eval_question2",
    "find_plunnecke_subset",
    "find_plunnecke_subset_multi",
    "graph_triple_sumset",
    "greedy_distinct_triple_sums",
    "instance_from_json",
    "instance_to_json",
    "is_commutative",
    "iterated_sum",
    "leave_one_out",
    "lex_min_decomposition",
    "replay",
    "restricted_pair_sumset",
    "run_hunt",
    "smoothed_growth_bound",
    "structure_from_json",
    "structure_to_json",
    "sumset",
    "tensor_power_identity_check",
    "torsion_free_reduce",
    "verify_lev_monotonicity",
    "verify_projection_lemma",
    "verify_restricted_three_sum",
    "verify_submultiplicativity",
    "verify_superadditivity",
]

__version__ = "0.1.0"
