//! Analysis of finite strongly connected digraphs as weakly distance-regular
//! structures: two-way distances, attached association schemes, intersection
//! numbers, closed subsets, quotients, the six Cayley families of the
//! classification, and an exhaustive small-order census harness.

pub mod analysis;
pub mod arcs;
pub mod cayley;
pub mod census;
pub mod closure;
pub mod digraph;
pub mod format;
pub mod iso;
pub mod scheme;
pub mod theorem;

pub use analysis::{analyze, analyze_with, AnalysisReport, PurityMode};
pub use arcs::{
    circuits_through_arc, configuration_c_coefficient, configuration_d_coefficient,
    has_configuration_c, has_configuration_d, is_pure, is_pure_representative, t_set,
    MixedWitness, PurityVerdict,
};
pub use cayley::{
    alpha_beta, build_family, family_v_spec, lex_coclique2, CayleyError, CayleySpec, FamilyError,
    FamilyId, FamilyVariant,
};
pub use census::{
    census, instance_property_violations, CensusConfig, CensusEntry, GroupFamily,
    PropertyViolation,
};
pub use closure::{
    class_partition, closure, delta_subdigraph, quotient, ClassPartition, ClosedSubset,
    DeltaSubdigraph, PartitionError,
};
pub use digraph::{label_set, two_way_matrix, Digraph, DigraphError, DistanceMatrix, TwoWayLabel};
pub use format::{parse_digraph, write_digraph, FormatError};
pub use iso::{
    are_isomorphic, canonical_form, canonical_ordering, identify_family, isomorphism,
    CanonicalForm, IsoError, DEFAULT_ORDER_LIMIT,
};
pub use scheme::{
    check_weakly_distance_regular, is_commutative, is_quasi_thin, is_thick, is_thin,
    max_intersection_number, relation_partition, relation_product, RelationPartition,
    SchemeIdentityError, SchemeTensor, WdrFailure, WdrOutcome,
};
pub use theorem::{verify_theorem, TheoremAttempt, TheoremError, TheoremVerdict};
