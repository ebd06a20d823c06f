//! Cyclic quotient singularities, T-chains and degenerate fibers of
//! T-singular conic bundles.

pub mod classify;
pub mod discrepancy;
pub mod error;
pub mod graph;
pub mod hj;
pub mod lcb;
pub mod tchain;

pub use classify::{
    classify_index2, enumerate_fibers, realize_tchain, scan_multi_singular, FiberRecord,
    SearchBounds,
};
pub use discrepancy::{solve_codiscrepancy, white_components, CodiscrepancyVector, WhiteComponent};
pub use error::{Error, Result};
pub use graph::{
    blow_up_edge, blow_up_vertex, canonical_form, classify_form, contract_black,
    intersection_matrix, kernel_vector, parse_graph, CanonicalForm, FormClass, FormTag,
    KernelVector, VertexId, WeightedGraph,
};
pub use hj::{
    conjugate, hj_eval, hj_expand, invariants, is_t_fraction, Chain, Fraction, QuotInvariants,
};
pub use lcb::{
    analyze, check_parabolic_line, construction_step, family_instance, family_match, index, Checks,
    FamilyLabel, FamilyTag, FiberAnalysis,
};
pub use tchain::{
    certify, enumerate_tchains, is_t_chain, t_step_a, t_step_b, Seed, Step, TChainCertificate,
};
