//! Twisted Coxeter elements, the fixed point `e`, and the sequence calculus.

pub mod construct;
pub mod element;
pub mod fixed_point;
pub mod sequence;
pub mod setup;

pub use construct::{
    case_table, conjugate_reduction, conjugate_reduction_by_root, construct_i, movable_words, reach_coxeter, transport_along, CaseTable, Construction, Move, Step,
};
pub use element::{coroot_matrix_of, coweight_matrix_of, TwistedElement};
pub use fixed_point::{fixed_point_e, solve_fixed_point, FixedPointData};
pub use sequence::{search_sequences, subsequence_data, verify_theorem_coxeter, CoxeterVerdict, SubsequenceData, Verdict};
pub use setup::{canonical_coxeter, is_twisted_coxeter, TwistedSetup};
