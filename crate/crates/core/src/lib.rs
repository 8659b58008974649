//! Permanent-expansion term distributions for random 0/1 matrices, the
//! independence approximation Q(r) of the probability that the permanent
//! takes its target value, and the exact probability P(r) by exhaustive
//! enumeration.
//!
//! Three matrix families are covered (see [`MatrixFamily`]): fully random
//! matrices (A), matrices with the diagonal fixed at 1 except one entry (B),
//! and matrices with the whole diagonal fixed at 1 (C).

pub mod cycles;
mod error;
pub mod limits;
pub mod matrix;
pub mod oeis;
pub mod permanent;
pub mod prob;
pub mod reference;
pub mod sequences;
pub mod terms;

pub use error::{Error, Result};
pub use limits::Limits;
pub use matrix::{build_family_matrix, AssignmentDecoder, BinaryMatrix, MatrixFamily, VariableMask};
pub use permanent::{permanent_naive, permanent_naive_with, permanent_ryser};
pub use prob::{
    compare_grid, compare_grid_with, compare_on, exact_counts, exact_counts_with, p_eval, q_eval, q_expand,
    q_expand_with, uniform_grid, ApproxModel, ExactCounts, GridRow,
};
pub use terms::{
    e_table, e_table_bruteforce, e_table_bruteforce_with, v_closed_form, v_via_w, w_closed_form, w_recurrence_table,
    w_via_cycles, TermDistribution, Triangle,
};
