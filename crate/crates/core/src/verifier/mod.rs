//! Exhaustive checks of the Weyl-group lemmas and the sweeps that run them.

pub mod cells;
pub mod lemmas;
pub mod report;
pub mod sweep;

pub use cells::{bruhat_cell_product, demazure_product, CellSet};
pub use lemmas::{
    verify_corollary_proper, verify_lemma_nonzero, verify_lemma_partial, verify_nonempty_kernel, verify_support_connected,
    verify_support_stable, verify_unstable_kernel, verify_unstable_kernel_all,
};
pub use report::{LemmaReport, Witness};
