//! Closed forms and convolution identities for crossing counts.

mod btable;
mod closed;
mod functional;
mod generating;

pub use btable::BTable;
pub use closed::{
    closed_form_r, closed_form_terms, nc_block_multiplicity, printed_closed_form_r,
    printed_closed_form_terms, r_via_decomposition, terms_from_table, ClosedFormTerm, Multiplicity,
    CLOSED_FORM_MAX_K,
};
pub use functional::{
    crossing_functional_residual, factorial_functional_residual, totals_with_unit,
};
pub use generating::{corteel_partition_function, touchard_riordan, touchard_riordan_numerator};
