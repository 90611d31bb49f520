//! Φ-entropies, contraction constants and the functional inequalities that
//! connect them to spectral quantities.
//!
//! Two kinds of statement are checked here. Exact ones (quadratic
//! contraction, chain rule, Garland-type identities) compare two computed
//! numbers. Certified ones compare a measured quantity against a proven
//! lower bound evaluated over a fixed corpus of test functions; only proven
//! bounds ever sit on the small side of such a comparison.

mod contraction;
mod corpus;
mod inequalities;
mod phi;

pub use contraction::{
    down_up_gap_check, local_contraction, maximize_ratio, product_gap_certificate,
    quadratic_contraction, ContractionReport, LocalContraction, ProductGapReport,
};
pub use corpus::{test_functions, RANDOM_FUNCTIONS};
pub use inequalities::{
    chain_rule_check, chain_rule_corpus, dirichlet_form, dpi_check, dpi_composition_check,
    dsc_constant, entropy_contraction_check, garland_identity_check, garland_identity_corpus,
    lee_boosting_bound, log_sobolev_lower_bound, ls_lifting_check, ls_localization_check,
    miclo_check, qdo_entropy_check, LsBound,
};
pub use phi::{phi_entropy, Phi};
