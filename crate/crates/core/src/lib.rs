//! Weighted simplicial complexes, the down-up walks on them, and the
//! expanderized variants that replace the uniform choice of coordinates by a
//! step on a small expander over the coordinate subsets.
//!
//! The crate is organised bottom-up:
//!
//! - [`complex`]: pure weighted complexes, levels, links and link graphs.
//! - [`expanders`]: labelled regular graphs given by rotation maps.
//! - [`operators`]: transition matrices for every walk, plus a sampler with
//!   exact randomness accounting.
//! - [`spectral`]: adjoints, spectra, weighted operator norms and the
//!   comparison checks built on them.
//! - [`phi_entropy`]: Φ-entropies, contraction constants and certified
//!   functional-inequality checks.
//! - [`models`]: list colorings and Ising models as weighted complexes.
//! - [`mixing`]: exact total-variation mixing times and the bounds they are
//!   compared against.
//!
//! Everything is dense and exact: state spaces are enumerated, so the
//! intended regime is a few thousand states at most.

pub mod complex;
pub mod error;
pub mod expanders;
pub mod instances;
pub mod mixing;
pub mod models;
pub mod operators;
pub mod phi_entropy;
pub mod report;
pub mod spectral;
pub mod subsets;

pub use complex::{Complex, Face};
pub use error::{Error, Result};
pub use expanders::LabelledRegularGraph;
pub use operators::WalkOperator;
pub use report::CheckReport;
