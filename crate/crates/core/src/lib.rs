//! Exact computations for affine Satake theory and function-field Eisenstein series.
//!
//! Weights live in [`LatticeVector`] (level, finite part in simple-coroot
//! coordinates, `delta` coefficient); coefficients are exact rational
//! functions [`QRat`] in `q`.

pub mod error;
pub mod hecke;
pub mod json;
pub mod lattice;
pub mod poly;
pub mod qrat;
pub mod rootdata;
pub mod satake;
pub mod series;
pub mod zeta;

pub use error::{Error, Result};
pub use lattice::LatticeVector;
pub use poly::Poly;
pub use qrat::QRat;
pub use rootdata::{build_root_datum, RootDatum, WeylElement};
pub use series::GradedSeries;
