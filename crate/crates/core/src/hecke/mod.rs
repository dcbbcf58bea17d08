//! Iwahori-Hecke algebras in the Bernstein presentation, finite and affine.
//!
//! Elements are kept in the normal form `sum c X_lambda T_w`. Products are
//! reduced with the cross relation
//! `f T_s - T_s s(f) = (q - 1)(f - s(f)) / (1 - X_{-alpha_s})`,
//! `X_lambda X_mu = X_{lambda + mu}`, length-additivity of `T_w T_w'` and the
//! quadratic relation `T_s^2 = (q - 1) T_s + q`.

mod element;
mod text;

pub use element::{
    bernstein_cross, degree_and_cone, hecke_mul, spherical_projector, spherical_sandwich, DegreeReport, HeckeElement,
};
pub use text::parse_hecke;
