//! Satake-side formulas: Macdonald spherical functions, Weyl characters,
//! q-analogues of weight multiplicities, the affine correction `Delta` and
//! Gindikin-Karpelevich series.

mod character;
mod delta;
pub(crate) mod engine;
mod gk;
mod kostka;
mod macdonald;

use num_bigint::BigInt;

use crate::lattice::LatticeVector;
use crate::poly::Poly;
use crate::qrat::QRat;
use crate::series::GradedSeries;

pub use character::weyl_character;
pub use delta::{delta_affine, delta_inverse, DeltaMode};
pub use gk::{gk_series, point_count, GkMode};
pub use kostka::{inverse_satake_coeffs, InverseSatake};
pub use macdonald::{macdonald_affine, macdonald_finite, AffineOptions, SphericalElement};

/// `c(t)` with `t = q^{-1}` as an element of `Q(q)`.
pub fn t_to_q(p: &Poly) -> QRat {
    match p.degree() {
        None => QRat::zero(),
        Some(d) => {
            let coeffs: Vec<BigInt> = p.coeffs().iter().rev().cloned().collect();
            QRat::laurent(&coeffs, -(d as i64))
        }
    }
}

pub(crate) fn series_t_to_q(s: &GradedSeries<Poly>) -> GradedSeries<QRat> {
    GradedSeries::from_terms(s.rank(), s.truncation(), s.terms().map(|(e, c)| (e.clone(), t_to_q(c))))
}

/// Whether every stored exponent is a multiple of `delta` only.
pub fn is_imaginary_series<C: crate::series::Coeff>(s: &GradedSeries<C>) -> bool {
    s.terms()
        .all(|(e, _)| e.central == 0 && e.finite.iter().all(|&c| c == 0))
}

pub(crate) fn strip_delta(lambda: &LatticeVector) -> LatticeVector {
    lambda.with_delta(0)
}
