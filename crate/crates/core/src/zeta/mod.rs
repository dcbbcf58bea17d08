//! Function-field side: curve zeta functions, Tamagawa volumes, Borel
//! Eisenstein constant terms and their residues, and the affine correction
//! product.
//!
//! Numerics are generic over [`Real`]; `f64` and the 40-digit [`Extended`]
//! both qualify.

mod affine;
mod curve;
mod eisenstein;
mod tamagawa;

use num_complex::Complex;
use num_traits::Float;

pub use affine::{affine_correction_and_ct, AffineCtMode, AffineCtReport, ShellSum};
pub use curve::{residue_at_1, zeta_eval, CurveZeta};
pub use eisenstein::{borel_constant_term, eisenstein_residue, ConstantTermEntry, EisensteinParam, ResidueReport};
pub use tamagawa::{tamagawa_affine, tamagawa_finite, AffineTamagawa, TamagawaMode, TamagawaValue};

/// Extended-precision scalar used for limits and near-pole evaluations.
pub type Extended = num_bigfloat::BigFloat;

/// Real scalar type for the numeric routines.
pub trait Real: Float + std::fmt::Debug + Send + Sync + 'static {
    /// Unit roundoff of the representation.
    fn eps() -> Self;
}

impl Real for f64 {
    fn eps() -> Self {
        f64::EPSILON
    }
}

impl Real for Extended {
    fn eps() -> Self {
        // `Float::epsilon` on this type reports the f32 value.
        num_bigfloat::EPSILON
    }
}

pub(crate) fn real<R: Real>(x: f64) -> R {
    R::from(x).expect("finite f64")
}

pub(crate) fn cx<R: Real>(x: f64) -> Complex<R> {
    Complex::new(real(x), R::zero())
}

/// Relative distance `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff<R: Real>(a: Complex<R>, b: Complex<R>) -> f64 {
    let d = (a - b).norm();
    let m = a.norm().max(b.norm());
    if m == R::zero() {
        0.0
    } else {
        (d / m).to_f64().unwrap_or(f64::INFINITY)
    }
}
