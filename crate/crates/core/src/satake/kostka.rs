use std::collections::BTreeMap;

use super::character::weyl_character;
use super::macdonald::macdonald_finite;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::qrat::QRat;
use crate::rootdata::RootDatum;

/// Coefficients `c_mu` of `[L(lambda)] = sum_mu c_mu S(h_mu)` over dominant `mu <= lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct InverseSatake {
    pub lambda: Vec<i64>,
    /// Raw values.
    pub raw: BTreeMap<Vec<i64>, QRat>,
    /// `q^<lambda, rho> c_mu`.
    pub normalized: BTreeMap<Vec<i64>, QRat>,
}

pub fn inverse_satake_coeffs(datum: &RootDatum, lambda: &LatticeVector) -> Result<InverseSatake> {
    let op = "inverse_satake_coeffs";
    if !lambda.is_pure_finite() {
        return Err(Error::InvalidArgument {
            op,
            msg: format!("needs a pure-finite weight, got {lambda}"),
        });
    }
    datum.check_dominant(op, &lambda.finite)?;
    let mut rest = weyl_character(datum, lambda)?;
    let mut raw = BTreeMap::new();
    // Highest first: each S(h_mu) has leading term q^<mu, rho> e^mu.
    for mu in datum.dominant_below(&lambda.finite) {
        let e = LatticeVector::finite(mu.clone());
        let top = rest.coeff(&e);
        if top.is_zero() {
            continue;
        }
        let c = top.checked_div(&QRat::q_pow(datum.rho_pairing(&mu)))?;
        let s = macdonald_finite(datum, &e)?;
        rest = rest.sub(&s.series.scale(&c))?;
        raw.insert(mu, c);
    }
    if !rest.is_empty() {
        return Err(Error::Internal {
            op,
            msg: format!("triangular inversion left a remainder with {} terms", rest.len()),
        });
    }
    let scale = QRat::q_pow(datum.rho_pairing(&lambda.finite));
    let normalized = raw.iter().map(|(k, v)| (k.clone(), v * &scale)).collect();
    Ok(InverseSatake {
        lambda: lambda.finite.clone(),
        raw,
        normalized,
    })
}
