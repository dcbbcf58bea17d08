use super::macdonald::{macdonald_affine, AffineOptions};
use super::series_t_to_q;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::poly::Poly;
use crate::qrat::QRat;
use crate::rootdata::RootDatum;
use crate::series::GradedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaMode {
    /// `prod_i prod_j (1 - q^{-d_i} e^{-j delta}) / (1 - q^{1-d_i} e^{-j delta})`.
    Product,
    /// The normalised `W_aff` sum at `lambda = 0`, summed to the given length.
    Sum { max_length: usize },
}

fn imag(rank: usize, j: i64) -> LatticeVector {
    LatticeVector::new(0, vec![0; rank], -j)
}

pub fn delta_affine(datum: &RootDatum, n: i64, mode: DeltaMode) -> Result<GradedSeries<QRat>> {
    let op = "delta_affine";
    if n < 0 {
        return Err(Error::InvalidArgument {
            op,
            msg: format!("truncation must be non-negative, got {n}"),
        });
    }
    match mode {
        DeltaMode::Product => {
            if !datum.simply_laced {
                return Err(Error::Hypothesis {
                    op,
                    msg: format!(
                        "the product formula for Delta assumes a simply laced group; {} is not",
                        datum.label()
                    ),
                });
            }
            let r = datum.rank;
            let mut out: GradedSeries<Poly> = GradedSeries::one(r, Some(n));
            for &d in &datum.exponents {
                for j in 1..=n {
                    let mut num = GradedSeries::one(r, Some(n));
                    num.add_term(imag(r, j), Poly::monomial(-1, d as usize));
                    let mut inv = GradedSeries::one(r, Some(n));
                    let mut k = 1;
                    while k * j <= n {
                        inv.add_term(imag(r, k * j), Poly::monomial(1, (k * (d - 1)) as usize));
                        k += 1;
                    }
                    out = out.mul(&num)?.mul(&inv)?;
                }
            }
            Ok(series_t_to_q(&out))
        }
        DeltaMode::Sum { max_length } => {
            let opts = AffineOptions {
                divide_by_delta: false,
                delta_mode: None,
            };
            Ok(
                macdonald_affine(datum, &LatticeVector::zero(datum.rank), n, max_length, opts)
                    .map_err(|e| match e {
                        Error::NotStabilized { msg, .. } => Error::NotStabilized { op, msg },
                        other => other,
                    })?
                    .series,
            )
        }
    }
}

/// Inverse of a series `1 + sum_{j >= 1} a_j e^{-j delta}` up to degree `n`.
pub fn delta_inverse(delta: &GradedSeries<QRat>, n: i64) -> GradedSeries<QRat> {
    let r = delta.rank();
    let a: Vec<QRat> = (0..=n).map(|j| delta.coeff(&imag(r, j))).collect();
    let mut b: Vec<QRat> = vec![QRat::one()];
    for m in 1..=n as usize {
        let mut acc = QRat::zero();
        for j in 1..=m {
            acc = &acc - &(&a[j] * &b[m - j]);
        }
        b.push(acc);
    }
    GradedSeries::from_terms(
        r,
        Some(n),
        b.into_iter().enumerate().map(|(j, c)| (imag(r, j as i64), c)),
    )
}
