use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::delta::{delta_affine, delta_inverse, DeltaMode};
use super::engine::{reduce, Shells, Summands};
use super::{is_imaginary_series, series_t_to_q, strip_delta};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::poly::Poly;
use crate::qrat::QRat;
use crate::rootdata::{affine_poincare_series, stabilizer_poincare, RootDatum};
use crate::series::GradedSeries;

/// The Satake image of `h_lambda` together with how it was obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct SphericalElement {
    pub series: GradedSeries<QRat>,
    pub lambda: LatticeVector,
    pub affine: bool,
    /// Largest element length that entered the sum.
    pub shells: usize,
    /// Group elements summed.
    pub terms: usize,
    /// `t`-adic precision of a level-zero sum (`None` when the sum is exact).
    pub precision: Option<usize>,
    /// Whether the coefficient of `e^lambda` equals `q^<lambda, rho>`.
    pub leading_is_q_rho: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineOptions {
    /// Divide by `Delta`; when off, the bare normalised `W_aff` sum is returned.
    pub divide_by_delta: bool,
    /// How `Delta` is obtained; defaults to the product when simply laced.
    pub delta_mode: Option<DeltaMode>,
}

impl Default for AffineOptions {
    fn default() -> Self {
        AffineOptions {
            divide_by_delta: true,
            delta_mode: None,
        }
    }
}

fn leading_check(datum: &RootDatum, s: &GradedSeries<QRat>, lambda: &LatticeVector, affine: bool) -> bool {
    let rho = if affine {
        datum.rho_aff_pairing(lambda)
    } else {
        datum.rho_pairing(&lambda.finite)
    };
    s.coeff(lambda) == QRat::q_pow(rho)
}

pub fn macdonald_finite(datum: &RootDatum, lambda: &LatticeVector) -> Result<SphericalElement> {
    let op = "macdonald_finite";
    if !lambda.is_pure_finite() {
        return Err(Error::InvalidArgument {
            op,
            msg: format!("finite formula needs a pure-finite weight, got {lambda}"),
        });
    }
    datum.check_dominant(op, &lambda.finite)?;
    let summands = Summands::new(datum, None, None);
    let mut shells = Shells::new(datum, lambda.clone(), false);
    let mut sum = GradedSeries::zero(datum.rank, None);
    let (mut longest, mut count) = (0, 0);
    loop {
        let shell = shells.next_shell(|_| true);
        if shell.is_empty() {
            break;
        }
        for p in shell {
            longest = p.length();
            count += 1;
            sum = sum.add(&summands.summand(p))?;
        }
    }
    let s = series_t_to_q(&summands.finish(&sum)?);
    let w_lambda = stabilizer_poincare(datum, lambda, false)?.invert_q();
    let norm = QRat::q_pow(datum.rho_pairing(&lambda.finite)).checked_div(&w_lambda)?;
    let series = s.scale(&norm);
    let leading_is_q_rho = leading_check(datum, &series, lambda, false);
    Ok(SphericalElement {
        series,
        lambda: lambda.clone(),
        affine: false,
        shells: longest,
        terms: count,
        precision: None,
        leading_is_q_rho,
    })
}

/// Power-series inverse modulo `t^p` of a polynomial with unit constant term.
fn inverse_mod(a: &Poly, p: usize) -> Option<Poly> {
    let a0 = a.coeff(0);
    if !(a0.is_one() || a0 == -BigInt::one()) {
        return None;
    }
    let mut b: Vec<BigInt> = Vec::with_capacity(p);
    for k in 0..p {
        let mut acc = if k == 0 { BigInt::one() } else { BigInt::zero() };
        for i in 1..=k {
            acc -= a.coeff(i) * &b[k - i];
        }
        b.push(acc * &a0);
    }
    Some(Poly::from_coeffs(b))
}

/// Level-zero sum at `lambda = 0`, normalised by `1/W_aff(t)`, with its precision.
fn level_zero_sum(datum: &RootDatum, n: i64, max_length: usize) -> Result<(GradedSeries<Poly>, usize, usize)> {
    let op = "macdonald_affine";
    let r = datum.rank;
    let nr = datum.dim_n as usize;
    let precision_at = |l: usize| (l + 1).saturating_sub(nr + n as usize);
    if max_length == 0 || precision_at(max_length - 1) == 0 {
        return Err(Error::NotStabilized {
            op,
            msg: format!(
                "length budget L = {max_length} gives no t-adic precision at delta-degree {n}; need L >= {}",
                nr + n as usize + 1
            ),
        });
    }
    let p_hi = precision_at(max_length);
    let p_lo = precision_at(max_length - 1);
    let summands = Summands::new(datum, Some(n), Some(p_hi));
    let mut shells = Shells::new(datum, LatticeVector::zero(r), true);
    let mut sum = GradedSeries::zero(r, Some(n));
    let mut snapshot = None;
    let mut count = 0;
    for l in 0..=max_length {
        for p in shells.next_shell(|_| true) {
            count += 1;
            sum = sum.add(&summands.summand(p))?;
        }
        if l + 1 == max_length {
            snapshot = Some(reduce(&sum, Some(p_lo)));
        }
    }
    let lo = snapshot.expect("max_length >= 1");

    let w = affine_poincare_series(datum)?;
    let normalise = |s: &GradedSeries<Poly>, p: usize| -> Result<GradedSeries<Poly>> {
        let fin = reduce(&summands.finish(s)?, Some(p));
        let inv = inverse_mod(&w.numerator, p).ok_or_else(|| Error::Internal {
            op,
            msg: "Poincare numerator has no unit constant term".into(),
        })?;
        let factor = w.denominator.mul_trunc(&inv, p);
        Ok(fin.map_coeffs(|c| c.mul_trunc(&factor, p)))
    };
    let hi = normalise(&sum, p_hi)?;
    let lo = normalise(&lo, p_lo).map_err(|e| match e {
        Error::Internal { msg, .. } => Error::NotStabilized { op, msg },
        other => other,
    })?;

    for (e, c) in hi.terms() {
        if !(e.central == 0 && e.finite.iter().all(|&x| x == 0)) {
            return Err(Error::NotStabilized {
                op,
                msg: format!("non-imaginary coefficient at e^{e} is {c} mod t^{p_hi} after L = {max_length}"),
            });
        }
    }
    let mut exps: Vec<&LatticeVector> = hi.terms().map(|(e, _)| e).collect();
    exps.extend(lo.terms().map(|(e, _)| e));
    for e in exps {
        let a = hi.coeff(e);
        let b = lo.coeff(e);
        if a != b {
            return Err(Error::NotStabilized {
                op,
                msg: format!(
                    "coefficient of e^{e} changed between shells {} and {max_length}: {} vs {} (in t = 1/q)",
                    max_length - 1,
                    b.display_with("t"),
                    a.display_with("t")
                ),
            });
        }
    }
    debug_assert!(is_imaginary_series(&hi));
    Ok((hi, p_hi, count))
}

/// The affine spherical function of a Tits-cone weight, truncated at
/// `delta`-degree `n` (relative to `lambda`), summing `W_aff` up to length `max_length`.
pub fn macdonald_affine(
    datum: &RootDatum,
    lambda: &LatticeVector,
    n: i64,
    max_length: usize,
    opts: AffineOptions,
) -> Result<SphericalElement> {
    let op = "macdonald_affine";
    if n < 0 {
        return Err(Error::InvalidArgument {
            op,
            msg: format!("truncation must be non-negative, got {n}"),
        });
    }
    datum.check_affine_dominant(op, lambda)?;
    let r = datum.rank;
    let lam0 = strip_delta(lambda);

    let (mut series, shells_used, count, precision) = if lambda.central == 0 {
        let (s, p, count) = level_zero_sum(datum, n, max_length)?;
        (series_t_to_q(&s), max_length, count, Some(p))
    } else {
        let summands = Summands::new(datum, Some(n), None);
        let mut shells = Shells::new(datum, lam0.clone(), true);
        let keep = |p: &super::engine::OrbitPoint| -p.weight.delta <= n;
        let mut sum = GradedSeries::zero(r, Some(n));
        let (mut longest, mut count) = (0, 0);
        for _ in 0..=max_length {
            let shell = shells.next_shell(keep);
            for p in shell {
                longest = longest.max(p.length());
                count += 1;
                sum = sum.add(&summands.summand(p))?;
            }
        }
        let pending = shells.next_shell(keep).len();
        if pending > 0 {
            return Err(Error::NotStabilized {
                op,
                msg: format!(
                    "{pending} elements of length {} still reach delta-degree <= {n}; raise L above {max_length}",
                    max_length + 1
                ),
            });
        }
        let s = series_t_to_q(&summands.finish(&sum)?);
        let w_lambda = stabilizer_poincare(datum, &lam0, true)?.invert_q();
        (s.scale(&w_lambda.inv()?), longest, count, None)
    };

    series = series.scale(&QRat::q_pow(datum.rho_aff_pairing(&lam0)));
    if opts.divide_by_delta {
        let mode = opts.delta_mode.unwrap_or(if datum.simply_laced {
            DeltaMode::Product
        } else {
            DeltaMode::Sum { max_length }
        });
        let inv = delta_inverse(&delta_affine(datum, n, mode)?, n);
        series = series.mul(&inv)?;
    }
    if lambda.delta != 0 {
        series = series
            .shift(&LatticeVector::new(0, vec![0; r], lambda.delta))
            .scale(&QRat::q_pow(lambda.delta * datum.dual_coxeter));
    }
    let leading_is_q_rho = leading_check(datum, &series, lambda, true);
    Ok(SphericalElement {
        series,
        lambda: lambda.clone(),
        affine: true,
        shells: shells_used,
        terms: count,
        precision,
        leading_is_q_rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_datum;

    fn q(s: &str) -> QRat {
        s.parse().unwrap()
    }

    #[test]
    fn a1_values() {
        let d = build_root_datum("A1").unwrap();
        let m = macdonald_finite(&d, &LatticeVector::finite(vec![1])).unwrap();
        assert_eq!(m.series.len(), 3);
        assert_eq!(m.series.coeff(&LatticeVector::finite(vec![1])), q("q"));
        assert_eq!(m.series.coeff(&LatticeVector::finite(vec![0])), q("q - 1"));
        assert_eq!(m.series.coeff(&LatticeVector::finite(vec![-1])), q("q"));

        let m = macdonald_finite(&d, &LatticeVector::finite(vec![2])).unwrap();
        assert_eq!(m.series.coeff(&LatticeVector::finite(vec![2])), q("q^2"));
        assert_eq!(m.series.coeff(&LatticeVector::finite(vec![1])), q("q^2 - q"));
        assert_eq!(m.series.coeff(&LatticeVector::finite(vec![0])), q("q^2 - q"));
        assert_eq!(m.series.coeff(&LatticeVector::finite(vec![-2])), q("q^2"));
    }

    #[test]
    fn unit_at_zero() {
        for label in ["A1", "A2", "B2", "G2"] {
            let d = build_root_datum(label).unwrap();
            let m = macdonald_finite(&d, &LatticeVector::zero(d.rank)).unwrap();
            assert_eq!(m.series, GradedSeries::one(d.rank, None), "{label}");
        }
    }

    #[test]
    fn rejects_non_dominant() {
        let d = build_root_datum("A2").unwrap();
        assert!(matches!(
            macdonald_finite(&d, &LatticeVector::finite(vec![-1, 0])),
            Err(Error::NotDominant { .. })
        ));
        assert!(macdonald_affine(&d, &LatticeVector::finite(vec![1, 1]), 1, 4, AffineOptions::default()).is_err());
    }

    #[test]
    fn inverse_mod_series() {
        let a = Poly::from_i64s(&[1, 1]);
        assert_eq!(inverse_mod(&a, 4), Some(Poly::from_i64s(&[1, -1, 1, -1])));
    }
}
