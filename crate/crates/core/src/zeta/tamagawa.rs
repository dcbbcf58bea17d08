use std::collections::BTreeMap;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, One};

use super::curve::{pow_rat, CurveZeta};
use super::{cx, real, Extended};
use crate::error::{Error, Result};
use crate::qrat::QRat;
use crate::rootdata::RootDatum;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TamagawaMode {
    /// `q^{(g-1) dim G} prod_i zeta(d_i)`.
    Formula,
    /// Super-trace of Frobenius on `Sym(V (x) H_*(X))`.
    Cohomology,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TamagawaValue {
    pub mode: TamagawaMode,
    /// As a rational function of `q`; available for genus 0.
    pub symbolic: Option<QRat>,
    /// Exact value at the curve's `q`.
    pub exact: BigRational,
    pub numeric: f64,
}

fn genus_power(curve: &CurveZeta, datum: &RootDatum) -> i64 {
    (curve.genus as i64 - 1) * datum.dim_g
}

pub fn tamagawa_finite(curve: &CurveZeta, datum: &RootDatum, mode: TamagawaMode) -> Result<TamagawaValue> {
    curve.validate()?;
    let e = genus_power(curve, datum);
    let qr = BigRational::from_integer(curve.q.into());
    let q = curve.q as f64;
    match mode {
        TamagawaMode::Formula => {
            let mut exact = pow_rat(&qr, e);
            let mut symbolic = if curve.genus == 0 { Some(QRat::q_pow(e)) } else { None };
            let mut numeric = real::<Extended>(q).powi(e as i32);
            for &d in &datum.exponents {
                exact *= curve.zeta_exact(d)?;
                if let Some(s) = symbolic.as_mut() {
                    *s = &*s * &curve.zeta_symbolic(d)?.expect("genus 0");
                }
                numeric *= curve.zeta_real::<Extended>(d as f64)?;
            }
            Ok(TamagawaValue {
                mode,
                symbolic,
                exact,
                numeric: numeric.to_f64(),
            })
        }
        TamagawaMode::Cohomology => {
            // Generators c_i (x) [H_0] and c_i (x) [H_-2] are even with Frobenius
            // weights q^{-d_i} and q^{1-d_i}; c_i (x) H_-1 is odd with weights q^{-d_i} w_k.
            let one = BigRational::one();
            let mut exact = pow_rat(&qr, e);
            let mut symbolic = if curve.genus == 0 { Some(QRat::q_pow(e)) } else { None };
            let eig = curve.frobenius_eigenvalues();
            let mut numeric = Complex::new(q.powi(e as i32), 0.0);
            for &d in &datum.exponents {
                for k in [-d, 1 - d] {
                    let w = pow_rat(&qr, k);
                    exact /= &one - &w;
                    if let Some(s) = symbolic.as_mut() {
                        *s = s.checked_div(&(&QRat::one() - &QRat::q_pow(k)))?;
                    }
                    numeric /= 1.0 - q.powi(k as i32);
                }
                // Exterior algebra on the odd block: prod_k (1 - x w_k), with the
                // elementary symmetric functions read off P.
                let x = pow_rat(&qr, -d);
                let odd = curve
                    .l_poly
                    .iter()
                    .enumerate()
                    .map(|(k, &a)| BigRational::from_integer(a.into()) * pow_rat(&x, k as i64))
                    .fold(BigRational::from_integer(0.into()), |acc, t| acc + t);
                exact *= odd;
                let xf = q.powi(-d as i32);
                for w in &eig {
                    numeric *= cx::<f64>(1.0) - w * xf;
                }
            }
            Ok(TamagawaValue {
                mode,
                symbolic,
                exact,
                numeric: numeric.re,
            })
        }
    }
}

/// `prod_{i} zeta(d_i) / prod_{i >= 2} zeta(d_i - 1)` after cancelling common factors.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineTamagawa {
    /// `n -> multiplicity` of `zeta(n)` in the numerator.
    pub numerator: BTreeMap<i64, u32>,
    pub denominator: BTreeMap<i64, u32>,
    /// Whether any factor cancelled.
    pub cancelled: bool,
    pub exact: BigRational,
    pub value: f64,
    /// The quotient evaluated before cancellation.
    pub unreduced_value: f64,
}

fn format_zetas(m: &BTreeMap<i64, u32>) -> String {
    m.iter()
        .map(|(n, k)| {
            if *k == 1 {
                format!("ζ({n})")
            } else {
                format!("ζ({n})^{k}")
            }
        })
        .collect()
}

impl AffineTamagawa {
    /// Product form such as `ζ(2)ζ(4)^2ζ(6)/(ζ(3)^2ζ(5))`.
    pub fn product(&self) -> String {
        let num = if self.numerator.is_empty() {
            "1".to_string()
        } else {
            format_zetas(&self.numerator)
        };
        let den_factors: u32 = self.denominator.values().sum();
        match den_factors {
            0 => num,
            1 => format!("{num}/{}", format_zetas(&self.denominator)),
            _ => format!("{num}/({})", format_zetas(&self.denominator)),
        }
    }
}

pub fn tamagawa_affine(curve: &CurveZeta, datum: &RootDatum) -> Result<AffineTamagawa> {
    let op = "tamagawa_affine";
    curve.validate()?;
    if !datum.simply_laced {
        return Err(Error::Hypothesis {
            op,
            msg: format!(
                "the affine volume formula assumes G simply laced and simple; {} is not simply laced",
                datum.label()
            ),
        });
    }
    let mut num: BTreeMap<i64, u32> = BTreeMap::new();
    let mut den: BTreeMap<i64, u32> = BTreeMap::new();
    for &d in &datum.exponents {
        *num.entry(d).or_default() += 1;
    }
    // d_1 = 2 is the smallest exponent.
    for &d in datum.exponents.iter().skip(1) {
        *den.entry(d - 1).or_default() += 1;
    }
    let mut unreduced = real::<Extended>(1.0);
    for (n, k) in &num {
        unreduced *= curve.zeta_real::<Extended>(*n as f64)?.powi(*k as i32);
    }
    for (n, k) in &den {
        unreduced /= curve.zeta_real::<Extended>(*n as f64)?.powi(*k as i32);
    }
    let mut cancelled = false;
    let keys: Vec<i64> = den.keys().copied().collect();
    for n in keys {
        let a = num.get(&n).copied().unwrap_or(0);
        let b = den[&n];
        let c = a.min(b);
        if c > 0 {
            cancelled = true;
            for (m, v) in [(&mut num, a - c), (&mut den, b - c)] {
                if v == 0 {
                    m.remove(&n);
                } else {
                    m.insert(n, v);
                }
            }
        }
    }
    let mut exact = BigRational::one();
    let mut value = real::<Extended>(1.0);
    for (n, k) in &num {
        exact *= num_traits::pow(curve.zeta_exact(*n)?, *k as usize);
        value *= curve.zeta_real::<Extended>(*n as f64)?.powi(*k as i32);
    }
    for (n, k) in &den {
        exact /= num_traits::pow(curve.zeta_exact(*n)?, *k as usize);
        value /= curve.zeta_real::<Extended>(*n as f64)?.powi(*k as i32);
    }
    Ok(AffineTamagawa {
        numerator: num,
        denominator: den,
        cancelled,
        exact,
        value: value.to_f64(),
        unreduced_value: unreduced.to_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_datum;

    #[test]
    fn sl2_over_p1() {
        let c = CurveZeta::projective_line(2).unwrap();
        let d = build_root_datum("A1").unwrap();
        let f = tamagawa_finite(&c, &d, TamagawaMode::Formula).unwrap();
        assert_eq!(f.exact, BigRational::new(1.into(), 3.into()));
        assert!((f.numeric - 1.0 / 3.0).abs() < 1e-15);
        let h = tamagawa_finite(&c, &d, TamagawaMode::Cohomology).unwrap();
        assert_eq!(f.symbolic, h.symbolic);
        assert_eq!(f.exact, h.exact);
    }

    #[test]
    fn affine_sl_n() {
        let c = CurveZeta::projective_line(3).unwrap();
        for n in 2..=5 {
            let d = build_root_datum(&format!("A{}", n - 1)).unwrap();
            let t = tamagawa_affine(&c, &d).unwrap();
            assert_eq!(t.product(), format!("ζ({n})"));
            assert_eq!(t.cancelled, n > 2);
        }
        let d4 = tamagawa_affine(&c, &build_root_datum("D4").unwrap()).unwrap();
        assert_eq!(d4.product(), "ζ(2)ζ(4)^2ζ(6)/(ζ(3)^2ζ(5))");
        assert!(tamagawa_affine(&c, &build_root_datum("B2").unwrap()).is_err());
    }
}
