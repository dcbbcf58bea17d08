use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{cx, real, Real};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::qrat::QRat;

/// Zeta data of a smooth projective curve over `F_q`:
/// `zeta(s) = P(q^-s) / ((1 - q^-s)(1 - q^{1-s}))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveZeta {
    pub q: u64,
    pub genus: u32,
    /// Coefficients of `P(T)`, constant term first.
    #[serde(rename = "L_poly")]
    pub l_poly: Vec<i64>,
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = q;
            while m.is_multiple_of(p) {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}

impl CurveZeta {
    pub fn new(q: u64, genus: u32, l_poly: Vec<i64>) -> Result<Self> {
        let c = CurveZeta { q, genus, l_poly };
        c.validate()?;
        Ok(c)
    }

    pub fn projective_line(q: u64) -> Result<Self> {
        Self::new(q, 0, vec![1])
    }

    /// Elliptic curve with trace of Frobenius `a`: `P(T) = 1 - a T + q T^2`.
    pub fn elliptic(q: u64, a: i64) -> Result<Self> {
        Self::new(q, 1, vec![1, -a, q as i64])
    }

    pub fn validate(&self) -> Result<()> {
        let op = "curve";
        let bad = |msg: String| Err(Error::InvalidArgument { op, msg });
        if !is_prime_power(self.q) {
            return bad(format!("q = {} is not a prime power", self.q));
        }
        let g = self.genus as usize;
        if self.l_poly.len() != 2 * g + 1 {
            return bad(format!(
                "L-polynomial of a genus {g} curve has degree {}, got {} coefficients",
                2 * g,
                self.l_poly.len()
            ));
        }
        if self.l_poly[0] != 1 {
            return bad("L-polynomial must satisfy P(0) = 1".into());
        }
        // a_{2g-k} = q^{g-k} a_k.
        let q = BigInt::from(self.q);
        for k in 0..=g {
            let lhs = BigInt::from(self.l_poly[2 * g - k]);
            let rhs = num_traits::pow(q.clone(), g - k) * BigInt::from(self.l_poly[k]);
            if lhs != rhs {
                return bad(format!(
                    "functional equation fails: a_{} = {lhs}, expected q^{} a_{k} = {rhs}",
                    2 * g - k,
                    g - k
                ));
            }
        }
        if !self.pic0().is_positive() {
            return bad(format!("P(1) = {} must be positive", self.pic0()));
        }
        Ok(())
    }

    /// `#Pic^0 = P(1)`.
    pub fn pic0(&self) -> BigInt {
        self.l_poly.iter().map(|&a| BigInt::from(a)).sum()
    }

    fn l_bigpoly(&self) -> Poly {
        Poly::from_i64s(&self.l_poly)
    }

    pub fn eval_l<R: Real>(&self, t: Complex<R>) -> Complex<R> {
        self.l_poly
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, &a| acc * t + cx(a as f64))
    }

    pub fn ln_q<R: Real>(&self) -> R {
        real::<R>(self.q as f64).ln()
    }

    /// `q^{-s}`.
    pub fn u<R: Real>(&self, s: Complex<R>) -> Complex<R> {
        (-s * self.ln_q::<R>()).exp()
    }

    /// `zeta(s)`, rejecting the poles `q^{-s} = 1` and `q^{1-s} = 1`.
    pub fn zeta<R: Real>(&self, s: Complex<R>) -> Result<Complex<R>> {
        let u = self.u(s);
        let one = Complex::<R>::one();
        let qr = real::<R>(self.q as f64);
        let a = one - u;
        let b = one - u * qr;
        let tol = R::eps() * real(1024.0);
        if a.norm() < tol || b.norm() < tol {
            return Err(Error::Pole {
                op: "zeta_eval",
                msg: format!(
                    "zeta has a pole at s = {} + {}i (q^-s = {})",
                    s.re.to_f64().unwrap_or(f64::NAN),
                    s.im.to_f64().unwrap_or(f64::NAN),
                    if a.norm() < tol { "1" } else { "1/q" }
                ),
            });
        }
        Ok(self.eval_l(u) / (a * b))
    }

    pub fn zeta_real<R: Real>(&self, s: f64) -> Result<R> {
        Ok(self.zeta(cx::<R>(s))?.re)
    }

    /// `Res_{s=1} zeta = P(1) / (q^{g-1} (q - 1) ln q)`.
    pub fn residue_at_1<R: Real>(&self) -> R {
        let q = real::<R>(self.q as f64);
        let pic = real::<R>(self.pic0().to_f64().expect("small class number"));
        pic / (q.powi(self.genus as i32 - 1) * (q - R::one()) * self.ln_q::<R>())
    }

    /// Exact value of `zeta(n)` at an integer `n != 0, 1`.
    pub fn zeta_exact(&self, n: i64) -> Result<BigRational> {
        if n == 0 || n == 1 {
            return Err(Error::Pole {
                op: "zeta_eval",
                msg: format!("zeta has a pole at s = {n}"),
            });
        }
        let q = BigRational::from_integer(BigInt::from(self.q));
        let u = pow_rat(&q, -n);
        let one = BigRational::one();
        let p = self.l_poly.iter().rev().fold(BigRational::zero(), |acc, &a| {
            acc * &u + BigRational::from_integer(a.into())
        });
        Ok(p / ((&one - &u) * (&one - &u * &q)))
    }

    /// `zeta(n)` as a rational function of `q`; only genus 0 has an L-polynomial free of `q`.
    pub fn zeta_symbolic(&self, n: i64) -> Result<Option<QRat>> {
        if n == 0 || n == 1 {
            return Err(Error::Pole {
                op: "zeta_eval",
                msg: format!("zeta has a pole at s = {n}"),
            });
        }
        if self.genus > 0 {
            return Ok(None);
        }
        let one = QRat::one();
        let den = &(&one - &QRat::q_pow(-n)) * &(&one - &QRat::q_pow(1 - n));
        Ok(Some(QRat::from_poly(self.l_bigpoly()).checked_div(&den)?))
    }

    /// Frobenius eigenvalues `w_k` on `H^1`, with `P(T) = prod (1 - w_k T)`.
    pub fn frobenius_eigenvalues(&self) -> Vec<Complex<f64>> {
        let n = 2 * self.genus as usize;
        if n == 0 {
            return Vec::new();
        }
        // Companion matrix of the reversed (monic) polynomial T^n P(1/T).
        let a: Vec<f64> = self.l_poly.iter().map(|&c| c as f64).collect();
        let mut m = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            // x^n + a_1 x^{n-1} + ... + a_n.
            m[(i, n - 1)] = -a[n - i];
        }
        // The unbounded QR iteration can stall on symmetric spectra such as
        // `x^4 + 9`; retry on shifted copies `M + cI` until it converges.
        for c in [0.0, 0.6, -1.3, 2.9] {
            let shifted = &m + DMatrix::<f64>::identity(n, n) * c;
            if let Some(schur) = Schur::try_new(shifted, f64::EPSILON, 10_000) {
                return schur
                    .complex_eigenvalues()
                    .iter()
                    .map(|z| z - Complex::new(c, 0.0))
                    .collect();
            }
        }
        unreachable!("Schur iteration failed for every shift")
    }
}

pub(crate) fn pow_rat(x: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

/// `zeta(s)` at a complex point.
pub fn zeta_eval<R: Real>(curve: &CurveZeta, s: Complex<R>) -> Result<Complex<R>> {
    curve.zeta(s)
}

pub fn residue_at_1<R: Real>(curve: &CurveZeta) -> R {
    curve.residue_at_1()
}
