use num_complex::Complex;
use num_traits::{Float, One, ToPrimitive, Zero};

use super::curve::CurveZeta;
use super::tamagawa::{tamagawa_finite, TamagawaMode};
use super::{cx, real, rel_diff, Extended, Real};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::rootdata::{weyl_enumerate, RootDatum, WeylElement};

/// A character `f = q^{<deg, sigma>}` of the torus, given by the values
/// `<sigma, alpha_i^vee>` on the simple coroots, plus an optional affine slot
/// `<sigma, delta>`.
#[derive(Clone, Debug)]
pub struct EisensteinParam<'a, R: Real> {
    pub datum: &'a RootDatum,
    pub curve: &'a CurveZeta,
    pub sigma: Vec<Complex<R>>,
    pub delta_slot: Option<Complex<R>>,
}

impl<'a, R: Real> EisensteinParam<'a, R> {
    pub fn new(datum: &'a RootDatum, curve: &'a CurveZeta, sigma: Vec<Complex<R>>) -> Result<Self> {
        if sigma.len() != datum.rank {
            return Err(Error::RankMismatch {
                op: "borel_constant_term",
                left: sigma.len(),
                right: datum.rank,
            });
        }
        Ok(EisensteinParam {
            datum,
            curve,
            sigma,
            delta_slot: None,
        })
    }

    /// `sigma = c rho`, i.e. `<sigma, alpha_i^vee> = c` for every `i`.
    pub fn multiple_of_rho(datum: &'a RootDatum, curve: &'a CurveZeta, c: R) -> Self {
        EisensteinParam {
            datum,
            curve,
            sigma: vec![Complex::new(c, R::zero()); datum.rank],
            delta_slot: None,
        }
    }

    /// `<sigma, beta>` for a coroot `beta_bar + j delta`.
    pub fn pair(&self, beta: &LatticeVector) -> Complex<R> {
        let mut s = Complex::zero();
        for (b, x) in beta.finite.iter().zip(&self.sigma) {
            if *b != 0 {
                s = s + *x * real::<R>(*b as f64);
            }
        }
        if beta.delta != 0 {
            let d = self.delta_slot.unwrap_or_else(Complex::zero);
            s = s + d * real::<R>(beta.delta as f64);
        }
        s
    }
}

/// One `w`-term of the constant term.
#[derive(Clone, Debug)]
pub struct ConstantTermEntry<R: Real> {
    pub word: Vec<usize>,
    /// `{beta > 0 : w beta < 0}`.
    pub inversions: Vec<LatticeVector>,
    /// `(g - 1) l(w)`.
    pub q_power: i64,
    /// `prod_beta xi(<sigma, beta>) / xi(<sigma, beta> + 1)` with `xi(s) = q^{(g-1)s} zeta(s)`.
    pub completed_ratio: Complex<R>,
    /// `q^{q_power}` times `completed_ratio`, equal to `prod_beta zeta(<sigma, beta>) / zeta(<sigma, beta> + 1)`.
    pub factor: Complex<R>,
    /// `<w sigma, alpha_i^vee>` for the simple coroots.
    pub w_sigma: Vec<Complex<R>>,
}

/// `prod_beta zeta(x_beta) / zeta(x_beta + 1)` and its completed form.
pub(crate) fn ratio_product<R: Real>(
    curve: &CurveZeta,
    xs: impl Iterator<Item = (Complex<R>, String)>,
    length: usize,
) -> Result<(Complex<R>, Complex<R>)> {
    let mut factor = Complex::<R>::one();
    for (x, label) in xs {
        let num = curve.zeta(x).map_err(|e| pole(e, &label))?;
        let den = curve.zeta(x + R::one()).map_err(|e| pole(e, &label))?;
        factor = factor * num / den;
    }
    let g1 = curve.genus as i32 - 1;
    let qr = real::<R>(curve.q as f64);
    // xi(x) / xi(x + 1) = q^{-(g-1)} zeta(x) / zeta(x + 1).
    let completed = factor * qr.powi(-g1 * length as i32);
    Ok((factor, completed))
}

fn pole(e: Error, label: &str) -> Error {
    match e {
        Error::Pole { msg, .. } => Error::Pole {
            op: "borel_constant_term",
            msg: format!("{label}: {msg}"),
        },
        other => other,
    }
}

fn w_sigma<R: Real>(param: &EisensteinParam<'_, R>, w: &WeylElement) -> Vec<Complex<R>> {
    // <w sigma, alpha_i> = <sigma, w^{-1} alpha_i>.
    (1..=param.datum.rank)
        .map(|i| param.pair(&w.apply_inverse(&param.datum.simple_coroot(i))))
        .collect()
}

/// The Borel constant term `c_{GB}(Eis(f)) = sum_{w in W} factor(w) f^w`.
pub fn borel_constant_term<R: Real>(param: &EisensteinParam<'_, R>) -> Result<Vec<ConstantTermEntry<R>>> {
    let datum = param.datum;
    param.curve.validate()?;
    let g1 = param.curve.genus as i64 - 1;
    let mut out = Vec::new();
    for w in weyl_enumerate(datum, false, datum.dim_n as usize) {
        let inv = w.inversions(datum);
        let xs = inv
            .iter()
            .map(|b| (param.pair(b), format!("w = {:?}, coroot {:?}", w.word, b.finite)));
        let (factor, completed) = ratio_product(param.curve, xs, inv.len())?;
        out.push(ConstantTermEntry {
            word: w.word.clone(),
            q_power: g1 * inv.len() as i64,
            inversions: inv,
            completed_ratio: completed,
            factor,
            w_sigma: w_sigma(param, &w),
        });
    }
    Ok(out)
}

/// Value of the constant term on `Bun_T^gamma`: `sum_w factor(w) q^{<gamma, w sigma>}`.
fn constant_term_at<R: Real>(param: &EisensteinParam<'_, R>, gamma: &[i64]) -> Result<Complex<R>> {
    let ln_q = param.curve.ln_q::<R>();
    let mut total = Complex::zero();
    for t in borel_constant_term(param)? {
        let e = gamma
            .iter()
            .zip(&t.w_sigma)
            .fold(Complex::<R>::zero(), |acc, (g, s)| acc + *s * real::<R>(*g as f64));
        total = total + t.factor * (e * ln_q).exp();
    }
    Ok(total)
}

#[derive(Clone, Debug)]
pub struct ResidueReport {
    pub gamma: Vec<i64>,
    /// `(epsilon, eps^r * constant term at sigma = (1 + eps) rho)`.
    pub path: Vec<(f64, f64)>,
    /// Richardson-extrapolated limit.
    pub residue: f64,
    /// `q^{-<gamma, rho>} (Res zeta)^r / prod zeta(d_i)`.
    pub closed_form: f64,
    pub relative_error: f64,
    /// `r(G) = q^{<gamma, rho> - (g-1) dim N}` times the residue.
    pub r_value: f64,
    pub volume: f64,
    /// `r(G) vol(Bun_G)`.
    pub product: f64,
    /// `q^{(g-1) dim N} (ln q)^{-r} (#Pic^0)^r / (q - 1)^r`.
    pub product_expected: f64,
    pub product_relative_error: f64,
}

/// Residue of the Borel constant term at `sigma = rho` along `sigma = (1 + eps) rho`.
pub fn eisenstein_residue(curve: &CurveZeta, datum: &RootDatum, gamma: &[i64]) -> Result<ResidueReport> {
    type R = Extended;
    let op = "eisenstein_residue";
    curve.validate()?;
    if gamma.len() != datum.rank {
        return Err(Error::RankMismatch {
            op,
            left: gamma.len(),
            right: datum.rank,
        });
    }
    let r = datum.rank as i32;
    let levels = 10;
    let eps0 = 1.0 / 64.0;
    let mut path = Vec::new();
    let mut table: Vec<Vec<R>> = Vec::new();
    for k in 0..levels {
        let eps = eps0 / f64::from(1u32 << k);
        let e = real::<R>(eps);
        let param = EisensteinParam::multiple_of_rho(datum, curve, real::<R>(1.0) + e);
        let v = constant_term_at(&param, gamma)?.re * e.powi(r);
        path.push((eps, v.to_f64()));
        // Neville extrapolation to eps = 0 with halving steps.
        let mut row = vec![v];
        for m in 1..=k {
            let f = real::<R>(f64::from(1u32 << m));
            let prev = &table[k - 1];
            let x = (row[m - 1] * f - prev[m - 1]) / (f - real::<R>(1.0));
            row.push(x);
        }
        table.push(row);
    }
    let last = &table[levels - 1];
    let prev = &table[levels - 2];
    let residue = last[levels - 1];
    let change = rel_diff(cx::<R>(0.0) + residue, cx::<R>(0.0) + prev[levels - 2]);
    if change.partial_cmp(&1e-9) != Some(std::cmp::Ordering::Less) {
        return Err(Error::NotConverged {
            op,
            msg: format!("extrapolated residue moved by {change:e} between the last two levels; path {path:?}"),
        });
    }
    let q = real::<R>(curve.q as f64);
    let height: i64 = gamma.iter().sum();
    let mut zd = real::<R>(1.0);
    for &d in &datum.exponents {
        zd *= curve.zeta_real::<R>(d as f64)?;
    }
    let res = curve.residue_at_1::<R>();
    let closed = q.powi(-height as i32) * res.powi(r) / zd;
    let g1 = curve.genus as i64 - 1;
    let r_value = q.powi((height - g1 * datum.dim_n) as i32) * residue;
    let volume = tamagawa_finite(curve, datum, TamagawaMode::Formula)?.numeric;
    let pic = real::<R>(curve.pic0().to_f64().expect("small class number"));
    let expected = q.powi((g1 * datum.dim_n) as i32) * (pic / ((q - real::<R>(1.0)) * curve.ln_q::<R>())).powi(r);
    let product = r_value * real::<R>(volume);
    let f = |x: R| x.to_f64();
    Ok(ResidueReport {
        gamma: gamma.to_vec(),
        path,
        residue: f(residue),
        closed_form: f(closed),
        relative_error: rel_diff(cx::<R>(0.0) + residue, cx::<R>(0.0) + closed),
        r_value: f(r_value),
        volume,
        product: f(product),
        product_expected: f(expected),
        product_relative_error: rel_diff(cx::<R>(0.0) + product, cx::<R>(0.0) + expected),
    })
}
