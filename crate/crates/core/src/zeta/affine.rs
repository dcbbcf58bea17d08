use num_complex::Complex;
use num_traits::{One, Zero};

use super::eisenstein::{ratio_product, EisensteinParam};
use super::{real, rel_diff, Real};
use crate::error::{Error, Result};
use crate::rootdata::weyl_enumerate;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffineCtMode {
    /// `prod_{j=1}^{J} prod_i zeta(j s + d_i) / zeta(j s + d_i - 1)`.
    Prefactor,
    /// The prefactor times the truncated sum over `W_aff` up to length `max_length`.
    WSum { max_length: usize },
}

/// Running sum after each length shell.
#[derive(Clone, Debug)]
pub struct ShellSum<R: Real> {
    pub length: usize,
    pub terms: usize,
    pub partial: Complex<R>,
    /// Relative change from the previous shell.
    pub change: f64,
}

#[derive(Clone, Debug)]
pub struct AffineCtReport<R: Real> {
    /// Partial products for `J = 1, 2, ...`.
    pub partial_products: Vec<Complex<R>>,
    /// Relative change of each partial product from the previous one.
    pub deltas: Vec<f64>,
    pub prefactor: Complex<R>,
    pub tolerance: f64,
    /// First `J` from which every later change stays below the tolerance.
    pub converged_at: Option<usize>,
    /// `W_aff` shells in `WSum` mode.
    pub shells: Vec<ShellSum<R>>,
    /// Prefactor times the shell sum, with factor `q^{(g-1) l(w)}` per term.
    pub total: Option<Complex<R>>,
    /// Same sum with the opposite sign `q^{-(g-1) l(w)}` on the completed ratios.
    pub total_opposite_sign: Option<Complex<R>>,
}

const TOLERANCE: f64 = 1e-6;

pub fn affine_correction_and_ct<R: Real>(
    param: &EisensteinParam<'_, R>,
    s: Complex<R>,
    j_max: usize,
    mode: AffineCtMode,
) -> Result<AffineCtReport<R>> {
    let op = "affine_correction_and_ct";
    let curve = param.curve;
    curve.validate()?;
    if s.re <= R::zero() {
        return Err(Error::InvalidArgument {
            op,
            msg: format!("need Re(s) > 0, got {}", s.re.to_f64().unwrap_or(f64::NAN)),
        });
    }
    if j_max == 0 {
        return Err(Error::InvalidArgument {
            op,
            msg: "J must be at least 1".into(),
        });
    }
    let mut partial_products = Vec::with_capacity(j_max);
    let mut deltas = Vec::with_capacity(j_max);
    let mut acc = Complex::<R>::one();
    for j in 1..=j_max {
        let js = s * real::<R>(j as f64);
        let prev = acc;
        for &d in &param.datum.exponents {
            let num = curve.zeta(js + real::<R>(d as f64))?;
            let den = curve.zeta(js + real::<R>((d - 1) as f64))?;
            acc = acc * num / den;
        }
        deltas.push(rel_diff(acc, prev));
        partial_products.push(acc);
    }
    let converged_at = {
        let mut k = deltas.len();
        while k > 0 && deltas[k - 1] < TOLERANCE {
            k -= 1;
        }
        (k < deltas.len()).then_some(k + 1)
    };
    let mut report = AffineCtReport {
        prefactor: acc,
        partial_products,
        deltas,
        tolerance: TOLERANCE,
        converged_at,
        shells: Vec::new(),
        total: None,
        total_opposite_sign: None,
    };
    if let AffineCtMode::WSum { max_length } = mode {
        let datum = param.datum;
        let mut p = param.clone();
        p.delta_slot = Some(s);
        let g1 = curve.genus as i32 - 1;
        let qr = real::<R>(curve.q as f64);
        let mut sum = Complex::<R>::zero();
        let mut alt = Complex::<R>::zero();
        let mut shell_terms = 0;
        let mut prev = Complex::<R>::zero();
        let elements = weyl_enumerate(datum, true, max_length);
        for (idx, w) in elements.iter().enumerate() {
            let inv = w.inversions(datum);
            let xs = inv.iter().map(|b| (p.pair(b), format!("w = {:?}, coroot {b}", w.word)));
            let (factor, completed) = ratio_product(curve, xs, inv.len())?;
            sum = sum + factor;
            alt = alt + completed * qr.powi(-g1 * inv.len() as i32);
            shell_terms += 1;
            let shell_done = elements.get(idx + 1).is_none_or(|n| n.length() != w.length());
            if shell_done {
                report.shells.push(ShellSum {
                    length: w.length(),
                    terms: shell_terms,
                    partial: sum,
                    change: rel_diff(sum, prev),
                });
                prev = sum;
                shell_terms = 0;
            }
        }
        report.total = Some(sum * acc);
        report.total_opposite_sign = Some(alt * acc);
    }
    Ok(report)
}
