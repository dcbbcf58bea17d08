use super::delta::{delta_affine, delta_inverse, DeltaMode};
use super::series_t_to_q;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::poly::Poly;
use crate::qrat::QRat;
use crate::rootdata::{affine_positive_coroots, RootDatum};
use crate::series::GradedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GkMode {
    /// Finite product, keeping `e^{-gamma}` with `|gamma| <= depth`.
    Finite { depth: i64 },
    /// Affine product divided by `Delta`, up to `delta`-degree `n` and affine height `height`.
    Affine { n: i64, height: i64 },
}

/// Affine height `|gamma| = j h^vee + ht(gamma_bar)` of `gamma = gamma_bar + j delta`.
pub fn affine_height(datum: &RootDatum, gamma: &LatticeVector) -> i64 {
    gamma.delta * datum.dual_coxeter + gamma.height()
}

fn keep_height(s: GradedSeries<Poly>, datum: &RootDatum, cap: i64) -> GradedSeries<Poly> {
    let r = s.rank();
    let trunc = s.truncation();
    GradedSeries::from_terms(
        r,
        trunc,
        s.into_terms()
            .into_iter()
            .filter(|(e, _)| affine_height(datum, &-e) <= cap),
    )
}

/// Multiply in `(1 - t e^{-gamma}) / (1 - e^{-gamma})` for each listed coroot.
fn product(datum: &RootDatum, roots: &[LatticeVector], trunc: Option<i64>, cap: i64) -> GradedSeries<Poly> {
    let r = datum.rank;
    let mut out: GradedSeries<Poly> = GradedSeries::one(r, trunc);
    let tail = Poly::from_i64s(&[1, -1]);
    for g in roots {
        let step = affine_height(datum, g);
        let mut f = GradedSeries::one(r, trunc);
        let mut k = 1;
        while k * step <= cap {
            f.add_term(g.scaled(-k), tail.clone());
            k += 1;
        }
        out = keep_height(out.mul(&f).expect("same rank"), datum, cap);
    }
    out
}

pub fn gk_series(datum: &RootDatum, mode: GkMode) -> Result<GradedSeries<QRat>> {
    let op = "gk_series";
    match mode {
        GkMode::Finite { depth } => {
            if depth < 0 {
                return Err(Error::InvalidArgument {
                    op,
                    msg: format!("depth must be non-negative, got {depth}"),
                });
            }
            let roots: Vec<LatticeVector> = datum
                .positive_coroots
                .iter()
                .map(|b| LatticeVector::finite(b.clone()))
                .collect();
            Ok(series_t_to_q(&product(datum, &roots, None, depth)))
        }
        GkMode::Affine { n, height } => {
            if n < 0 || height < 0 {
                return Err(Error::InvalidArgument {
                    op,
                    msg: format!("truncations must be non-negative, got N = {n}, height = {height}"),
                });
            }
            let delta = delta_affine(datum, n, DeltaMode::Product).map_err(|e| match e {
                Error::Hypothesis { msg, .. } => Error::Hypothesis { op, msg },
                other => other,
            })?;
            let mut roots = Vec::new();
            for c in affine_positive_coroots(datum, n)? {
                for _ in 0..c.multiplicity {
                    roots.push(c.coroot.clone());
                }
            }
            let f = series_t_to_q(&product(datum, &roots, Some(n), height));
            let s = f.mul(&delta_inverse(&delta, n))?;
            Ok(GradedSeries::from_terms(
                s.rank(),
                s.truncation(),
                s.into_terms()
                    .into_iter()
                    .filter(|(e, _)| affine_height(datum, &-e) <= height),
            ))
        }
    }
}

/// `q^{|gamma|}` times the coefficient of `e^{-gamma}`.
pub fn point_count(datum: &RootDatum, series: &GradedSeries<QRat>, gamma: &LatticeVector) -> QRat {
    &QRat::q_pow(affine_height(datum, gamma)) * &series.coeff(&-gamma)
}
