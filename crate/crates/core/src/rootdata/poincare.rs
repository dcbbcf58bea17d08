use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::weyl::WeylElement;
use super::{weyl_enumerate, RootDatum};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::poly::Poly;
use crate::qrat::QRat;

/// Closed form `numerator / denominator` of a Poincaré series with the
/// enumerated shell sizes it was fitted to.
#[derive(Clone, Debug, PartialEq)]
pub struct PoincareSeries {
    pub numerator: Poly,
    pub denominator: Poly,
    pub shell_counts: Vec<BigInt>,
    /// Number of coefficients beyond the fitting window that were checked.
    pub verified_extra: usize,
}

impl PoincareSeries {
    pub fn to_qrat(&self) -> QRat {
        QRat::new(self.numerator.clone(), self.denominator.clone()).expect("nonzero denominator")
    }
}

/// Solve `A x = b` over the rationals; `None` when singular.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            let pivot = a[col].clone();
            for (x, y) in a[r][col..n].iter_mut().zip(&pivot[col..n]) {
                *x -= &f * y;
            }
            let t = &f * &b[col];
            b[r] -= t;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Find `P/Q` with `deg P, deg Q <= D`, `Q(0) = 1`, matching `coeffs`, for the
/// smallest `D <= max_degree` whose prediction of `extra` further
/// coefficients is also correct.
pub fn fit_rational(coeffs: &[BigInt], max_degree: usize, extra: usize) -> Option<(Poly, Poly)> {
    let c = |k: usize| BigRational::from_integer(coeffs[k].clone());
    for d in 0..=max_degree {
        if coeffs.len() < 2 * d + 1 + extra {
            return None;
        }
        // Denominator b_1..b_d from sum_{i=0}^{d} b_i c_{k-i} = 0 for k = d+1..2d.
        let mut b = vec![BigRational::one()];
        if d > 0 {
            let a: Vec<Vec<BigRational>> = (d + 1..=2 * d).map(|k| (1..=d).map(|i| c(k - i)).collect()).collect();
            let rhs: Vec<BigRational> = (d + 1..=2 * d).map(|k| -c(k)).collect();
            match solve(a, rhs) {
                Some(x) => b.extend(x),
                None => continue,
            }
        }
        let conv =
            |k: usize| -> BigRational { (0..=d.min(k)).fold(BigRational::zero(), |acc, i| acc + &b[i] * c(k - i)) };
        let num: Vec<BigRational> = (0..=d).map(conv).collect();
        if !(2 * d + 1..2 * d + 1 + extra).all(|k| conv(k).is_zero()) {
            continue;
        }
        if !b.iter().chain(&num).all(|x| x.is_integer()) {
            continue;
        }
        let to_poly = |v: &[BigRational]| Poly::from_coeffs(v.iter().map(|x| x.to_integer()).collect());
        return Some((to_poly(&num), to_poly(&b)));
    }
    None
}

/// Sum of `q^l(w)` over the parabolic subgroup generated by `nodes`.
fn parabolic_poincare(datum: &RootDatum, nodes: &[usize], affine: bool) -> Result<Poly> {
    let mut counts: Vec<i64> = vec![1];
    let mut shell = vec![WeylElement::identity(datum, affine)];
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    loop {
        let mut next = Vec::new();
        for w in &shell {
            for &i in nodes {
                if !w.right_ascent(datum, i) {
                    continue;
                }
                let mut word = w.word.clone();
                word.push(i);
                let v = WeylElement::from_word(datum, &word, affine)?;
                if seen.insert(v.matrix().to_vec()) {
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        counts.push(next.len() as i64);
        shell = next;
    }
    Ok(Poly::from_i64s(&counts))
}

/// Poincaré series of `W_aff` as a fitted rational function.
pub fn affine_poincare_series(datum: &RootDatum) -> Result<PoincareSeries> {
    const EXTRA: usize = 4;
    let max_degree = datum.dim_n as usize + 1;
    let len = 2 * max_degree + 1 + EXTRA;
    let mut counts = vec![BigInt::zero(); len];
    for w in weyl_enumerate(datum, true, len - 1) {
        counts[w.length()] += 1;
    }
    let (numerator, denominator) = fit_rational(&counts, max_degree, EXTRA).ok_or_else(|| Error::NotStabilized {
        op: "fit_rational",
        msg: format!(
            "no rational form of degree <= {max_degree} fits the shell sizes of the affine Weyl group of {}",
            datum.label()
        ),
    })?;
    Ok(PoincareSeries {
        numerator,
        denominator,
        shell_counts: counts,
        verified_extra: EXTRA,
    })
}

/// `W_lambda(q) = sum_{w in W_lambda} q^l(w)`.
pub fn stabilizer_poincare(datum: &RootDatum, lambda: &LatticeVector, affine: bool) -> Result<QRat> {
    let op = "stabilizer_poincare";
    if !affine {
        if !lambda.is_pure_finite() {
            return Err(Error::InvalidArgument {
                op,
                msg: format!("finite mode needs a pure-finite weight, got {lambda}"),
            });
        }
        datum.check_dominant(op, &lambda.finite)?;
        let nodes: Vec<usize> = (1..=datum.rank)
            .filter(|&i| datum.pair_simple(&lambda.finite, i - 1) == 0)
            .collect();
        return Ok(QRat::from_poly(parabolic_poincare(datum, &nodes, false)?));
    }
    datum.check_affine_dominant(op, lambda)?;
    if lambda.central == 0 {
        return Ok(affine_poincare_series(datum)?.to_qrat());
    }
    let mut nodes = Vec::new();
    if datum.pair_affine_node(lambda) == 0 {
        nodes.push(0);
    }
    nodes.extend((1..=datum.rank).filter(|&i| datum.pair_simple(&lambda.finite, i - 1) == 0));
    Ok(QRat::from_poly(parabolic_poincare(datum, &nodes, true)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_datum;

    fn q(s: &str) -> QRat {
        s.parse().unwrap()
    }

    #[test]
    fn finite_stabilizers() {
        let a2 = build_root_datum("A2").unwrap();
        let zero = LatticeVector::zero(2);
        assert_eq!(
            stabilizer_poincare(&a2, &zero, false).unwrap(),
            q("1 + 2*q + 2*q^2 + q^3")
        );
        let reg = LatticeVector::finite(vec![1, 1]);
        assert_eq!(stabilizer_poincare(&a2, &reg, false).unwrap(), QRat::one());
        assert!(stabilizer_poincare(&a2, &LatticeVector::finite(vec![1, -1]), false).is_err());
    }

    #[test]
    fn affine_closed_forms() {
        let a1 = build_root_datum("A1").unwrap();
        let p = stabilizer_poincare(&a1, &LatticeVector::zero(1), true).unwrap();
        assert_eq!(p, q("(1 + q)/(1 - q)"));
        let a2 = build_root_datum("A2").unwrap();
        let p = stabilizer_poincare(&a2, &LatticeVector::zero(2), true).unwrap();
        assert_eq!(p, q("(1 + q + q^2)/(1 - q)^2"));
    }

    #[test]
    fn a1_series_matches_enumeration_to_length_12() {
        let a1 = build_root_datum("A1").unwrap();
        let mut counts = [0i64; 13];
        for w in weyl_enumerate(&a1, true, 12) {
            counts[w.length()] += 1;
        }
        // (1+q)/(1-q) = 1 + 2q + 2q^2 + ...
        assert_eq!(counts[0], 1);
        assert!(counts[1..].iter().all(|&c| c == 2));
    }

    #[test]
    fn level_one_stabilizer() {
        let a1 = build_root_datum("A1").unwrap();
        // (1; 0; 0) is fixed by s_1 only.
        let lam = LatticeVector::new(1, vec![0], 0);
        assert_eq!(stabilizer_poincare(&a1, &lam, true).unwrap(), q("1 + q"));
        let bad = LatticeVector::new(0, vec![1], 0);
        assert!(matches!(
            stabilizer_poincare(&a1, &bad, true),
            Err(Error::NotDominant { .. })
        ));
    }

    #[test]
    fn fit_recovers_known_series() {
        // 1/(1-q)^2 = 1, 2, 3, ...
        let c: Vec<BigInt> = (1..=12).map(BigInt::from).collect();
        let (n, d) = fit_rational(&c, 4, 4).unwrap();
        assert_eq!(n, Poly::one());
        assert_eq!(d, Poly::from_i64s(&[1, -2, 1]));
    }
}
