use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::qrat::QRat;
use crate::rootdata::{weyl_enumerate, RootDatum, WeylElement};
use crate::series::{weyl_act_series, GradedSeries};

/// A finite combination `sum c X_lambda T_w` in normal form.
#[derive(Clone, PartialEq, Debug)]
pub struct HeckeElement {
    affine: bool,
    rank: usize,
    terms: BTreeMap<(LatticeVector, WeylElement), QRat>,
}

fn q_minus_one() -> QRat {
    &QRat::q_pow(1) - &QRat::one()
}

impl HeckeElement {
    pub fn zero(datum: &RootDatum, affine: bool) -> Self {
        HeckeElement {
            affine,
            rank: datum.rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(datum: &RootDatum, affine: bool) -> Self {
        let mut h = Self::zero(datum, affine);
        h.add_term(
            LatticeVector::zero(datum.rank),
            WeylElement::identity(datum, affine),
            QRat::one(),
        );
        h
    }

    /// `c X_lambda T_w`.
    pub fn monomial(datum: &RootDatum, lambda: LatticeVector, w: WeylElement, c: QRat) -> Result<Self> {
        let affine = w.affine;
        check_weight("hecke_element", datum, affine, &lambda)?;
        let mut h = Self::zero(datum, affine);
        h.add_term(lambda, w, c);
        Ok(h)
    }

    pub fn x(datum: &RootDatum, affine: bool, lambda: LatticeVector) -> Result<Self> {
        Self::monomial(datum, lambda, WeylElement::identity(datum, affine), QRat::one())
    }

    pub fn t(datum: &RootDatum, w: WeylElement) -> Self {
        let mut h = Self::zero(datum, w.affine);
        h.add_term(LatticeVector::zero(datum.rank), w, QRat::one());
        h
    }

    /// `T_w` for the element with the given (not necessarily reduced) word.
    pub fn t_word(datum: &RootDatum, word: &[usize], affine: bool) -> Result<Self> {
        Ok(Self::t(datum, WeylElement::from_word(datum, word, affine)?))
    }

    pub fn is_affine(&self) -> bool {
        self.affine
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing order of `(lambda, w)`.
    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, &WeylElement, &QRat)> {
        self.terms.iter().map(|((l, w), c)| (l, w, c))
    }

    pub fn coeff(&self, lambda: &LatticeVector, w: &WeylElement) -> QRat {
        self.terms
            .get(&(lambda.clone(), w.clone()))
            .cloned()
            .unwrap_or_else(QRat::zero)
    }

    pub(crate) fn add_term(&mut self, lambda: LatticeVector, w: WeylElement, c: QRat) {
        if c.is_zero() {
            return;
        }
        let key = (lambda, w);
        let sum = match self.terms.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    fn absorb(&mut self, other: HeckeElement, scale: &QRat) {
        for ((l, w), c) in other.terms {
            self.add_term(l, w, &c * scale);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same("hecke_add", self, other)?;
        let mut out = self.clone();
        out.absorb(other.clone(), &QRat::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same("hecke_add", self, other)?;
        let mut out = self.clone();
        out.absorb(other.clone(), &QRat::from_int(-1));
        Ok(out)
    }

    pub fn scale(&self, c: &QRat) -> Self {
        let mut out = HeckeElement {
            affine: self.affine,
            rank: self.rank,
            terms: BTreeMap::new(),
        };
        out.absorb(self.clone(), c);
        out
    }

    /// Multiply on the left by `X_mu`.
    fn shift(&self, mu: &LatticeVector) -> Self {
        HeckeElement {
            affine: self.affine,
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|((l, w), c)| ((l + mu, w.clone()), c.clone()))
                .collect(),
        }
    }
}

fn check_weight(op: &'static str, datum: &RootDatum, affine: bool, lambda: &LatticeVector) -> Result<()> {
    if lambda.rank() != datum.rank {
        return Err(Error::RankMismatch {
            op,
            left: lambda.rank(),
            right: datum.rank,
        });
    }
    if !affine && !lambda.is_pure_finite() {
        return Err(Error::InvalidArgument {
            op,
            msg: format!("finite Hecke algebra needs pure-finite weights, got {lambda}"),
        });
    }
    Ok(())
}

fn check_same(op: &'static str, a: &HeckeElement, b: &HeckeElement) -> Result<()> {
    if a.affine != b.affine {
        return Err(Error::InvalidArgument {
            op,
            msg: "cannot combine finite and affine Hecke elements".into(),
        });
    }
    if a.rank != b.rank {
        return Err(Error::RankMismatch {
            op,
            left: a.rank,
            right: b.rank,
        });
    }
    Ok(())
}

/// Every monomial of an affine operand must lie in the Tits cone.
fn check_positive_part(op: &'static str, h: &HeckeElement) -> Result<()> {
    if !h.affine {
        return Ok(());
    }
    match h.terms().find(|(l, _, _)| !l.in_tits_cone()) {
        Some((l, _, _)) => Err(Error::InvalidArgument {
            op,
            msg: format!("X_{l} lies outside the Tits cone (level > 0, or level 0 with zero finite part)"),
        }),
        None => Ok(()),
    }
}

/// Simple reflections of one datum, cached for the rewriting loop.
struct Rewriter<'a> {
    datum: &'a RootDatum,
    affine: bool,
    simples: Vec<Option<WeylElement>>,
}

impl<'a> Rewriter<'a> {
    fn new(datum: &'a RootDatum, affine: bool) -> Self {
        let lo = if affine { 0 } else { 1 };
        let simples = (0..=datum.rank)
            .map(|i| (i >= lo).then(|| WeylElement::simple(datum, i, affine).expect("valid node")))
            .collect();
        Rewriter { datum, affine, simples }
    }

    fn simple(&self, i: usize) -> &WeylElement {
        self.simples[i].as_ref().expect("valid node")
    }

    /// `(X_mu - X_{s mu}) / (1 - X_{-alpha})` as a list of weights with signs.
    fn cross_terms(&self, i: usize, mu: &LatticeVector) -> Vec<(LatticeVector, i64)> {
        let alpha = self.datum.simple_coroot(i);
        let smu = self.datum.reflect(i, mu);
        let diff = mu - &smu;
        let n = match alpha.finite.iter().position(|&c| c != 0) {
            Some(k) => diff.finite[k] / alpha.finite[k],
            None => 0,
        };
        if n > 0 {
            (0..n).map(|k| (mu - &alpha.scaled(k), 1)).collect()
        } else {
            (1..=-n).map(|k| (mu + &alpha.scaled(k), -1)).collect()
        }
    }

    /// `T_i T_u` in the standard basis.
    fn t_left(&self, i: usize, u: &WeylElement) -> Vec<(WeylElement, QRat)> {
        let v = self.simple(i).mul(u, self.datum);
        if v.length() > u.length() {
            vec![(v, QRat::one())]
        } else {
            vec![(u.clone(), q_minus_one()), (v, QRat::q_pow(1))]
        }
    }

    /// `T_u T_i` in the standard basis.
    fn t_right(&self, u: &WeylElement, i: usize) -> Vec<(WeylElement, QRat)> {
        let v = u.mul(self.simple(i), self.datum);
        if v.length() > u.length() {
            vec![(v, QRat::one())]
        } else {
            vec![(u.clone(), q_minus_one()), (v, QRat::q_pow(1))]
        }
    }

    /// `T_i h`, moving `T_i` past each `X_nu` with the cross relation.
    fn left_simple(&self, i: usize, h: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement {
            affine: self.affine,
            rank: h.rank,
            terms: BTreeMap::new(),
        };
        let qm1 = q_minus_one();
        for ((nu, u), c) in &h.terms {
            let snu = self.datum.reflect(i, nu);
            for (v, k) in self.t_left(i, u) {
                out.add_term(snu.clone(), v, c * &k);
            }
            let cq = c * &qm1;
            for (lam, sign) in self.cross_terms(i, nu) {
                out.add_term(lam, u.clone(), &cq * &QRat::from_int(sign));
            }
        }
        out
    }

    /// `T_w h` along the canonical reduced word of `w`.
    fn left_word(&self, w: &WeylElement, h: &HeckeElement) -> HeckeElement {
        let mut out = h.clone();
        for &i in w.word.iter().rev() {
            out = self.left_simple(i, &out);
        }
        out
    }

    /// `h T_i`.
    fn right_simple(&self, h: &HeckeElement, i: usize) -> HeckeElement {
        let mut out = HeckeElement {
            affine: self.affine,
            rank: h.rank,
            terms: BTreeMap::new(),
        };
        for ((nu, u), c) in &h.terms {
            for (v, k) in self.t_right(u, i) {
                out.add_term(nu.clone(), v, c * &k);
            }
        }
        out
    }
}

pub fn hecke_mul(datum: &RootDatum, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
    let op = "hecke_mul";
    check_same(op, a, b)?;
    if a.rank != datum.rank {
        return Err(Error::RankMismatch {
            op,
            left: a.rank,
            right: datum.rank,
        });
    }
    check_positive_part(op, a)?;
    check_positive_part(op, b)?;
    let rw = Rewriter::new(datum, a.affine);
    // Group the left factor by its T part so that T_u b is rewritten once per u.
    let mut by_w: BTreeMap<&WeylElement, Vec<(&LatticeVector, &QRat)>> = BTreeMap::new();
    for ((l, w), c) in &a.terms {
        by_w.entry(w).or_default().push((l, c));
    }
    let mut out = HeckeElement::zero(datum, a.affine);
    for (w, xs) in by_w {
        let tb = rw.left_word(w, b);
        for (l, c) in xs {
            out.absorb(tb.shift(l), c);
        }
    }
    Ok(out)
}

/// `P = sum_{w in W} T_w` over the finite Weyl group.
pub fn spherical_projector(datum: &RootDatum) -> HeckeElement {
    let mut p = HeckeElement::zero(datum, false);
    for w in weyl_enumerate(datum, false, datum.dim_n as usize) {
        p.add_term(LatticeVector::zero(datum.rank), w, QRat::one());
    }
    p
}

/// `P h P`.
pub fn spherical_sandwich(datum: &RootDatum, h: &HeckeElement) -> Result<HeckeElement> {
    let op = "spherical_sandwich";
    if h.affine {
        return Err(Error::InvalidArgument {
            op,
            msg: "the projector P is only defined for the finite Weyl group".into(),
        });
    }
    let p = spherical_projector(datum);
    let ph = hecke_mul(datum, &p, h)?;
    let rw = Rewriter::new(datum, false);
    // Right multiplication by P needs no cross relation.
    let mut out = HeckeElement::zero(datum, false);
    for w in weyl_enumerate(datum, false, datum.dim_n as usize) {
        let mut term = ph.clone();
        for &i in &w.word {
            term = rw.right_simple(&term, i);
        }
        out.absorb(term, &QRat::one());
    }
    Ok(out)
}

/// `(q - 1)(f - s(f)) / (1 - X_{-alpha_s})` as an element `sum c X_lambda`.
pub fn bernstein_cross(datum: &RootDatum, affine: bool, f: &GradedSeries<QRat>, s: usize) -> Result<HeckeElement> {
    let op = "bernstein_cross";
    if f.truncation().is_some() {
        return Err(Error::InvalidArgument {
            op,
            msg: "f must be a finite Laurent combination (no truncation)".into(),
        });
    }
    let sw = WeylElement::simple(datum, s, affine).map_err(|e| Error::InvalidArgument { op, msg: e.to_string() })?;
    for (e, _) in f.terms() {
        check_weight(op, datum, affine, e)?;
    }
    let diff = f.sub(&weyl_act_series(&sw, f))?;
    let quot = diff
        .divide_by_binomial(&datum.simple_coroot(s))
        .map_err(|e| Error::Internal { op, msg: e.to_string() })?;
    let mut out = HeckeElement::zero(datum, affine);
    let id = WeylElement::identity(datum, affine);
    let qm1 = q_minus_one();
    for (e, c) in quot.terms() {
        out.add_term(e.clone(), id.clone(), c * &qm1);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    /// Degree (level) of each monomial, sorted.
    pub degrees: Vec<i64>,
    /// Whether the element lies in the positive part: every `X_lambda` in the Tits cone.
    pub positive: bool,
}

impl DegreeReport {
    /// The common degree of a homogeneous element.
    pub fn homogeneous(&self) -> Option<i64> {
        match self.degrees.first() {
            Some(&d) if self.degrees.iter().all(|&e| e == d) => Some(d),
            _ => None,
        }
    }
}

/// Grading `deg X_lambda = level(lambda)`, `deg T_w = 0`, and Tits-cone positivity.
pub fn degree_and_cone(h: &HeckeElement) -> Result<DegreeReport> {
    if !h.affine {
        return Err(Error::InvalidArgument {
            op: "degree_and_cone",
            msg: "the grading is defined on the affine algebra only".into(),
        });
    }
    let mut degrees: Vec<i64> = h.terms().map(|(l, _, _)| l.central).collect();
    degrees.sort();
    Ok(DegreeReport {
        degrees,
        positive: h.terms().all(|(l, _, _)| l.in_tits_cone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_datum;

    fn fin(v: &[i64]) -> LatticeVector {
        LatticeVector::finite(v.to_vec())
    }

    #[test]
    fn quadratic_relation() {
        let d = build_root_datum("A1").unwrap();
        let t = HeckeElement::t_word(&d, &[1], false).unwrap();
        let tt = hecke_mul(&d, &t, &t).unwrap();
        let expected = t
            .scale(&q_minus_one())
            .add(&HeckeElement::one(&d, false).scale(&QRat::q_pow(1)))
            .unwrap();
        assert_eq!(tt, expected);
    }

    #[test]
    fn cross_relation_a1() {
        let d = build_root_datum("A1").unwrap();
        let x = HeckeElement::x(&d, false, fin(&[1])).unwrap();
        let t = HeckeElement::t_word(&d, &[1], false).unwrap();
        let lhs = hecke_mul(&d, &x, &t).unwrap();
        let xm = HeckeElement::x(&d, false, fin(&[-1])).unwrap();
        let rhs = hecke_mul(&d, &t, &xm)
            .unwrap()
            .add(&x.add(&HeckeElement::one(&d, false)).unwrap().scale(&q_minus_one()))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cross_of_constant_vanishes() {
        let d = build_root_datum("A2").unwrap();
        let f = GradedSeries::one(2, None);
        assert!(bernstein_cross(&d, false, &f, 1).unwrap().is_zero());
    }

    #[test]
    fn length_additive_product() {
        let d = build_root_datum("A2").unwrap();
        let a = HeckeElement::t_word(&d, &[1], false).unwrap();
        let b = HeckeElement::t_word(&d, &[2], false).unwrap();
        assert_eq!(
            hecke_mul(&d, &a, &b).unwrap(),
            HeckeElement::t_word(&d, &[1, 2], false).unwrap()
        );
    }

    #[test]
    fn projector_square_a1() {
        let d = build_root_datum("A1").unwrap();
        let p = spherical_projector(&d);
        let p2 = hecke_mul(&d, &p, &p).unwrap();
        assert_eq!(p2, p.scale(&"1 + q".parse().unwrap()));
    }

    #[test]
    fn grading_report() {
        let d = build_root_datum("A1").unwrap();
        let t = HeckeElement::t_word(&d, &[0, 1], true).unwrap();
        let r = degree_and_cone(&t).unwrap();
        assert_eq!((r.degrees.clone(), r.positive), (vec![0], true));
        let x = HeckeElement::x(&d, true, LatticeVector::new(2, vec![0], 0)).unwrap();
        assert_eq!(degree_and_cone(&x).unwrap().homogeneous(), Some(2));
        let bad = HeckeElement::x(&d, true, LatticeVector::new(0, vec![1], 0)).unwrap();
        let r = degree_and_cone(&bad).unwrap();
        assert_eq!((r.degrees, r.positive), (vec![0], false));
        assert!(hecke_mul(&d, &bad, &t).is_err());
    }
}
