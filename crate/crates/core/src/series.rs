//! Finitely supported series `sum c_mu e^mu` over the lattice, truncated along `delta`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::poly::Poly;
use crate::qrat::QRat;
use crate::rootdata::WeylElement;

/// Coefficient ring of a [`GradedSeries`].
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Coeff for QRat {
    fn zero() -> Self {
        QRat::zero()
    }
    fn one() -> Self {
        QRat::one()
    }
    fn is_zero(&self) -> bool {
        QRat::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self = &*self + other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Coeff for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// `truncation = None` means no `delta` bound (pure-finite series).
#[derive(Clone, PartialEq)]
pub struct GradedSeries<C: Coeff = QRat> {
    rank: usize,
    truncation: Option<i64>,
    terms: BTreeMap<LatticeVector, C>,
}

fn min_trunc(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<C: Coeff> GradedSeries<C> {
    pub fn zero(rank: usize, truncation: Option<i64>) -> Self {
        GradedSeries {
            rank,
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize, truncation: Option<i64>) -> Self {
        GradedSeries::monomial(LatticeVector::zero(rank), C::one(), truncation)
    }

    pub fn monomial(exp: LatticeVector, c: C, truncation: Option<i64>) -> Self {
        let mut s = GradedSeries::zero(exp.rank(), truncation);
        s.add_term(exp, c);
        s
    }

    pub fn from_terms(
        rank: usize,
        truncation: Option<i64>,
        terms: impl IntoIterator<Item = (LatticeVector, C)>,
    ) -> Self {
        let mut s = GradedSeries::zero(rank, truncation);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn truncation(&self) -> Option<i64> {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<LatticeVector, C> {
        self.terms
    }

    pub fn coeff(&self, exp: &LatticeVector) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    fn admits(&self, exp: &LatticeVector) -> bool {
        self.truncation.is_none_or(|n| exp.delta_degree() <= n)
    }

    /// Add `c e^exp`; terms beyond the truncation are discarded.
    pub fn add_term(&mut self, exp: LatticeVector, c: C) {
        debug_assert_eq!(exp.rank(), self.rank);
        if c.is_zero() || !self.admits(&exp) {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                op,
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    /// Smallest stored `delta`-degree, `0` for the zero series.
    pub fn valuation(&self) -> i64 {
        self.terms.keys().map(|e| e.delta_degree()).min().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other, "series_add")?;
        let mut out = self.clone();
        out.truncation = min_trunc(self.truncation, other.truncation);
        out.retain_admitted();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        self.map_coeffs(|c| c.mul(k))
    }

    /// Product; known `delta`-degrees are limited by each factor's truncation
    /// shifted by the other factor's (non-positive) valuation.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other, "series_mul")?;
        let va = self.valuation().min(0);
        let vb = other.valuation().min(0);
        let trunc = min_trunc(self.truncation.map(|n| n + vb), other.truncation.map(|n| n + va));
        let mut out = GradedSeries::zero(self.rank, trunc);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if out.admits(&e) {
                    out.add_term(e, ca.mul(cb));
                }
            }
        }
        Ok(out)
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = GradedSeries::zero(self.rank, self.truncation);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Apply a lattice map to every exponent, keeping coefficients.
    pub fn map_exponents(&self, f: impl Fn(&LatticeVector) -> LatticeVector) -> Self {
        let mut out = GradedSeries::zero(self.rank, self.truncation);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Multiply by `e^shift`.
    pub fn shift(&self, shift: &LatticeVector) -> Self {
        let trunc = self.truncation.map(|n| n + shift.delta_degree());
        let mut out = GradedSeries::zero(self.rank, trunc);
        for (e, c) in &self.terms {
            out.add_term(e + shift, c.clone());
        }
        out
    }

    /// Lower the truncation to `n` and drop terms beyond it.
    pub fn truncate(&self, n: i64) -> Self {
        let mut out = self.clone();
        out.truncation = min_trunc(self.truncation, Some(n));
        out.retain_admitted();
        out
    }

    fn retain_admitted(&mut self) {
        if let Some(n) = self.truncation {
            self.terms.retain(|e, _| e.delta_degree() <= n);
        }
    }

    pub fn set_truncation(&mut self, n: Option<i64>) {
        self.truncation = n;
        self.retain_admitted();
    }

    /// Terms with the given `delta`-degree.
    pub fn slice(&self, degree: i64) -> Self {
        let mut out = GradedSeries::zero(self.rank, self.truncation);
        for (e, c) in &self.terms {
            if e.delta_degree() == degree {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Exact quotient by `1 - e^{-alpha}`.
    ///
    /// Along each line `mu + Z alpha` the quotient is the running sum from the
    /// top; the division fails unless every line sums to zero. Divisors with a
    /// `delta` part are only accepted for untruncated series.
    pub fn divide_by_binomial(&self, alpha: &LatticeVector) -> Result<Self> {
        if alpha.finite.iter().all(|&c| c == 0) || (alpha.delta != 0 && self.truncation.is_some()) {
            return Err(Error::InvalidArgument {
                op: "divide_by_binomial",
                msg: format!("cannot divide by 1 - e^-{alpha} at truncation {:?}", self.truncation),
            });
        }
        // Group exponents into lines mu + Z alpha, keyed by the line's top point.
        let mut lines: BTreeMap<LatticeVector, Vec<(LatticeVector, C)>> = BTreeMap::new();
        let coord = alpha.finite.iter().position(|&c| c != 0).expect("nonzero alpha");
        let step = alpha.finite[coord];
        for (e, c) in &self.terms {
            // Canonical representative: reduce the chosen coordinate into [0, |step|).
            let k = e.finite[coord].div_euclid(step);
            let base = e - &alpha.scaled(k);
            lines.entry(base).or_default().push((e.clone(), c.clone()));
        }
        let mut out = GradedSeries::zero(self.rank, self.truncation);
        for (_, mut pts) in lines {
            // Highest point along +alpha first.
            pts.sort_by(|a, b| {
                let ka = a.0.finite[coord].div_euclid(step);
                let kb = b.0.finite[coord].div_euclid(step);
                kb.cmp(&ka)
            });
            let mut acc = C::zero();
            let mut cur: Option<LatticeVector> = None;
            for (e, c) in pts {
                if let Some(prev) = &cur {
                    // Fill the gap between prev and e with the running sum.
                    let mut p = prev - alpha;
                    while p != e {
                        out.add_term(p.clone(), acc.clone());
                        p = &p - alpha;
                    }
                }
                acc.add_assign(&c);
                out.add_term(e.clone(), acc.clone());
                cur = Some(e);
            }
            if !acc.is_zero() {
                return Err(Error::Internal {
                    op: "divide_by_binomial",
                    msg: format!("inexact division by 1 - e^-{alpha}"),
                });
            }
            // The last point carries a zero running sum, already pruned.
        }
        Ok(out)
    }
}

impl GradedSeries<QRat> {
    /// Value at the identity: sum of all coefficients.
    pub fn coefficient_sum(&self) -> QRat {
        self.terms.values().fold(QRat::zero(), |a, c| &a + c)
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for GradedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(e, c)| format!("({c})*e^{e}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<C: Coeff> fmt::Debug for GradedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedSeries")
            .field("truncation", &self.truncation)
            .field("terms", &self.terms)
            .finish()
    }
}

/// `w(a)`: exponents moved by the action of `w`, coefficients unchanged.
pub fn weyl_act_series<C: Coeff>(w: &WeylElement, a: &GradedSeries<C>) -> GradedSeries<C> {
    a.map_exponents(|e| w.apply(e))
}

/// `sum_k q^{s k} e^{-k alpha}`, the inverse of `1 - q^s e^{-alpha}`.
///
/// Roots with positive `delta` part expand up to `delta`-degree `n`; finite
/// roots need an explicit `depth` (largest `k`).
pub fn geom_expand(alpha: &LatticeVector, n: Option<i64>, s: i64, depth: Option<u32>) -> Result<GradedSeries<QRat>> {
    let op = "geom_expand";
    if alpha.is_zero() {
        return Err(Error::InvalidArgument {
            op,
            msg: "1 - q^s e^0 is not invertible".into(),
        });
    }
    let kmax: i64 = if alpha.delta > 0 {
        let bound = n.ok_or_else(|| Error::InvalidArgument {
            op,
            msg: "an imaginary-direction expansion needs a truncation".into(),
        })?;
        let by_delta = bound.max(-1) / alpha.delta;
        match depth {
            Some(d) => by_delta.min(d as i64),
            None => by_delta,
        }
    } else if alpha.delta == 0 && alpha.finite.iter().any(|&c| c != 0) {
        depth.ok_or_else(|| Error::InvalidArgument {
            op,
            msg: format!("finite root {alpha} needs an expansion depth"),
        })? as i64
    } else {
        return Err(Error::InvalidArgument {
            op,
            msg: format!("{alpha} is not a positive direction"),
        });
    };
    let mut out = GradedSeries::zero(alpha.rank(), n);
    for k in 0..=kmax.max(-1) {
        out.add_term(alpha.scaled(-k), QRat::q_pow(s * k));
    }
    Ok(out)
}
