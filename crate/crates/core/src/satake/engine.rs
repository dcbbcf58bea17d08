//! Weyl-group sums `sum_w w(e^lambda F)` with `F` the product over positive
//! (affine) coroots of `(1 - t e^{-a}) / (1 - e^{-a})`, where `t = q^{-1}`.
//!
//! Each `w(F)` is rewritten through the inversion set `N(w^{-1})`, so that after
//! multiplying by `D = prod_{a > 0 finite} (1 - e^{-a})` every summand is a
//! finite expression. The sum is divided by `D` at the end.

use std::collections::HashSet;

use crate::lattice::LatticeVector;
use crate::poly::Poly;
use crate::rootdata::{affine_positive_coroots, RootDatum};
use crate::series::GradedSeries;

/// One group element, tracked by its action on the weight and by `N(w^{-1})`.
#[derive(Clone, Debug)]
pub(crate) struct OrbitPoint {
    pub weight: LatticeVector,
    /// `{beta > 0 : w^{-1} beta < 0}`, sorted.
    pub inversions: Vec<LatticeVector>,
}

impl OrbitPoint {
    pub fn length(&self) -> usize {
        self.inversions.len()
    }

    fn inverts(&self, beta: &LatticeVector) -> bool {
        self.inversions.binary_search(beta).is_ok()
    }
}

/// Left-multiplication shells `{s_i w}` grown from the identity.
pub(crate) struct Shells<'a> {
    datum: &'a RootDatum,
    affine: bool,
    current: Vec<OrbitPoint>,
    started: bool,
}

impl<'a> Shells<'a> {
    pub fn new(datum: &'a RootDatum, weight: LatticeVector, affine: bool) -> Self {
        Shells {
            datum,
            affine,
            current: vec![OrbitPoint {
                weight,
                inversions: Vec::new(),
            }],
            started: false,
        }
    }

    /// Next shell, keeping only successors of points accepted by `keep`.
    pub fn next_shell(&mut self, keep: impl Fn(&OrbitPoint) -> bool) -> &[OrbitPoint] {
        if !self.started {
            self.started = true;
            self.current.retain(&keep);
            return &self.current;
        }
        let lo = if self.affine { 0 } else { 1 };
        let mut seen: HashSet<Vec<LatticeVector>> = HashSet::new();
        let mut next = Vec::new();
        for w in &self.current {
            for i in lo..=self.datum.rank {
                let a = self.datum.simple_coroot(i);
                if w.inverts(&a) {
                    continue;
                }
                let mut inv: Vec<LatticeVector> = w.inversions.iter().map(|b| self.datum.reflect(i, b)).collect();
                inv.push(a);
                inv.sort();
                if seen.contains(&inv) {
                    continue;
                }
                let p = OrbitPoint {
                    weight: self.datum.reflect(i, &w.weight),
                    inversions: inv,
                };
                if keep(&p) {
                    seen.insert(p.inversions.clone());
                    next.push(p);
                }
            }
        }
        self.current = next;
        &self.current
    }
}

/// Reduce every coefficient modulo `t^p`.
pub(crate) fn reduce(s: &GradedSeries<Poly>, precision: Option<usize>) -> GradedSeries<Poly> {
    match precision {
        Some(p) => s.map_coeffs(|c| c.truncate(p)),
        None => s.clone(),
    }
}

fn one_minus_t() -> Poly {
    Poly::from_i64s(&[1, -1])
}

/// Summand generator for a fixed datum, truncation and precision.
pub(crate) struct Summands<'a> {
    datum: &'a RootDatum,
    rank: usize,
    /// `delta`-truncation; `None` in finite mode.
    n: Option<i64>,
    precision: Option<usize>,
    finite_roots: Vec<LatticeVector>,
    /// Real affine positive coroots of `delta`-degree `1..=n`.
    affine_real: Vec<LatticeVector>,
}

impl<'a> Summands<'a> {
    pub fn new(datum: &'a RootDatum, n: Option<i64>, precision: Option<usize>) -> Self {
        let finite_roots = datum
            .positive_coroots
            .iter()
            .map(|b| LatticeVector::finite(b.clone()))
            .collect();
        let affine_real = match n {
            Some(n) if n >= 1 => affine_positive_coroots(datum, n)
                .expect("non-negative bound")
                .into_iter()
                .filter(|c| c.coroot.delta >= 1 && !c.is_imaginary())
                .map(|c| c.coroot)
                .collect(),
            _ => Vec::new(),
        };
        Summands {
            datum,
            rank: datum.rank,
            n,
            precision,
            finite_roots,
            affine_real,
        }
    }

    /// `e^{w lambda} D w(F_real)`, with the weight's `delta` part measured from zero.
    pub fn summand(&self, p: &OrbitPoint) -> GradedSeries<Poly> {
        let depth = -p.weight.delta;
        let budget = self.n.map_or(0, |n| n - depth);
        if budget < 0 {
            return GradedSeries::zero(self.rank, self.n);
        }
        // Inverted roots beyond the budget each contribute a bare factor t.
        let deep = p.inversions.iter().filter(|b| b.delta > budget).count();
        let lead = Poly::monomial(1, deep);
        let mut s = GradedSeries::monomial(p.weight.clone(), lead, self.n);
        for g in &self.affine_real {
            if g.delta > budget {
                continue;
            }
            let inverted = p.inverts(g);
            let mut f = GradedSeries::zero(self.rank, self.n);
            f.add_term(
                LatticeVector::zero(self.rank),
                if inverted { Poly::x() } else { Poly::one() },
            );
            let tail = if inverted { -one_minus_t() } else { one_minus_t() };
            let mut k = 1;
            while k * g.delta <= budget {
                f.add_term(g.scaled(-k), tail.clone());
                k += 1;
            }
            s = reduce(&s.mul(&f).expect("same rank"), self.precision);
        }
        for a in &self.finite_roots {
            let mut f = GradedSeries::zero(self.rank, self.n);
            if p.inverts(a) {
                f.add_term(LatticeVector::zero(self.rank), Poly::x());
                f.add_term(-a, Poly::constant(-1));
            } else {
                f.add_term(LatticeVector::zero(self.rank), Poly::one());
                f.add_term(-a, Poly::from_i64s(&[0, -1]));
            }
            s = reduce(&s.mul(&f).expect("same rank"), self.precision);
        }
        s
    }

    /// Divide an accumulated sum by `D` and multiply by the imaginary factor.
    pub fn finish(&self, sum: &GradedSeries<Poly>) -> crate::error::Result<GradedSeries<Poly>> {
        let mut s = sum.clone();
        for a in &self.finite_roots {
            s = s.divide_by_binomial(a)?;
        }
        if let Some(n) = self.n {
            s = reduce(
                &s.mul(&imaginary_factor(self.datum, n)).expect("same rank"),
                self.precision,
            );
        }
        Ok(s)
    }
}

/// `prod_{j=1}^{n} ((1 - t e^{-j delta}) / (1 - e^{-j delta}))^r`.
pub(crate) fn imaginary_factor(datum: &RootDatum, n: i64) -> GradedSeries<Poly> {
    let r = datum.rank;
    let mut out = GradedSeries::one(r, Some(n));
    for j in 1..=n {
        let mut f = GradedSeries::one(r, Some(n));
        let mut k = 1;
        while k * j <= n {
            f.add_term(LatticeVector::new(0, vec![0; r], -k * j), one_minus_t());
            k += 1;
        }
        for _ in 0..r {
            out = out.mul(&f).expect("same rank");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_datum;

    #[test]
    fn shells_match_group_orders() {
        for (label, order) in [("A2", 6), ("B2", 8), ("G2", 12)] {
            let d = build_root_datum(label).unwrap();
            let mut sh = Shells::new(&d, LatticeVector::zero(d.rank), false);
            let mut total = 0;
            loop {
                let n = sh.next_shell(|_| true).len();
                if n == 0 {
                    break;
                }
                total += n;
            }
            assert_eq!(total, order, "{label}");
        }
    }

    #[test]
    fn affine_shell_sizes_a1() {
        let d = build_root_datum("A1").unwrap();
        let mut sh = Shells::new(&d, LatticeVector::zero(1), true);
        let sizes: Vec<usize> = (0..6).map(|_| sh.next_shell(|_| true).len()).collect();
        assert_eq!(sizes, vec![1, 2, 2, 2, 2, 2]);
    }
}
