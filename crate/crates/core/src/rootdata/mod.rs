//! Finite root data, their untwisted affine extensions and Weyl groups.

mod poincare;
mod roots;
mod weyl;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

pub use poincare::{affine_poincare_series, fit_rational, stabilizer_poincare, PoincareSeries};
pub use roots::{affine_positive_coroots, AffineCoroot};
pub use weyl::{weyl_enumerate, WeylElement};

/// A simple Cartan type such as `A2`, `G2`, `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub series: char,
    pub rank: usize,
}

impl CartanType {
    pub fn new(series: char, rank: usize) -> Result<Self> {
        let ok = match series {
            'A' => rank >= 1,
            'B' | 'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if ok {
            Ok(CartanType { series, rank })
        } else {
            Err(Error::UnsupportedType(format!("{series}{rank}")))
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = chars
            .next()
            .ok_or_else(|| Error::UnsupportedType(s.to_string()))?
            .to_ascii_uppercase();
        let rank = chars
            .as_str()
            .trim_start_matches('_')
            .parse::<usize>()
            .map_err(|_| Error::UnsupportedType(s.to_string()))?;
        CartanType::new(series, rank).map_err(|_| Error::UnsupportedType(s.to_string()))
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

/// Cartan matrix `A[i][j] = <alpha_i^vee, alpha_j>` in Bourbaki numbering.
pub fn cartan_matrix(t: CartanType) -> Vec<Vec<i64>> {
    let r = t.rank;
    let mut a = vec![vec![0i64; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t.series {
        'A' | 'B' | 'C' => {
            for i in 0..r - 1 {
                link(i, i + 1);
            }
        }
        'D' => {
            for i in 0..r - 2 {
                link(i, i + 1);
            }
            link(r - 3, r - 1);
        }
        'E' => {
            link(0, 2);
            link(1, 3);
            for i in 2..r - 1 {
                link(i, i + 1);
            }
        }
        'F' => {
            for i in 0..3 {
                link(i, i + 1);
            }
        }
        'G' => link(0, 1),
        _ => unreachable!("validated Cartan type"),
    }
    match t.series {
        'B' => a[r - 1][r - 2] = -2,
        'C' => a[r - 2][r - 1] = -2,
        'F' => a[2][1] = -2,
        'G' => a[0][1] = -3,
        _ => {}
    }
    a
}

/// Degrees of the basic invariants, ascending.
pub fn degrees(t: CartanType) -> Vec<i64> {
    let r = t.rank as i64;
    let mut d: Vec<i64> = match t.series {
        'A' => (2..=r + 1).collect(),
        'B' | 'C' => (1..=r).map(|i| 2 * i).collect(),
        'D' => (1..r).map(|i| 2 * i).chain([r]).collect(),
        'E' => match r {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
        },
        'F' => vec![2, 6, 8, 12],
        'G' => vec![2, 6],
        _ => unreachable!("validated Cartan type"),
    };
    d.sort_unstable();
    d
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Positive coroots in simple-coroot coordinates, ordered by height then lexicographically.
    pub positive_coroots: Vec<Vec<i64>>,
    /// The matching positive roots in simple-root coordinates.
    pub positive_roots: Vec<Vec<i64>>,
    /// Whether the root of the corresponding coroot is long.
    pub long_root: Vec<bool>,
    pub exponents: Vec<i64>,
    pub dual_coxeter: i64,
    pub dim_g: i64,
    pub dim_n: i64,
    pub simply_laced: bool,
    /// Ratio of squared lengths of long and short roots (1, 2 or 3).
    pub lacing: i64,
    /// Highest root in simple-root coordinates.
    pub highest_root: Vec<i64>,
    /// Its coroot in simple-coroot coordinates.
    pub highest_root_coroot: Vec<i64>,
    /// Relative squared lengths of the simple roots.
    pub simple_root_norms: Vec<i64>,
}

pub fn build_root_datum(label: &str) -> Result<RootDatum> {
    RootDatum::new(label.parse()?)
}

impl RootDatum {
    pub fn new(t: CartanType) -> Result<Self> {
        let a = cartan_matrix(t);
        let r = t.rank;

        // Squared lengths of simple roots: |a_i|^2 A_ij = |a_j|^2 A_ji.
        let mut norm = vec![0i64; r];
        norm[0] = 6;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for j in 0..r {
                if i != j && a[i][j] != 0 && norm[j] == 0 {
                    norm[j] = norm[i] * a[i][j] / a[j][i];
                    queue.push_back(j);
                }
            }
        }
        let g = norm.iter().fold(0, |a, &b| num_integer::gcd(a, b));
        norm.iter_mut().for_each(|x| *x /= g);
        let max_norm = *norm.iter().max().expect("rank >= 1");
        let min_norm = *norm.iter().min().expect("rank >= 1");

        // Close simple (root, coroot) pairs under simple reflections.
        let mut seen: HashMap<Vec<i64>, (Vec<i64>, bool)> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0i64; r];
            e[i] = 1;
            seen.insert(e.clone(), (e.clone(), norm[i] == max_norm));
            queue.push_back(e);
        }
        while let Some(root) = queue.pop_front() {
            let (coroot, long) = seen[&root].clone();
            for i in 0..r {
                let c: i64 = (0..r).map(|j| root[j] * a[i][j]).sum();
                let d: i64 = (0..r).map(|j| coroot[j] * a[j][i]).sum();
                let mut nr = root.clone();
                nr[i] -= c;
                let mut nc = coroot.clone();
                nc[i] -= d;
                if !seen.contains_key(&nr) {
                    seen.insert(nr.clone(), (nc, long));
                    queue.push_back(nr);
                }
            }
        }
        let mut pos: Vec<(Vec<i64>, Vec<i64>, bool)> = seen
            .into_iter()
            .filter(|(root, _)| root.iter().all(|&c| c >= 0))
            .map(|(root, (coroot, long))| (coroot, root, long))
            .collect();
        pos.sort_by(|x, y| {
            let hx: i64 = x.0.iter().sum();
            let hy: i64 = y.0.iter().sum();
            hx.cmp(&hy).then_with(|| x.0.cmp(&y.0))
        });

        let highest_root = pos
            .iter()
            .map(|p| p.1.clone())
            .max_by_key(|root| root.iter().sum::<i64>())
            .expect("nonempty root system");
        let highest_root_coroot = pos
            .iter()
            .find(|p| p.1 == highest_root)
            .map(|p| p.0.clone())
            .expect("highest root is positive");
        let dual_coxeter = 1 + highest_root_coroot.iter().sum::<i64>();
        let exponents = degrees(t);
        let dim_n = pos.len() as i64;

        Ok(RootDatum {
            cartan_type: t,
            rank: r,
            cartan_matrix: a,
            positive_coroots: pos.iter().map(|p| p.0.clone()).collect(),
            positive_roots: pos.iter().map(|p| p.1.clone()).collect(),
            long_root: pos.iter().map(|p| p.2).collect(),
            exponents,
            dual_coxeter,
            dim_g: 2 * dim_n + r as i64,
            dim_n,
            simply_laced: max_norm == min_norm,
            lacing: max_norm / min_norm,
            highest_root,
            highest_root_coroot,
            simple_root_norms: norm,
        })
    }

    pub fn label(&self) -> String {
        self.cartan_type.to_string()
    }

    /// `<lambda, alpha_i>` for a finite coweight `lambda` and simple root `i` (0-based).
    pub fn pair_simple(&self, lambda: &[i64], i: usize) -> i64 {
        lambda.iter().zip(&self.cartan_matrix).map(|(c, row)| c * row[i]).sum()
    }

    /// `<lambda, alpha>` for `alpha` in simple-root coordinates.
    pub fn pair(&self, lambda: &[i64], alpha: &[i64]) -> i64 {
        let mut s = 0;
        for (i, li) in lambda.iter().enumerate() {
            if *li == 0 {
                continue;
            }
            for (j, aj) in alpha.iter().enumerate() {
                s += li * aj * self.cartan_matrix[i][j];
            }
        }
        s
    }

    /// `<lambda, rho>`: with `lambda` in coroot coordinates this is the height.
    pub fn rho_pairing(&self, lambda: &[i64]) -> i64 {
        lambda.iter().sum()
    }

    /// `<lambda, rho_aff> = <lambda_bar, rho> + j h^vee`.
    pub fn rho_aff_pairing(&self, lambda: &LatticeVector) -> i64 {
        self.rho_pairing(&lambda.finite) + lambda.delta * self.dual_coxeter
    }

    /// `<lambda, alpha_0> = level - <lambda_bar, theta>`.
    pub fn pair_affine_node(&self, lambda: &LatticeVector) -> i64 {
        lambda.central - self.pair(&lambda.finite, &self.highest_root)
    }

    /// Simple reflection `s_i` (1-based finite node) on a finite coweight.
    pub fn reflect_finite(&self, i: usize, lambda: &[i64]) -> Vec<i64> {
        let c = self.pair_simple(lambda, i - 1);
        let mut out = lambda.to_vec();
        out[i - 1] -= c;
        out
    }

    /// Simple reflection `s_i` of the affine Weyl group (`i = 0` is the affine node).
    pub fn reflect(&self, i: usize, v: &LatticeVector) -> LatticeVector {
        if i == 0 {
            let c = self.pair_affine_node(v);
            let finite = v
                .finite
                .iter()
                .zip(&self.highest_root_coroot)
                .map(|(x, t)| x + c * t)
                .collect();
            LatticeVector::new(v.central, finite, v.delta - c)
        } else {
            LatticeVector::new(v.central, self.reflect_finite(i, &v.finite), v.delta)
        }
    }

    /// Simple coroot of node `i` as a level-zero lattice vector.
    pub fn simple_coroot(&self, i: usize) -> LatticeVector {
        if i == 0 {
            LatticeVector::new(0, self.highest_root_coroot.iter().map(|c| -c).collect(), 1)
        } else {
            LatticeVector::simple(self.rank, i - 1)
        }
    }

    /// Positivity of a level-zero coroot `beta + j delta`.
    pub fn is_positive_coroot(&self, v: &LatticeVector) -> bool {
        v.delta > 0 || (v.delta == 0 && v.finite.iter().all(|&c| c >= 0) && v.finite.iter().any(|&c| c != 0))
    }

    /// Check that a finite coweight is dominant, naming the first violated inequality.
    pub fn check_dominant(&self, op: &'static str, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.rank {
            return Err(Error::RankMismatch {
                op,
                left: lambda.len(),
                right: self.rank,
            });
        }
        for i in 0..self.rank {
            let p = self.pair_simple(lambda, i);
            if p < 0 {
                return Err(Error::NotDominant {
                    op,
                    weight: format!("{lambda:?}"),
                    inequality: format!("<lambda, alpha_{}> = {p} >= 0", i + 1),
                });
            }
        }
        Ok(())
    }

    /// Tits cone plus affine dominance (all `<lambda, alpha_i>` for `i = 0..r` non-negative).
    pub fn check_affine_dominant(&self, op: &'static str, lambda: &LatticeVector) -> Result<()> {
        if lambda.rank() != self.rank {
            return Err(Error::RankMismatch {
                op,
                left: lambda.rank(),
                right: self.rank,
            });
        }
        if !lambda.in_tits_cone() {
            let inequality = if lambda.central < 0 {
                format!("level k = {} >= 0", lambda.central)
            } else {
                "k > 0, or k = 0 and lambda = 0".to_string()
            };
            return Err(Error::NotDominant {
                op,
                weight: lambda.to_string(),
                inequality,
            });
        }
        if lambda.central == 0 {
            return Ok(());
        }
        self.check_dominant(op, &lambda.finite).map_err(|e| match e {
            Error::NotDominant { inequality, .. } => Error::NotDominant {
                op,
                weight: lambda.to_string(),
                inequality,
            },
            other => other,
        })?;
        let p0 = self.pair_affine_node(lambda);
        if p0 < 0 {
            return Err(Error::NotDominant {
                op,
                weight: lambda.to_string(),
                inequality: format!("<lambda, alpha_0> = k - <lambda, theta> = {p0} >= 0"),
            });
        }
        Ok(())
    }

    /// Dominant weights `mu <= lambda` (lambda - mu a non-negative combination of simple coroots).
    ///
    /// Dominant coweights have non-negative coroot coordinates, so the search is a box.
    pub fn dominant_below(&self, lambda: &[i64]) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut mu = vec![0i64; self.rank];
        loop {
            if (0..self.rank).all(|i| self.pair_simple(&mu, i) >= 0) {
                out.push(mu.clone());
            }
            let mut k = 0;
            while k < self.rank {
                if mu[k] < lambda[k] {
                    mu[k] += 1;
                    break;
                }
                mu[k] = 0;
                k += 1;
            }
            if k == self.rank {
                break;
            }
        }
        out.sort_by(|x, y| self.rho_pairing(y).cmp(&self.rho_pairing(x)).then_with(|| y.cmp(x)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_types() {
        let a1 = build_root_datum("A1").unwrap();
        assert_eq!(a1.positive_coroots, vec![vec![1]]);
        assert_eq!(a1.dim_g, 3);
        assert_eq!(a1.exponents, vec![2]);

        let a2 = build_root_datum("A2").unwrap();
        assert_eq!(a2.positive_coroots, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(a2.exponents, vec![2, 3]);
        assert_eq!(a2.dual_coxeter, 3);

        let g2 = build_root_datum("G2").unwrap();
        assert_eq!(g2.positive_coroots.len(), 6);
        assert_eq!(g2.dim_g, 14);
        assert_eq!(g2.exponents, vec![2, 6]);
    }

    #[test]
    fn dual_coxeter_numbers() {
        for (label, h) in [
            ("A4", 5),
            ("B3", 5),
            ("C3", 4),
            ("D5", 8),
            ("E6", 12),
            ("E7", 18),
            ("E8", 30),
            ("F4", 9),
            ("G2", 4),
        ] {
            assert_eq!(build_root_datum(label).unwrap().dual_coxeter, h, "{label}");
        }
    }

    #[test]
    fn invariants_all_types() {
        for label in [
            "A1", "A2", "A3", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2",
        ] {
            let d = build_root_datum(label).unwrap();
            let r = d.rank as i64;
            assert_eq!(d.exponents[0], 2);
            assert_eq!(d.exponents.iter().map(|x| 2 * x - 1).sum::<i64>(), d.dim_g, "{label}");
            assert_eq!(d.positive_coroots.len() as i64, (d.dim_g - r) / 2);
            for i in 0..d.rank {
                assert_eq!(d.cartan_matrix[i][i], 2);
                let e = LatticeVector::simple(d.rank, i);
                assert_eq!(d.rho_pairing(&e.finite), 1);
            }
        }
    }

    #[test]
    fn unsupported_labels() {
        for bad in ["B1", "D3", "E9", "F3", "H3", "", "A"] {
            assert!(matches!(build_root_datum(bad), Err(Error::UnsupportedType(_))));
        }
    }

    #[test]
    fn affine_node_reflection() {
        let d = build_root_datum("A2").unwrap();
        let a0 = d.simple_coroot(0);
        assert_eq!(d.reflect(0, &a0), -&a0);
        let delta = LatticeVector::delta_unit(2);
        for i in 0..=2 {
            assert_eq!(d.reflect(i, &delta), delta);
        }
        assert_eq!(d.rho_aff_pairing(&a0), 1);
    }

    #[test]
    fn dominance_errors_name_inequality() {
        let d = build_root_datum("A2").unwrap();
        match d.check_dominant("t", &[-1, 1]) {
            Err(Error::NotDominant { inequality, .. }) => assert!(inequality.contains("alpha_1")),
            other => panic!("{other:?}"),
        }
        let bad = LatticeVector::new(0, vec![1, 0], 0);
        assert!(d.check_affine_dominant("t", &bad).is_err());
        let lvl1 = LatticeVector::new(1, vec![1, 1], 0);
        assert!(d.check_affine_dominant("t", &lvl1).is_err());
        assert!(d
            .check_affine_dominant("t", &LatticeVector::new(2, vec![1, 1], 0))
            .is_ok());
    }

    #[test]
    fn dominant_weights_below_adjoint() {
        let d = build_root_datum("A2").unwrap();
        assert_eq!(d.dominant_below(&[1, 1]), vec![vec![1, 1], vec![0, 0]]);
    }
}
