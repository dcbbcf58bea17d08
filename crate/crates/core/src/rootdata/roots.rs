use serde::Serialize;

use super::RootDatum;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineCoroot {
    pub coroot: LatticeVector,
    pub multiplicity: usize,
}

impl AffineCoroot {
    pub fn is_imaginary(&self) -> bool {
        self.coroot.finite.iter().all(|&c| c == 0)
    }
}

/// Positive affine coroots of `delta`-degree at most `n`, ordered by
/// (`delta`-degree, finite part).
///
/// Real coroots `beta + j delta` occur for every `j` when `beta` is the coroot
/// of a long root and for `j` divisible by the lacing number otherwise.
pub fn affine_positive_coroots(datum: &RootDatum, n: i64) -> Result<Vec<AffineCoroot>> {
    if n < 0 {
        return Err(Error::InvalidArgument {
            op: "affine_positive_coroots",
            msg: format!("delta-degree bound must be non-negative, got {n}"),
        });
    }
    let r = datum.rank;
    let mut out = Vec::new();
    for j in 0..=n {
        let mut level = Vec::new();
        for (beta, &long) in datum.positive_coroots.iter().zip(&datum.long_root) {
            if !long && j % datum.lacing != 0 {
                continue;
            }
            level.push(LatticeVector::new(0, beta.clone(), j));
            if j > 0 {
                level.push(LatticeVector::new(0, beta.iter().map(|c| -c).collect(), j));
            }
        }
        if j > 0 {
            level.push(LatticeVector::new(0, vec![0; r], j));
        }
        level.sort_by(|a, b| a.finite.cmp(&b.finite));
        out.extend(level.into_iter().map(|c| {
            let multiplicity = if c.finite.iter().all(|&x| x == 0) { r } else { 1 };
            AffineCoroot {
                coroot: c,
                multiplicity,
            }
        }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_datum, weyl_enumerate};
    use std::collections::BTreeSet;

    #[test]
    fn a1_small_degrees() {
        let a1 = build_root_datum("A1").unwrap();
        let r0 = affine_positive_coroots(&a1, 0).unwrap();
        assert_eq!(r0.len(), 1);
        let r1: Vec<(Vec<i64>, i64, usize)> = affine_positive_coroots(&a1, 1)
            .unwrap()
            .into_iter()
            .map(|c| (c.coroot.finite, c.coroot.delta, c.multiplicity))
            .collect();
        assert_eq!(
            r1,
            vec![(vec![1], 0, 1), (vec![-1], 1, 1), (vec![0], 1, 1), (vec![1], 1, 1)]
        );
    }

    #[test]
    fn a2_degree_one_layout() {
        let a2 = build_root_datum("A2").unwrap();
        let rs = affine_positive_coroots(&a2, 1).unwrap();
        assert_eq!(rs.len(), 10);
        assert!(rs[..3].iter().all(|c| c.coroot.delta == 0));
        assert!(rs[3..6].iter().all(|c| c.coroot.finite.iter().sum::<i64>() < 0));
        assert_eq!(rs[6].multiplicity, 2);
        assert!(rs[6].is_imaginary());
        assert!(rs[7..].iter().all(|c| c.coroot.finite.iter().sum::<i64>() > 0));
    }

    #[test]
    fn negative_bound_rejected() {
        let a1 = build_root_datum("A1").unwrap();
        assert!(affine_positive_coroots(&a1, -1).is_err());
    }

    /// Real coroots agree with the orbit of simple affine coroots.
    #[test]
    fn real_coroots_are_an_orbit() {
        for label in ["A1", "A2", "B2", "G2"] {
            let d = build_root_datum(label).unwrap();
            let n = 2;
            let listed: BTreeSet<LatticeVector> = affine_positive_coroots(&d, n)
                .unwrap()
                .into_iter()
                .filter(|c| !c.is_imaginary())
                .map(|c| c.coroot)
                .collect();
            let mut orbit = BTreeSet::new();
            for w in weyl_enumerate(&d, true, 10) {
                for i in 0..=d.rank {
                    let v = w.apply(&d.simple_coroot(i));
                    if d.is_positive_coroot(&v) && v.delta <= n {
                        orbit.insert(v);
                    }
                }
            }
            assert_eq!(listed, orbit, "{label}");
        }
    }
}
