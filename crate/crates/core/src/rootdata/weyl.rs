use std::collections::HashSet;
use std::fmt;

use super::RootDatum;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

/// An element of `W` or `W_aff` with its lexicographically minimal reduced word.
///
/// Finite elements act on the finite coordinates only; affine elements act on
/// `(level, finite, delta)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub affine: bool,
    dim: usize,
    matrix: Vec<i64>,
    inverse: Vec<i64>,
}

fn coords(v: &LatticeVector, affine: bool) -> Vec<i64> {
    if affine {
        let mut c = Vec::with_capacity(v.rank() + 2);
        c.push(v.central);
        c.extend_from_slice(&v.finite);
        c.push(v.delta);
        c
    } else {
        v.finite.clone()
    }
}

fn from_coords(c: &[i64], affine: bool, template: &LatticeVector) -> LatticeVector {
    if affine {
        let n = c.len();
        LatticeVector::new(c[0], c[1..n - 1].to_vec(), c[n - 1])
    } else {
        LatticeVector::new(template.central, c.to_vec(), template.delta)
    }
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

fn mat_vec(a: &[i64], v: &[i64], n: usize) -> Vec<i64> {
    (0..n).map(|i| (0..n).map(|k| a[i * n + k] * v[k]).sum()).collect()
}

impl WeylElement {
    pub fn identity(datum: &RootDatum, affine: bool) -> Self {
        let dim = if affine { datum.rank + 2 } else { datum.rank };
        let mut m = vec![0i64; dim * dim];
        for i in 0..dim {
            m[i * dim + i] = 1;
        }
        WeylElement {
            word: Vec::new(),
            affine,
            dim,
            matrix: m.clone(),
            inverse: m,
        }
    }

    /// The simple reflection matrix of node `i`.
    fn reflection_matrix(datum: &RootDatum, i: usize, affine: bool) -> Vec<i64> {
        let dim = if affine { datum.rank + 2 } else { datum.rank };
        let mut m = vec![0i64; dim * dim];
        for col in 0..dim {
            let mut e = vec![0i64; dim];
            e[col] = 1;
            let template = LatticeVector::zero(datum.rank);
            let v = from_coords(&e, affine, &template);
            let img = coords(&datum.reflect(i, &v), affine);
            for row in 0..dim {
                m[row * dim + col] = img[row];
            }
        }
        m
    }

    fn check_node(datum: &RootDatum, i: usize, affine: bool) -> Result<()> {
        let lo = if affine { 0 } else { 1 };
        if i < lo || i > datum.rank {
            return Err(Error::InvalidArgument {
                op: "weyl_element",
                msg: format!(
                    "node {i} is not a simple reflection of the {} Weyl group of {}",
                    if affine { "affine" } else { "finite" },
                    datum.label()
                ),
            });
        }
        Ok(())
    }

    /// Right multiplication by `s_i` without word bookkeeping.
    fn times_simple(&self, datum: &RootDatum, i: usize) -> (Vec<i64>, Vec<i64>) {
        let s = Self::reflection_matrix(datum, i, self.affine);
        (
            mat_mul(&self.matrix, &s, self.dim),
            mat_mul(&s, &self.inverse, self.dim),
        )
    }

    /// Canonical element for an arbitrary (not necessarily reduced) word.
    pub fn from_word(datum: &RootDatum, word: &[usize], affine: bool) -> Result<Self> {
        let mut w = WeylElement::identity(datum, affine);
        for &i in word {
            Self::check_node(datum, i, affine)?;
            let (m, inv) = w.times_simple(datum, i);
            w.matrix = m;
            w.inverse = inv;
        }
        w.word = w.canonical_word(datum);
        Ok(w)
    }

    /// Lexicographically minimal reduced word, peeling off the smallest left descent.
    fn canonical_word(&self, datum: &RootDatum) -> Vec<usize> {
        let lo = if self.affine { 0 } else { 1 };
        let mut inv = self.inverse.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in lo..=datum.rank {
                // s_i is a left descent iff w^{-1}(alpha_i) < 0.
                let a = coords(&datum.simple_coroot(i), self.affine);
                let img = from_coords(
                    &mat_vec(&inv, &a, self.dim),
                    self.affine,
                    &LatticeVector::zero(datum.rank),
                );
                if !datum.is_positive_coroot(&img) {
                    word.push(i);
                    let s = Self::reflection_matrix(datum, i, self.affine);
                    inv = mat_mul(&inv, &s, self.dim);
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    pub fn simple(datum: &RootDatum, i: usize, affine: bool) -> Result<Self> {
        Self::from_word(datum, &[i], affine)
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Action matrix in row-major order.
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        from_coords(
            &mat_vec(&self.matrix, &coords(v, self.affine), self.dim),
            self.affine,
            v,
        )
    }

    pub fn apply_inverse(&self, v: &LatticeVector) -> LatticeVector {
        from_coords(
            &mat_vec(&self.inverse, &coords(v, self.affine), self.dim),
            self.affine,
            v,
        )
    }

    pub fn inverse(&self, datum: &RootDatum) -> Self {
        let mut w = WeylElement {
            word: Vec::new(),
            affine: self.affine,
            dim: self.dim,
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        };
        w.word = w.canonical_word(datum);
        w
    }

    pub fn mul(&self, other: &Self, datum: &RootDatum) -> Self {
        let mut w = WeylElement {
            word: Vec::new(),
            affine: self.affine,
            dim: self.dim,
            matrix: mat_mul(&self.matrix, &other.matrix, self.dim),
            inverse: mat_mul(&other.inverse, &self.inverse, self.dim),
        };
        w.word = w.canonical_word(datum);
        w
    }

    /// `l(w s_i) > l(w)`, i.e. `w(alpha_i) > 0`.
    pub fn right_ascent(&self, datum: &RootDatum, i: usize) -> bool {
        datum.is_positive_coroot(&self.apply(&datum.simple_coroot(i)))
    }

    /// `l(s_i w) > l(w)`, i.e. `w^{-1}(alpha_i) > 0`.
    pub fn left_ascent(&self, datum: &RootDatum, i: usize) -> bool {
        datum.is_positive_coroot(&self.apply_inverse(&datum.simple_coroot(i)))
    }

    /// `{beta > 0 : w(beta) < 0}` read off the reduced word.
    pub fn inversions(&self, datum: &RootDatum) -> Vec<LatticeVector> {
        let k = self.word.len();
        let mut out = Vec::with_capacity(k);
        for m in 0..k {
            let mut v = datum.simple_coroot(self.word[m]);
            for &i in &self.word[m + 1..] {
                v = datum.reflect(i, &v);
            }
            out.push(v);
        }
        out.sort();
        out
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.affine, self.word.len(), &self.word).cmp(&(other.affine, other.word.len(), &other.word))
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.word)
    }
}

/// All elements of length `<= max_length`, by length shells, each shell in
/// lexicographic order of reduced words.
///
/// Finite mode stops early once a shell is empty.
pub fn weyl_enumerate(datum: &RootDatum, affine: bool, max_length: usize) -> Vec<WeylElement> {
    let lo = if affine { 0 } else { 1 };
    let id = WeylElement::identity(datum, affine);
    let refl: Vec<Vec<i64>> = (0..=datum.rank)
        .map(|i| {
            if i < lo {
                Vec::new()
            } else {
                WeylElement::reflection_matrix(datum, i, affine)
            }
        })
        .collect();
    let mut out = vec![id.clone()];
    let mut shell = vec![id];
    for _ in 0..max_length {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for w in &shell {
            for (i, r) in refl.iter().enumerate().skip(lo) {
                if !w.right_ascent(datum, i) {
                    continue;
                }
                let m = mat_mul(&w.matrix, r, w.dim);
                if !seen.insert(m.clone()) {
                    continue;
                }
                let mut word = w.word.clone();
                word.push(i);
                next.push(WeylElement {
                    word,
                    affine,
                    dim: w.dim,
                    matrix: m,
                    inverse: mat_mul(r, &w.inverse, w.dim),
                });
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        shell = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_datum;

    fn lengths(ws: &[WeylElement]) -> Vec<usize> {
        ws.iter().map(|w| w.length()).collect()
    }

    #[test]
    fn finite_groups() {
        let a1 = build_root_datum("A1").unwrap();
        assert_eq!(lengths(&weyl_enumerate(&a1, false, 10)), vec![0, 1]);
        let a2 = build_root_datum("A2").unwrap();
        assert_eq!(lengths(&weyl_enumerate(&a2, false, 10)), vec![0, 1, 1, 2, 2, 3]);
        for (label, order) in [("B2", 8), ("G2", 12), ("A3", 24), ("B3", 48), ("D4", 192)] {
            let d = build_root_datum(label).unwrap();
            let ws = weyl_enumerate(&d, false, 100);
            assert_eq!(ws.len(), order, "{label}");
            assert_eq!(ws.iter().map(|w| w.length()).max().unwrap() as i64, d.dim_n);
        }
    }

    #[test]
    fn affine_a1_shells() {
        let a1 = build_root_datum("A1").unwrap();
        let ws = weyl_enumerate(&a1, true, 3);
        assert_eq!(lengths(&ws), vec![0, 1, 1, 2, 2, 3, 3]);
        assert_eq!(ws[1].word, vec![0]);
        assert_eq!(ws[3].word, vec![0, 1]);
    }

    #[test]
    fn words_are_canonical() {
        let a2 = build_root_datum("A2").unwrap();
        for w in weyl_enumerate(&a2, true, 5) {
            let again = WeylElement::from_word(&a2, &w.word, true).unwrap();
            assert_eq!(again, w);
        }
        // s1 s2 s1 = s2 s1 s2, canonical word is the smaller one.
        let w = WeylElement::from_word(&a2, &[2, 1, 2], false).unwrap();
        assert_eq!(w.word, vec![1, 2, 1]);
        let e = WeylElement::from_word(&a2, &[1, 1], false).unwrap();
        assert!(e.is_identity());
    }

    #[test]
    fn delta_fixed_and_inversions_count_length() {
        let a2 = build_root_datum("A2").unwrap();
        let delta = LatticeVector::delta_unit(2);
        for w in weyl_enumerate(&a2, true, 4) {
            assert_eq!(w.apply(&delta), delta);
            let inv = w.inversions(&a2);
            assert_eq!(inv.len(), w.length());
            for b in &inv {
                assert!(a2.is_positive_coroot(b));
                assert!(!a2.is_positive_coroot(&w.apply(b)));
            }
        }
    }

    #[test]
    fn bad_node_rejected() {
        let a2 = build_root_datum("A2").unwrap();
        assert!(WeylElement::from_word(&a2, &[0], false).is_err());
        assert!(WeylElement::from_word(&a2, &[3], true).is_err());
    }
}
