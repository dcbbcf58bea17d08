//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use affsatake::hecke::HeckeElement;
use affsatake::{GradedSeries, LatticeVector, QRat, RootDatum, WeylElement};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn q() -> QRat {
    QRat::q_pow(1)
}

pub fn qr(s: &str) -> QRat {
    s.parse().unwrap()
}

/// `q^m (chi_m - q^-1 chi_{m-1})` for `A1`, `chi_m = sum_{|k| <= m} e^{k alpha}`:
/// the rank-one spherical function in closed form.
pub fn a1_spherical_closed_form(m: i64) -> GradedSeries<QRat> {
    let mut s = GradedSeries::zero(1, None);
    if m == 0 {
        s.add_term(LatticeVector::zero(1), QRat::one());
        return s;
    }
    for k in -m..=m {
        s.add_term(LatticeVector::finite(vec![k]), QRat::q_pow(m));
    }
    for k in -(m - 1)..=(m - 1) {
        s.add_term(LatticeVector::finite(vec![k]), -QRat::q_pow(m - 1));
    }
    s
}

/// `W(q) = prod_i (q^{d_i} - 1) / (q - 1)`.
pub fn poincare_product(d: &RootDatum) -> QRat {
    d.exponents.iter().fold(QRat::one(), |acc, &e| {
        let num = &QRat::q_pow(e) - &QRat::one();
        &acc * &num.checked_div(&(&q() - &QRat::one())).unwrap()
    })
}

fn gram(d: &RootDatum, x: &[i64], y: &[i64]) -> i64 {
    let a = &d.cartan_matrix;
    let mut s = 0;
    for i in 0..d.rank {
        for j in 0..d.rank {
            s += x[i] * a[i][j] * y[j];
        }
    }
    s
}

/// Dominant representative of the `W`-orbit of a finite coweight.
pub fn dominant_conjugate(d: &RootDatum, mu: &[i64]) -> Vec<i64> {
    let mut m = mu.to_vec();
    'outer: loop {
        for i in 1..=d.rank {
            if d.pair_simple(&m, i - 1) < 0 {
                m = d.reflect_finite(i, &m);
                continue 'outer;
            }
        }
        return m;
    }
}

pub fn orbit(d: &RootDatum, mu: &[i64]) -> BTreeSet<Vec<i64>> {
    let mut seen = BTreeSet::from([mu.to_vec()]);
    let mut stack = vec![mu.to_vec()];
    while let Some(m) = stack.pop() {
        for i in 1..=d.rank {
            let r = d.reflect_finite(i, &m);
            if seen.insert(r.clone()) {
                stack.push(r);
            }
        }
    }
    seen
}

fn le(d: &RootDatum, mu: &[i64], lambda: &[i64]) -> bool {
    let _ = d;
    mu.iter().zip(lambda).all(|(a, b)| a <= b)
}

/// Weight multiplicities of `L(lambda)` on dominant weights by Freudenthal's
/// recursion, for a simply laced datum (coroot coordinates, Gram matrix = Cartan matrix).
pub fn freudenthal(d: &RootDatum, lambda: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    assert!(d.simply_laced);
    let two_rho: Vec<i64> = (0..d.rank)
        .map(|i| d.positive_coroots.iter().map(|c| c[i]).sum())
        .collect();
    let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    let mut doms = d.dominant_below(lambda);
    doms.sort_by_key(|m| -m.iter().sum::<i64>());
    let lookup = |mult: &BTreeMap<Vec<i64>, i64>, nu: &[i64]| -> i64 {
        let p = dominant_conjugate(d, nu);
        if le(d, &p, lambda) {
            *mult.get(&p).unwrap_or(&0)
        } else {
            0
        }
    };
    for mu in doms {
        if mu == lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut num = 0;
        for a in &d.positive_coroots {
            let mut k = 1;
            loop {
                let nu: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x + k * y).collect();
                let p = dominant_conjugate(d, &nu);
                if !le(d, &p, lambda) {
                    break;
                }
                num += lookup(&mult, &nu) * gram(d, &nu, a);
                k += 1;
            }
        }
        let diff: Vec<i64> = lambda.iter().zip(&mu).map(|(l, m)| l - m).collect();
        let sum: Vec<i64> = (0..d.rank).map(|i| lambda[i] + mu[i] + two_rho[i]).collect();
        let den = gram(d, &diff, &sum);
        assert!(den > 0 && (2 * num) % den == 0, "Freudenthal step at {mu:?}");
        let m = 2 * num / den;
        mult.insert(mu, m);
    }
    mult.retain(|_, m| *m != 0);
    mult
}

/// `dim L(lambda) = prod_{a > 0} (lambda + rho, a) / (rho, a)` (simply laced).
pub fn weyl_dimension(d: &RootDatum, lambda: &[i64]) -> BigInt {
    let two_rho: Vec<i64> = (0..d.rank)
        .map(|i| d.positive_coroots.iter().map(|c| c[i]).sum())
        .collect();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for a in &d.positive_coroots {
        let l2: Vec<i64> = lambda.iter().zip(&two_rho).map(|(l, r)| 2 * l + r).collect();
        num *= gram(d, &l2, a);
        den *= gram(d, &two_rho, a);
    }
    assert_eq!(&num % &den, BigInt::from(0));
    num / den
}

pub fn apply_all_simple_reflections(d: &RootDatum, s: &GradedSeries<QRat>, affine: bool) -> Vec<GradedSeries<QRat>> {
    let lo = if affine { 0 } else { 1 };
    (lo..=d.rank)
        .map(|i| {
            let w = WeylElement::simple(d, i, affine).unwrap();
            affsatake::series::weyl_act_series(&w, s)
        })
        .collect()
}

/// Small coefficients `a + b q^k`.
pub fn small_qrat() -> impl Strategy<Value = QRat> {
    (-3i64..=3, -2i64..=2, -2i64..=2).prop_map(|(a, b, k)| &QRat::from_int(a) + &(&QRat::from_int(b) * &QRat::q_pow(k)))
}

/// Series with up to four terms, finite coordinates in `[-2, 2]`, `delta`-degree in `[0, 2]`.
pub fn small_series(rank: usize, truncation: Option<i64>) -> impl Strategy<Value = GradedSeries<QRat>> {
    let max_j = if truncation.is_some() { 2 } else { 0 };
    let term = (proptest::collection::vec(-2i64..=2, rank), 0i64..=max_j, small_qrat());
    proptest::collection::vec(term, 0..=4).prop_map(move |ts| {
        GradedSeries::from_terms(
            rank,
            truncation,
            ts.into_iter().map(|(f, j, c)| (LatticeVector::new(0, f, -j), c)),
        )
    })
}

/// Random reduced element of `W` or `W_aff`, from a word of bounded length.
pub fn weyl_word(d: &RootDatum, affine: bool, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    let lo = if affine { 0 } else { 1 };
    proptest::collection::vec(lo..=d.rank, 0..=max_len)
}

/// A monomial `c X_lambda T_w`; affine weights lie in the Tits cone with level at most `max_level`.
pub fn hecke_monomial(d: RootDatum, affine: bool, max_level: i64) -> impl Strategy<Value = HeckeElement> {
    let rank = d.rank;
    let word = weyl_word(&d, affine, 4);
    (
        proptest::collection::vec(-2i64..=2, rank),
        0..=max_level,
        -1i64..=1,
        word,
        small_qrat(),
    )
        .prop_map(move |(f, level, j, w, c)| {
            let lambda = if !affine {
                LatticeVector::finite(f)
            } else if level == 0 {
                LatticeVector::new(0, vec![0; rank], j)
            } else {
                LatticeVector::new(level, f, j)
            };
            let c = if c.is_zero() { QRat::one() } else { c };
            let w = WeylElement::from_word(&d, &w, affine).unwrap();
            HeckeElement::monomial(&d, lambda, w, c).unwrap()
        })
}

/// Homogeneous element of degree `level`: a sum of up to three monomials of that level.
pub fn hecke_homogeneous(d: RootDatum, level: i64) -> impl Strategy<Value = HeckeElement> {
    let rank = d.rank;
    let dd = d.clone();
    let mono = (
        proptest::collection::vec(-2i64..=2, rank),
        -1i64..=1,
        weyl_word(&d, true, 3),
        small_qrat(),
    );
    proptest::collection::vec(mono, 1..=3).prop_map(move |ms| {
        let mut h = HeckeElement::zero(&dd, true);
        for (f, j, w, c) in ms {
            let f = if level == 0 { vec![0; rank] } else { f };
            let c = if c.is_zero() { QRat::one() } else { c };
            let w = WeylElement::from_word(&dd, &w, true).unwrap();
            let m = HeckeElement::monomial(&dd, LatticeVector::new(level, f, j), w, c).unwrap();
            h = h.add(&m).unwrap();
        }
        h
    })
}

/// A Laurent combination `f = sum c e^lambda`; affine weights are drawn from the Tits cone.
pub fn laurent(d: &RootDatum, affine: bool) -> impl Strategy<Value = GradedSeries<QRat>> {
    let rank = d.rank;
    let term = (
        proptest::collection::vec(-2i64..=2, rank),
        0i64..=1,
        -1i64..=1,
        small_qrat(),
    );
    proptest::collection::vec(term, 1..=3).prop_map(move |ts| {
        GradedSeries::from_terms(
            rank,
            None,
            ts.into_iter().map(|(f, level, j, c)| {
                let e = match (affine, level) {
                    (false, _) => LatticeVector::finite(f),
                    (true, 0) => LatticeVector::new(0, vec![0; rank], j),
                    (true, _) => LatticeVector::new(1, f, j),
                };
                (e, c)
            }),
        )
    })
}

/// `f` as the element `sum c X_lambda` of the Hecke algebra.
pub fn to_hecke(d: &RootDatum, affine: bool, f: &GradedSeries<QRat>) -> HeckeElement {
    let mut h = HeckeElement::zero(d, affine);
    for (e, c) in f.terms() {
        let m = HeckeElement::monomial(d, e.clone(), WeylElement::identity(d, affine), c.clone()).unwrap();
        h = h.add(&m).unwrap();
    }
    h
}

/// `(q - 1)(f - s(f)) / (1 - X_{-alpha_s})` from the string formula: with
/// `n = <lambda, alpha_s>`, `e^lambda` contributes `sum_{k=0}^{n-1} e^{lambda - k alpha}`
/// for `n > 0` and `-sum_{k=1}^{-n} e^{lambda + k alpha}` for `n < 0`.
pub fn cross_oracle(d: &RootDatum, affine: bool, f: &GradedSeries<QRat>, s: usize) -> HeckeElement {
    let alpha = d.simple_coroot(s);
    let qm1 = &q() - &QRat::one();
    let mut out = GradedSeries::zero(d.rank, None);
    for (e, c) in f.terms() {
        let diff = e - &d.reflect(s, e);
        let n = if diff.is_zero() {
            0
        } else {
            let flat = |v: &LatticeVector| {
                let mut c = vec![v.central, v.delta];
                c.extend_from_slice(&v.finite);
                c
            };
            let (a, b) = flat(&diff)
                .into_iter()
                .zip(flat(&alpha))
                .find(|&(_, b)| b != 0)
                .unwrap();
            assert_eq!(a % b, 0);
            a / b
        };
        let c = c * &qm1;
        if n > 0 {
            for k in 0..n {
                out.add_term(e - &alpha.scaled(k), c.clone());
            }
        } else {
            for k in 1..=-n {
                out.add_term(e + &alpha.scaled(k), -&c);
            }
        }
    }
    to_hecke(d, affine, &out)
}

/// Order of `s_i s_j`, if at most 6.
pub fn braid_order(d: &RootDatum, affine: bool, i: usize, j: usize) -> Option<usize> {
    let st = WeylElement::from_word(d, &[i, j], affine).unwrap();
    let mut p = st.clone();
    for m in 1..=6 {
        if p.is_identity() {
            return Some(m);
        }
        p = p.mul(&st, d);
    }
    None
}

/// `T_{i_1} ... T_{i_k}` multiplied out one generator at a time.
pub fn t_product(d: &RootDatum, affine: bool, word: &[usize]) -> HeckeElement {
    word.iter().fold(HeckeElement::one(d, affine), |acc, &i| {
        let t = HeckeElement::t(d, WeylElement::simple(d, i, affine).unwrap());
        affsatake::hecke::hecke_mul(d, &acc, &t).unwrap()
    })
}
