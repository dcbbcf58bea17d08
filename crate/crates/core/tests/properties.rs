mod common;

use affsatake::hecke::{bernstein_cross, hecke_mul, HeckeElement};
use affsatake::rootdata::{stabilizer_poincare, weyl_enumerate};
use affsatake::series::{geom_expand, weyl_act_series};
use affsatake::{build_root_datum, GradedSeries, LatticeVector, QRat, RootDatum, WeylElement};
use proptest::prelude::*;

use common::*;

fn a1() -> RootDatum {
    build_root_datum("A1").unwrap()
}

fn a2() -> RootDatum {
    build_root_datum("A2").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms_a1(a in small_series(1, Some(2)), b in small_series(1, Some(2)), c in small_series(1, Some(2))) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn ring_axioms_a2(a in small_series(2, Some(2)), b in small_series(2, Some(2)), c in small_series(2, Some(2))) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn ring_axioms_laurent(a in small_series(2, None), b in small_series(2, None), c in small_series(2, None)) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn truncation_is_monotone(a in small_series(2, Some(2)), b in small_series(2, Some(2)), n in 0i64..=2) {
        let full = a.mul(&b).unwrap().truncate(n);
        let cut = a.truncate(n).mul(&b.truncate(n)).unwrap();
        prop_assert_eq!(full, cut);
    }

    #[test]
    fn weyl_action_is_multiplicative(a in small_series(2, None), b in small_series(2, None), word in weyl_word(&a2(), false, 4)) {
        let w = WeylElement::from_word(&a2(), &word, false).unwrap();
        let lhs = weyl_act_series(&w, &a.mul(&b).unwrap());
        let rhs = weyl_act_series(&w, &a).mul(&weyl_act_series(&w, &b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hecke_associativity_finite(
        x in hecke_monomial(a2(), false, 0),
        y in hecke_monomial(a2(), false, 0),
        z in hecke_monomial(a2(), false, 0),
    ) {
        associative(&a2(), &x, &y, &z)?;
    }

    #[test]
    fn hecke_associativity_affine(
        x in hecke_monomial(a1(), true, 2),
        y in hecke_monomial(a1(), true, 2),
        z in hecke_monomial(a1(), true, 2),
    ) {
        associative(&a1(), &x, &y, &z)?;
    }

    #[test]
    fn cross_relation_affine_a2(f in laurent(&a2(), true), s in 0usize..=2) {
        let d = a2();
        prop_assert_eq!(bernstein_cross(&d, true, &f, s).unwrap(), cross_oracle(&d, true, &f, s));
    }
}

fn ring_axioms(a: &GradedSeries<QRat>, b: &GradedSeries<QRat>, c: &GradedSeries<QRat>) -> Result<(), TestCaseError> {
    let one = GradedSeries::one(a.rank(), a.truncation());
    prop_assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
    prop_assert_eq!(a.mul(&b.mul(c).unwrap()).unwrap(), a.mul(b).unwrap().mul(c).unwrap());
    prop_assert_eq!(
        a.mul(&b.add(c).unwrap()).unwrap(),
        a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap()
    );
    prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
    prop_assert!(a.sub(a).unwrap().is_empty());
    Ok(())
}

fn associative(d: &RootDatum, x: &HeckeElement, y: &HeckeElement, z: &HeckeElement) -> Result<(), TestCaseError> {
    let left = hecke_mul(d, &hecke_mul(d, x, y).unwrap(), z).unwrap();
    let right = hecke_mul(d, x, &hecke_mul(d, y, z).unwrap()).unwrap();
    prop_assert_eq!(left, right);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn geometric_inverse(k in -2i64..=2, j in 1i64..=2, s in -2i64..=2, n in 0i64..=6) {
        let alpha = LatticeVector::new(0, vec![k], j);
        let inv = geom_expand(&alpha, Some(n), s, None).unwrap();
        let mut binom = GradedSeries::one(1, Some(n));
        binom.add_term(-&alpha, -QRat::q_pow(s));
        prop_assert_eq!(inv.mul(&binom).unwrap(), GradedSeries::one(1, Some(n)));
    }
}

#[test]
fn rootdata_invariants() {
    for label in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"] {
        let d = build_root_datum(label).unwrap();
        assert_eq!(d.positive_coroots.len() as i64, d.dim_n, "{label}");
        assert_eq!(d.dim_g, d.rank as i64 + 2 * d.dim_n, "{label}");
        assert_eq!(d.exponents.iter().map(|e| e - 1).sum::<i64>(), d.dim_n, "{label}");
        let order: i64 = d.exponents.iter().product();
        let group = weyl_enumerate(&d, false, d.dim_n as usize);
        assert_eq!(group.len() as i64, order, "{label}");
        assert_eq!(
            group.iter().map(|w| w.length()).max(),
            Some(d.dim_n as usize),
            "{label}"
        );
        let w = stabilizer_poincare(&d, &LatticeVector::zero(d.rank), false).unwrap();
        assert_eq!(w, poincare_product(&d), "{label}");
        for c in &d.positive_coroots {
            for i in 1..=d.rank {
                let r = d.reflect_finite(i, c);
                let simple = (0..d.rank).all(|k| c[k] == i64::from(k + 1 == i));
                let positive = r.iter().all(|&x| x >= 0);
                assert_eq!(positive, !simple, "{label}: s_{i} on {c:?}");
            }
        }
    }
}

#[test]
fn finite_braid_and_quadratic_relations() {
    for label in ["A2", "B2", "G2"] {
        let d = build_root_datum(label).unwrap();
        for i in 1..=d.rank {
            let t = t_product(&d, false, &[i, i]);
            let want = t_product(&d, false, &[i])
                .scale(&(&q() - &QRat::one()))
                .add(&HeckeElement::one(&d, false).scale(&q()))
                .unwrap();
            assert_eq!(t, want, "{label}");
            for j in i + 1..=d.rank {
                let m = braid_order(&d, false, i, j).unwrap();
                let w1: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
                let w2: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { j } else { i }).collect();
                assert_eq!(t_product(&d, false, &w1), t_product(&d, false, &w2), "{label}");
            }
        }
    }
}
