use std::sync::Arc;

use proptest::prelude::*;

use blockalg::algebra::{Basis, BlockAlgebra, Element};
use blockalg::scalar::{FieldContext, Scalar};
use blockalg::weights::{apply_functional, berlekamp_massey, bqa0_element, UPoly, Weight};

fn ctx() -> Arc<FieldContext> {
    FieldContext::rational(&["q", "b"]).unwrap()
}

/// Polynomial in `q`, `b`.
fn poly(c: &Arc<FieldContext>, terms: &[(i64, u32, u32)]) -> Scalar {
    let q = Scalar::var(c, "q").unwrap();
    let b = Scalar::var(c, "b").unwrap();
    terms.iter().fold(Scalar::zero(c), |acc, &(k, i, j)| {
        acc + Scalar::int(c, k) * q.powi(i) * b.powi(j)
    })
}

/// `(coeff, deg_q, deg_b)` terms.
type Terms = Vec<(i64, u32, u32)>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((-5i64..=5, 0u32..=3, 0u32..=2), 0..4)
}

fn nonzero_terms() -> impl Strategy<Value = Terms> {
    terms().prop_filter("nonzero polynomial", |t| !poly(&ctx(), t).is_zero())
}

/// Rational function `p / d` with `d` nonzero.
fn rational() -> impl Strategy<Value = (Terms, Terms)> {
    (terms(), nonzero_terms())
}

fn build(c: &Arc<FieldContext>, (n, d): &(Terms, Terms)) -> Scalar {
    poly(c, n) / poly(c, d)
}

fn element_terms() -> impl Strategy<Value = (Vec<(i64, u32, i64)>, i64)> {
    (
        prop::collection::vec((-3i64..=3, 0u32..=2, -4i64..=4), 0..4),
        -3i64..=3,
    )
}

fn element(alg: &BlockAlgebra, (t, central): &(Vec<(i64, u32, i64)>, i64)) -> Element {
    let mut e = Element::zero(alg.ctx());
    for &(a, i, k) in t {
        e.add_term(Basis::gen(a, i), &alg.int(k));
    }
    e.add_term(Basis::Central, &alg.int(*central));
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(x in rational(), y in rational(), z in rational()) {
        let c = ctx();
        let (x, y, z) = (build(&c, &x), build(&c, &y), build(&c, &z));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        if !y.is_zero() {
            prop_assert_eq!(&(&x / &y) * &y, x);
        }
    }

    #[test]
    fn canonical_form_survives_printing(x in rational()) {
        let c = ctx();
        let x = build(&c, &x);
        let again = Scalar::parse(&c, &x.to_string()).unwrap();
        prop_assert_eq!(&again, &x);
        prop_assert_eq!(again.to_string(), x.to_string());
    }

    #[test]
    fn specialization_commutes_with_arithmetic(x in terms(), y in terms(), n in -4i64..=4, d in 1i64..=3) {
        let c = ctx();
        let (x, y) = (poly(&c, &x), poly(&c, &y));
        let v = Scalar::ratio(&c, n, d);
        let at = |s: &Scalar| s.subs(&[("q", &v)]).unwrap();
        prop_assert_eq!(at(&(&x * &y)), &at(&x) * &at(&y));
        prop_assert_eq!(at(&(&x + &y)), &at(&x) + &at(&y));
    }

    #[test]
    fn element_text_round_trip(e in element_terms()) {
        let alg = BlockAlgebra::symbolic();
        let e = element(&alg, &e);
        prop_assert_eq!(Element::parse(alg.ctx(), &e.to_string()).unwrap(), e);
    }

    #[test]
    fn bracket_is_antisymmetric(x in element_terms(), y in element_terms()) {
        let alg = BlockAlgebra::symbolic();
        let (x, y) = (element(&alg, &x), element(&alg, &y));
        prop_assert!(alg.bracket(&x, &y).add(&alg.bracket(&y, &x)).is_zero());
    }

    #[test]
    fn jacobi_on_random_elements(x in element_terms(), y in element_terms(), z in element_terms(), n in -3i64..=3, d in 1i64..=2) {
        let alg = BlockAlgebra::at_ratio(n, d);
        let (x, y, z) = (element(&alg, &x), element(&alg, &y), element(&alg, &z));
        prop_assert!(alg.jacobi_residual(&x, &y, &z).is_zero());
    }

    #[test]
    fn bracket_respects_the_gradation(a in -3i64..=3, b in -3i64..=3, ls in prop::collection::vec((0u32..=3, 1i64..=3), 1..3), ms in prop::collection::vec((0u32..=3, 1i64..=3), 1..3)) {
        let alg = BlockAlgebra::symbolic();
        let homog = |deg: i64, parts: &[(u32, i64)]| {
            let mut e = Element::zero(alg.ctx());
            for &(i, k) in parts {
                e.add_term(Basis::gen(deg, i), &alg.int(k));
            }
            e
        };
        let br = alg.bracket(&homog(a, &ls), &homog(b, &ms));
        for (basis, _) in br.terms() {
            prop_assert_eq!(basis.degree(), a + b);
        }
    }

    #[test]
    fn recurrence_round_trip(h in prop::collection::vec(-3i64..=3, 0..4), init in prop::collection::vec(-5i64..=5, 4)) {
        let k = FieldContext::rational::<&str>(&[]).unwrap();
        // monic h(t) = t^r + h_(r-1) t^(r-1) + ... + h_0
        let r = h.len();
        let mut seq: Vec<Scalar> = init[..r].iter().map(|&v| Scalar::int(&k, v)).collect();
        for n in r..(2 * r + 6) {
            let next = (0..r).fold(Scalar::zero(&k), |acc, j| acc - Scalar::int(&k, h[j]) * &seq[n - r + j]);
            seq.push(next);
        }
        let mut coeffs = h.clone();
        coeffs.push(1);
        let full = UPoly::from_ints(&k, &coeffs);
        let rec = berlekamp_massey(&k, &seq);
        prop_assert!(rec.order <= r);
        prop_assert_eq!(rec.annihilator.degree(), rec.order);
        prop_assert!(rec.annihilator.divides(&full));
        for n in 0..seq.len() - rec.order {
            let s = (0..=rec.order).fold(Scalar::zero(&k), |acc, j| acc + rec.annihilator.coeff(j) * &seq[n + j]);
            prop_assert!(s.is_zero());
        }
    }

    #[test]
    fn functional_matches_constraint_row(labels in prop::collection::vec(-6i64..=6, 8), h in prop::collection::vec(-3i64..=3, 1..4), n in -5i64..=5, d in 1i64..=3, j in 0usize..=3) {
        let k = FieldContext::rational::<&str>(&[]).unwrap();
        let q = Scalar::ratio(&k, n, d);
        let mut coeffs = h.clone();
        coeffs.push(1);
        let h = UPoly::from_ints(&k, &coeffs);
        let w = Weight::new(q.clone(), labels.iter().map(|&v| Scalar::int(&k, v)).collect(), Scalar::zero(&k));
        let f = bqa0_element(&q, &h, j);
        prop_assert_eq!(apply_functional(&f, &w).unwrap(), w.constraint_row(&h, j).unwrap());
    }
}
