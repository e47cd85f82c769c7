use compalg_core::algebra::{Algebra, AlgebraError, AlgebraKind, Amplitude};
use compalg_core::axioms::{verify_axioms_with, Axiom};
use compalg_core::scalar::{Rational, Scalar};
use proptest::prelude::*;

fn amp(kind: AlgebraKind) -> impl Strategy<Value = Amplitude<Rational>> {
    prop::collection::vec((-20i64..=20, 1i64..=7), kind.dim()).prop_map(move |v| {
        Amplitude::new(
            kind,
            v.into_iter()
                .map(|(p, q)| Rational::from_ratio(p, q))
                .collect(),
        )
        .unwrap()
    })
}

fn kind() -> impl Strategy<Value = AlgebraKind> {
    prop::sample::select(AlgebraKind::ALL.to_vec())
}

fn triple() -> impl Strategy<
    Value = (
        AlgebraKind,
        Amplitude<Rational>,
        Amplitude<Rational>,
        Amplitude<Rational>,
    ),
> {
    kind().prop_flat_map(|k| (Just(k), amp(k), amp(k), amp(k)))
}

#[test]
fn dimensions_and_kinds() {
    let dims: Vec<_> = AlgebraKind::ALL.iter().map(|k| k.dim()).collect();
    assert_eq!(dims, [1, 2, 2, 4, 4, 8, 8]);
    assert_eq!("C'".parse::<AlgebraKind>().unwrap(), AlgebraKind::SplitC);
    assert_eq!(
        "SplitH".parse::<AlgebraKind>().unwrap(),
        AlgebraKind::SplitH
    );
    assert!("Q".parse::<AlgebraKind>().is_err());
}

#[test]
fn small_tables() {
    let c = Algebra::new(AlgebraKind::C);
    assert_eq!(c.basis_product(1, 1), (0, -1));
    let sc = Algebra::new(AlgebraKind::SplitC);
    assert_eq!(sc.basis_product(1, 1), (0, 1));
    let h = Algebra::new(AlgebraKind::H);
    assert_eq!(h.basis_product(1, 2), (3, 1));
    assert_eq!(h.basis_product(2, 1), (3, -1));
    for alg in AlgebraKind::ALL.map(Algebra::new) {
        for i in 0..alg.dim() {
            assert_eq!(alg.basis_product(0, i), (i, 1));
            assert_eq!(alg.basis_product(i, 0), (i, 1));
            assert_eq!(alg.conj_sign(i), if i == 0 { 1 } else { -1 });
        }
    }
}

#[test]
fn forms_on_examples() {
    let r = |n| Rational::from_i64(n);
    let c = Algebra::new(AlgebraKind::C);
    let z = Amplitude::new(AlgebraKind::C, vec![r(3), r(4)]).unwrap();
    assert_eq!(c.quadratic_form(&z).unwrap(), r(25));
    let sc = Algebra::new(AlgebraKind::SplitC);
    let w = Amplitude::new(AlgebraKind::SplitC, vec![r(3), r(4)]).unwrap();
    assert_eq!(sc.quadratic_form(&w).unwrap(), r(-7));
    let iso = Amplitude::new(AlgebraKind::SplitC, vec![r(1), r(1)]).unwrap();
    assert_eq!(sc.quadratic_form(&iso).unwrap(), r(0));
    assert_eq!(sc.inverse(&iso), Err(AlgebraError::NotInvertible));
    assert_eq!(c.trace_form(&z).unwrap(), r(6));
    let other = Amplitude::new(AlgebraKind::H, vec![r(1); 4]).unwrap();
    assert!(matches!(
        c.mul(&z, &other),
        Err(AlgebraError::Mismatch { .. })
    ));
}

#[test]
fn gram_determinants() {
    let dets: Vec<_> = AlgebraKind::ALL
        .map(|k| Algebra::new(k).gram_determinant())
        .to_vec();
    let want = [2, 4, -4, 16, 16, 256, 256].map(Rational::from_i64);
    assert_eq!(dets, want);
}

#[test]
fn split_octonions_fail_only_associativity() {
    let rep = verify_axioms_with(&Algebra::new(AlgebraKind::SplitO), 50, 3);
    for check in &rep.checks {
        assert_eq!(
            check.pass,
            check.axiom != Axiom::Associativity,
            "{:?}",
            check.axiom
        );
    }
    assert!(rep.is_composition_algebra());
}

proptest! {
    #[test]
    fn composition_and_conjugation((k, a, b, _c) in triple()) {
        let alg = Algebra::new(k);
        let q = |x: &Amplitude<Rational>| alg.quadratic_form(x).unwrap();
        let ab = alg.mul(&a, &b).unwrap();
        prop_assert_eq!(q(&ab), q(&a) * q(&b));
        prop_assert_eq!(alg.conj(&ab).unwrap(), alg.mul(&b.conj(), &a.conj()).unwrap());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(q(&a.conj()), q(&a));
        let one = Amplitude::one(k);
        prop_assert_eq!(alg.trace_form(&a).unwrap(), alg.bilinear_form(&a, &one).unwrap());
    }

    #[test]
    fn homogeneity_and_inverse((k, a, _b, _c) in triple(), p in -9i64..=9, d in 1i64..=9) {
        let alg = Algebra::new(k);
        let nu = Rational::from_ratio(p, d);
        prop_assert_eq!(alg.quadratic_form(&a.scale(&nu)).unwrap(), nu.clone() * nu * alg.quadratic_form(&a).unwrap());
        match alg.inverse(&a) {
            Ok(inv) => {
                prop_assert_eq!(alg.mul(&a, &inv).unwrap(), Amplitude::one(k));
                prop_assert_eq!(alg.mul(&inv, &a).unwrap(), Amplitude::one(k));
            }
            Err(e) => {
                prop_assert_eq!(e, AlgebraError::NotInvertible);
                prop_assert_eq!(alg.quadratic_form(&a).unwrap(), Rational::from_i64(0));
            }
        }
    }

    #[test]
    fn distributive_and_alternative((k, a, b, c) in triple()) {
        let alg = Algebra::new(k);
        let m = |x: &Amplitude<Rational>, y: &Amplitude<Rational>| alg.mul(x, y).unwrap();
        prop_assert_eq!(m(&a, &b.add(&c).unwrap()), m(&a, &b).add(&m(&a, &c)).unwrap());
        prop_assert_eq!(m(&m(&a, &a), &b), m(&a, &m(&a, &b)));
        prop_assert_eq!(m(&m(&b, &a), &a), m(&b, &m(&a, &a)));
        if k.is_associative() {
            prop_assert_eq!(m(&m(&a, &b), &c), m(&a, &m(&b, &c)));
        }
    }
}
