use num_rational::BigRational;
use proptest::prelude::*;
use twist_core::algebra::{GroupAlgebra, Tensor};
use twist_core::constructions::{pauli_rep, twist_from_1cocycle, Bijective1Cocycle, Cocycle2};
use twist_core::groups::library::{abelian, cyclic, dihedral, symmetric};
use twist_core::groups::{AbelianGroup, FiniteGroup, GroupAction};
use twist_core::movshev::count_grouplikes;
use twist_core::twists::{gauge_transform, verify_twist};
use twist_core::{Field, Rational, Scalar};

fn cyclotomic_element(field: &Field, coeffs: &[(i64, i64)]) -> Scalar {
    let n = field.root_order();
    coeffs.iter().enumerate().fold(field.zero(), |acc, (k, &(p, q))| {
        let term = &field.root_of_unity(n, k as i64).unwrap() * &Scalar::from_ratio(p, q);
        &acc + &term
    })
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-30i64..30, 1i64..12), 1..6)
}

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 3, 4, 5, 8, 12])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(n in conductor(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let f = Field::cyclotomic(n).unwrap();
        let (a, b, c) = (cyclotomic_element(&f, &a), cyclotomic_element(&f, &b), cyclotomic_element(&f, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        let mut acc = c.clone();
        acc.add_mul(&a, &b);
        prop_assert_eq!(acc, &c + &(&a * &b));
    }

    #[test]
    fn prime_field_axioms(a in 0i64..1000, b in 0i64..1000, c in -1000i64..1000) {
        let f = Field::prime(13, 12).unwrap();
        let (a, b, c) = (f.from_int(a), f.from_int(b), f.from_int(c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        let z = f.root_of_unity(12, 1).unwrap();
        prop_assert!(z.pow(12).is_one() && !z.pow(6).is_one() && !z.pow(4).is_one());
    }

    #[test]
    fn rationals_agree_with_big_rationals(a in any::<i64>(), b in any::<i64>().prop_filter("nonzero", |d| *d != 0),
                                          c in any::<i64>(), d in 1i64..i64::MAX) {
        let (x, y) = (Rational::new(a, b), Rational::new(c, d));
        let (bx, by) = (BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()));
        prop_assert_eq!(x.to_big(), bx.clone());
        prop_assert_eq!((&x + &y).to_big(), &bx + &by);
        prop_assert_eq!((&x * &y).to_big(), &bx * &by);
        prop_assert_eq!((&x - &y).to_big(), &bx - &by);
    }
}

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop::sample::select(vec![0usize, 1, 2, 3]).prop_map(|i| match i {
        0 => cyclic(6),
        1 => abelian(&[2, 2]),
        2 => symmetric(3),
        _ => dihedral(4),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coboundaries_are_detected(g in small_group(), exps in prop::collection::vec(0i64..12, 8)) {
        let f = Field::cyclotomic(12).unwrap();
        let mu: Vec<Scalar> = g
            .elements()
            .map(|x| if x == g.identity() { f.one() } else { f.root_of_unity(12, exps[x % exps.len()]).unwrap() })
            .collect();
        let c = Cocycle2::trivial(g.clone(), &f).with_coboundary(&mu).unwrap();
        prop_assert!(c.is_coboundary_over_closure());
        let found = c.trivializations(&f).unwrap();
        prop_assert!(!found.is_empty());
        for nu in &found {
            prop_assert!(c.with_coboundary(&nu.iter().map(|s| s.inv().unwrap()).collect::<Vec<_>>()).unwrap()
                .values().iter().all(Scalar::is_one));
        }
    }

    #[test]
    fn nondegenerate_class_survives_rescaling(exps in prop::collection::vec(0i64..4, 3)) {
        let f = Field::cyclotomic(4).unwrap();
        let rep = pauli_rep(&f).unwrap();
        let mut mu = vec![f.one()];
        mu.extend(exps.iter().map(|&k| f.root_of_unity(4, k).unwrap()));
        let rescaled = rep.rescaled(&mu).unwrap();
        prop_assert!(!rescaled.cocycle().is_coboundary_over_closure());
        prop_assert!(!rescaled.cocycle().is_coboundary(&f).unwrap());
        prop_assert!(rep.cocycle().quotient(rescaled.cocycle()).unwrap().is_coboundary(&f).unwrap());
    }
}

fn klein_twist() -> (GroupAlgebra, twist_core::twists::Twist) {
    let action = GroupAction::trivial(&cyclic(2), &AbelianGroup::cyclic(2));
    let data = Bijective1Cocycle::new(action, vec![0, 1]).unwrap();
    let built = twist_from_1cocycle(&data, &Field::rationals()).unwrap();
    (built.algebra, built.twist)
}

fn element(alg: &GroupAlgebra, coeffs: &[i64]) -> Tensor {
    alg.tensor(1, coeffs.iter().enumerate().map(|(g, &c)| (vec![g % alg.order()], alg.scalar(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn gauge_transforms_preserve_twists(coeffs in prop::collection::vec(-4i64..5, 4)) {
        let (alg, twist) = klein_twist();
        let x = element(&alg, &coeffs);
        prop_assume!(!alg.counit(&x).is_zero() && alg.invert(&x).is_ok());
        let moved = gauge_transform(&alg, &twist, &x).unwrap();
        prop_assert!(verify_twist(&alg, moved.j()).is_ok());
        prop_assert_eq!(count_grouplikes(&alg, &moved).unwrap(), count_grouplikes(&alg, &twist).unwrap());
        let back = gauge_transform(&alg, &moved, &alg.invert(&x).unwrap()).unwrap();
        prop_assert_eq!(back.j(), twist.j());
    }

    #[test]
    fn tensor_products_are_associative(a in prop::collection::vec(-3i64..4, 9), b in prop::collection::vec(-3i64..4, 9),
                                       c in prop::collection::vec(-3i64..4, 9)) {
        let alg = GroupAlgebra::new(symmetric(3), Field::rationals());
        let t = |v: &[i64]| alg.tensor(2, v.iter().enumerate().map(|(i, &k)| (vec![i % 6, (i * 5) % 6], alg.scalar(k))));
        let (a, b, c) = (t(&a), t(&b), t(&c));
        prop_assert_eq!(alg.mul_unchecked(&alg.mul_unchecked(&a, &b), &c), alg.mul_unchecked(&a, &alg.mul_unchecked(&b, &c)));
        prop_assert_eq!(alg.flip(&alg.flip(&a)), a.clone());
        prop_assert_eq!(alg.coproduct_leg(&alg.counit_leg(&a, 0), 0).rank(), 2);
    }
}
