use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;
use sasaki_join::join::{enumerate_regular_cones, has_regular_ray, make_join};
use sasaki_join::quotient::{orbit_periods, reeb_quotient, ypq_quotient};
use sasaki_join::{FanoBase, ReebRay, Regularity, WeightVector};

fn coprime_pair(max: u64) -> impl Strategy<Value = (u64, u64)> {
    (1..=max, 1..=max).prop_filter("coprime", |(a, b)| a.gcd(b) == 1)
}

fn weight(max: u64) -> impl Strategy<Value = WeightVector> {
    coprime_pair(max).prop_map(|(a, b)| WeightVector::new(a.max(b), a.min(b)).unwrap())
}

fn ray(max: u64) -> impl Strategy<Value = ReebRay> {
    coprime_pair(max).prop_map(|(a, b)| ReebRay::new(a, b).unwrap())
}

fn base() -> impl Strategy<Value = FanoBase> {
    (1u64..=12, 1u32..=4).prop_map(|(i, d)| FanoBase::custom(i, d).unwrap())
}

proptest! {
    #[test]
    fn join_indices_satisfy_einstein_and_smoothness(b in base(), w in weight(200)) {
        let j = make_join(&b, w).unwrap();
        prop_assert_eq!(j.l1.gcd(&j.l2), 1);
        prop_assert_eq!(j.l2 * b.fano_index, w.norm() * j.l1);
        prop_assert_eq!(j.smoothness_gcd, 1);
    }

    #[test]
    fn quotient_invariants(b in base(), w in weight(50), v in ray(50)) {
        prop_assume!(w.w1() * v.v2() != w.w2() * v.v1());
        let j = make_join(&b, w).unwrap();
        let q = reeb_quotient(&j, v).unwrap();
        prop_assert_eq!(q.m * q.s, j.l2);
        // m1/m2 = v1/v2 in lowest terms
        prop_assert_eq!(q.m1 * v.v2(), q.m2 * v.v1());
        prop_assert_eq!(q.m1 / q.m1.gcd(&q.m2), v.v1());
        let cross = w.w1() as i128 * v.v2() as i128 - w.w2() as i128 * v.v1() as i128;
        prop_assert_eq!(q.signed_degree() * q.s as i128, j.l1 as i128 * cross);
        prop_assert_eq!(q.orb_pi1_order, q.m);
        prop_assert_eq!(q.regularity == Regularity::Regular, q.m1 == 1 && q.m2 == 1);
        if w != WeightVector::new(1, 1).unwrap() {
            prop_assert_eq!(
                q.regularity == Regularity::Regular,
                has_regular_ray(&j, v).unwrap()
            );
        }
    }

    #[test]
    fn generic_period_is_a_multiple_of_endpoint_periods(b in base(), w in weight(50), v in ray(50)) {
        prop_assume!(w.w1() * v.v2() != w.w2() * v.v1());
        prop_assume!(!w.is_homogeneous());
        let j = make_join(&b, w).unwrap();
        let p = orbit_periods(&j, v).unwrap();
        for end in [&p.at_d1, &p.at_d2] {
            let ratio = &p.generic / end;
            prop_assert!(ratio.is_integer());
            prop_assert!(!ratio.is_zero());
        }
    }
}

#[test]
fn diagonal_ray_with_regular_cone_has_equal_periods() {
    for index in 1..=12 {
        let b = FanoBase::custom(index, 2).unwrap();
        for w in enumerate_regular_cones(&b) {
            let j = make_join(&b, w).unwrap();
            let p = orbit_periods(&j, ReebRay::new(1, 1).unwrap()).unwrap();
            assert_eq!(p.generic, p.at_d1);
            assert_eq!(p.generic, p.at_d2);
        }
    }
}

#[test]
fn regular_cone_enumeration_matches_brute_force() {
    let diagonal = ReebRay::new(1, 1).unwrap();
    for index in 1..=12u64 {
        let b = FanoBase::custom(index, 1).unwrap();
        let listed: BTreeSet<WeightVector> = enumerate_regular_cones(&b).into_iter().collect();
        for w in &listed {
            assert!(has_regular_ray(&make_join(&b, *w).unwrap(), diagonal).unwrap());
        }
        let mut scanned = BTreeSet::new();
        for w1 in 2..=200u64 {
            for w2 in 1..w1 {
                if w1.gcd(&w2) != 1 {
                    continue;
                }
                let w = WeightVector::new(w1, w2).unwrap();
                if has_regular_ray(&make_join(&b, w).unwrap(), diagonal).unwrap() {
                    scanned.insert(w);
                }
            }
        }
        assert_eq!(listed, scanned, "I_N = {index}");
    }
}

#[test]
fn ypq_join_and_quotient_identities() {
    let cp1 = FanoBase::projective_space(1).unwrap();
    let diagonal = ReebRay::new(1, 1).unwrap();
    for p in 2..=50u64 {
        for q in 1..p {
            if p.gcd(&q) != 1 {
                continue;
            }
            let g = (p + q).gcd(&(p - q));
            let w = WeightVector::new((p + q) / g, (p - q) / g).unwrap();
            let j = make_join(&cp1, w).unwrap();
            assert_eq!((j.l1, j.l2), (g, p), "(p,q) = ({p},{q})");
            assert_eq!(has_regular_ray(&j, diagonal).unwrap(), (p, q) == (2, 1));
            let quot = ypq_quotient(p, q).unwrap();
            if p % 2 == 1 {
                assert_eq!((quot.degree_n, quot.m), (2 * q, p));
            } else {
                assert_eq!((quot.degree_n, quot.m), (q, p / 2));
            }
        }
    }
}
