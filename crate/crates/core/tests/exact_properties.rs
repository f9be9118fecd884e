use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use sasaki_join::exact::{
    count_roots, integrate, isolate_roots, positive_on_open_interval, rational_roots, Bound,
    ExactPolynomial, Rational,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn poly(max_degree: usize) -> impl Strategy<Value = ExactPolynomial> {
    prop::collection::vec(rational(), 1..=max_degree + 1).prop_map(ExactPolynomial::new)
}

fn nonzero_poly(max_degree: usize) -> impl Strategy<Value = ExactPolynomial> {
    poly(max_degree).prop_filter("nonzero", |p| !p.is_zero())
}

/// Product of linear factors with small rational roots, so rational and
/// repeated roots actually occur.
fn factored_poly() -> impl Strategy<Value = ExactPolynomial> {
    (
        prop::collection::vec((-6i64..=6, 1i64..=4), 1..=4),
        prop::collection::vec(-3i64..=3, 0..=2),
    )
        .prop_map(|(roots, extra)| {
            let mut p = ExactPolynomial::one();
            for (n, d) in roots {
                p = p * ExactPolynomial::from_ints(&[-n, d]);
            }
            if !extra.is_empty() {
                let mut q = extra.clone();
                q.push(1);
                p = p * ExactPolynomial::from_ints(&q);
            }
            p
        })
}

fn lo_hi() -> impl Strategy<Value = (Rational, Rational)> {
    (rational(), rational()).prop_filter_map("ordered", |(a, b)| {
        if a < b {
            Some((a, b))
        } else if b < a {
            Some((b, a))
        } else {
            None
        }
    })
}

proptest! {
    #[test]
    fn integration_is_linear(
        p in poly(8),
        q in poly(8),
        alpha in rational(),
        beta in rational(),
        (a, b) in lo_hi(),
    ) {
        let combo = p.scale(&alpha) + q.scale(&beta);
        prop_assert_eq!(
            integrate(&combo, &a, &b),
            &alpha * integrate(&p, &a, &b) + &beta * integrate(&q, &a, &b)
        );
    }

    #[test]
    fn isolating_intervals_are_disjoint_and_complete(p in prop_oneof![nonzero_poly(6), factored_poly()]) {
        let all = isolate_roots(&p, &Bound::NegInfinity, &Bound::PosInfinity);
        prop_assert_eq!(all.len(), count_roots(&p, &Bound::NegInfinity, &Bound::PosInfinity));
        let sqf = p.square_free_part();
        for pair in all.windows(2) {
            prop_assert!(pair[0].hi <= pair[1].lo);
        }
        for iv in &all {
            prop_assert!(iv.lo < iv.hi);
            // one sign change of the square-free part across the interval
            let lo = sqf.eval(&iv.lo);
            let hi = sqf.eval(&iv.hi);
            prop_assert!(!lo.is_zero() && !hi.is_zero());
            prop_assert!(lo.signum() != hi.signum());
            prop_assert_eq!(
                count_roots(&p, &Bound::Finite(iv.lo.clone()), &Bound::Finite(iv.hi.clone())),
                1
            );
        }
    }

    #[test]
    fn positivity_agrees_with_sampling(coeffs in prop::collection::vec(-20i64..=20, 4), (a, b) in lo_hi()) {
        let mut c = coeffs.clone();
        if c[3] == 0 {
            c[3] = 1;
        }
        let p = ExactPolynomial::from_ints(&c);
        let certified = positive_on_open_interval(&p, &a, &b);
        let width = &b - &a;
        let sampled = (1..=1000).all(|i| {
            let x = &a + &width * Rational::new(BigInt::from(i), BigInt::from(1001));
            p.eval(&x).is_positive()
        });
        // Sampling can miss a dip between samples but never invents one.
        if certified {
            prop_assert!(sampled);
        }
        if !sampled {
            prop_assert!(!certified);
        }
    }

    #[test]
    fn rational_roots_are_roots(p in prop_oneof![nonzero_poly(5), factored_poly()]) {
        let roots = rational_roots(&p);
        for r in &roots {
            prop_assert!(p.eval(r).is_zero());
        }
        for pair in roots.windows(2) {
            prop_assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn factored_rational_roots_are_all_found(roots in prop::collection::vec((-6i64..=6, 1i64..=4), 1..=4)) {
        let mut p = ExactPolynomial::one();
        let mut expected: Vec<Rational> = Vec::new();
        for (n, d) in &roots {
            p = p * ExactPolynomial::from_ints(&[-n, *d]);
            expected.push(Rational::new(BigInt::from(*n), BigInt::from(*d)));
        }
        expected.sort();
        expected.dedup();
        prop_assert_eq!(rational_roots(&p), expected);
    }
}

#[test]
fn positivity_sampling_on_cubic_with_narrow_dip() {
    // (z − 1/2)² + 10⁻⁶ stays positive; (z − 1/2)² − 10⁻⁶ dips below zero
    // between two samples 1/1001 apart.
    let eps = Rational::new(BigInt::from(1), BigInt::from(1_000_000));
    let base = ExactPolynomial::from_ints(&[-1, 2]).pow(2).scale(&Rational::new(1.into(), 4.into()));
    let lo = Rational::from_integer((-1).into());
    let hi = Rational::from_integer(1.into());
    assert!(positive_on_open_interval(&(&base + &ExactPolynomial::constant(eps.clone())), &lo, &hi));
    assert!(!positive_on_open_interval(&(&base - &ExactPolynomial::constant(eps)), &lo, &hi));
}
