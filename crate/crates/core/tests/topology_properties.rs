use num_integer::Integer;
use proptest::prelude::*;
use sasaki_join::exact::factorize;
use sasaki_join::topology::{
    cohomology_delpezzo_join, cohomology_quadric_join, cohomology_sphere_join,
    homotopy_equivalent_7, partition_classes, Verdict,
};
use sasaki_join::WeightVector;

fn weight(max: u64) -> impl Strategy<Value = WeightVector> {
    (1..=max, 1..=max)
        .prop_filter("coprime", |(a, b)| a.gcd(b) == 1)
        .prop_map(|(a, b)| WeightVector::new(a.max(b), a.min(b)).unwrap())
}

proptest! {
    #[test]
    fn partition_cardinality_is_two_to_the_k_minus_one(product in 2u64..=1_000_000) {
        let k = factorize(product).unwrap().len() as u32;
        let p = partition_classes(product, 2).unwrap();
        prop_assert_eq!(p.members.len(), 1usize << (k - 1));
        let grouped: usize = p.classes.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(grouped, p.members.len());
        // r = 2 splits uniformly by W mod 3
        prop_assert_eq!(p.classes.len(), 1);
        prop_assert_eq!(p.classes[0].l1 == 1, product % 3 == 2);
    }

    #[test]
    fn sphere_rings_satisfy_poincare_duality(r in 2u32..=6, w in weight(60)) {
        let ring = cohomology_sphere_join(r, w).unwrap();
        prop_assert!(ring.satisfies_poincare_duality());
    }

    #[test]
    fn quadric_rings_satisfy_poincare_duality(w in weight(60)) {
        prop_assert!(cohomology_quadric_join(w).unwrap().satisfies_poincare_duality());
    }

    #[test]
    fn delpezzo_rings_satisfy_poincare_duality(k in 1u8..=4, w in weight(30)) {
        prop_assert!(cohomology_delpezzo_join(k, w).unwrap().satisfies_poincare_duality());
    }
}

#[test]
fn delpezzo_eight_point_blowup_is_dual() {
    let ring = cohomology_delpezzo_join(8, WeightVector::new(5, 3).unwrap()).unwrap();
    assert!(ring.satisfies_poincare_duality());
}

#[test]
fn homotopy_is_reflexive_and_symmetric_on_odd_classes() {
    for product in (1..=10_000u64).step_by(2) {
        let classes = partition_classes(product, 2).unwrap();
        for class in &classes.classes {
            for &a in &class.members {
                assert_eq!(homotopy_equivalent_7(a, a).unwrap().verdict, Verdict::Equivalent);
                for &b in &class.members {
                    assert_eq!(
                        homotopy_equivalent_7(a, b).unwrap().verdict,
                        homotopy_equivalent_7(b, a).unwrap().verdict,
                        "{a} vs {b}"
                    );
                }
            }
        }
    }
}
