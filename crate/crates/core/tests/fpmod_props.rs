mod common;

use homalg::fpmod::{direct_sum, hom_group, image, ModMorphism};
use homalg::random::{self, rng};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witness_equation_holds(seed in any::<u64>()) {
        let mut g = rng(seed);
        let ring = random::ring(&mut g);
        let a = random::module(&mut g, &ring, 3, 6);
        let b = random::module(&mut g, &ring, 3, 6);
        let f = random::morphism(&mut g, &a, &b);
        prop_assert_eq!(f.matrix() * a.relations(), b.relations() * f.witness());
        for h in hom_group(&a, &b).generators() {
            prop_assert_eq!(h.matrix() * a.relations(), b.relations() * h.witness());
        }
    }

    #[test]
    fn image_factors_the_map(seed in any::<u64>()) {
        let mut g = rng(seed);
        let ring = random::ring(&mut g);
        let a = random::module(&mut g, &ring, 3, 6);
        let b = random::module(&mut g, &ring, 3, 6);
        let f = random::morphism(&mut g, &a, &b);
        let im = image(&f);
        prop_assert!(im.inclusion.compose(&im.surjection).equals(&f));
        prop_assert!(im.surjection.is_surjective());
        prop_assert!(im.inclusion.is_injective());
    }

    #[test]
    fn hom_shape_ignores_presentation(seed in any::<u64>()) {
        let mut g = rng(seed);
        let ring = random::ring(&mut g);
        let a = random::module(&mut g, &ring, 3, 6);
        let b = random::module(&mut g, &ring, 3, 6);
        let a2 = common::scramble(&mut g, &a);
        let b2 = common::scramble(&mut g, &b);
        prop_assert_eq!(a.shape(), a2.shape());
        prop_assert_eq!(hom_group(&a, &b).shape(), hom_group(&a2, &b).shape());
        prop_assert_eq!(hom_group(&a, &b).shape(), hom_group(&a, &b2).shape());
    }

    #[test]
    fn biproduct_identities(seed in any::<u64>()) {
        let mut g = rng(seed);
        let ring = random::ring(&mut g);
        let a = random::module(&mut g, &ring, 3, 6);
        let b = random::module(&mut g, &ring, 3, 6);
        let s = direct_sum(&[&a, &b]);
        prop_assert!(s.projections[0].compose(&s.injections[0]).equals(&ModMorphism::identity(&a)));
        prop_assert!(s.projections[1].compose(&s.injections[1]).equals(&ModMorphism::identity(&b)));
        prop_assert!(s.projections[1].compose(&s.injections[0]).is_zero());
        let sum = s.injections[0].compose(&s.projections[0]).add(&s.injections[1].compose(&s.projections[1]));
        prop_assert!(sum.equals(&ModMorphism::identity(&s.module)));
    }
}
