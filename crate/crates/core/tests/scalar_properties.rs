use msk_core::calculus::Chart;
use msk_core::sampling::Sampler;
use msk_core::scalar::{format_scalar, parse_scalar, RationalFunction};
use proptest::prelude::*;

fn chart() -> Chart {
    Chart::new("R3", &["x", "y", "z"]).unwrap()
}

fn triple(seed: u64) -> (RationalFunction, RationalFunction, RationalFunction) {
    let c = chart();
    let mut s = Sampler::new(seed, 10);
    (s.polynomial(&c, 3, 4), s.polynomial(&c, 3, 4), s.polynomial(&c, 2, 3))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let (a, b, c) = triple(seed);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_is_exact(seed in any::<u64>()) {
        let (a, b, c) = triple(seed);
        prop_assume!(!b.is_zero());
        let q = a.checked_div(&b).unwrap();
        prop_assert_eq!(&q * &b, a.clone());
        // sums of fractions
        prop_assume!(!c.is_zero());
        let s = &a.checked_div(&b).unwrap() + &a.checked_div(&c).unwrap();
        prop_assert_eq!(&(&s * &b) * &c, &a * &(&b + &c));
    }

    #[test]
    fn derivative_is_a_derivation(seed in any::<u64>(), i in 0usize..3) {
        let (a, b, _) = triple(seed);
        let lhs = (&a * &b).derive_index(i);
        let rhs = &(&a.derive_index(i) * &b) + &(&a * &b.derive_index(i));
        prop_assert_eq!(lhs, rhs);
        prop_assume!(!b.is_zero());
        let q = a.checked_div(&b).unwrap();
        prop_assert_eq!(&q.derive_index(i) * &(&b * &b), &(&a.derive_index(i) * &b) - &(&a * &b.derive_index(i)));
    }

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>()) {
        let (a, b, _) = triple(seed);
        let pt = Sampler::new(seed ^ 1, 7).point(&chart());
        let (va, vb) = (a.evaluate(&pt).unwrap(), b.evaluate(&pt).unwrap());
        prop_assert_eq!((&a * &b).evaluate(&pt).unwrap(), &va * &vb);
        prop_assert_eq!((&a + &b).evaluate(&pt).unwrap(), va + vb);
    }

    #[test]
    fn display_round_trips(seed in any::<u64>()) {
        let (a, b, _) = triple(seed);
        let c = chart();
        let f = if b.is_zero() { a } else { a.checked_div(&b).unwrap() };
        let text = format_scalar(&f);
        prop_assert_eq!(parse_scalar(&text, c.coords()).unwrap(), f);
    }
}
