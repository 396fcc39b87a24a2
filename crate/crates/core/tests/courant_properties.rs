use msk_core::calculus::{directional, exterior_derivative, wedge, Chart, DiffForm};
use msk_core::catalog::{graph_of_form, vertical_subbundle};
use msk_core::courant::{
    check_dl, dorfman_bracket, from_dl, is_involutive, is_isotropic, pairing, same_span, to_dl, CourantSection,
};
use msk_core::sampling::Sampler;
use msk_core::verdict::Mode;
use proptest::prelude::*;

fn chart() -> Chart {
    Chart::new("R3", &["x", "y", "z"]).unwrap()
}

fn section(s: &mut Sampler, c: &Chart, k: usize) -> CourantSection {
    CourantSection::new(s.multivector(c, 1, 2), s.form(c, k, 2)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn pairing_is_symmetric(seed in any::<u64>(), k in 1usize..=2) {
        let c = chart();
        let mut s = Sampler::new(seed, 10);
        let (a, b) = (section(&mut s, &c, k), section(&mut s, &c, k));
        prop_assert_eq!(pairing(&a, &b).unwrap(), pairing(&b, &a).unwrap());
    }

    #[test]
    fn leibniz_in_second_slot(seed in any::<u64>(), k in 1usize..=2) {
        let c = chart();
        let mut s = Sampler::new(seed, 10);
        let (a, b) = (section(&mut s, &c, k), section(&mut s, &c, k));
        let f = s.polynomial(&c, 2, 3);
        let lhs = dorfman_bracket(&a, &b.scale(&f)).unwrap();
        let xf = directional(a.vector(), &f).unwrap();
        let rhs = dorfman_bracket(&a, &b).unwrap().scale(&f).add(&b.scale(&xf)).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn anomaly_in_first_slot(seed in any::<u64>(), k in 1usize..=2) {
        let c = chart();
        let mut s = Sampler::new(seed, 10);
        let (a, b) = (section(&mut s, &c, k), section(&mut s, &c, k));
        let f = s.polynomial(&c, 2, 3);
        let lhs = dorfman_bracket(&a.scale(&f), &b).unwrap();
        let yf = directional(b.vector(), &f).unwrap();
        let df = exterior_derivative(&DiffForm::scalar(&c, &f).unwrap());
        let anomaly = CourantSection::from_form(wedge(&df, &pairing(&a, &b).unwrap()).unwrap()).unwrap();
        let rhs = dorfman_bracket(&a, &b).unwrap().scale(&f).sub(&a.scale(&yf)).unwrap().add(&anomaly).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn graph_of_exact_form_is_involutive(seed in any::<u64>()) {
        let c = chart();
        let mut s = Sampler::new(seed, 10);
        let omega = exterior_derivative(&s.form(&c, 1, 3));
        let l = graph_of_form(&omega).unwrap();
        prop_assert!(is_isotropic(&l).unwrap().passed());
        prop_assert!(is_involutive(&l).unwrap().passed());
    }
}

#[test]
fn dl_round_trip_on_graphs() {
    let c4 = Chart::new("R4", &["x", "y", "z", "w"]).unwrap();
    let mut s = Sampler::new(5, 10);
    let mut checked = 0;
    for _ in 0..5 {
        let base = msk_core::calculus::parse_form(&c4, "d(x)^d(y) + d(z)^d(w)").unwrap();
        let omega = base.add(&exterior_derivative(&s.form(&c4, 1, 2))).unwrap();
        let l = graph_of_form(&omega).unwrap();
        let Ok(p) = to_dl(&l) else { continue };
        assert!(check_dl(&p, &Mode::Generic).unwrap().item("(c)").unwrap().passed());
        assert!(same_span(&l, &from_dl(&p).unwrap()).unwrap().passed());
        checked += 1;
    }
    assert!(checked >= 4);
    let c = chart();
    let v = vertical_subbundle(&c, 2, &[DiffForm::basis(&c, &[0, 1]).unwrap()]).unwrap();
    let p = to_dl(&v).unwrap();
    assert!(same_span(&v, &from_dl(&p).unwrap()).unwrap().passed());
}
