mod support;

use msk_core::calculus::{interior_product, parse_form, Chart, DiffForm, MultiVectorField};
use msk_core::catalog::{canonical_multiphase, Multiphase};
use msk_core::kplectic::{hamiltonian_vector_field, jacobiator_check, PlecticCandidate, JACOBIATOR_SIGN};
use msk_core::sampling::Sampler;
use support::dense::Dense;

fn components(x: &MultiVectorField) -> Vec<msk_core::scalar::RationalFunction> {
    (0..x.chart().dim()).map(|i| x.coeff(&[i])).collect()
}

/// Hamiltonian vector field from the engine, confirmed against the dense
/// contraction `i_X ω = dα`.
fn confirmed_field(c: &PlecticCandidate, alpha: &DiffForm) -> Vec<msk_core::scalar::RationalFunction> {
    let x = hamiltonian_vector_field(c, alpha).unwrap().pair().unwrap().x;
    let xs = components(&x);
    assert!(Dense::from_form(c.omega()).contract(&xs).same(&Dense::from_form(alpha).d()));
    xs
}

/// Sign `s` with `J = s·(−d i_a i_b i_c ω)` computed entirely densely, or
/// `None` when both sides vanish.
fn oracle_sign(c: &PlecticCandidate, a: &DiffForm, b: &DiffForm, g: &DiffForm) -> Option<i32> {
    let w = Dense::from_form(c.omega());
    let (xa, xb, xg) = (confirmed_field(c, a), confirmed_field(c, b), confirmed_field(c, g));
    let bracket = |x: &[_], y: &[_]| w.contract(y).contract(x);
    let (bg, ab, ga) = (bracket(&xb, &xg), bracket(&xa, &xb), bracket(&xg, &xa));
    let (xbg, xab, xga) = (
        confirmed_field(c, &bg.to_form()),
        confirmed_field(c, &ab.to_form()),
        confirmed_field(c, &ga.to_form()),
    );
    let lhs = bracket(&xa, &xbg).add(&bracket(&xg, &xab)).add(&bracket(&xb, &xga));
    if w.k < 3 {
        assert!(lhs.is_zero(), "symplectic jacobiator must vanish");
        return None;
    }
    let rhs = w.contract(&xg).contract(&xb).contract(&xa).d().neg();
    if lhs.is_zero() && rhs.is_zero() {
        return None;
    }
    Some(lhs.sign_against(&rhs).expect("jacobiator is ± the exact term"))
}

/// Hamiltonian 1-forms `Σ a_m (−i_{∂q_m} θ) + Σ f_i(q) dq_i`.
fn random_hamiltonian(s: &mut Sampler, m: &Multiphase) -> DiffForm {
    let chart = &m.chart;
    let qs = Chart::new("Q", &chart.coords()[..m.n]).unwrap();
    let mut a = DiffForm::zero(chart, 1);
    for i in 0..m.n {
        let f = chart.conform(&s.polynomial(&qs, 2, 2)).unwrap();
        a = a.add(&DiffForm::dx(chart, i).scale(&f)).unwrap();
        let coeff = s.integer(-2, 2);
        let shift = interior_product(&MultiVectorField::partial(chart, i), &m.theta).unwrap();
        a = a.sub(&shift.scale_int(coeff)).unwrap();
    }
    a
}

#[test]
fn sign_is_frozen_across_triples() {
    let m = canonical_multiphase(3, 2).unwrap();
    let c = PlecticCandidate::generic(m.omega.clone()).unwrap();
    let parse = |t: &str| parse_form(&m.chart, t).unwrap();
    let mut triples = vec![(parse("q3*d(q1)"), parse("-(p12*d(q2) + p13*d(q3))"), parse("q1*d(q2)"))];
    let mut s = Sampler::new(2024, 5);
    while triples.len() < 16 {
        triples.push((random_hamiltonian(&mut s, &m), random_hamiltonian(&mut s, &m), random_hamiltonian(&mut s, &m)));
    }
    let mut signs = Vec::new();
    for (a, b, g) in &triples {
        if let Some(sign) = oracle_sign(&c, a, b, g) {
            signs.push(sign);
        }
        assert!(jacobiator_check(&c, a, b, g).unwrap().passed());
    }
    assert!(signs.len() >= 10, "only {} triples had a nonzero defect", signs.len());
    assert!(signs.iter().all(|&x| x == JACOBIATOR_SIGN), "{signs:?}");
}

#[test]
fn symplectic_jacobiator_vanishes() {
    let m = canonical_multiphase(2, 1).unwrap();
    let c = PlecticCandidate::generic(m.omega.clone()).unwrap();
    let mut s = Sampler::new(9, 5);
    for _ in 0..10 {
        let f = DiffForm::scalar(&m.chart, &s.polynomial(&m.chart, 3, 3)).unwrap();
        let g = DiffForm::scalar(&m.chart, &s.polynomial(&m.chart, 3, 3)).unwrap();
        let h = DiffForm::scalar(&m.chart, &s.polynomial(&m.chart, 3, 3)).unwrap();
        assert_eq!(oracle_sign(&c, &f, &g, &h), None);
        assert!(jacobiator_check(&c, &f, &g, &h).unwrap().passed());
    }
}
