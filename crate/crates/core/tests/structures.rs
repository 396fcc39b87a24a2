use msk_core::algebroid::{
    algebroid_from_l, check_algebroid_axioms, check_equivalence, check_im_form, check_im_nondeg,
    cotangent_algebroid, IMFormMap, LieAlgebroid,
};
use msk_core::calculus::{parse_form, parse_multivector, poisson_jacobiator, Chart, DiffForm};
use msk_core::catalog::{
    canonical_multiphase, full_vertical, graph_of_bivector, graph_of_form, graph_of_top_multivector, lie_poisson,
    line_bundle, pair_groupoid, vb_groupoid, vertical_subbundle, CEComplex,
};
use msk_core::courant::SubbundleFrame;
use msk_core::groupoid::{
    check_groupoid_axioms, check_multiplicative, check_right_translation, check_unit_inversion, extract_algebroid,
    induced_im_form,
};
use msk_core::kplectic::{check_nondegenerate, PlecticCandidate};
use msk_core::linalg::SymMatrix;
use msk_core::verdict::Mode;

fn test_functions(c: &Chart) -> Vec<msk_core::scalar::RationalFunction> {
    let mut s = msk_core::sampling::Sampler::new(3, 5);
    vec![s.polynomial(c, 2, 3), s.polynomial(c, 3, 2)]
}

fn round_trip(l: &SubbundleFrame) {
    let (a, m) = algebroid_from_l(l).unwrap();
    assert!(check_algebroid_axioms(&a, &test_functions(l.chart())).unwrap().passed());
    assert!(check_im_form(&m).unwrap().passed());
    assert!(check_im_nondeg(&m, &Mode::Generic).unwrap().passed());
}

#[test]
fn algebroids_of_graph_constructors() {
    round_trip(&graph_of_form(&canonical_multiphase(3, 2).unwrap().omega).unwrap());
    let r3 = Chart::new("R3", &["x", "y", "z"]).unwrap();
    round_trip(&graph_of_top_multivector(&parse_multivector(&r3, "e(x)^e(y)^e(z)").unwrap()).unwrap());
    round_trip(&full_vertical(&r3, 2).unwrap());
    let r4 = Chart::new("R4", &["x1", "x2", "x3", "x4"]).unwrap();
    round_trip(&line_bundle(&parse_form(&r4, "d(x1)^d(x2) + d(x3)^d(x4)").unwrap()).unwrap());
    round_trip(&graph_of_bivector(&lie_poisson(&CEComplex::so3()).unwrap()).unwrap());
}

#[test]
fn vertical_algebroid_is_abelian() {
    let r3 = Chart::new("R3", &["x", "y", "z"]).unwrap();
    let (a, _) = algebroid_from_l(&full_vertical(&r3, 2).unwrap()).unwrap();
    assert!(a.anchor().is_zero());
    assert!(a.structure().iter().flatten().flatten().all(|c| c.is_zero()));
}

#[test]
fn poisson_coherence() {
    let so3 = lie_poisson(&CEComplex::so3()).unwrap();
    assert!(poisson_jacobiator(&so3).unwrap().is_zero());
    let m = cotangent_algebroid(&so3).unwrap();
    assert!(check_algebroid_axioms(m.algebroid(), &test_functions(so3.chart())).unwrap().passed());

    let r4 = Chart::new("R4", &["x", "y", "z", "w"]).unwrap();
    let bad = parse_multivector(&r4, "e(x)^e(y) + x*e(z)^e(w)").unwrap();
    assert!(!poisson_jacobiator(&bad).unwrap().is_zero());
    let m = cotangent_algebroid(&bad).unwrap();
    let v = check_algebroid_axioms(m.algebroid(), &test_functions(&r4)).unwrap();
    assert!(!v.item("jacobi").unwrap().passed());
}

#[test]
fn graph_algebroid_matches_cotangent() {
    let pi = lie_poisson(&CEComplex::so3()).unwrap();
    let (_, graph) = algebroid_from_l(&graph_of_bivector(&pi).unwrap()).unwrap();
    let cot = cotangent_algebroid(&pi).unwrap();
    let id = SymMatrix::identity(pi.chart().coords().clone(), 3);
    assert!(check_equivalence(&graph, &cot, &id).unwrap().passed());
}

#[test]
fn swap_breaks_bracket_intertwining() {
    let c = Chart::new("pt", &["s"]).unwrap();
    let mut st = vec![vec![vec![c.zero(); 2]; 2]; 2];
    st[0][1][1] = c.one();
    st[1][0][1] = c.integer(-1);
    let a = LieAlgebroid::new(&c, SymMatrix::zeros(c.coords().clone(), 1, 2), st).unwrap();
    let m = IMFormMap::new(a, 1, vec![DiffForm::zero(&c, 1); 2]).unwrap();
    let swap = SymMatrix::from_rows(c.coords().clone(), vec![vec![c.zero(), c.one()], vec![c.one(), c.zero()]]);
    let v = check_equivalence(&m, &m, &swap).unwrap();
    assert!(v.item("invertible").unwrap().passed());
    assert!(!v.item("bracket").unwrap().passed());
}

#[test]
fn groupoid_and_infinitesimal_nondegeneracy_agree() {
    let base = canonical_multiphase(3, 2).unwrap();
    let (g, w) = pair_groupoid(&base.omega).unwrap();
    let mu = induced_im_form(&g, &w).unwrap();
    assert_eq!(mu.forms(), graph_of_form(&base.omega).unwrap().sections().iter().map(|s| s.form().clone()).collect::<Vec<_>>());
    assert!(check_right_translation(&g, &w, &mu).unwrap().passed());
    let global = check_nondegenerate(&PlecticCandidate::generic(w).unwrap()).unwrap().passed();
    assert!(global && check_im_nondeg(&mu, &Mode::Generic).unwrap().passed());

    let r3 = Chart::new("R3", &["x", "y", "z"]).unwrap();
    for (forms, ok) in [(full_vertical(&r3, 2).unwrap(), true), (
        vertical_subbundle(&r3, 2, &[parse_form(&r3, "d(x)^d(y)").unwrap()]).unwrap(),
        false,
    )] {
        let (g, w) = vb_groupoid(&forms).unwrap();
        assert!(check_groupoid_axioms(&g).unwrap().passed());
        assert!(check_multiplicative(&g, &w).unwrap().passed());
        assert!(check_unit_inversion(&g, &w).unwrap().passed());
        let a = extract_algebroid(&g).unwrap();
        assert!(a.anchor().is_zero());
        let mu = induced_im_form(&g, &w).unwrap();
        assert!(check_im_form(&mu).unwrap().passed());
        assert!(check_right_translation(&g, &w, &mu).unwrap().passed());
        let global = check_nondegenerate(&PlecticCandidate::generic(w).unwrap()).unwrap().passed();
        let local = check_im_nondeg(&mu, &Mode::Generic).unwrap().passed();
        assert_eq!((global, local), (ok, ok));
    }
}

#[test]
fn degenerate_pair_groupoid_fails_on_both_sides() {
    let r3 = Chart::new("R3", &["x", "y", "z"]).unwrap();
    let w0 = parse_form(&r3, "d(x)^d(y)").unwrap();
    let (g, w) = pair_groupoid(&w0).unwrap();
    assert!(check_multiplicative(&g, &w).unwrap().passed());
    let mu = induced_im_form(&g, &w).unwrap();
    assert!(!check_nondegenerate(&PlecticCandidate::generic(w).unwrap()).unwrap().passed());
    assert!(!check_im_nondeg(&mu, &Mode::Generic).unwrap().passed());
}
