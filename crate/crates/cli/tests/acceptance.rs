//! Acceptance suite: one line per criterion, nonzero exit if any fails.

#[path = "../../core/tests/support/dense.rs"]
mod dense;

use std::error::Error;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use num_traits::Zero;
use serde_json::json;

use dense::Dense;
use msk_cli::catalog::NAMES;
use msk_cli::scenario::CheckDecl;
use msk_cli::{catalog_command, run_scenario, RunOptions, Scenario};
use msk_core::algebroid::{
    algebroid_from_l, check_algebroid_axioms, check_im_form, check_im_nondeg, koszul_bracket,
};
use msk_core::calculus::{
    exterior_derivative, interior_product, lie_derivative, parse_form, parse_multivector, poisson_jacobiator, wedge,
    Chart, DiffForm, MultiVectorField, SmoothMap,
};
use msk_core::catalog::{
    canonical_multiphase, ce_cartan, ce_differential, full_vertical, graph_of_bivector, graph_of_form,
    graph_of_top_multivector, lie_poisson, line_bundle, pair_groupoid, scaled_family, vb_groupoid,
    vertical_subbundle, wedge_product_structure, CEComplex, Multiphase,
};
use msk_core::courant::{
    check_morphism, check_nondeg_l, direct_product, dorfman_bracket, from_dl, is_involutive, is_isotropic,
    leaf_form_at, orthogonal_profile, same_span, to_dl, SubbundleFrame,
};
use msk_core::groupoid::{
    check_groupoid_axioms, check_multiplicative, check_right_translation, check_unit_inversion, induced_im_form,
};
use msk_core::kplectic::{
    check_nondegenerate, hamiltonian_vector_field, is_closed, jacobiator_check, symplectic_poisson_bracket,
    PlecticCandidate, JACOBIATOR_SIGN,
};
use msk_core::sampling::{derive_seed, Sampler};
use msk_core::scalar::{Rational, RationalFunction};
use msk_core::verdict::{Mode, Residual, Verdict};

type Res = Result<String, Box<dyn Error>>;
type Criterion = (&'static str, fn() -> Res);

const SEED: u64 = 20_240_601;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+).into());
        }
    };
}

fn sampler(index: u64) -> Sampler {
    Sampler::new(derive_seed(SEED, index), 10)
}

fn chart(dim: usize) -> Chart {
    Chart::new(format!("R{dim}"), &["x", "y", "z", "u", "v"][..dim]).unwrap()
}

fn components(x: &MultiVectorField) -> Vec<RationalFunction> {
    (0..x.chart().dim()).map(|i| x.coeff(&[i])).collect()
}

/// First residual found in a failing verdict tree.
fn failing_residual(v: &Verdict) -> Option<&Residual> {
    if v.passed() {
        return None;
    }
    v.residual.as_ref().or_else(|| v.items.iter().find_map(failing_residual))
}

fn points(c: &Chart, count: usize, index: u64) -> Vec<msk_core::scalar::SamplePoint> {
    sampler(index).points_avoiding(c, count, &[]).unwrap()
}

// 1

fn calculus_identities() -> Res {
    const N: u64 = 500;
    for i in 0..N {
        let mut s = sampler(i);
        let c = chart(1 + s.index(5));
        let k = s.index(c.dim().min(3) + 1);
        let a = s.form(&c, k, 3);
        let da = exterior_derivative(&a);
        ensure!(exterior_derivative(&da).is_zero(), "d(d a) != 0 for a = {a}");
        ensure!(Dense::from_form(&da).same(&Dense::from_form(&a).d()), "d disagrees with the dense oracle on {a}");

        let l = s.index(c.dim().min(3) + 1);
        let b = s.form(&c, l, 3);
        let sign = if (k * l) % 2 == 0 { 1 } else { -1 };
        let ab = wedge(&a, &b)?;
        ensure!(ab == wedge(&b, &a)?.scale_int(sign), "graded antisymmetry fails for {a}, {b}");

        let x = s.multivector(&c, 1, 3);
        if k > 0 {
            let once = interior_product(&x, &a)?;
            ensure!(k < 2 || interior_product(&x, &once)?.is_zero(), "i_X i_X a != 0");
            ensure!(
                Dense::from_form(&once).same(&Dense::from_form(&a).contract(&components(&x))),
                "contraction disagrees with the dense oracle"
            );
        }

        let y = s.multivector(&c, 1, 2);
        let lhs = lie_derivative(&y, &da)?;
        let rhs = exterior_derivative(&lie_derivative(&y, &a)?);
        ensure!(lhs == rhs, "L_X d a != d L_X a for a = {a}");
        if k > 0 {
            let w = Dense::from_form(&a);
            let ys = components(&y);
            let cartan = w.d().contract(&ys).add(&w.contract(&ys).d());
            ensure!(Dense::from_form(&lie_derivative(&y, &a)?).same(&cartan), "L_X disagrees with i_X d + d i_X");
        }

        let tgt = Chart::new("T", &["a", "b", "e", "f"][..1 + s.index(4)]).unwrap();
        let phi = s.map(&c, &tgt, 2);
        let m = s.index(tgt.dim().min(3) + 1);
        let g = s.form(&tgt, m, 2);
        ensure!(
            phi.pullback(&exterior_derivative(&g))? == exterior_derivative(&phi.pullback(&g)?),
            "pullback does not commute with d"
        );
    }
    Ok(format!("{N} seeded inputs per identity, all residuals zero"))
}

// 2

fn canonical_multiphase_spaces() -> Res {
    let mut parts = Vec::new();
    for (i, (n, k)) in [(1, 1), (2, 1), (3, 2), (2, 2)].into_iter().enumerate() {
        let m = canonical_multiphase(n, k)?;
        ensure!(is_closed(&m.omega).passed(), "omega_can({n},{k}) is not closed");
        let pts = points(&m.chart, 20, 100 + i as u64);
        let v = check_nondegenerate(&PlecticCandidate::new(m.omega.clone(), Mode::Both(pts))?)?;
        ensure!(v.passed(), "omega_can({n},{k}) degenerate: {:?}", failing_residual(&v));
        parts.push(format!("({n},{k})"));
    }
    Ok(format!("{} closed and nondegenerate, generic + 20 points", parts.join(" ")))
}

// 3

fn confirmed_field(c: &PlecticCandidate, alpha: &DiffForm) -> Vec<RationalFunction> {
    let x = hamiltonian_vector_field(c, alpha).unwrap().pair().unwrap().x;
    let xs = components(&x);
    assert!(Dense::from_form(c.omega()).contract(&xs).same(&Dense::from_form(alpha).d()));
    xs
}

/// Sign of `J` against `−d i_a i_b i_c ω`, expanded entirely by the dense
/// oracle; `None` when both vanish.
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
    let rhs = w.contract(&xg).contract(&xb).contract(&xa).d().neg();
    if lhs.is_zero() && rhs.is_zero() {
        return None;
    }
    lhs.sign_against(&rhs)
}

fn random_hamiltonian(s: &mut Sampler, m: &Multiphase) -> DiffForm {
    let chart = &m.chart;
    let qs = Chart::new("Q", &chart.coords()[..m.n]).unwrap();
    let mut a = DiffForm::zero(chart, 1);
    for i in 0..m.n {
        let f = chart.conform(&s.polynomial(&qs, 2, 2)).unwrap();
        a = a.add(&DiffForm::dx(chart, i).scale(&f)).unwrap();
        let shift = interior_product(&MultiVectorField::partial(chart, i), &m.theta).unwrap();
        a = a.sub(&shift.scale_int(s.integer(-2, 2))).unwrap();
    }
    a
}

fn jacobiator_defect() -> Res {
    let m = canonical_multiphase(3, 2)?;
    let c = PlecticCandidate::generic(m.omega.clone())?;
    let parse = |t: &str| parse_form(&m.chart, t);
    let mut triples = vec![(parse("q3*d(q1)")?, parse("-(p12*d(q2) + p13*d(q3))")?, parse("q1*d(q2)")?)];
    let mut s = sampler(300);
    while triples.len() < 20 {
        triples.push((random_hamiltonian(&mut s, &m), random_hamiltonian(&mut s, &m), random_hamiltonian(&mut s, &m)));
    }
    let mut signs = Vec::new();
    for (i, (a, b, g)) in triples.iter().enumerate() {
        if let Some(x) = oracle_sign(&c, a, b, g) {
            ensure!(x == JACOBIATOR_SIGN, "oracle sign {x} on triple {i}, engine sign {JACOBIATOR_SIGN}");
            signs.push(x);
        }
        let v = jacobiator_check(&c, a, b, g)?;
        ensure!(v.passed(), "engine jacobiator identity fails on triple {i}: {:?}", failing_residual(&v));
    }
    ensure!(signs.len() >= 10, "only {} triples with a nonzero defect", signs.len());
    Ok(format!(
        "{} triples hold (the explicit one with both sides zero); {} nonzero defects, all with sign {JACOBIATOR_SIGN:+}",
        triples.len(),
        signs.len()
    ))
}

// 4

fn poisson_coherence() -> Res {
    let so3 = lie_poisson(&CEComplex::so3())?;
    ensure!(poisson_jacobiator(&so3)?.is_zero(), "so(3) Lie-Poisson jacobiator is nonzero");
    let r4 = Chart::new("R4", &["x", "y", "z", "w"])?;
    let bad = parse_multivector(&r4, "e(x)^e(y) + x*e(z)^e(w)")?;
    let j = poisson_jacobiator(&bad)?;
    ensure!(!j.is_zero(), "jacobiator of a non-Poisson bivector vanished");

    let mut pairs = 0;
    for pi in [&so3, &bad] {
        let l = graph_of_bivector(pi)?;
        for a in l.sections() {
            for b in l.sections() {
                let lhs = dorfman_bracket(a, b)?;
                let rhs = koszul_bracket(pi, a.form(), b.form())?;
                ensure!(*lhs.form() == rhs, "Dorfman form part {} != Koszul bracket {rhs}", lhs.form());
                pairs += 1;
            }
        }
    }

    let m = canonical_multiphase(2, 1)?;
    let mut s = sampler(400);
    for _ in 0..100 {
        let (f, g, h) = (s.polynomial(&m.chart, 3, 3), s.polynomial(&m.chart, 3, 3), s.polynomial(&m.chart, 3, 3));
        let lhs = symplectic_poisson_bracket(&m.omega, &f, &(&g * &h))?;
        let fg = symplectic_poisson_bracket(&m.omega, &f, &g)?;
        let fh = symplectic_poisson_bracket(&m.omega, &f, &h)?;
        ensure!(lhs == &(&fg * &h) + &(&g * &fh), "Leibniz rule fails for f = {f}, g = {g}, h = {h}");
    }
    Ok(format!(
        "so(3) jacobiator 0, control jacobiator {j}; Dorfman = Koszul on {pairs} basis pairs; Leibniz on 100 triples"
    ))
}

// 5

fn multiplicativity() -> Res {
    let base = canonical_multiphase(3, 2)?;
    let (g, w) = pair_groupoid(&base.omega)?;
    ensure!(check_groupoid_axioms(&g)?.passed(), "pair groupoid axioms fail");
    ensure!(check_multiplicative(&g, &w)?.passed(), "m*omega != pr1*omega + pr2*omega");
    ensure!(check_unit_inversion(&g, &w)?.passed(), "unit/inversion properties fail");
    let mu = induced_im_form(&g, &w)?;
    ensure!(check_right_translation(&g, &w, &mu)?.passed(), "right-translation identities fail");

    let wrong = g.t.pullback(&base.omega)?.add(&g.s.pullback(&base.omega)?)?;
    let mult = check_multiplicative(&g, &wrong)?;
    let mres = failing_residual(&mult).ok_or("wrong sign passes multiplicativity")?;
    let unit = check_unit_inversion(&g, &wrong)?;
    let eps = unit.item("eps*omega = 0").ok_or("missing eps item")?;
    let eres = failing_residual(eps).ok_or("wrong sign passes eps*omega = 0")?;
    let nonzero = |r: &Residual| !matches!(r, Residual::Form(f) if f.is_zero());
    ensure!(nonzero(mres) && nonzero(eres), "reported residuals are zero");
    Ok(format!("correct form passes all; p1*w + p2*w fails with residuals {mres} and {eres}"))
}

// 6

fn nondegeneracy_coherence() -> Res {
    let verdicts = |g: &msk_core::groupoid::GroupoidChart, w: &DiffForm| -> Result<(Verdict, Verdict), Box<dyn Error>> {
        let mu = induced_im_form(g, w)?;
        Ok((check_nondegenerate(&PlecticCandidate::generic(w.clone())?)?, check_im_nondeg(&mu, &Mode::Generic)?))
    };
    let base = canonical_multiphase(3, 2)?;
    let (g, w) = pair_groupoid(&base.omega)?;
    let (a, b) = verdicts(&g, &w)?;
    ensure!(a.passed() && b.passed(), "pair groupoid: {} / {}", a.passed(), b.passed());

    let r3 = chart(3);
    let (g, w) = vb_groupoid(&full_vertical(&r3, 2)?)?;
    let (a, b) = verdicts(&g, &w)?;
    ensure!(a.passed() && b.passed(), "full vertical: {} / {}", a.passed(), b.passed());

    let (g, w) = vb_groupoid(&vertical_subbundle(&r3, 2, &[parse_form(&r3, "d(x)^d(y)")?])?)?;
    let (a, b) = verdicts(&g, &w)?;
    ensure!(!a.passed() && !b.passed(), "span dx^dy: {} / {}", a.passed(), b.passed());
    let two = b.item("(2)").ok_or("missing item (2)")?;
    let Some(Residual::Vector(x)) = failing_residual(two) else {
        return Err("condition (2) has no vector witness".into());
    };
    ensure!(
        x.coeff(&[0]).is_zero() && x.coeff(&[1]).is_zero() && !x.coeff(&[2]).is_zero(),
        "witness {x} is not along e(z)"
    );
    Ok(format!("pair pass/pass, full vertical pass/pass, span(dx^dy) fail/fail with witness {x}"))
}

// 7

fn k_poisson(l: &SubbundleFrame, index: u64) -> Result<bool, Box<dyn Error>> {
    let pts = sampler(index).points_avoiding(l.chart(), 10, l.locus())?;
    Ok(is_isotropic(l)?.passed() && is_involutive(l)?.passed() && check_nondeg_l(l, &Mode::Both(pts))?.passed())
}

fn profile(l: &SubbundleFrame, index: u64) -> Result<String, Box<dyn Error>> {
    let pts = sampler(index).points_avoiding(l.chart(), 10, l.locus())?;
    let p = orthogonal_profile(l, &pts)?;
    let first = &p.points[0];
    ensure!(
        p.points.iter().all(|q| (q.dim_perp, q.dim_perp_tangent) == (first.dim_perp, first.dim_perp_tangent)),
        "orthogonal dimensions vary across samples"
    );
    Ok(format!("rank {}, dim L⊥ {}, dim L⊥∩TM {}", p.rank, first.dim_perp, first.dim_perp_tangent))
}

fn example_corpus() -> Res {
    let mut notes = Vec::new();

    let m = canonical_multiphase(3, 2)?;
    let l = graph_of_form(&m.omega)?;
    ensure!(k_poisson(&l, 700)?, "graph of omega_can fails");
    let pts = points(&m.chart, 10, 701);
    let p = orthogonal_profile(&l, &pts)?;
    ensure!(p.lagrangian && p.generic_dim_perp == l.rank(), "graph of omega_can is not lagrangian");
    notes.push(format!("graph(w_can) L=L⊥ ({})", profile(&l, 701)?));

    let r3 = chart(3);
    let l = graph_of_top_multivector(&parse_multivector(&r3, "e(x)^e(y)^e(z)")?)?;
    ensure!(k_poisson(&l, 702)?, "graph of e(x)^e(y)^e(z) fails");
    let dl = to_dl(&l)?;
    ensure!(dl.d_frame().len() == l.rank(), "pr2 is not injective on the graph");
    notes.push("graph(e(x)^e(y)^e(z)) with pr2 bijective".into());

    // L⊥ = L° ⊕ ∧²T*, and L° = 0 for the full bundle, so L⊥ = L here.
    let full = full_vertical(&r3, 2)?;
    ensure!(k_poisson(&full, 703)?, "full vertical fails");
    let pf = profile(&full, 703)?;
    ensure!(pf == "rank 3, dim L⊥ 3, dim L⊥∩TM 0", "full vertical profile {pf}");
    let part = vertical_subbundle(&r3, 2, &[parse_form(&r3, "d(x)^d(y)")?])?;
    let pp = profile(&part, 704)?;
    ensure!(pp == "rank 1, dim L⊥ 4, dim L⊥∩TM 1", "span(dx^dy) profile {pp}");
    notes.push(format!("vertical full ({pf}; L = L⊥ since L° = 0), span(dx^dy) ({pp})"));

    let r4 = Chart::new("R4", &["x1", "x2", "x3", "x4"])?;
    let line = line_bundle(&parse_form(&r4, "d(x1)^d(x2) + d(x3)^d(x4)")?)?;
    ensure!(k_poisson(&line, 705)?, "line bundle fails");
    notes.push(format!("line bundle ({})", profile(&line, 705)?));

    let p1 = Chart::new("P1", &["x1", "y1"])?;
    let p2 = Chart::new("P2", &["x2", "y2"])?;
    let wp = wedge_product_structure(&parse_form(&p1, "d(x1)^d(y1)")?, &parse_form(&p2, "d(x2)^d(y2)")?)?;
    ensure!(k_poisson(&wp, 706)?, "wedge-product structure fails");
    for pt in sampler(707).points_avoiding(wp.chart(), 10, wp.locus())? {
        ensure!(leaf_form_at(&wp, &pt)?.is_zero(), "nonzero leaf form at {pt:?}");
    }
    notes.push("wedge product (leaf forms zero at 10 points)".into());

    let can1 = graph_of_form(&canonical_multiphase(1, 1)?.omega)?;
    let plane = graph_of_form(&parse_form(&chart(2), "d(x)^d(y)")?)?;
    let uv = Chart::new("UV", &["u", "v"])?;
    let top = graph_of_top_multivector(&parse_multivector(&r3, "e(x)^e(y)^e(z)")?)?;
    let vert = full_vertical(&uv, 2)?;
    for (i, (a, b)) in [(&can1, &plane), (&top, &vert)].into_iter().enumerate() {
        ensure!(k_poisson(a, 710)? && k_poisson(b, 711)?, "product factor {i} fails");
        ensure!(k_poisson(&direct_product(a, b)?, 712 + i as u64)?, "direct product {i} fails");
    }
    let r4 = Chart::new("R4", &["x", "y", "z", "w"])?;
    let open = graph_of_form(&parse_form(&r4, "x*d(y)^d(z)^d(w)")?)?;
    ensure!(!is_involutive(&open)?.passed(), "graph of a non-closed form is involutive");
    ensure!(!is_involutive(&direct_product(&open, &vert)?)?.passed(), "product with a failing factor passes");
    notes.push("direct products pass (a non-closed factor fails)".into());

    Ok(notes.join("; "))
}

// 8

/// `c` with `r = c·t`, `c` a nonzero constant.
fn constant_ratio(r: &DiffForm, t: &DiffForm) -> Option<Rational> {
    let (idx, tc) = t.terms().iter().next()?;
    let c = r.coeff(idx).checked_div(tc).ok()?.as_constant()?;
    (!c.is_zero() && t.scale(&t.chart().constant(c.clone())) == *r).then_some(c)
}

fn rigidity() -> Res {
    let m = canonical_multiphase(3, 2)?;
    let n = Chart::new("N", &["t1", "t2"])?;
    for f in [n.one(), n.integer(5)] {
        let l = scaled_family(&f, &n, &m.omega)?;
        ensure!(is_involutive(&l)?.passed(), "f = {f} is not involutive");
    }
    let l = scaled_family(&n.coordinate(0), &n, &m.omega)?;
    let v = is_involutive(&l)?;
    let item = v.items.iter().find(|i| !i.passed()).ok_or("f = t1 passes involutivity")?;
    let Some(Residual::Section(res)) = &item.residual else {
        return Err(format!("item {} has no section residual", item.label).into());
    };
    ensure!(res.vector().is_zero(), "residual has a tangent part");
    let (i, j) = item
        .label
        .trim_matches(|c| c == '[' || c == ']')
        .split_once(',')
        .and_then(|(a, b)| Some((a.strip_prefix('s')?.parse::<usize>().ok()?, b.strip_prefix('s')?.parse::<usize>().ok()?)))
        .ok_or("unexpected item label")?;
    let product = l.chart();
    let lift = SmoothMap::projection(product, &m.chart, &(0..m.chart.dim()).collect::<Vec<_>>())?;
    let w = lift.pullback(&m.omega)?;
    let (xi, xj) = (l.sections()[i].vector(), l.sections()[j].vector());
    let dt1 = DiffForm::dx(product, product.index_of("t1")?);
    let expected = wedge(&dt1, &interior_product(xi, &interior_product(xj, &w)?)?)?;
    let c = constant_ratio(res.form(), &expected)
        .ok_or_else(|| format!("residual {} is not a multiple of {expected}", res.form()))?;
    Ok(format!("f = 1, 5 involutive; f = t1 fails at {} with {} = {c}·dt1∧i_Xj i_Xi w", item.label, res.form()))
}

// 9

fn cartan_three_form() -> Res {
    let so3 = CEComplex::so3();
    let cf = ce_cartan(&so3)?;
    ensure!(!cf.h.is_zero() && cf.dh.is_zero(), "dH = {}", cf.dh);
    ensure!(cf.nondegenerate.passed(), "u -> i_u H has a kernel");
    let d2 = |cx: &CEComplex| -> Result<bool, Box<dyn Error>> {
        let c = cx.chart();
        for i in 0..cx.rank() {
            if !ce_differential(cx, &ce_differential(cx, &DiffForm::dx(&c, i))?)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    };
    ensure!(!d2(&so3)?, "d^2 != 0 on so(3)");
    let bad = CEComplex::corrupted_so3();
    ensure!(d2(&bad)?, "corrupted constants pass d^2 = 0");
    ensure!(matches!(ce_cartan(&bad), Err(msk_core::Error::JacobiFails)), "ce_cartan accepted corrupted constants");
    Ok(format!("H = {}, dH = 0, trivial kernel; corrupted constants give d^2 != 0", cf.h))
}

// 10

fn morphism() -> Res {
    let base = canonical_multiphase(3, 2)?;
    let (g, w) = pair_groupoid(&base.omega)?;
    let source = to_dl(&graph_of_form(&w)?)?;
    let target = to_dl(&graph_of_form(&base.omega)?)?;
    let v = check_morphism(&g.t, &source, &target)?;
    ensure!(v.passed(), "target map is not a morphism: {:?}", failing_residual(&v));
    let consts = (0..g.m.dim()).map(|i| g.g.integer(i as i64 + 1)).collect();
    let constant = SmoothMap::new(&g.g, &g.m, consts)?;
    let v = check_morphism(&constant, &source, &target)?;
    let r = failing_residual(&v).ok_or("constant map passes")?;
    Ok(format!("target map passes ({} frame elements); constant map fails with {r}", target.d_frame().len()))
}

// 11

fn prefixed_checks(sc: &Scenario, prefix: &str) -> Vec<CheckDecl> {
    sc.checks
        .iter()
        .map(|c| {
            let args: Vec<String> = c.args.iter().map(|a| format!("{prefix}{a}")).collect();
            let args: Vec<&str> = args.iter().map(String::as_str).collect();
            CheckDecl::new(&c.op, &args, c.mode.as_deref())
        })
        .collect()
}

fn round_trips() -> Res {
    let r3 = chart(3);
    let r4 = Chart::new("R4", &["x1", "x2", "x3", "x4"])?;
    let frames = [
        graph_of_form(&canonical_multiphase(3, 2)?.omega)?,
        graph_of_top_multivector(&parse_multivector(&r3, "e(x)^e(y)^e(z)")?)?,
        graph_of_bivector(&lie_poisson(&CEComplex::so3())?)?,
        full_vertical(&r3, 2)?,
        line_bundle(&parse_form(&r4, "d(x1)^d(x2) + d(x3)^d(x4)")?)?,
    ];
    for (i, l) in frames.iter().enumerate() {
        let (a, mu) = algebroid_from_l(l)?;
        let mut s = sampler(1100 + i as u64);
        let fns = [s.polynomial(l.chart(), 2, 3), s.polynomial(l.chart(), 3, 2)];
        ensure!(check_algebroid_axioms(&a, &fns)?.passed(), "frame {i}: algebroid axioms fail");
        ensure!(check_im_form(&mu)?.passed(), "frame {i}: IM equations fail");
        ensure!(check_im_nondeg(&mu, &Mode::Generic)?.passed(), "frame {i}: IM nondegeneracy fails");
        ensure!(same_span(l, &from_dl(&to_dl(l)?)?)?.passed(), "frame {i}: DL round trip changes the span");
    }

    let opts = RunOptions { seed: Some(11), samples: Some(5) };
    let verdicts = |r: &msk_cli::Report| r.checks.iter().map(|c| (c.op.clone(), c.verdict)).collect::<Vec<_>>();
    let mut checks = 0;
    for name in NAMES {
        let text = catalog_command(name, &[] as &[&str])?;
        let out = Command::new(env!("CARGO_BIN_EXE_msk")).args(["catalog", name]).output()?;
        ensure!(out.status.success() && String::from_utf8_lossy(&out.stdout).trim_end() == text.trim_end(), "{name}: binary catalog output differs");
        let sc = Scenario::from_json(&text)?;
        let first = run_scenario(&sc, name, opts)?;
        let second = run_scenario(&Scenario::from_json(&sc.to_json())?, name, opts)?;
        ensure!(first.to_json_untimed() == second.to_json_untimed(), "{name}: reruns differ");
        for c in &first.checks {
            let expect_fail = name == "scaled-family" && c.op == "is_involutive";
            ensure!(c.passed() != expect_fail, "{name}: {} is {}", c.name, c.verdict);
        }

        let wrapped = json!({
            "objects": [{"kind": "catalog", "name": "c", "catalog": name, "params": {}}],
            "checks": prefixed_checks(&sc, "c."),
        });
        let via_object = run_scenario(&Scenario::from_json(&wrapped.to_string())?, name, opts)?;
        ensure!(verdicts(&via_object) == verdicts(&first), "{name}: catalog object gives different verdicts");
        checks += first.checks.len();
    }
    Ok(format!(
        "{} algebroid round trips, DL spans match; {} catalog entries ({checks} checks) rerun byte-identically",
        frames.len(),
        NAMES.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("calculus identities", calculus_identities),
        ("canonical multiphase spaces", canonical_multiphase_spaces),
        ("jacobiator defect", jacobiator_defect),
        ("Poisson coherence", poisson_coherence),
        ("multiplicativity", multiplicativity),
        ("nondegeneracy coherence", nondegeneracy_coherence),
        ("k-Poisson example corpus", example_corpus),
        ("rigidity of scaled families", rigidity),
        ("Cartan 3-form", cartan_three_form),
        ("morphism check", morphism),
        ("round trips", round_trips),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !filter.is_empty() && !filter.iter().any(|x| x == &n.to_string() || title.contains(x.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(Ok(detail)) => println!("criterion {n:>2}: PASS {title}: {detail} [{ms} ms]"),
            Ok(Err(e)) => {
                failed += 1;
                println!("criterion {n:>2}: FAIL {title}: {e} [{ms} ms]");
            }
            Err(_) => {
                failed += 1;
                println!("criterion {n:>2}: FAIL {title}: panicked [{ms} ms]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
