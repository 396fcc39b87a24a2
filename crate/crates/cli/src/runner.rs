//! Deterministic execution of scenario checks.

use std::time::Instant;

use msk_core::algebroid::{algebroid_from_l, check_algebroid_axioms, check_im_form, check_im_nondeg};
use msk_core::calculus::{poisson_jacobiator, Chart, DiffForm};
use msk_core::catalog::{ce_cartan, ce_differential};
use msk_core::courant::{
    check_dl, check_morphism, check_nondeg_l, from_dl, is_involutive, is_isotropic, leaf_form_at, orthogonal_profile,
    same_span, to_dl, SubbundleFrame,
};
use msk_core::groupoid::{
    check_groupoid_axioms, check_multiplicative, check_right_translation, check_unit_inversion, induced_im_form,
};
use msk_core::kplectic::{
    check_nondegenerate, hamiltonian_vector_field, is_closed, jacobiator_check, solve_validity, HamiltonianSolve,
    PlecticCandidate,
};
use msk_core::sampling::{derive_seed, Sampler};
use msk_core::scalar::{Polynomial, RationalFunction, SamplePoint};
use msk_core::verdict::{Mode, Residual, Validity, Verdict};

use crate::env::{Env, Kind, Object};
use crate::error::CliError;
use crate::report::{CheckReport, Report};
use crate::scenario::{CheckDecl, Scenario};

/// Signature of a check operation.
pub struct OpSpec {
    pub name: &'static str,
    pub args: &'static [Kind],
    /// Accepts `generic`, `sampled` or `both`.
    pub mode: bool,
}

const fn op(name: &'static str, args: &'static [Kind], mode: bool) -> OpSpec {
    OpSpec { name, args, mode }
}

use Kind::*;

pub const OPS: &[OpSpec] = &[
    op("is_closed", &[Form], false),
    op("check_nondegenerate", &[Form], true),
    op("hamiltonian", &[Form, Form], false),
    op("jacobiator", &[Form, Form, Form, Form], false),
    op("poisson_jacobiator", &[Multivector], false),
    op("is_isotropic", &[Frame], false),
    op("is_involutive", &[Frame], false),
    op("check_nondeg_l", &[Frame], true),
    op("lagrangian", &[Frame], false),
    op("pointwise_rank", &[Frame], false),
    op("check_dl", &[Frame], true),
    op("dl_round_trip", &[Frame], false),
    op("same_span", &[Frame, Frame], false),
    op("leaf_forms_zero", &[Frame], false),
    op("check_morphism", &[Map, Frame, Frame], false),
    op("algebroid_from_l", &[Frame], true),
    op("algebroid_axioms", &[Algebroid], false),
    op("im_form", &[ImForm], false),
    op("im_nondeg", &[ImForm], true),
    op("groupoid_axioms", &[Groupoid], false),
    op("multiplicative", &[Groupoid, Form], false),
    op("unit_inversion", &[Groupoid, Form], false),
    op("right_translation", &[Groupoid, Form], false),
    op("induced_im_nondeg", &[Groupoid, Form], true),
    op("cartan", &[LieAlgebra], false),
    op("ce_d_squared", &[LieAlgebra], false),
];

pub fn op_spec(name: &str) -> Option<&'static OpSpec> {
    OPS.iter().find(|o| o.name == name)
}

/// Command-line overrides of the scenario's sampling block.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ModeKind {
    Generic,
    Sampled,
    Both,
}

fn mode_kind(index: usize, c: &CheckDecl) -> Result<ModeKind, CliError> {
    let spec = op_spec(&c.op).ok_or_else(|| CliError::UnknownOp { index, op: c.op.clone() })?;
    let kind = match c.mode.as_deref() {
        None | Some("generic") => ModeKind::Generic,
        Some("sampled") => ModeKind::Sampled,
        Some("both") => ModeKind::Both,
        Some(m) => {
            return Err(CliError::BadCheck {
                index,
                op: c.op.clone(),
                message: format!("invalid mode `{m}` (use generic, sampled or both)"),
            })
        }
    };
    if c.mode.is_some() && !spec.mode {
        return Err(CliError::BadCheck { index, op: c.op.clone(), message: "operation takes no mode".into() });
    }
    Ok(kind)
}

/// Every check names an existing operation, the right number of arguments
/// of the right kinds, and a valid mode.
pub fn validate(sc: &Scenario, env: &Env) -> Result<(), CliError> {
    for (index, c) in sc.checks.iter().enumerate() {
        let spec = op_spec(&c.op).ok_or_else(|| CliError::UnknownOp { index, op: c.op.clone() })?;
        mode_kind(index, c)?;
        if c.args.len() != spec.args.len() {
            return Err(CliError::BadCheck {
                index,
                op: c.op.clone(),
                message: format!("expected {} arguments, got {}", spec.args.len(), c.args.len()),
            });
        }
        let context = format!("check {index} ({})", c.op);
        for (arg, kind) in c.args.iter().zip(spec.args) {
            let found = env.get(arg, &context)?.kind();
            if found != *kind {
                return Err(CliError::WrongKind {
                    context,
                    name: arg.clone(),
                    expected: kind.label(),
                    found: found.label(),
                });
            }
        }
    }
    Ok(())
}

/// Per-check sampling state, seeded from the global seed and the check's
/// position so results never depend on execution order.
struct Sampling {
    sampler: Sampler,
    count: usize,
}

impl Sampling {
    fn points(&mut self, chart: &Chart, avoid: &[Polynomial]) -> msk_core::Result<Vec<SamplePoint>> {
        self.sampler.points_avoiding(chart, self.count, avoid)
    }

    fn mode(&mut self, kind: ModeKind, chart: &Chart, avoid: &[Polynomial]) -> msk_core::Result<Mode> {
        Ok(match kind {
            ModeKind::Generic => Mode::Generic,
            ModeKind::Sampled => Mode::Sampled(self.points(chart, avoid)?),
            ModeKind::Both => Mode::Both(self.points(chart, avoid)?),
        })
    }

    /// Two seeded polynomials for Leibniz and Jacobi checks.
    fn test_functions(&mut self, chart: &Chart) -> Vec<RationalFunction> {
        vec![self.sampler.polynomial(chart, 2, 3), self.sampler.polynomial(chart, 3, 2)]
    }
}

fn denominators<'a>(coeffs: impl IntoIterator<Item = &'a RationalFunction>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for c in coeffs {
        let d = c.denom();
        if d.as_constant().is_none() && !out.iter().any(|p| p == d) {
            out.push(d.clone());
        }
    }
    out
}

fn form_poles(a: &DiffForm) -> Vec<Polynomial> {
    denominators(a.terms().values())
}

fn frame_poles(l: &SubbundleFrame) -> Vec<Polynomial> {
    let mut out = l.locus().to_vec();
    for s in l.sections() {
        out.extend(denominators(s.vector().terms().values().chain(s.form().terms().values())));
    }
    out
}

fn run_check(env: &Env, c: &CheckDecl, kind: ModeKind, s: &mut Sampling) -> msk_core::Result<Verdict> {
    let arg = |i: usize| env.objects.get(&c.args[i]).expect("validated");
    macro_rules! get {
        ($i:expr, $variant:ident) => {
            match arg($i) {
                Object::$variant(x) => x,
                _ => unreachable!("validated argument kinds"),
            }
        };
    }
    Ok(match c.op.as_str() {
        "is_closed" => is_closed(get!(0, Form)),
        "check_nondegenerate" => {
            let w = get!(0, Form);
            let mode = s.mode(kind, w.chart(), &form_poles(w))?;
            check_nondegenerate(&PlecticCandidate::new(w.clone(), mode)?)?
        }
        "hamiltonian" => {
            let c = PlecticCandidate::generic(get!(0, Form).clone())?;
            match hamiltonian_vector_field(&c, get!(1, Form))? {
                HamiltonianSolve::Hamiltonian(p) => {
                    Verdict::pass("hamiltonian", solve_validity(&p)).with_detail(format!("X = {}", p.x))
                }
                HamiltonianSolve::NotHamiltonian { certificate, locus } => {
                    Verdict::fail("hamiltonian", Validity::generic(locus), Some(Residual::Components(certificate)))
                }
            }
        }
        "jacobiator" => {
            let c = PlecticCandidate::generic(get!(0, Form).clone())?;
            jacobiator_check(&c, get!(1, Form), get!(2, Form), get!(3, Form))?
        }
        "poisson_jacobiator" => {
            let j = poisson_jacobiator(get!(0, Multivector))?;
            Verdict::identity("poisson jacobiator", (!j.is_zero()).then_some(Residual::Vector(j)))
        }
        "is_isotropic" => is_isotropic(get!(0, Frame))?,
        "is_involutive" => is_involutive(get!(0, Frame))?,
        "check_nondeg_l" => {
            let l = get!(0, Frame);
            let mode = s.mode(kind, l.chart(), &frame_poles(l))?;
            check_nondeg_l(l, &mode)?
        }
        "lagrangian" => {
            let l = get!(0, Frame);
            let pts = s.points(l.chart(), &frame_poles(l))?;
            let p = orthogonal_profile(l, &pts)?;
            let dims: Vec<String> = p.points.iter().map(|q| format!("{}/{}", q.dim_perp, q.dim_perp_tangent)).collect();
            let detail = format!(
                "rank {}, generic dim L-perp {}, per point dim L-perp/dim (L-perp and TM): {}",
                p.rank,
                p.generic_dim_perp,
                dims.join(" ")
            );
            let validity = Validity::Sampled { points: pts };
            let v = if p.lagrangian { Verdict::pass("L = L-perp", validity) } else { Verdict::fail("L = L-perp", validity, None) };
            v.with_detail(detail)
        }
        "pointwise_rank" => {
            let l = get!(0, Frame);
            let pts = s.points(l.chart(), &frame_poles(l))?;
            l.check_pointwise_rank(&pts)?
        }
        "check_dl" => {
            let l = get!(0, Frame);
            let mode = s.mode(kind, l.chart(), &frame_poles(l))?;
            check_dl(&to_dl(l)?, &mode)?
        }
        "dl_round_trip" => {
            let l = get!(0, Frame);
            same_span(&from_dl(&to_dl(l)?)?, l)?
        }
        "same_span" => same_span(get!(0, Frame), get!(1, Frame))?,
        "leaf_forms_zero" => {
            let l = get!(0, Frame);
            let pts = s.points(l.chart(), &frame_poles(l))?;
            let mut failure = None;
            for pt in &pts {
                let t = leaf_form_at(l, pt)?;
                if !t.is_zero() {
                    let vals: Vec<String> = t.values.iter().map(|(k, v)| format!("{k:?}: {v}")).collect();
                    failure = Some(Residual::Text(format!("at {pt}: {}", vals.join(", "))));
                    break;
                }
            }
            let validity = Validity::Sampled { points: pts };
            match failure {
                None => Verdict::pass("leaf forms vanish", validity),
                Some(r) => Verdict::fail("leaf forms vanish", validity, Some(r)),
            }
        }
        "check_morphism" => check_morphism(get!(0, Map), &to_dl(get!(1, Frame))?, &to_dl(get!(2, Frame))?)?,
        "algebroid_from_l" => {
            let l = get!(0, Frame);
            let (a, m) = algebroid_from_l(l)?;
            let fns = s.test_functions(l.chart());
            let mode = s.mode(kind, l.chart(), &frame_poles(l))?;
            Verdict::all(
                "algebroid from L",
                vec![check_algebroid_axioms(&a, &fns)?, check_im_form(&m)?, check_im_nondeg(&m, &mode)?],
            )
        }
        "algebroid_axioms" => {
            let a = get!(0, Algebroid);
            let fns = s.test_functions(a.chart());
            check_algebroid_axioms(a, &fns)?
        }
        "im_form" => check_im_form(get!(0, ImForm))?,
        "im_nondeg" => {
            let m = get!(0, ImForm);
            let poles = denominators(m.forms().iter().flat_map(|f| f.terms().values()));
            let mode = s.mode(kind, m.algebroid().chart(), &poles)?;
            check_im_nondeg(m, &mode)?
        }
        "groupoid_axioms" => check_groupoid_axioms(get!(0, Groupoid))?,
        "multiplicative" => check_multiplicative(get!(0, Groupoid), get!(1, Form))?,
        "unit_inversion" => check_unit_inversion(get!(0, Groupoid), get!(1, Form))?,
        "right_translation" => {
            let (g, w) = (get!(0, Groupoid), get!(1, Form));
            check_right_translation(g, w, &induced_im_form(g, w)?)?
        }
        "induced_im_nondeg" => {
            let (g, w) = (get!(0, Groupoid), get!(1, Form));
            let m = induced_im_form(g, w)?;
            let poles = denominators(m.forms().iter().flat_map(|f| f.terms().values()));
            let mode = s.mode(kind, &g.m, &poles)?;
            check_im_nondeg(&m, &mode)?
        }
        "cartan" => {
            let cf = ce_cartan(get!(0, LieAlgebra))?;
            let closed = Verdict::identity("dH = 0", (!cf.dh.is_zero()).then_some(Residual::Form(cf.dh.clone())));
            Verdict::all("cartan 3-form", vec![closed, cf.nondegenerate]).with_detail(format!("H = {}", cf.h))
        }
        "ce_d_squared" => {
            let cx = get!(0, LieAlgebra);
            let chart = cx.chart();
            let mut items = Vec::new();
            for k in 0..cx.rank() {
                let e = DiffForm::dx(&chart, k);
                let dd = ce_differential(cx, &ce_differential(cx, &e)?)?;
                items.push(Verdict::identity(format!("d^2 e{}", k + 1), (!dd.is_zero()).then_some(Residual::Form(dd))));
            }
            Verdict::all("d^2 = 0", items)
        }
        other => unreachable!("validated operation {other}"),
    })
}

/// Builds the environment, validates every check, then runs the checks in
/// declaration order. Scenario errors abort before any check runs.
pub fn run_scenario(sc: &Scenario, label: &str, opts: RunOptions) -> Result<Report, CliError> {
    let env = Env::build(sc)?;
    validate(sc, &env)?;
    let seed = opts.seed.unwrap_or(sc.sampling.seed);
    let count = opts.samples.unwrap_or(sc.sampling.count);
    let mut checks = Vec::with_capacity(sc.checks.len());
    for (index, c) in sc.checks.iter().enumerate() {
        let kind = mode_kind(index, c)?;
        let mut sampling = Sampling { sampler: Sampler::new(derive_seed(seed, index as u64), sc.sampling.bound), count };
        let start = Instant::now();
        let outcome = run_check(&env, c, kind, &mut sampling);
        let millis = start.elapsed().as_millis() as u64;
        checks.push(CheckReport::new(c.display_name(), &c.op, outcome, millis));
    }
    Ok(Report { scenario: sc.name.clone().unwrap_or_else(|| label.to_string()), seed, checks })
}
