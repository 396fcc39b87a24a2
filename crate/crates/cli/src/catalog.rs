//! Catalog entries rendered as scenario fragments: chart and object
//! declarations plus the checks each entry is expected to pass or fail.

use std::collections::{BTreeMap, BTreeSet};

use msk_core::calculus::{parse_form_of_degree, Chart, DiffForm, MultiVectorField, SmoothMap};
use msk_core::catalog::{
    canonical_multiphase, ce_cartan, flat_hyperkahler, full_vertical, graph_of_form, graph_of_top_multivector,
    hyperkahler_forms, pair_groupoid, scaled_family, vb_groupoid, vertical_subbundle, volume_plectic,
    wedge_product_structure, CEComplex,
};
use msk_core::courant::{direct_product, SubbundleFrame};
use msk_core::groupoid::GroupoidChart;

use crate::error::CliError;
use crate::scenario::{ChartDecl, CheckDecl, ObjectDecl, Scenario, SectionDecl};

/// Every entry accepted by [`build`].
pub const NAMES: [&str; 13] = [
    "canonical-multiphase",
    "volume",
    "flat-hyperkahler",
    "cartan-so3",
    "graph-form",
    "graph-top-multivector",
    "vertical",
    "line-bundle",
    "scaled-family",
    "wedge-product",
    "pair-groupoid",
    "vb-groupoid",
    "direct-product",
];

type Params = BTreeMap<String, String>;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::BadParameters(msg.into())
}

fn core(context: &str) -> impl FnOnce(msk_core::Error) -> CliError + '_ {
    move |e| match e {
        msk_core::Error::BadDegree(m) | msk_core::Error::BadParameters(m) => bad(format!("{context}: {m}")),
        other => CliError::Math { context: context.to_string(), source: other },
    }
}

fn allow(params: &Params, keys: &[&str]) -> Result<(), CliError> {
    let allowed: BTreeSet<&str> = keys.iter().copied().collect();
    match params.keys().find(|k| !allowed.contains(k.as_str())) {
        Some(k) => Err(bad(format!("unknown parameter `{k}` (accepted: {})", keys.join(", ")))),
        None => Ok(()),
    }
}

fn usize_param(params: &Params, key: &str, default: usize) -> Result<usize, CliError> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v.trim().parse().map_err(|_| bad(format!("`{key}` must be a nonnegative integer, got `{v}`"))),
    }
}

fn bool_param(params: &Params, key: &str) -> Result<bool, CliError> {
    match params.get(key).map(String::as_str) {
        None | Some("false") => Ok(false),
        Some("true") => Ok(true),
        Some(v) => Err(bad(format!("`{key}` must be true or false, got `{v}`"))),
    }
}

/// `R{n}` with coordinates `x1..xn`.
fn plain_chart(n: usize) -> Result<Chart, CliError> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Chart::new(format!("R{n}"), &names).map_err(core("chart"))
}

fn multiphase_params(n: usize, k: usize) -> Result<(), CliError> {
    if k == 0 || k > n {
        return Err(bad(format!("canonical-multiphase needs 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(())
}

/// A plectic form named by a base spec: `canonical-multiphase(n,k)`,
/// `volume(n)` or `flat-hyperkahler`.
fn base_form(spec: &str) -> Result<DiffForm, CliError> {
    let spec = spec.trim();
    let (head, args) = match spec.find('(') {
        Some(i) if spec.ends_with(')') => (&spec[..i], &spec[i + 1..spec.len() - 1]),
        Some(_) => return Err(bad(format!("unbalanced base spec `{spec}`"))),
        None => (spec, ""),
    };
    let nums = args
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>().map_err(|_| bad(format!("bad argument `{s}` in `{spec}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    match (head.trim(), nums.as_slice()) {
        ("canonical-multiphase", &[n, k]) => {
            multiphase_params(n, k)?;
            Ok(canonical_multiphase(n, k).map_err(core(spec))?.omega)
        }
        ("volume", &[n]) => Ok(volume_plectic(n).map_err(core(spec))?.omega().clone()),
        ("flat-hyperkahler", &[]) => Ok(flat_hyperkahler().omega().clone()),
        _ => Err(bad(format!(
            "unknown base `{spec}` (use canonical-multiphase(n,k), volume(n) or flat-hyperkahler)"
        ))),
    }
}

/// The same form on a copy of its chart with every name suffixed.
fn relabel(a: &DiffForm, suffix: &str) -> Result<DiffForm, CliError> {
    let old = a.chart();
    let names: Vec<String> = old.coords().iter().map(|c| format!("{c}{suffix}")).collect();
    let new = Chart::new(format!("{}{suffix}", old.name()), &names).map_err(core("relabel"))?;
    let comps = (0..new.dim()).map(|i| new.coordinate(i)).collect();
    let phi = SmoothMap::new(&new, old, comps).map_err(core("relabel"))?;
    phi.pullback(a).map_err(core("relabel"))
}

/// Right factor relabelled when its coordinates clash with the left one.
fn disjoint(left: &DiffForm, right: DiffForm) -> Result<DiffForm, CliError> {
    let clash = right.chart().coords().iter().any(|c| left.chart().coords().contains(c))
        || right.chart().name() == left.chart().name();
    if clash {
        relabel(&right, "_b")
    } else {
        Ok(right)
    }
}

fn vertical_forms(chart: &Chart, k: usize, spec: Option<&String>) -> Result<SubbundleFrame, CliError> {
    match spec.map(String::as_str) {
        None | Some("full") => full_vertical(chart, k).map_err(core("vertical")),
        Some(list) => {
            let forms = list
                .split(';')
                .map(|t| parse_form_of_degree(chart, t.trim(), k))
                .collect::<msk_core::Result<Vec<_>>>()
                .map_err(core("forms"))?;
            vertical_subbundle(chart, k, &forms).map_err(core("vertical"))
        }
    }
}

/// Collects declarations, emitting each chart once.
#[derive(Default)]
struct Emitter {
    sc: Scenario,
}

impl Emitter {
    fn chart(&mut self, c: &Chart) -> String {
        if !self.sc.charts.iter().any(|d| d.name == c.name()) {
            self.sc.charts.push(ChartDecl { name: c.name().to_string(), coords: c.coords().to_vec() });
        }
        c.name().to_string()
    }

    fn form(&mut self, name: &str, a: &DiffForm) {
        let chart = self.chart(a.chart());
        self.sc.objects.push(ObjectDecl::Form {
            name: name.into(),
            chart,
            value: a.to_string(),
            degree: Some(a.degree()),
        });
    }

    fn multivector(&mut self, name: &str, x: &MultiVectorField) {
        let chart = self.chart(x.chart());
        self.sc.objects.push(ObjectDecl::Multivector {
            name: name.into(),
            chart,
            value: x.to_string(),
            degree: Some(x.degree()),
        });
    }

    fn map(&mut self, name: &str, f: &SmoothMap) {
        let (source, target) = (self.chart(f.source()), self.chart(f.target()));
        let components = f.components().iter().map(ToString::to_string).collect();
        self.sc.objects.push(ObjectDecl::Map { name: name.into(), source, target, components });
    }

    fn frame(&mut self, name: &str, l: &SubbundleFrame) {
        let chart = self.chart(l.chart());
        let sections = l
            .sections()
            .iter()
            .map(|s| SectionDecl { vector: s.vector().to_string(), form: s.form().to_string() })
            .collect();
        self.sc.objects.push(ObjectDecl::Frame { name: name.into(), chart, k: l.k(), sections });
    }

    /// Declares the structure maps as `<name>.s`, `<name>.t`, ….
    fn groupoid(&mut self, name: &str, g: &GroupoidChart) {
        let field = |f: &str| format!("{name}.{f}");
        for (f, m) in [
            ("s", &g.s),
            ("t", &g.t),
            ("eps", &g.eps),
            ("inv", &g.inv),
            ("pr1", &g.pr1),
            ("pr2", &g.pr2),
            ("mult", &g.mult),
        ] {
            self.map(&field(f), m);
        }
        if let Some(ip) = &g.inverse_pair {
            self.map(&field("inverse_pair"), ip);
        }
        let unit_complement = g
            .unit_complement
            .as_ref()
            .map(|rows| rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect());
        let right_ext = g.right_ext.as_ref().map(|xs| xs.iter().map(ToString::to_string).collect());
        let (arrows, base) = (self.chart(&g.g), self.chart(&g.m));
        self.sc.objects.push(ObjectDecl::Groupoid {
            name: name.into(),
            arrows,
            base,
            s: field("s"),
            t: field("t"),
            eps: field("eps"),
            inv: field("inv"),
            pr1: field("pr1"),
            pr2: field("pr2"),
            mult: field("mult"),
            inverse_pair: g.inverse_pair.as_ref().map(|_| field("inverse_pair")),
            unit_complement,
            right_ext,
        });
    }

    fn lie_algebra(&mut self, name: &str, cx: &CEComplex) {
        let structure = cx
            .structure_constants()
            .iter()
            .map(|plane| plane.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect())
            .collect();
        let pairing = cx.pairing().iter().map(|row| row.iter().map(ToString::to_string).collect()).collect();
        self.sc.objects.push(ObjectDecl::LieAlgebra { name: name.into(), structure, pairing });
    }

    fn check(&mut self, op: &str, args: &[&str]) {
        self.sc.checks.push(CheckDecl::new(op, args, None));
    }

    fn check_mode(&mut self, op: &str, args: &[&str], mode: &str) {
        self.sc.checks.push(CheckDecl::new(op, args, Some(mode)));
    }

    fn k_poisson(&mut self, l: &str) {
        self.check("is_isotropic", &[l]);
        self.check("is_involutive", &[l]);
        self.check_mode("check_nondeg_l", &[l], "both");
    }
}

/// Builds the named catalog entry.
pub fn build(name: &str, params: &Params) -> Result<Scenario, CliError> {
    let mut e = Emitter::default();
    match name {
        "canonical-multiphase" => {
            allow(params, &["n", "k"])?;
            let (n, k) = (usize_param(params, "n", 3)?, usize_param(params, "k", 2)?);
            multiphase_params(n, k)?;
            let m = canonical_multiphase(n, k).map_err(core(name))?;
            e.form("theta", &m.theta);
            e.form("omega", &m.omega);
            e.check("is_closed", &["omega"]);
            e.check_mode("check_nondegenerate", &["omega"], "both");
        }
        "volume" => {
            allow(params, &["n", "scale"])?;
            let c = volume_plectic(usize_param(params, "n", 3)?).map_err(core(name))?;
            let mut omega = c.omega().clone();
            if let Some(f) = params.get("scale") {
                omega = omega.scale(&c.chart().scalar(f).map_err(core("scale"))?);
            }
            e.form("omega", &omega);
            e.check("is_closed", &["omega"]);
            e.check_mode("check_nondegenerate", &["omega"], "both");
        }
        "flat-hyperkahler" => {
            allow(params, &[])?;
            for (i, w) in hyperkahler_forms().iter().enumerate() {
                e.form(&format!("omega{}", i + 1), w);
            }
            e.form("omega", flat_hyperkahler().omega());
            for w in ["omega1", "omega2", "omega3", "omega"] {
                e.check("is_closed", &[w]);
                e.check_mode("check_nondegenerate", &[w], "both");
            }
        }
        "cartan-so3" => {
            allow(params, &["corrupted"])?;
            let corrupted = bool_param(params, "corrupted")?;
            let cx = if corrupted { CEComplex::corrupted_so3() } else { CEComplex::so3() };
            e.lie_algebra("algebra", &cx);
            if !corrupted {
                let h = ce_cartan(&cx).map_err(core(name))?.h;
                e.form("H", &h);
            }
            e.check("ce_d_squared", &["algebra"]);
            e.check("cartan", &["algebra"]);
        }
        "graph-form" => {
            allow(params, &["base"])?;
            let omega = base_form(params.get("base").map_or("canonical-multiphase(3,2)", String::as_str))?;
            e.form("omega", &omega);
            e.frame("L", &graph_of_form(&omega).map_err(core(name))?);
            e.k_poisson("L");
            e.check("lagrangian", &["L"]);
            e.check_mode("check_dl", &["L"], "both");
            e.check("dl_round_trip", &["L"]);
            e.check("algebroid_from_l", &["L"]);
        }
        "graph-top-multivector" => {
            allow(params, &["n", "coeff"])?;
            let n = usize_param(params, "n", 3)?;
            let c = plain_chart(n)?;
            let coeff = match params.get("coeff") {
                Some(f) => c.scalar(f).map_err(core("coeff"))?,
                None => c.one(),
            };
            let pi = MultiVectorField::from_terms(&c, n, [((0..n).collect(), coeff)]).map_err(core(name))?;
            e.multivector("pi", &pi);
            e.frame("L", &graph_of_top_multivector(&pi).map_err(core(name))?);
            e.k_poisson("L");
            e.check_mode("check_dl", &["L"], "both");
            e.check("algebroid_from_l", &["L"]);
        }
        "vertical" => {
            allow(params, &["n", "k", "forms"])?;
            let (n, k) = (usize_param(params, "n", 3)?, usize_param(params, "k", 2)?);
            let l = vertical_forms(&plain_chart(n)?, k, params.get("forms"))?;
            e.frame("L", &l);
            e.k_poisson("L");
            e.check("lagrangian", &["L"]);
        }
        "line-bundle" => {
            allow(params, &["n", "xi"])?;
            let c = plain_chart(usize_param(params, "n", 4)?)?;
            let text = params.get("xi").map_or("d(x1)^d(x2) + d(x3)^d(x4)", String::as_str);
            let xi = msk_core::calculus::parse_form(&c, text).map_err(core("xi"))?;
            e.form("xi", &xi);
            e.frame("L", &vertical_subbundle(&c, xi.degree(), std::slice::from_ref(&xi)).map_err(core(name))?);
            e.k_poisson("L");
        }
        "scaled-family" => {
            allow(params, &["base", "f", "dim"])?;
            let omega = base_form(params.get("base").map_or("canonical-multiphase(3,2)", String::as_str))?;
            let dim = usize_param(params, "dim", 2)?;
            let names: Vec<String> = (1..=dim).map(|i| format!("t{i}")).collect();
            let nc = Chart::new("N", &names).map_err(core("N"))?;
            let f = nc.scalar(params.get("f").map_or("t1", String::as_str)).map_err(core("f"))?;
            e.form("omega", &omega);
            e.frame("L", &scaled_family(&f, &nc, &omega).map_err(core(name))?);
            e.check("is_isotropic", &["L"]);
            e.check("is_involutive", &["L"]);
        }
        "wedge-product" => {
            allow(params, &["left", "right"])?;
            let w1 = base_form(params.get("left").map_or("volume(2)", String::as_str))?;
            let w2 = disjoint(&w1, base_form(params.get("right").map_or("volume(2)", String::as_str))?)?;
            e.form("omega1", &w1);
            e.form("omega2", &w2);
            e.frame("L", &wedge_product_structure(&w1, &w2).map_err(core(name))?);
            e.k_poisson("L");
            e.check("leaf_forms_zero", &["L"]);
        }
        "direct-product" => {
            allow(params, &["left", "right"])?;
            let w1 = base_form(params.get("left").map_or("volume(2)", String::as_str))?;
            let w2 = disjoint(&w1, base_form(params.get("right").map_or("volume(2)", String::as_str))?)?;
            let (l1, l2) = (graph_of_form(&w1).map_err(core(name))?, graph_of_form(&w2).map_err(core(name))?);
            let l = direct_product(&l1, &l2).map_err(core(name))?;
            e.frame("L1", &l1);
            e.frame("L2", &l2);
            e.frame("L", &l);
            for f in ["L1", "L2", "L"] {
                e.k_poisson(f);
            }
        }
        "pair-groupoid" => {
            allow(params, &["base"])?;
            let omega0 = base_form(params.get("base").map_or("canonical-multiphase(3,2)", String::as_str))?;
            let (g, omega) = pair_groupoid(&omega0).map_err(core(name))?;
            e.form("omega0", &omega0);
            e.groupoid("G", &g);
            e.form("omega", &omega);
            e.check("groupoid_axioms", &["G"]);
            e.check("multiplicative", &["G", "omega"]);
            e.check("unit_inversion", &["G", "omega"]);
            e.check("right_translation", &["G", "omega"]);
            e.check("check_nondegenerate", &["omega"]);
            e.check("induced_im_nondeg", &["G", "omega"]);
            e.frame("L0", &graph_of_form(&omega0).map_err(core(name))?);
            e.frame("LG", &graph_of_form(&omega).map_err(core(name))?);
            e.check("check_morphism", &["G.t", "LG", "L0"]);
        }
        "vb-groupoid" => {
            allow(params, &["n", "k", "forms"])?;
            let (n, k) = (usize_param(params, "n", 3)?, usize_param(params, "k", 2)?);
            let l = vertical_forms(&plain_chart(n)?, k, params.get("forms"))?;
            let (g, omega) = vb_groupoid(&l).map_err(core(name))?;
            e.frame("L", &l);
            e.groupoid("G", &g);
            e.form("omega", &omega);
            e.check("groupoid_axioms", &["G"]);
            e.check("multiplicative", &["G", "omega"]);
            e.check("unit_inversion", &["G", "omega"]);
            e.check("right_translation", &["G", "omega"]);
            e.check("check_nondegenerate", &["omega"]);
            e.check("induced_im_nondeg", &["G", "omega"]);
            e.check("check_nondeg_l", &["L"]);
        }
        other => return Err(CliError::UnknownCatalogName(other.to_string())),
    }
    e.sc.name = Some(describe(name, params));
    Ok(e.sc)
}

fn describe(name: &str, params: &Params) -> String {
    let mut s = name.to_string();
    for (k, v) in params {
        s.push_str(&format!(" {k}={v}"));
    }
    s
}
