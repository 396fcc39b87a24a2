//! Resolution of scenario declarations into engine objects.

use std::collections::BTreeMap;

use msk_core::algebroid::{IMFormMap, LieAlgebroid};
use msk_core::calculus::{parse_form, parse_form_of_degree, parse_multivector, parse_multivector_of_degree};
use msk_core::calculus::{Chart, DiffForm, MultiVectorField, SmoothMap};
use msk_core::catalog::CEComplex;
use msk_core::courant::{CourantSection, SubbundleFrame};
use msk_core::groupoid::GroupoidChart;
use msk_core::linalg::SymMatrix;
use msk_core::scalar::{parse_rational, Rational, RationalFunction};

use crate::catalog;
use crate::error::CliError;
use crate::scenario::{ChartDecl, ObjectDecl, Scenario};

#[derive(Clone, Debug)]
pub enum Object {
    Scalar(RationalFunction),
    Form(DiffForm),
    Multivector(MultiVectorField),
    Map(SmoothMap),
    Frame(SubbundleFrame),
    Groupoid(Box<GroupoidChart>),
    LieAlgebra(CEComplex),
    Algebroid(LieAlgebroid),
    ImForm(IMFormMap),
}

/// Object kinds, used to validate check arguments before anything runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Scalar,
    Form,
    Multivector,
    Map,
    Frame,
    Groupoid,
    LieAlgebra,
    Algebroid,
    ImForm,
}

impl Kind {
    pub fn label(self) -> &'static str {
        match self {
            Kind::Scalar => "scalar",
            Kind::Form => "form",
            Kind::Multivector => "multivector",
            Kind::Map => "map",
            Kind::Frame => "frame",
            Kind::Groupoid => "groupoid",
            Kind::LieAlgebra => "lie_algebra",
            Kind::Algebroid => "algebroid",
            Kind::ImForm => "im_form",
        }
    }
}

impl Object {
    pub fn kind(&self) -> Kind {
        match self {
            Object::Scalar(_) => Kind::Scalar,
            Object::Form(_) => Kind::Form,
            Object::Multivector(_) => Kind::Multivector,
            Object::Map(_) => Kind::Map,
            Object::Frame(_) => Kind::Frame,
            Object::Groupoid(_) => Kind::Groupoid,
            Object::LieAlgebra(_) => Kind::LieAlgebra,
            Object::Algebroid(_) => Kind::Algebroid,
            Object::ImForm(_) => Kind::ImForm,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Env {
    pub charts: BTreeMap<String, Chart>,
    pub objects: BTreeMap<String, Object>,
}

macro_rules! getter {
    ($fn:ident, $variant:ident, $ty:ty) => {
        pub fn $fn(&self, name: &str, context: &str) -> Result<&$ty, CliError> {
            match self.get(name, context)? {
                Object::$variant(x) => Ok(x),
                other => Err(CliError::WrongKind {
                    context: context.to_string(),
                    name: name.to_string(),
                    expected: Kind::$variant.label(),
                    found: other.kind().label(),
                }),
            }
        }
    };
}

fn parse_rows<T>(
    rows: &[Vec<String>],
    mut f: impl FnMut(&str) -> msk_core::Result<T>,
    context: &str,
) -> Result<Vec<Vec<T>>, CliError> {
    rows.iter()
        .map(|r| r.iter().map(|s| f(s)).collect::<msk_core::Result<Vec<T>>>())
        .collect::<msk_core::Result<Vec<_>>>()
        .map_err(CliError::math(context))
}

impl Env {
    pub fn build(sc: &Scenario) -> Result<Env, CliError> {
        let mut env = Env::default();
        for c in &sc.charts {
            env.add_chart(c)?;
        }
        for o in &sc.objects {
            env.add_object(o)?;
        }
        Ok(env)
    }

    /// Redeclaring a chart with the same coordinates is allowed, so catalog
    /// expansions may share charts with the scenario.
    pub fn add_chart(&mut self, decl: &ChartDecl) -> Result<(), CliError> {
        let chart = Chart::new(decl.name.clone(), &decl.coords)
            .map_err(CliError::math(format!("chart `{}`", decl.name)))?;
        match self.charts.get(&decl.name) {
            Some(existing) if existing.coords() == chart.coords() => Ok(()),
            Some(_) => Err(CliError::Duplicate(decl.name.clone())),
            None => {
                self.charts.insert(decl.name.clone(), chart);
                Ok(())
            }
        }
    }

    pub fn chart(&self, name: &str, context: &str) -> Result<&Chart, CliError> {
        self.charts
            .get(name)
            .ok_or_else(|| CliError::UnknownName { name: name.to_string(), context: context.to_string() })
    }

    pub fn get(&self, name: &str, context: &str) -> Result<&Object, CliError> {
        self.objects
            .get(name)
            .ok_or_else(|| CliError::UnknownName { name: name.to_string(), context: context.to_string() })
    }

    getter!(form, Form, DiffForm);
    getter!(multivector, Multivector, MultiVectorField);
    getter!(map, Map, SmoothMap);
    getter!(frame, Frame, SubbundleFrame);
    getter!(groupoid, Groupoid, GroupoidChart);
    getter!(lie_algebra, LieAlgebra, CEComplex);
    getter!(algebroid, Algebroid, LieAlgebroid);
    getter!(im_form, ImForm, IMFormMap);

    fn insert(&mut self, name: &str, obj: Object) -> Result<(), CliError> {
        if self.objects.contains_key(name) {
            return Err(CliError::Duplicate(name.to_string()));
        }
        self.objects.insert(name.to_string(), obj);
        Ok(())
    }

    pub fn add_object(&mut self, decl: &ObjectDecl) -> Result<(), CliError> {
        let ctx = format!("object `{}`", decl.name());
        let obj = match decl {
            ObjectDecl::Scalar { chart, value, .. } => {
                let c = self.chart(chart, &ctx)?;
                Object::Scalar(c.scalar(value).map_err(CliError::math(&ctx))?)
            }
            ObjectDecl::Form { chart, value, degree, .. } => {
                let c = self.chart(chart, &ctx)?;
                let f = match degree {
                    Some(d) => parse_form_of_degree(c, value, *d),
                    None => parse_form(c, value),
                };
                Object::Form(f.map_err(CliError::math(&ctx))?)
            }
            ObjectDecl::Multivector { chart, value, degree, .. } => {
                let c = self.chart(chart, &ctx)?;
                let x = match degree {
                    Some(d) => parse_multivector_of_degree(c, value, *d),
                    None => parse_multivector(c, value),
                };
                Object::Multivector(x.map_err(CliError::math(&ctx))?)
            }
            ObjectDecl::Map { source, target, components, .. } => {
                let (s, t) = (self.chart(source, &ctx)?, self.chart(target, &ctx)?);
                Object::Map(SmoothMap::parse(s, t, components).map_err(CliError::math(&ctx))?)
            }
            ObjectDecl::Frame { chart, k, sections, .. } => {
                let c = self.chart(chart, &ctx)?;
                let secs = sections
                    .iter()
                    .map(|s| CourantSection::parse(c, *k, &s.vector, &s.form))
                    .collect::<msk_core::Result<Vec<_>>>()
                    .map_err(CliError::math(&ctx))?;
                Object::Frame(SubbundleFrame::new(c, *k, secs).map_err(CliError::math(&ctx))?)
            }
            ObjectDecl::Groupoid {
                arrows,
                base,
                s,
                t,
                eps,
                inv,
                pr1,
                pr2,
                mult,
                inverse_pair,
                unit_complement,
                right_ext,
                ..
            } => {
                let (g, m) = (self.chart(arrows, &ctx)?.clone(), self.chart(base, &ctx)?.clone());
                let map = |n: &str| self.map(n, &ctx).cloned();
                let mut gc = GroupoidChart::new(
                    &g,
                    &m,
                    map(s)?,
                    map(t)?,
                    map(eps)?,
                    map(inv)?,
                    map(pr1)?,
                    map(pr2)?,
                    map(mult)?,
                )
                .map_err(CliError::math(&ctx))?;
                if let Some(ip) = inverse_pair {
                    gc = gc.with_inverse_pair(map(ip)?).map_err(CliError::math(&ctx))?;
                }
                if let Some(rows) = unit_complement {
                    let v = parse_rows(rows, |x| m.scalar(x), &ctx)?;
                    gc = gc.with_unit_complement(v).map_err(CliError::math(&ctx))?;
                }
                if let Some(fields) = right_ext {
                    let v = fields
                        .iter()
                        .map(|x| parse_multivector_of_degree(&g, x, 1))
                        .collect::<msk_core::Result<Vec<_>>>()
                        .map_err(CliError::math(&ctx))?;
                    gc = gc.with_right_ext(v).map_err(CliError::math(&ctx))?;
                }
                Object::Groupoid(Box::new(gc))
            }
            ObjectDecl::LieAlgebra { structure, pairing, .. } => {
                let c = structure
                    .iter()
                    .map(|plane| parse_rows(plane, parse_rational, &ctx))
                    .collect::<Result<Vec<Vec<Vec<Rational>>>, _>>()?;
                let p = parse_rows(pairing, parse_rational, &ctx)?;
                Object::LieAlgebra(CEComplex::new(c, p).map_err(CliError::math(&ctx))?)
            }
            ObjectDecl::Algebroid { chart, anchor, structure, .. } => {
                let c = self.chart(chart, &ctx)?;
                let rows = parse_rows(anchor, |x| c.scalar(x), &ctx)?;
                let st = structure
                    .iter()
                    .map(|plane| parse_rows(plane, |x| c.scalar(x), &ctx))
                    .collect::<Result<Vec<_>, _>>()?;
                let a = LieAlgebroid::new(c, SymMatrix::from_rows(c.coords().clone(), rows), st)
                    .map_err(CliError::math(&ctx))?;
                Object::Algebroid(a)
            }
            ObjectDecl::ImForm { algebroid, k, forms, .. } => {
                let a = self.algebroid(algebroid, &ctx)?.clone();
                let mu = forms
                    .iter()
                    .map(|f| parse_form_of_degree(a.chart(), f, *k))
                    .collect::<msk_core::Result<Vec<_>>>()
                    .map_err(CliError::math(&ctx))?;
                Object::ImForm(IMFormMap::new(a, *k, mu).map_err(CliError::math(&ctx))?)
            }
            ObjectDecl::Catalog { name, catalog: entry, params } => {
                let fragment = catalog::build(entry, params)?;
                for c in &fragment.charts {
                    self.add_chart(c)?;
                }
                let prefix = format!("{name}.");
                for o in &fragment.objects {
                    self.add_object(&o.prefixed(&prefix))?;
                }
                return Ok(());
            }
        };
        self.insert(decl.name(), obj)
    }
}
