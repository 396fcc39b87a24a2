//! Text grammar for forms and multivector fields, e.g.
//! `p12*d(q1)^d(q2) + d(q3)` or `x*e(y)^e(z)`.

use std::collections::BTreeMap;

use super::graded::Alternating;
use super::{Chart, DiffForm, MultiVectorField};
use crate::error::{Error, Result};
use crate::grammar::{parse_expr, BasisKind, Expr};
use crate::scalar::{scalar_from_ast, RationalFunction};

/// Homogeneous pieces by degree; the empty map is zero.
struct Value {
    parts: BTreeMap<usize, Alternating>,
}

impl Value {
    fn scalar(chart: &Chart, f: RationalFunction) -> Value {
        let mut a = Alternating::zero(chart, 0);
        a.accumulate(&[], f);
        Value::from_alt(a)
    }

    fn from_alt(a: Alternating) -> Value {
        let mut parts = BTreeMap::new();
        if !a.coeffs.is_empty() {
            parts.insert(a.degree, a);
        }
        Value { parts }
    }

    fn as_scalar(&self, chart: &Chart) -> Option<RationalFunction> {
        match self.parts.len() {
            0 => Some(chart.zero()),
            1 => self.parts.get(&0).map(|a| a.coeff(&[])),
            _ => None,
        }
    }

    fn add(mut self, other: Value, sign: i32) -> Result<Value> {
        for (deg, a) in other.parts {
            let merged = match self.parts.remove(&deg) {
                Some(mine) => mine.combine(&a, sign)?,
                None if sign < 0 => a.scale(&a.chart.integer(-1)),
                None => a,
            };
            if !merged.coeffs.is_empty() {
                self.parts.insert(deg, merged);
            }
        }
        Ok(self)
    }

    fn wedge(&self, other: &Value, chart: &Chart) -> Value {
        let mut out = Value { parts: BTreeMap::new() };
        for a in self.parts.values() {
            for b in other.parts.values() {
                let mut w = Alternating::zero(chart, a.degree + b.degree);
                for (i, ca) in &a.coeffs {
                    for (j, cb) in &b.coeffs {
                        let mut idx = i.clone();
                        idx.extend_from_slice(j);
                        w.accumulate(&idx, ca * cb);
                    }
                }
                let v = Value::from_alt(w);
                out = out.add(v, 1).expect("same chart");
            }
        }
        out
    }
}

struct Ctx<'a> {
    chart: &'a Chart,
    kind: BasisKind,
}

impl Ctx<'_> {
    fn eval(&self, e: &Expr) -> Result<Value> {
        let chart = self.chart;
        Ok(match e {
            Expr::Int(_) | Expr::Var { .. } => Value::scalar(chart, scalar_from_ast(e, chart.coords())?),
            Expr::Basis { kind, coord, pos } => {
                if *kind != self.kind {
                    let want = match self.kind {
                        BasisKind::Covector => "covector d(..)",
                        BasisKind::Vector => "vector e(..)",
                    };
                    return Err(Error::Syntax { pos: *pos, message: format!("expected {want} basis") });
                }
                let i = chart.index_of(coord)?;
                let mut a = Alternating::zero(chart, 1);
                a.accumulate(&[i], chart.one());
                Value::from_alt(a)
            }
            Expr::Neg(a) => Value { parts: BTreeMap::new() }.add(self.eval(a)?, -1)?,
            Expr::Add(a, b) => self.eval(a)?.add(self.eval(b)?, 1)?,
            Expr::Sub(a, b) => self.eval(a)?.add(self.eval(b)?, -1)?,
            Expr::Wedge(a, b, _) => self.eval(a)?.wedge(&self.eval(b)?, chart),
            Expr::Mul(a, b, pos) => {
                let (va, vb) = (self.eval(a)?, self.eval(b)?);
                if va.as_scalar(chart).is_none() && vb.as_scalar(chart).is_none() {
                    return Err(Error::Syntax { pos: *pos, message: "use ^ to multiply basis elements".into() });
                }
                va.wedge(&vb, chart)
            }
            Expr::Div(a, b, pos) => {
                let va = self.eval(a)?;
                let vb = self.eval(b)?;
                let den = vb.as_scalar(chart).ok_or_else(|| Error::Syntax {
                    pos: *pos,
                    message: "division by a non-scalar".into(),
                })?;
                let inv = den.recip()?;
                va.wedge(&Value::scalar(chart, inv), chart)
            }
            Expr::Pow(a, k) => {
                let va = self.eval(a)?;
                match va.as_scalar(chart) {
                    Some(s) => Value::scalar(chart, s.pow(*k)),
                    None => {
                        return Err(Error::Syntax { pos: 0, message: "power of a basis element".into() })
                    }
                }
            }
        })
    }

    fn parse(&self, text: &str, degree: Option<usize>) -> Result<Alternating> {
        let v = self.eval(&parse_expr(text)?)?;
        let mut parts = v.parts.into_iter();
        match (parts.next(), parts.next()) {
            (None, _) => Ok(Alternating::zero(self.chart, degree.unwrap_or(0))),
            (Some((_, a)), None) => match degree {
                Some(d) if d != a.degree => Err(Error::DegreeMismatch { expected: d, found: a.degree }),
                _ => Ok(a),
            },
            (Some((d1, _)), Some((d2, _))) => Err(Error::DegreeMismatch { expected: d1, found: d2 }),
        }
    }
}

/// Parses a homogeneous form; the literal `0` parses as the zero function.
pub fn parse_form(chart: &Chart, text: &str) -> Result<DiffForm> {
    Ok(DiffForm(Ctx { chart, kind: BasisKind::Covector }.parse(text, None)?))
}

/// Parses a form that must have the given degree (so `0` is the zero form
/// of that degree).
pub fn parse_form_of_degree(chart: &Chart, text: &str, degree: usize) -> Result<DiffForm> {
    Ok(DiffForm(Ctx { chart, kind: BasisKind::Covector }.parse(text, Some(degree))?))
}

pub fn parse_multivector(chart: &Chart, text: &str) -> Result<MultiVectorField> {
    Ok(MultiVectorField(Ctx { chart, kind: BasisKind::Vector }.parse(text, None)?))
}

pub fn parse_multivector_of_degree(chart: &Chart, text: &str, degree: usize) -> Result<MultiVectorField> {
    Ok(MultiVectorField(Ctx { chart, kind: BasisKind::Vector }.parse(text, Some(degree))?))
}
