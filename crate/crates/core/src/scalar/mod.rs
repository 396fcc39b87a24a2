//! Exact scalar ring: polynomials over `Q` and their fraction field.

mod poly;
mod rational;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

pub use poly::{vars, Monomial, Polynomial, Rational, Vars};
pub use rational::RationalFunction;

use crate::error::{Error, Result};
use crate::grammar::{self, Expr};

/// Arithmetic operator selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(a: &RationalFunction, b: &RationalFunction, op: ArithOp) -> Result<RationalFunction> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// Assignment of exact rational values to coordinate names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SamplePoint(BTreeMap<String, Rational>);

impl SamplePoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, Rational)>) -> Self {
        SamplePoint(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn from_ints<S: Into<String>>(pairs: impl IntoIterator<Item = (S, i64)>) -> Self {
        Self::from_pairs(pairs.into_iter().map(|(k, v)| (k, Rational::from_integer(v.into()))))
    }

    pub fn set(&mut self, coord: impl Into<String>, value: Rational) {
        self.0.insert(coord.into(), value);
    }

    pub fn get(&self, coord: &str) -> Option<&Rational> {
        self.0.get(coord)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.0.iter()
    }

    /// Values ordered by `coords`; missing coordinates become `None`.
    pub fn values_for(&self, coords: &[String]) -> Vec<Option<Rational>> {
        coords.iter().map(|c| self.0.get(c).cloned()).collect()
    }
}

impl fmt::Display for SamplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (k, v)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            if v.is_integer() {
                write!(f, "{k}={}", v.numer())?;
            } else {
                write!(f, "{k}={}/{}", v.numer(), v.denom())?;
            }
        }
        write!(f, "}}")
    }
}

fn scalar_from_expr(e: &Expr, coords: &Vars) -> Result<RationalFunction> {
    Ok(match e {
        Expr::Int(n) => RationalFunction::constant(coords.clone(), BigRational::from_integer(n.clone())),
        Expr::Var { name, .. } => {
            let idx = coords
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| Error::UnknownCoordinate(name.clone()))?;
            RationalFunction::var(coords.clone(), idx)
        }
        Expr::Basis { pos, .. } => {
            return Err(Error::Syntax { pos: *pos, message: "basis elements are not scalars".into() })
        }
        Expr::Wedge(_, _, pos) => {
            return Err(Error::Syntax { pos: *pos, message: "wedge is not a scalar operation".into() })
        }
        Expr::Neg(a) => -scalar_from_expr(a, coords)?,
        Expr::Add(a, b) => scalar_from_expr(a, coords)? + scalar_from_expr(b, coords)?,
        Expr::Sub(a, b) => scalar_from_expr(a, coords)? - scalar_from_expr(b, coords)?,
        Expr::Mul(a, b, _) => scalar_from_expr(a, coords)? * scalar_from_expr(b, coords)?,
        Expr::Div(a, b, _) => scalar_from_expr(a, coords)?.checked_div(&scalar_from_expr(b, coords)?)?,
        Expr::Pow(a, k) => scalar_from_expr(a, coords)?.pow(*k),
    })
}

pub(crate) fn scalar_from_ast(e: &Expr, coords: &Vars) -> Result<RationalFunction> {
    scalar_from_expr(e, coords)
}

/// Parses a scalar over the given coordinate list.
pub fn parse_scalar(text: &str, coords: &Vars) -> Result<RationalFunction> {
    scalar_from_expr(&grammar::parse_expr(text)?, coords)
}

/// Parses a scalar whose coordinates are the identifiers it mentions, in
/// order of first appearance.
pub fn parse_scalar_free(text: &str) -> Result<RationalFunction> {
    let e = grammar::parse_expr(text)?;
    let mut ids = Vec::new();
    grammar::free_identifiers(&e, &mut ids);
    scalar_from_expr(&e, &vars(&ids))
}

pub fn format_scalar(p: &RationalFunction) -> String {
    p.to_string()
}

/// Parses `p` or `p/q` as an exact rational constant.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let r = parse_scalar(text, &vars::<&str>(&[]))?;
    r.as_constant().ok_or(Error::Syntax { pos: 0, message: "expected a rational constant".into() })
}

pub fn is_identically_zero(p: &RationalFunction) -> bool {
    p.is_zero()
}
