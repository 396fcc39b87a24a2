use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, vars, Rational, RationalFunction, Vars};

/// A coordinate chart: the local model every scalar, form and vector field
/// lives on.
#[derive(Clone, Debug)]
pub struct Chart {
    name: String,
    coords: Vars,
}

impl Chart {
    pub fn new<S: AsRef<str>>(name: impl Into<String>, coords: &[S]) -> Result<Self> {
        let coords = vars(coords);
        for (i, c) in coords.iter().enumerate() {
            if coords[..i].contains(c) {
                return Err(Error::DuplicateCoordinate(c.clone()));
            }
        }
        Ok(Chart { name: name.into(), coords })
    }

    /// Product chart with the coordinates of `a` followed by those of `b`.
    pub fn product(name: impl Into<String>, a: &Chart, b: &Chart) -> Result<Self> {
        let all: Vec<&str> = a.coords.iter().chain(b.coords.iter()).map(String::as_str).collect();
        Chart::new(name, &all)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coords(&self) -> &Vars {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn index_of(&self, coord: &str) -> Result<usize> {
        self.coords
            .iter()
            .position(|c| c == coord)
            .ok_or_else(|| Error::UnknownCoordinate(coord.to_string()))
    }

    pub fn same_as(&self, other: &Chart) -> bool {
        Arc::ptr_eq(&self.coords, &other.coords) || self.coords[..] == other.coords[..]
    }

    pub(crate) fn check_same(&self, other: &Chart) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::ChartMismatch(format!("`{}` vs `{}`", self.name, other.name)))
        }
    }

    pub fn zero(&self) -> RationalFunction {
        RationalFunction::zero(self.coords.clone())
    }

    pub fn one(&self) -> RationalFunction {
        RationalFunction::one(self.coords.clone())
    }

    pub fn constant(&self, c: Rational) -> RationalFunction {
        RationalFunction::constant(self.coords.clone(), c)
    }

    pub fn integer(&self, n: i64) -> RationalFunction {
        RationalFunction::integer(self.coords.clone(), n)
    }

    pub fn coordinate(&self, i: usize) -> RationalFunction {
        RationalFunction::var(self.coords.clone(), i)
    }

    pub fn scalar(&self, text: &str) -> Result<RationalFunction> {
        parse_scalar(text, &self.coords)
    }

    /// Re-expresses `f` over this chart's coordinate list.
    pub fn conform(&self, f: &RationalFunction) -> Result<RationalFunction> {
        if f.vars()[..] == self.coords[..] {
            return Ok(f.clone());
        }
        f.embed(&self.coords)
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name, self.coords.join(", "))
    }
}
