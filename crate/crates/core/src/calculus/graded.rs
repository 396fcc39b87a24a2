use std::collections::BTreeMap;
use std::fmt;

use super::index::{increasing_tuples, sort_with_sign};
use super::Chart;
use crate::error::{Error, Result};
use num_traits::Signed;

use crate::scalar::{Rational, RationalFunction, SamplePoint};

/// Alternating coefficient array shared by forms and multivector fields:
/// one coefficient per strictly increasing index tuple, zeros not stored.
#[derive(Clone, Debug)]
pub(crate) struct Alternating {
    pub chart: Chart,
    pub degree: usize,
    pub coeffs: BTreeMap<Vec<usize>, RationalFunction>,
}

impl Alternating {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        Alternating { chart: chart.clone(), degree, coeffs: BTreeMap::new() }
    }

    /// Adds `c` times the basis element with (possibly unsorted) indices.
    pub fn accumulate(&mut self, idx: &[usize], c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        let Some((sorted, sign)) = sort_with_sign(idx) else {
            return;
        };
        let c = if sign < 0 { -c } else { c };
        match self.coeffs.get_mut(&sorted) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.coeffs.remove(&sorted);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.coeffs.insert(sorted, c);
            }
        }
    }

    pub fn checked_term(&mut self, idx: &[usize], c: &RationalFunction) -> Result<()> {
        if idx.len() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: idx.len() });
        }
        let dim = self.chart.dim();
        if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index: bad, dim });
        }
        let c = self.chart.conform(c)?;
        self.accumulate(idx, c);
        Ok(())
    }

    pub fn coeff(&self, idx: &[usize]) -> RationalFunction {
        match sort_with_sign(idx) {
            None => self.chart.zero(),
            Some((sorted, sign)) => match self.coeffs.get(&sorted) {
                None => self.chart.zero(),
                Some(c) if sign < 0 => -c,
                Some(c) => c.clone(),
            },
        }
    }

    pub fn combine(&self, other: &Alternating, sign: i32) -> Result<Alternating> {
        self.chart.check_same(&other.chart)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.accumulate(k, if sign < 0 { -c } else { c.clone() });
        }
        Ok(out)
    }

    pub fn scale(&self, f: &RationalFunction) -> Alternating {
        let mut out = Alternating::zero(&self.chart, self.degree);
        if f.is_zero() {
            return out;
        }
        for (k, c) in &self.coeffs {
            let v = c * f;
            if !v.is_zero() {
                out.coeffs.insert(k.clone(), v);
            }
        }
        out
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&RationalFunction) -> RationalFunction) -> Alternating {
        let mut out = Alternating::zero(&self.chart, self.degree);
        for (k, c) in &self.coeffs {
            out.accumulate(k, f(c));
        }
        out
    }

    pub fn components(&self) -> Vec<RationalFunction> {
        increasing_tuples(self.chart.dim(), self.degree)
            .into_iter()
            .map(|t| self.coeffs.get(&t).cloned().unwrap_or_else(|| self.chart.zero()))
            .collect()
    }

    pub fn from_components(chart: &Chart, degree: usize, comps: &[RationalFunction]) -> Alternating {
        let mut out = Alternating::zero(chart, degree);
        for (t, c) in increasing_tuples(chart.dim(), degree).into_iter().zip(comps) {
            out.accumulate(&t, c.clone());
        }
        out
    }

    pub fn evaluate(&self, pt: &SamplePoint) -> Result<Vec<Rational>> {
        self.components().iter().map(|c| c.evaluate(pt)).collect()
    }

    pub fn equals(&self, other: &Alternating) -> bool {
        if !self.chart.same_as(&other.chart) || self.degree != other.degree {
            return false;
        }
        match self.combine(other, -1) {
            Ok(d) => d.coeffs.is_empty(),
            Err(_) => false,
        }
    }

    pub fn write(&self, f: &mut fmt::Formatter<'_>, basis: &str, joiner: &str) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.coeffs.iter().enumerate() {
            let blade: Vec<String> =
                idx.iter().map(|&i| format!("{basis}({})", self.chart.coords()[i])).collect();
            let blade = blade.join(joiner);
            let (neg, body) = coefficient_text(c);
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (body.as_str(), blade.is_empty()) {
                (b, true) => write!(f, "{b}")?,
                ("1", false) => write!(f, "{blade}")?,
                (b, false) => write!(f, "{b}*{blade}")?,
            }
        }
        Ok(())
    }
}

/// Splits a coefficient into sign and printable factor text.
fn coefficient_text(c: &RationalFunction) -> (bool, String) {
    if c.is_polynomial() && c.numer().num_terms() == 1 {
        let neg = c.numer().leading_coefficient().is_some_and(|x| x.is_negative());
        let body = if neg { (-c).to_string() } else { c.to_string() };
        return (neg, body);
    }
    (false, format!("({c})"))
}
