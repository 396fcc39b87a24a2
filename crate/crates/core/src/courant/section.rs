use std::fmt;

use crate::calculus::{
    exterior_derivative, interior_product, lie_bracket_vf, lie_derivative, parse_form_of_degree,
    parse_multivector_of_degree, Chart, DiffForm, MultiVectorField,
};
use crate::error::{Error, Result};
use crate::scalar::RationalFunction;

/// Section `(X, α)` of `TM ⊕ ∧ᵏT*M`.
#[derive(Clone, Debug)]
pub struct CourantSection {
    k: usize,
    vector: MultiVectorField,
    form: DiffForm,
}

impl CourantSection {
    pub fn new(vector: MultiVectorField, form: DiffForm) -> Result<Self> {
        vector.chart().check_same(form.chart())?;
        if vector.degree() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: vector.degree() });
        }
        if form.degree() == 0 {
            return Err(Error::BadDegree("form part must have degree k >= 1".into()));
        }
        Ok(CourantSection { k: form.degree(), vector, form })
    }

    pub fn zero(chart: &Chart, k: usize) -> Self {
        CourantSection { k, vector: MultiVectorField::zero(chart, 1), form: DiffForm::zero(chart, k) }
    }

    pub fn from_vector(vector: MultiVectorField, k: usize) -> Result<Self> {
        let form = DiffForm::zero(vector.chart(), k);
        CourantSection::new(vector, form)
    }

    pub fn from_form(form: DiffForm) -> Result<Self> {
        let vector = MultiVectorField::zero(form.chart(), 1);
        CourantSection::new(vector, form)
    }

    /// Parses the two components; `"0"` is accepted for either part.
    pub fn parse(chart: &Chart, k: usize, vector: &str, form: &str) -> Result<Self> {
        CourantSection::new(
            parse_multivector_of_degree(chart, vector, 1)?,
            parse_form_of_degree(chart, form, k)?,
        )
    }

    pub fn chart(&self) -> &Chart {
        self.vector.chart()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vector(&self) -> &MultiVectorField {
        &self.vector
    }

    pub fn form(&self) -> &DiffForm {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero() && self.form.is_zero()
    }

    fn check_compatible(&self, other: &CourantSection) -> Result<()> {
        self.chart().check_same(other.chart())?;
        if self.k != other.k {
            return Err(Error::DegreeMismatch { expected: self.k, found: other.k });
        }
        Ok(())
    }

    pub fn add(&self, other: &CourantSection) -> Result<CourantSection> {
        self.check_compatible(other)?;
        Ok(CourantSection { k: self.k, vector: self.vector.add(&other.vector)?, form: self.form.add(&other.form)? })
    }

    pub fn sub(&self, other: &CourantSection) -> Result<CourantSection> {
        self.check_compatible(other)?;
        Ok(CourantSection { k: self.k, vector: self.vector.sub(&other.vector)?, form: self.form.sub(&other.form)? })
    }

    pub fn scale(&self, f: &RationalFunction) -> CourantSection {
        CourantSection { k: self.k, vector: self.vector.scale(f), form: self.form.scale(f) }
    }

    /// Coordinates in the basis `(∂_1, …, ∂_n, dx_I …)`, vector part first.
    pub fn components(&self) -> Vec<RationalFunction> {
        let mut v = self.vector.components();
        v.extend(self.form.components());
        v
    }

    pub fn from_components(chart: &Chart, k: usize, comps: &[RationalFunction]) -> CourantSection {
        let n = chart.dim();
        CourantSection {
            k,
            vector: MultiVectorField::from_components(chart, 1, &comps[..n]),
            form: DiffForm::from_components(chart, k, &comps[n..]),
        }
    }

    pub fn equals(&self, other: &CourantSection) -> bool {
        self.k == other.k && self.vector == other.vector && self.form == other.form
    }
}

impl PartialEq for CourantSection {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for CourantSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.vector, self.form)
    }
}

/// Symmetric pairing `⟨(X,α),(Y,β)⟩ = i_X β + i_Y α`, a (k−1)-form.
pub fn pairing(s1: &CourantSection, s2: &CourantSection) -> Result<DiffForm> {
    s1.check_compatible(s2)?;
    interior_product(&s1.vector, &s2.form)?.add(&interior_product(&s2.vector, &s1.form)?)
}

/// Courant–Dorfman bracket `([X,Y], L_X β − i_Y dα)`.
pub fn dorfman_bracket(s1: &CourantSection, s2: &CourantSection) -> Result<CourantSection> {
    s1.check_compatible(s2)?;
    let vector = lie_bracket_vf(&s1.vector, &s2.vector)?;
    let form = lie_derivative(&s1.vector, &s2.form)?.sub(&interior_product(&s2.vector, &exterior_derivative(&s1.form))?)?;
    Ok(CourantSection { k: s1.k, vector, form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::parse_form;

    fn c2() -> Chart {
        Chart::new("M", &["x", "y"]).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let c = c2();
        let s1 = CourantSection::parse(&c, 2, "e(x)", "d(x)^d(y)").unwrap();
        let s2 = CourantSection::parse(&c, 2, "e(y)", "0").unwrap();
        assert_eq!(pairing(&s1, &s2).unwrap(), parse_form(&c, "-d(x)").unwrap());
        assert_eq!(pairing(&s1, &s2).unwrap(), pairing(&s2, &s1).unwrap());
        let v1 = CourantSection::parse(&c, 1, "e(x)", "0").unwrap();
        let v2 = CourantSection::parse(&c, 1, "x*e(y)", "0").unwrap();
        assert!(pairing(&v1, &v2).unwrap().is_zero());
        let s = CourantSection::parse(&c, 1, "x*e(x)", "y*d(x)").unwrap();
        assert_eq!(pairing(&s, &s).unwrap(), parse_form(&c, "2*x*y").unwrap());
    }

    #[test]
    fn dorfman_examples() {
        let c = c2();
        let a = CourantSection::parse(&c, 1, "e(x)", "0").unwrap();
        let b = CourantSection::parse(&c, 1, "0", "x*d(y)").unwrap();
        let r = dorfman_bracket(&a, &b).unwrap();
        assert_eq!(r, CourantSection::parse(&c, 1, "0", "d(y)").unwrap());
        let s = CourantSection::parse(&c, 1, "e(x)", "d(x)").unwrap();
        assert!(dorfman_bracket(&s, &s).unwrap().is_zero());
        let p = CourantSection::parse(&c, 1, "0", "x*y*d(x)").unwrap();
        let q = CourantSection::parse(&c, 1, "0", "y*d(y)").unwrap();
        assert!(dorfman_bracket(&p, &q).unwrap().is_zero());
    }
}
