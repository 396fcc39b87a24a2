use std::collections::BTreeMap;
use std::fmt;

use super::graded::Alternating;
use super::Chart;
use crate::error::Result;
use crate::scalar::{Rational, RationalFunction, SamplePoint};

macro_rules! graded_type {
    ($(#[$doc:meta])* $name:ident, $basis:literal, $joiner:literal) => {
        $(#[$doc])*
        #[derive(Clone, Debug)]
        pub struct $name(pub(crate) Alternating);

        impl $name {
            pub fn zero(chart: &Chart, degree: usize) -> Self {
                $name(Alternating::zero(chart, degree))
            }

            /// Builds from `(indices, coefficient)` pairs; indices may be
            /// unsorted (the sign is applied) and repeated indices vanish.
            pub fn from_terms<I>(chart: &Chart, degree: usize, terms: I) -> Result<Self>
            where
                I: IntoIterator<Item = (Vec<usize>, RationalFunction)>,
            {
                let mut a = Alternating::zero(chart, degree);
                for (idx, c) in terms {
                    a.checked_term(&idx, &c)?;
                }
                Ok($name(a))
            }

            /// The basis element with the given indices.
            pub fn basis(chart: &Chart, idx: &[usize]) -> Result<Self> {
                Self::from_terms(chart, idx.len(), [(idx.to_vec(), chart.one())])
            }

            pub fn from_components(chart: &Chart, degree: usize, comps: &[RationalFunction]) -> Self {
                $name(Alternating::from_components(chart, degree, comps))
            }

            pub fn chart(&self) -> &Chart {
                &self.0.chart
            }

            pub fn degree(&self) -> usize {
                self.0.degree
            }

            /// Coefficient of the basis element with these indices, with the
            /// permutation sign applied.
            pub fn coeff(&self, idx: &[usize]) -> RationalFunction {
                self.0.coeff(idx)
            }

            pub fn terms(&self) -> &BTreeMap<Vec<usize>, RationalFunction> {
                &self.0.coeffs
            }

            pub fn is_zero(&self) -> bool {
                self.0.coeffs.is_empty()
            }

            pub fn add(&self, other: &$name) -> Result<$name> {
                Ok($name(self.0.combine(&other.0, 1)?))
            }

            pub fn sub(&self, other: &$name) -> Result<$name> {
                Ok($name(self.0.combine(&other.0, -1)?))
            }

            pub fn neg(&self) -> $name {
                $name(self.0.scale(&self.0.chart.integer(-1)))
            }

            pub fn scale(&self, f: &RationalFunction) -> $name {
                $name(self.0.scale(f))
            }

            pub fn scale_int(&self, k: i64) -> $name {
                $name(self.0.scale(&self.0.chart.integer(k)))
            }

            pub fn map_coeffs(&self, f: impl FnMut(&RationalFunction) -> RationalFunction) -> $name {
                $name(self.0.map_coeffs(f))
            }

            /// Coefficients over all increasing tuples in lexicographic order.
            pub fn components(&self) -> Vec<RationalFunction> {
                self.0.components()
            }

            pub fn evaluate(&self, pt: &SamplePoint) -> Result<Vec<Rational>> {
                self.0.evaluate(pt)
            }

            pub fn equals(&self, other: &$name) -> bool {
                self.0.equals(&other.0)
            }
        }

        impl PartialEq for $name {
            fn eq(&self, other: &Self) -> bool {
                self.equals(other)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write(f, $basis, $joiner)
            }
        }
    };
}

graded_type!(
    /// Differential form of fixed degree on a chart. Degree 0 is a scalar.
    DiffForm,
    "d",
    "^"
);

graded_type!(
    /// Multivector field of fixed degree on a chart; degree 1 is a vector
    /// field.
    MultiVectorField,
    "e",
    "^"
);

impl DiffForm {
    pub fn scalar(chart: &Chart, f: &RationalFunction) -> Result<Self> {
        Self::from_terms(chart, 0, [(vec![], f.clone())])
    }

    /// `d(x_i)`.
    pub fn dx(chart: &Chart, i: usize) -> Self {
        Self::basis(chart, &[i]).expect("index in range")
    }

    /// Value of a 0-form.
    pub fn as_scalar(&self) -> Option<RationalFunction> {
        (self.degree() == 0).then(|| self.coeff(&[]))
    }
}

impl MultiVectorField {
    /// `e(x_i)`, the coordinate vector field.
    pub fn partial(chart: &Chart, i: usize) -> Self {
        Self::basis(chart, &[i]).expect("index in range")
    }

    /// Vector field with the given component functions.
    pub fn vector(chart: &Chart, comps: &[RationalFunction]) -> Result<Self> {
        Self::from_terms(chart, 1, comps.iter().enumerate().map(|(i, c)| (vec![i], c.clone())))
    }
}
