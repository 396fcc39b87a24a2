use std::fmt;

use super::graded::Alternating;
use super::ops::wedge;
use super::{Chart, DiffForm, MultiVectorField};
use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::scalar::RationalFunction;

/// A map between charts given by one component function per target
/// coordinate, written in source coordinates.
#[derive(Clone, Debug)]
pub struct SmoothMap {
    source: Chart,
    target: Chart,
    components: Vec<RationalFunction>,
}

impl SmoothMap {
    pub fn new(source: &Chart, target: &Chart, components: Vec<RationalFunction>) -> Result<Self> {
        if components.len() != target.dim() {
            return Err(Error::BadMap(format!(
                "{} components for target `{}` of dimension {}",
                components.len(),
                target.name(),
                target.dim()
            )));
        }
        let components = components.iter().map(|c| source.conform(c)).collect::<Result<_>>()?;
        Ok(SmoothMap { source: source.clone(), target: target.clone(), components })
    }

    /// Parses one component string per target coordinate.
    pub fn parse<S: AsRef<str>>(source: &Chart, target: &Chart, components: &[S]) -> Result<Self> {
        let comps = components.iter().map(|s| source.scalar(s.as_ref())).collect::<Result<_>>()?;
        SmoothMap::new(source, target, comps)
    }

    pub fn identity(chart: &Chart) -> Self {
        let comps = (0..chart.dim()).map(|i| chart.coordinate(i)).collect();
        SmoothMap { source: chart.clone(), target: chart.clone(), components: comps }
    }

    /// Map whose components are the listed source coordinates.
    pub fn projection(source: &Chart, target: &Chart, indices: &[usize]) -> Result<Self> {
        SmoothMap::new(source, target, indices.iter().map(|&i| source.coordinate(i)).collect())
    }

    pub fn source(&self) -> &Chart {
        &self.source
    }

    pub fn target(&self) -> &Chart {
        &self.target
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.components
    }

    /// `f ∘ φ` for a scalar `f` on the target.
    pub fn pull_scalar(&self, f: &RationalFunction) -> Result<RationalFunction> {
        let f = self.target.conform(f)?;
        f.substitute(&self.components, self.source.coords())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SmoothMap) -> Result<SmoothMap> {
        inner.target.check_same(&self.source)?;
        let comps = self.components.iter().map(|c| inner.pull_scalar(c)).collect::<Result<_>>()?;
        SmoothMap::new(&inner.source, &self.target, comps)
    }

    /// Jacobian matrix, `target dim × source dim`.
    pub fn jacobian(&self) -> SymMatrix {
        let rows = self
            .components
            .iter()
            .map(|c| (0..self.source.dim()).map(|j| c.derive_index(j)).collect())
            .collect();
        if self.components.is_empty() {
            return SymMatrix::zeros(self.source.coords().clone(), 0, self.source.dim());
        }
        SymMatrix::from_rows(self.source.coords().clone(), rows)
    }

    /// `φ*a`: substitute coefficients and pull back each `d(y_i)` to
    /// `Σ_j ∂_j φ^i d(x_j)`.
    pub fn pullback(&self, a: &DiffForm) -> Result<DiffForm> {
        a.chart().check_same(&self.target)?;
        let src = &self.source;
        let differentials: Vec<DiffForm> = self
            .components
            .iter()
            .map(|c| {
                let comps: Vec<RationalFunction> = (0..src.dim()).map(|j| c.derive_index(j)).collect();
                DiffForm(Alternating::from_components(src, 1, &comps))
            })
            .collect();
        let mut out = DiffForm::zero(src, a.degree());
        'terms: for (idx, c) in a.terms() {
            let mut term = DiffForm::scalar(src, &self.pull_scalar(c)?)?;
            for &i in idx {
                term = wedge(&term, &differentials[i])?;
                if term.is_zero() {
                    continue 'terms;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// `dφ(X)`: Jacobian applied to a vector field, with components indexed
    /// by target coordinates and written in source coordinates.
    pub fn differential_apply(&self, x: &MultiVectorField) -> Result<Vec<RationalFunction>> {
        x.chart().check_same(&self.source)?;
        if x.degree() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: x.degree() });
        }
        let comps: Vec<RationalFunction> = (0..self.source.dim()).map(|j| x.coeff(&[j])).collect();
        Ok(self.jacobian().mul_vec(&comps))
    }

    /// Pushes a vector field forward through a map that is its own chart
    /// automorphism with known inverse `inverse`: `(φ_*X)(y) = dφ(X)(φ⁻¹(y))`.
    pub fn push_forward(&self, inverse: &SmoothMap, x: &MultiVectorField) -> Result<MultiVectorField> {
        inverse.source.check_same(&self.target)?;
        inverse.target.check_same(&self.source)?;
        let along = self.differential_apply(x)?;
        let comps = along.iter().map(|c| inverse.pull_scalar(c)).collect::<Result<Vec<_>>>()?;
        MultiVectorField::vector(&self.target, &comps)
    }

    /// Exact equality of component functions.
    pub fn equals(&self, other: &SmoothMap) -> bool {
        self.source.same_as(&other.source)
            && self.target.same_as(&other.target)
            && self.components.iter().zip(&other.components).all(|(a, b)| a == b)
    }

    /// Componentwise difference, for residual reporting.
    pub fn difference(&self, other: &SmoothMap) -> Result<Vec<RationalFunction>> {
        self.source.check_same(&other.source)?;
        self.target.check_same(&other.target)?;
        Ok(self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for SmoothMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "{} -> {}: ({})", self.source.name(), self.target.name(), parts.join(", "))
    }
}
