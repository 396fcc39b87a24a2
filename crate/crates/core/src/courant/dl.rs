use std::collections::BTreeMap;

use super::frame::{annihilator_matrix, SubbundleFrame};
use super::section::CourantSection;
use crate::calculus::index::increasing_tuples;
use crate::calculus::{
    evaluate_on, exterior_derivative, interior_product, lie_bracket_vf, lie_derivative, Chart, DiffForm,
    MultiVectorField, SmoothMap,
};
use crate::error::{Error, Result};
use crate::linalg::{numeric_kernel, numeric_solve, reduce, SpanMembership, SpanTester, SymMatrix};
use crate::scalar::{Rational, RationalFunction, SamplePoint};
use crate::verdict::{trivial_kernel, Mode, Residual, Validity, Verdict};

/// A subbundle `D ⊆ ∧ᵏT*M` with a bundle map `λ: D → TM`. Column `i` of
/// `lambda` holds the tangent components of `λ(d_frame[i])`.
#[derive(Clone, Debug)]
pub struct DLPair {
    chart: Chart,
    k: usize,
    d_frame: Vec<DiffForm>,
    lambda: SymMatrix,
}

impl DLPair {
    pub fn new(chart: &Chart, k: usize, d_frame: Vec<DiffForm>, lambda: SymMatrix) -> Result<Self> {
        for a in &d_frame {
            chart.check_same(a.chart())?;
            if a.degree() != k {
                return Err(Error::DegreeMismatch { expected: k, found: a.degree() });
            }
        }
        if lambda.rows() != chart.dim() || lambda.cols() != d_frame.len() {
            return Err(Error::BadParameters(format!(
                "lambda must be {} x {}, got {} x {}",
                chart.dim(),
                d_frame.len(),
                lambda.rows(),
                lambda.cols()
            )));
        }
        // independence of D_frame is the same rank test as a vertical frame
        let vertical = d_frame.iter().cloned().map(CourantSection::from_form).collect::<Result<Vec<_>>>()?;
        SubbundleFrame::new(chart, k, vertical)?;
        Ok(DLPair { chart: chart.clone(), k, d_frame, lambda })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d_frame(&self) -> &[DiffForm] {
        &self.d_frame
    }

    pub fn lambda(&self) -> &SymMatrix {
        &self.lambda
    }

    fn tester(&self) -> SpanTester {
        let rows: Vec<Vec<RationalFunction>> = self.d_frame.iter().map(DiffForm::components).collect();
        SpanTester::new(self.chart.coords().clone(), increasing_tuples(self.chart.dim(), self.k).len(), &rows)
    }

    /// Coefficients of `a` in the D frame.
    pub fn coordinates(&self, a: &DiffForm) -> Result<Vec<RationalFunction>> {
        self.chart.check_same(a.chart())?;
        if a.degree() != self.k {
            return Err(Error::DegreeMismatch { expected: self.k, found: a.degree() });
        }
        match self.tester().test(&a.components()) {
            SpanMembership::Member(c) => Ok(c),
            SpanMembership::Residual(_) => Err(Error::NotInD),
        }
    }

    /// `λ(a)` for `a` in the span of D.
    pub fn apply(&self, a: &DiffForm) -> Result<MultiVectorField> {
        let c = self.coordinates(a)?;
        MultiVectorField::vector(&self.chart, &self.lambda.mul_vec(&c))
    }

    fn lambda_of_frame(&self, i: usize) -> MultiVectorField {
        MultiVectorField::vector(&self.chart, &self.lambda.column(i)).expect("column length")
    }
}

/// `D = pr₂(L)`, `λ = pr₁ ∘ (pr₂|_L)⁻¹`.
pub fn to_dl(l: &SubbundleFrame) -> Result<DLPair> {
    let forms: Vec<DiffForm> = l.sections().iter().map(|s| s.form().clone()).collect();
    let rows: Vec<Vec<RationalFunction>> = forms.iter().map(DiffForm::components).collect();
    let len = increasing_tuples(l.chart().dim(), l.k()).len();
    if SpanTester::new(l.chart().coords().clone(), len, &rows).rank() < forms.len() {
        return Err(Error::ProjectionNotInjective);
    }
    let columns: Vec<Vec<RationalFunction>> = l.sections().iter().map(|s| s.vector().components()).collect();
    let lambda = SymMatrix::from_columns(l.chart().coords().clone(), l.chart().dim(), &columns);
    DLPair::new(l.chart(), l.k(), forms, lambda)
}

pub fn from_dl(p: &DLPair) -> Result<SubbundleFrame> {
    let sections = (0..p.d_frame.len())
        .map(|i| CourantSection::new(p.lambda_of_frame(i), p.d_frame[i].clone()))
        .collect::<Result<Vec<_>>>()?;
    SubbundleFrame::new(&p.chart, p.k, sections)
}

/// `[α,β]_λ = L_{λ(α)}β − i_{λ(β)}dα`.
pub fn lambda_bracket(p: &DLPair, alpha: &DiffForm, beta: &DiffForm) -> Result<DiffForm> {
    let (la, lb) = (p.apply(alpha)?, p.apply(beta)?);
    lie_derivative(&la, beta)?.sub(&interior_product(&lb, &exterior_derivative(alpha))?)
}

/// The second expression `L_{λ(α)}β − L_{λ(β)}α − d(i_{λ(α)}β)`, equal to
/// [`lambda_bracket`] whenever condition (b) holds.
pub fn lambda_bracket_alt(p: &DLPair, alpha: &DiffForm, beta: &DiffForm) -> Result<DiffForm> {
    let (la, lb) = (p.apply(alpha)?, p.apply(beta)?);
    let d = exterior_derivative(&interior_product(&la, beta)?);
    lie_derivative(&la, beta)?.sub(&lie_derivative(&lb, alpha)?)?.sub(&d)
}

/// Conditions (a) `D° = {0}`, (b) `i_{λ(α)}β = −i_{λ(β)}α`, and (c) closure
/// of Γ(D) under the λ-bracket with λ bracket-preserving.
pub fn check_dl(p: &DLPair, mode: &Mode) -> Result<Verdict> {
    let forms: Vec<&DiffForm> = p.d_frame.iter().collect();
    let m = annihilator_matrix(&p.chart, &forms)?;
    let chart = p.chart.clone();
    let a = trivial_kernel("(a)", &m, mode, |k| {
        Residual::Vector(MultiVectorField::vector(&chart, k).expect("kernel length"))
    })?;

    let n = p.d_frame.len();
    let mut b_items = Vec::new();
    for i in 0..n {
        for j in i..n {
            let s = interior_product(&p.lambda_of_frame(i), &p.d_frame[j])?
                .add(&interior_product(&p.lambda_of_frame(j), &p.d_frame[i])?)?;
            b_items.push(Verdict::identity(format!("({i},{j})"), (!s.is_zero()).then_some(Residual::Form(s))));
        }
    }
    let b = Verdict::all("(b)", b_items);

    let tester = p.tester();
    let mut c_items = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (ai, aj) = (&p.d_frame[i], &p.d_frame[j]);
            let br = lambda_bracket(p, ai, aj)?;
            let label = format!("({i},{j})");
            let coords = match tester.test(&br.components()) {
                SpanMembership::Member(c) => c,
                SpanMembership::Residual(r) => {
                    let res = DiffForm::from_components(&p.chart, p.k, &r);
                    c_items.push(
                        Verdict::fail(label, Validity::Identical, Some(Residual::Form(res))).with_detail("not in D"),
                    );
                    continue;
                }
            };
            let image = MultiVectorField::vector(&p.chart, &p.lambda.mul_vec(&coords))?;
            let expected = lie_bracket_vf(&p.lambda_of_frame(i), &p.lambda_of_frame(j))?;
            let defect = image.sub(&expected)?;
            if !defect.is_zero() {
                c_items.push(
                    Verdict::fail(label, Validity::Identical, Some(Residual::Vector(defect)))
                        .with_detail("lambda does not preserve brackets"),
                );
                continue;
            }
            let alt = lambda_bracket_alt(p, ai, aj)?.sub(&br)?;
            c_items.push(
                Verdict::identity(label, (!alt.is_zero()).then_some(Residual::Form(alt)))
                    .with_detail("bracket and its second expression"),
            );
        }
    }
    let c = Verdict::all("(c)", c_items);
    Ok(Verdict::all("DL conditions", vec![a, b, c]))
}

/// The induced `(k+1)`-form on the leaf through a point, tabulated on a
/// basis of the distribution there.
#[derive(Clone, Debug)]
pub struct LeafTensor {
    pub point: SamplePoint,
    /// Basis of `pr₁(L)` at the point, as tangent component vectors.
    pub basis: Vec<Vec<Rational>>,
    /// Values on increasing `(k+1)`-tuples of basis indices; zeros omitted.
    pub values: BTreeMap<Vec<usize>, Rational>,
    /// Whether a second choice of preimage gave the same values.
    pub well_defined: bool,
}

impl LeafTensor {
    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

struct PointData {
    chart: Chart,
    vectors: Vec<Vec<Rational>>,
    forms: Vec<Vec<Rational>>,
    k: usize,
}

impl PointData {
    fn constant_vector(&self, v: &[Rational]) -> MultiVectorField {
        let comps: Vec<RationalFunction> = v.iter().map(|x| self.chart.constant(x.clone())).collect();
        MultiVectorField::vector(&self.chart, &comps).expect("dimension")
    }

    fn constant_form(&self, coeffs: &[Rational]) -> DiffForm {
        let n = self.chart.dim();
        let mut comps = vec![Rational::from_integer(0.into()); increasing_tuples(n, self.k).len()];
        for (c, f) in coeffs.iter().zip(&self.forms) {
            for (slot, x) in comps.iter_mut().zip(f) {
                *slot += c * x;
            }
        }
        let comps: Vec<RationalFunction> = comps.into_iter().map(|x| self.chart.constant(x)).collect();
        DiffForm::from_components(&self.chart, self.k, &comps)
    }

    /// Coefficients `c` with `Σ c_i X_i = v`, plus the kernel of that map.
    fn preimage(&self, v: &[Rational]) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
        let n = self.chart.dim();
        let m: Vec<Vec<Rational>> = (0..n).map(|r| self.vectors.iter().map(|x| x[r].clone()).collect()).collect();
        numeric_solve(&m, self.vectors.len(), v)
    }
}

/// Evaluates the leaf form `ω(Y₀,…,Y_k) = α(Y₁,…,Y_k)` with `λ(α) = Y₀` at a
/// point, on a basis of the distribution.
pub fn leaf_form_at(l: &SubbundleFrame, pt: &SamplePoint) -> Result<LeafTensor> {
    let chart = l.chart().clone();
    let vectors = l
        .sections()
        .iter()
        .map(|s| s.vector().evaluate(pt))
        .collect::<Result<Vec<_>>>()?;
    let forms = l.sections().iter().map(|s| s.form().evaluate(pt)).collect::<Result<Vec<_>>>()?;
    let data = PointData { chart: chart.clone(), vectors, forms, k: l.k() };

    // basis of the span of the tangent parts: pivot rows of the elimination
    let red = reduce(data.vectors.clone(), chart.dim());
    let basis: Vec<Vec<Rational>> = red.rows.into_iter().take(red.pivots.len()).collect();
    let r = basis.len();

    let mut values = BTreeMap::new();
    let mut well_defined = true;
    for tuple in increasing_tuples(r, l.k() + 1) {
        let (y0, rest) = (&basis[tuple[0]], &tuple[1..]);
        let Some((c, kernel)) = data.preimage(y0) else {
            return Err(Error::PointNotOnLeafSpan);
        };
        let ys: Vec<MultiVectorField> = rest.iter().map(|&i| data.constant_vector(&basis[i])).collect();
        let value = evaluate_on(&data.constant_form(&c), &ys)?.as_constant().expect("constant");
        if let Some(kv) = kernel.first() {
            let c2: Vec<Rational> = c.iter().zip(kv).map(|(a, b)| a + b).collect();
            let v2 = evaluate_on(&data.constant_form(&c2), &ys)?.as_constant().expect("constant");
            well_defined &= v2 == value;
        }
        if value != Rational::from_integer(0.into()) {
            values.insert(tuple, value);
        }
    }
    Ok(LeafTensor { point: pt.clone(), basis, values, well_defined })
}

/// Value of the leaf form on explicit tangent vectors at a point; each must
/// lie in the distribution there.
pub fn leaf_form_value(l: &SubbundleFrame, pt: &SamplePoint, ys: &[Vec<Rational>]) -> Result<Rational> {
    if ys.len() != l.k() + 1 {
        return Err(Error::DegreeMismatch { expected: l.k() + 1, found: ys.len() });
    }
    let chart = l.chart().clone();
    let vectors = l.sections().iter().map(|s| s.vector().evaluate(pt)).collect::<Result<Vec<_>>>()?;
    let forms = l.sections().iter().map(|s| s.form().evaluate(pt)).collect::<Result<Vec<_>>>()?;
    let data = PointData { chart, vectors, forms, k: l.k() };
    for y in ys {
        if data.preimage(y).is_none() {
            return Err(Error::PointNotOnLeafSpan);
        }
    }
    let (c, _) = data.preimage(&ys[0]).expect("checked");
    let rest: Vec<MultiVectorField> = ys[1..].iter().map(|y| data.constant_vector(y)).collect();
    Ok(evaluate_on(&data.constant_form(&c), &rest)?.as_constant().expect("constant"))
}

/// `φ*(D₂) ⊆ D₁` and `dφ(λ₁(φ*α)) = λ₂(α)` for each frame element α of D₂,
/// all written in source coordinates.
pub fn check_morphism(phi: &SmoothMap, p1: &DLPair, p2: &DLPair) -> Result<Verdict> {
    phi.source().check_same(&p1.chart)?;
    phi.target().check_same(&p2.chart)?;
    let tester = p1.tester();
    let mut items = Vec::new();
    for (i, alpha) in p2.d_frame.iter().enumerate() {
        let pulled = phi.pullback(alpha)?;
        let coords = match tester.test(&pulled.components()) {
            SpanMembership::Member(c) => c,
            SpanMembership::Residual(r) => {
                let res = DiffForm::from_components(&p1.chart, p1.k, &r);
                items.push(Verdict::fail(format!("D{i}"), Validity::Identical, Some(Residual::Form(res))));
                continue;
            }
        };
        items.push(Verdict::pass(format!("D{i}"), Validity::Identical));
        let l1 = MultiVectorField::vector(&p1.chart, &p1.lambda.mul_vec(&coords))?;
        let pushed = phi.differential_apply(&l1)?;
        let target: Vec<RationalFunction> =
            p2.lambda.column(i).iter().map(|c| phi.pull_scalar(c)).collect::<Result<_>>()?;
        let diff: Vec<RationalFunction> = pushed.iter().zip(&target).map(|(a, b)| a - b).collect();
        let ok = diff.iter().all(RationalFunction::is_zero);
        items.push(Verdict::identity(format!("lambda{i}"), (!ok).then_some(Residual::Components(diff))));
    }
    Ok(Verdict::all("morphism", items))
}

/// Kernel of the tangent map at a point, for diagnostics.
pub fn tangent_kernel_at(l: &SubbundleFrame, pt: &SamplePoint) -> Result<Vec<Vec<Rational>>> {
    let n = l.chart().dim();
    let vectors = l.sections().iter().map(|s| s.vector().evaluate(pt)).collect::<Result<Vec<_>>>()?;
    let m: Vec<Vec<Rational>> = (0..n).map(|r| vectors.iter().map(|x| x[r].clone()).collect()).collect();
    Ok(numeric_kernel(&m, vectors.len()))
}
