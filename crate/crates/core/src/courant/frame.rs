use super::section::{dorfman_bracket, pairing, CourantSection};
use crate::calculus::index::{binomial, increasing_tuples};
use crate::calculus::{interior_product, Chart, DiffForm, MultiVectorField};
use crate::error::{Error, Result};
use crate::linalg::{numeric_rank, rref, SpanMembership, SpanTester, SymMatrix};
use crate::scalar::{Polynomial, RationalFunction, SamplePoint};
use crate::verdict::{trivial_kernel, Mode, Residual, Validity, Verdict};

/// A subbundle of `TM ⊕ ∧ᵏT*M` presented by a global frame on one chart.
#[derive(Clone, Debug)]
pub struct SubbundleFrame {
    chart: Chart,
    k: usize,
    sections: Vec<CourantSection>,
    locus: Vec<Polynomial>,
}

impl SubbundleFrame {
    /// Builds a frame, rejecting generically dependent sections.
    pub fn new(chart: &Chart, k: usize, sections: Vec<CourantSection>) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadDegree("form degree k must be at least 1".into()));
        }
        for s in &sections {
            chart.check_same(s.chart())?;
            if s.k() != k {
                return Err(Error::DegreeMismatch { expected: k, found: s.k() });
            }
        }
        let rows: Vec<Vec<RationalFunction>> = sections.iter().map(CourantSection::components).collect();
        let len = chart.dim() + binomial(chart.dim(), k);
        let m = if rows.is_empty() {
            SymMatrix::zeros(chart.coords().clone(), 0, len)
        } else {
            SymMatrix::from_rows(chart.coords().clone(), rows)
        };
        let e = rref(&m);
        if e.rank < sections.len() {
            return Err(Error::DependentFrame { rank: e.rank, len: sections.len() });
        }
        Ok(SubbundleFrame { chart: chart.clone(), k, sections, locus: e.pivot_denominators })
    }

    pub fn empty(chart: &Chart, k: usize) -> Result<Self> {
        SubbundleFrame::new(chart, k, Vec::new())
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sections(&self) -> &[CourantSection] {
        &self.sections
    }

    pub fn rank(&self) -> usize {
        self.sections.len()
    }

    /// Polynomials off whose zero sets the frame is independent.
    pub fn locus(&self) -> &[Polynomial] {
        &self.locus
    }

    /// Length of a section's coordinate vector.
    pub fn ambient_dim(&self) -> usize {
        self.chart.dim() + binomial(self.chart.dim(), self.k)
    }

    pub(crate) fn span_tester(&self) -> SpanTester {
        let rows: Vec<Vec<RationalFunction>> = self.sections.iter().map(CourantSection::components).collect();
        SpanTester::new(self.chart.coords().clone(), self.ambient_dim(), &rows)
    }

    /// Membership of a section in the span, with coefficients in the
    /// fraction field.
    pub fn membership(&self, s: &CourantSection) -> SpanMembership {
        self.span_tester().test(&s.components())
    }

    /// Pointwise independence of the frame at each point.
    pub fn check_pointwise_rank(&self, pts: &[SamplePoint]) -> Result<Verdict> {
        let rows: Vec<Vec<RationalFunction>> = self.sections.iter().map(CourantSection::components).collect();
        for pt in pts {
            let numeric = rows
                .iter()
                .map(|r| r.iter().map(|c| c.evaluate(pt)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let r = numeric_rank(&numeric);
            if r < self.rank() {
                return Ok(Verdict::fail("frame rank", Validity::Sampled { points: pts.to_vec() }, None)
                    .with_detail(format!("rank {r} < {} at {pt}", self.rank())));
            }
        }
        Ok(Verdict::pass("frame rank", Validity::Sampled { points: pts.to_vec() }))
    }
}

fn frame_validity(l: &SubbundleFrame) -> Validity {
    if l.locus.is_empty() {
        Validity::Identical
    } else {
        Validity::generic(l.locus.clone())
    }
}

/// Passes iff every pair of frame sections pairs to zero.
pub fn is_isotropic(l: &SubbundleFrame) -> Result<Verdict> {
    let mut items = Vec::new();
    for i in 0..l.rank() {
        for j in i..l.rank() {
            let p = pairing(&l.sections[i], &l.sections[j])?;
            let label = format!("<s{i},s{j}>");
            items.push(Verdict::identity(label, (!p.is_zero()).then_some(Residual::Form(p))));
        }
    }
    Ok(Verdict::all("isotropic", items))
}

/// Checks every ordered frame pair bracket for membership in the span. The
/// final item is the Leibniz anomaly `df ∧ ⟨s_i, s_j⟩`, which vanishes for
/// all `f` exactly when the frame is isotropic.
pub fn is_involutive(l: &SubbundleFrame) -> Result<Verdict> {
    let tester = l.span_tester();
    let validity = frame_validity(l);
    let mut items = Vec::new();
    for i in 0..l.rank() {
        for j in 0..l.rank() {
            let b = dorfman_bracket(&l.sections[i], &l.sections[j])?;
            let label = format!("[s{i},s{j}]");
            items.push(match tester.test(&b.components()) {
                SpanMembership::Member(_) => Verdict::pass(label, validity.clone()),
                SpanMembership::Residual(r) => {
                    let res = CourantSection::from_components(&l.chart, l.k, &r);
                    Verdict::fail(label, validity.clone(), Some(Residual::Section(res)))
                }
            });
        }
    }
    let iso = is_isotropic(l)?;
    let mut anomaly = Verdict::all("leibniz anomaly", Vec::new());
    if !iso.passed() {
        anomaly = Verdict::fail("leibniz anomaly", Validity::Identical, iso.residual.clone())
            .with_detail("frame is not isotropic; pair checks do not extend to the module");
    }
    items.push(anomaly);
    Ok(Verdict::all("involutive", items))
}

/// Matrix of `X ↦ (i_X α_s)_s` over the frame's form parts: its kernel is
/// `L⊥ ∩ TM`.
pub(crate) fn annihilator_matrix(chart: &Chart, forms: &[&DiffForm]) -> Result<SymMatrix> {
    let n = chart.dim();
    let mut columns = vec![Vec::new(); n];
    for (j, col) in columns.iter_mut().enumerate() {
        let x = MultiVectorField::partial(chart, j);
        for a in forms {
            col.extend(interior_product(&x, a)?.components());
        }
    }
    let rows = columns.first().map_or(0, Vec::len);
    Ok(SymMatrix::from_columns(chart.coords().clone(), rows, &columns))
}

/// `L⊥ ∩ TM = {0}`.
pub fn check_nondeg_l(l: &SubbundleFrame, mode: &Mode) -> Result<Verdict> {
    let forms: Vec<&DiffForm> = l.sections.iter().map(CourantSection::form).collect();
    let m = annihilator_matrix(&l.chart, &forms)?;
    let chart = l.chart.clone();
    trivial_kernel("nondegenerate L", &m, mode, |k| {
        Residual::Vector(MultiVectorField::vector(&chart, k).expect("kernel length"))
    })
}

/// Linear conditions on `(Y, β)` expressing `(Y, β) ∈ L⊥`; columns are
/// section coordinates.
fn orthogonality_matrix(l: &SubbundleFrame) -> Result<SymMatrix> {
    let n = l.chart.dim();
    let len = l.ambient_dim();
    let basis: Vec<CourantSection> = (0..len)
        .map(|c| {
            let mut comps = vec![l.chart.zero(); len];
            comps[c] = l.chart.one();
            CourantSection::from_components(&l.chart, l.k, &comps)
        })
        .collect();
    let mut columns = Vec::with_capacity(len);
    for b in &basis {
        let mut col = Vec::new();
        for s in &l.sections {
            col.extend(pairing(s, b)?.components());
        }
        columns.push(col);
    }
    let rows = l.rank() * binomial(n, l.k - 1);
    Ok(SymMatrix::from_columns(l.chart.coords().clone(), rows, &columns))
}

/// Pointwise dimensions of `L⊥` and `L⊥ ∩ TM`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointProfile {
    pub point: SamplePoint,
    pub dim_perp: usize,
    pub dim_perp_tangent: usize,
}

#[derive(Clone, Debug)]
pub struct OrthogonalProfile {
    pub rank: usize,
    pub generic_dim_perp: usize,
    /// `L = L⊥` off the reported loci.
    pub lagrangian: bool,
    pub points: Vec<PointProfile>,
}

pub fn orthogonal_profile(l: &SubbundleFrame, pts: &[SamplePoint]) -> Result<OrthogonalProfile> {
    let len = l.ambient_dim();
    let m = orthogonality_matrix(l)?;
    let generic_rank = if m.rows() == 0 { 0 } else { rref(&m).rank };
    let generic_dim_perp = len - generic_rank;
    let forms: Vec<&DiffForm> = l.sections.iter().map(CourantSection::form).collect();
    let t = annihilator_matrix(&l.chart, &forms)?;
    let iso = is_isotropic(l)?.passed();
    let mut points = Vec::new();
    for pt in pts {
        let r = if m.rows() == 0 { 0 } else { numeric_rank(&m.evaluate(pt)?) };
        let rt = if t.rows() == 0 { 0 } else { numeric_rank(&t.evaluate(pt)?) };
        points.push(PointProfile {
            point: pt.clone(),
            dim_perp: len - r,
            dim_perp_tangent: l.chart.dim() - rt,
        });
    }
    Ok(OrthogonalProfile { rank: l.rank(), generic_dim_perp, lagrangian: iso && generic_dim_perp == l.rank(), points })
}

/// Tangent parts of the frame and their generic rank.
#[derive(Clone, Debug)]
pub struct Distribution {
    pub vectors: Vec<MultiVectorField>,
    pub rank: usize,
    pub locus: Vec<Polynomial>,
}

pub fn distribution_frame(l: &SubbundleFrame) -> Distribution {
    let vectors: Vec<MultiVectorField> = l.sections.iter().map(|s| s.vector().clone()).collect();
    let rows: Vec<Vec<RationalFunction>> = vectors.iter().map(MultiVectorField::components).collect();
    let (rank, locus) = if rows.is_empty() {
        (0, Vec::new())
    } else {
        let e = rref(&SymMatrix::from_rows(l.chart.coords().clone(), rows));
        (e.rank, e.pivot_denominators)
    };
    Distribution { vectors, rank, locus }
}

/// Embeds a section on a factor chart into a product chart whose
/// coordinates include the factor's, by name.
pub(crate) fn lift_section(s: &CourantSection, product: &Chart) -> Result<CourantSection> {
    let src = s.chart();
    let map: Vec<usize> = src.coords().iter().map(|c| product.index_of(c)).collect::<Result<_>>()?;
    let mut vcomps = vec![product.zero(); product.dim()];
    for (i, c) in s.vector().terms() {
        vcomps[map[i[0]]] = product.conform(c)?;
    }
    let terms = s
        .form()
        .terms()
        .iter()
        .map(|(idx, c)| Ok((idx.iter().map(|&i| map[i]).collect(), product.conform(c)?)))
        .collect::<Result<Vec<_>>>()?;
    CourantSection::new(MultiVectorField::vector(product, &vcomps)?, DiffForm::from_terms(product, s.k(), terms)?)
}

/// `L₁ × L₂ = {(X+Y, α+β)}` on the product chart.
pub fn direct_product(l1: &SubbundleFrame, l2: &SubbundleFrame) -> Result<SubbundleFrame> {
    if l1.k != l2.k {
        return Err(Error::DegreeMismatch { expected: l1.k, found: l2.k });
    }
    let name = format!("{}x{}", l1.chart.name(), l2.chart.name());
    let product = Chart::product(name, &l1.chart, &l2.chart)?;
    let sections = l1
        .sections
        .iter()
        .chain(&l2.sections)
        .map(|s| lift_section(s, &product))
        .collect::<Result<Vec<_>>>()?;
    SubbundleFrame::new(&product, l1.k, sections)
}

/// Two frames span the same subbundle: each section of one is in the span
/// of the other.
pub fn same_span(a: &SubbundleFrame, b: &SubbundleFrame) -> Result<Verdict> {
    a.chart.check_same(&b.chart)?;
    let mut items = Vec::new();
    for (name, x, y) in [("a in b", a, b), ("b in a", b, a)] {
        let tester = y.span_tester();
        let mut sub = Vec::new();
        for (i, s) in x.sections.iter().enumerate() {
            let label = format!("s{i}");
            sub.push(match tester.test(&s.components()) {
                SpanMembership::Member(_) => Verdict::pass(label, frame_validity(y)),
                SpanMembership::Residual(r) => Verdict::fail(
                    label,
                    frame_validity(y),
                    Some(Residual::Section(CourantSection::from_components(&y.chart, y.k, &r))),
                ),
            });
        }
        items.push(Verdict::all(name, sub));
    }
    if a.rank() != b.rank() {
        items.push(Verdict::fail("rank", Validity::Identical, None).with_detail(format!("{} vs {}", a.rank(), b.rank())));
    }
    Ok(Verdict::all("same span", items))
}

/// Basis k-forms `dx_I` in lexicographic order.
pub(crate) fn form_basis(chart: &Chart, k: usize) -> Vec<DiffForm> {
    increasing_tuples(chart.dim(), k)
        .into_iter()
        .map(|t| DiffForm::basis(chart, &t).expect("tuple in range"))
        .collect()
}
