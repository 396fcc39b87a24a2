//! Frame-presented Lie algebroids and IM forms.

use crate::calculus::index::increasing_tuples;
use crate::calculus::{
    contract_form, directional, exterior_derivative, interior_product, lie_bracket_vf, lie_derivative, Chart,
    DiffForm, MultiVectorField,
};
use crate::courant::{annihilator_matrix, dorfman_bracket, SubbundleFrame};
use crate::error::{Error, Result};
use crate::linalg::{rref, SpanMembership, SymMatrix};
use crate::scalar::RationalFunction;
use crate::verdict::{trivial_kernel, Mode, Residual, Validity, Verdict};

/// A Lie algebroid of rank `r` over a chart, given by its anchor and the
/// structure functions of a global frame `e_1, …, e_r`.
#[derive(Clone, Debug)]
pub struct LieAlgebroid {
    chart: Chart,
    rank: usize,
    anchor: SymMatrix,
    /// `c^l_{ij}` at index `(i * rank + j) * rank + l`.
    structure: Vec<RationalFunction>,
}

/// A section of an algebroid as coefficients in its frame.
pub type AlgebroidSection = Vec<RationalFunction>;

impl LieAlgebroid {
    /// `structure[i][j][l] = c^l_{ij}` with `[e_i, e_j] = Σ_l c^l_{ij} e_l`.
    pub fn new(chart: &Chart, anchor: SymMatrix, structure: Vec<Vec<Vec<RationalFunction>>>) -> Result<Self> {
        let r = anchor.cols();
        if anchor.rows() != chart.dim() {
            return Err(Error::BadParameters(format!("anchor needs {} rows", chart.dim())));
        }
        if structure.len() != r || structure.iter().any(|s| s.len() != r || s.iter().any(|t| t.len() != r)) {
            return Err(Error::BadParameters(format!("structure functions must be {r} x {r} x {r}")));
        }
        let mut flat = Vec::with_capacity(r * r * r);
        for row in &structure {
            for cell in row {
                for c in cell {
                    flat.push(chart.conform(c)?);
                }
            }
        }
        let a = LieAlgebroid { chart: chart.clone(), rank: r, anchor, structure: flat };
        for i in 0..r {
            for j in i..r {
                for l in 0..r {
                    if !(a.c(i, j, l) + a.c(j, i, l)).is_zero() {
                        return Err(Error::NotAntisymmetric { i, j });
                    }
                }
            }
        }
        Ok(a)
    }

    /// The tangent algebroid `TM` with the coordinate frame.
    pub fn tangent(chart: &Chart) -> Self {
        let n = chart.dim();
        let zero = vec![vec![vec![chart.zero(); n]; n]; n];
        LieAlgebroid::new(chart, SymMatrix::identity(chart.coords().clone(), n), zero).expect("well formed")
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn anchor(&self) -> &SymMatrix {
        &self.anchor
    }

    /// `c^l_{ij}`.
    pub fn c(&self, i: usize, j: usize, l: usize) -> RationalFunction {
        self.structure[(i * self.rank + j) * self.rank + l].clone()
    }

    pub fn structure(&self) -> Vec<Vec<Vec<RationalFunction>>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| (0..self.rank).map(|l| self.c(i, j, l)).collect()).collect())
            .collect()
    }

    pub fn basis(&self, i: usize) -> AlgebroidSection {
        let mut v = vec![self.chart.zero(); self.rank];
        v[i] = self.chart.one();
        v
    }

    /// `ρ(u)`.
    pub fn anchor_of(&self, u: &[RationalFunction]) -> MultiVectorField {
        MultiVectorField::vector(&self.chart, &self.anchor.mul_vec(u)).expect("anchor rows")
    }

    /// `[u, v] = Σ u^i v^j c_{ij} + ρ(u)(v) − ρ(v)(u)`.
    pub fn bracket(&self, u: &[RationalFunction], v: &[RationalFunction]) -> AlgebroidSection {
        let r = self.rank;
        let (ru, rv) = (self.anchor_of(u), self.anchor_of(v));
        let mut out: Vec<RationalFunction> = (0..r)
            .map(|l| {
                directional(&ru, &v[l]).expect("vector") - directional(&rv, &u[l]).expect("vector")
            })
            .collect();
        for i in 0..r {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..r {
                if v[j].is_zero() {
                    continue;
                }
                let w = &u[i] * &v[j];
                for (l, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, l);
                    if !c.is_zero() {
                        *o = &*o + &(&w * &c);
                    }
                }
            }
        }
        out
    }
}

fn section_residual(v: &[RationalFunction]) -> Option<Residual> {
    (!v.iter().all(RationalFunction::is_zero)).then(|| Residual::Components(v.to_vec()))
}

fn sub_sections(a: &[RationalFunction], b: &[RationalFunction]) -> AlgebroidSection {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Leibniz rule on frame elements for each test function, Jacobi identity
/// on frame triples and on triples with one frame element scaled by a test
/// function, and `ρ([u,v]) = [ρ(u), ρ(v)]`.
pub fn check_algebroid_axioms(a: &LieAlgebroid, test_functions: &[RationalFunction]) -> Result<Verdict> {
    let r = a.rank;
    let mut leibniz = Vec::new();
    for (n, f) in test_functions.iter().enumerate() {
        let f = a.chart.conform(f)?;
        for i in 0..r {
            for j in 0..r {
                let (ei, ej) = (a.basis(i), a.basis(j));
                let fej: Vec<RationalFunction> = ej.iter().map(|x| x * &f).collect();
                let lhs = a.bracket(&ei, &fej);
                let rf = directional(&a.anchor_of(&ei), &f)?;
                let rhs: Vec<RationalFunction> =
                    a.bracket(&ei, &ej).iter().zip(&ej).map(|(b, e)| b * &f + e * &rf).collect();
                let d = sub_sections(&lhs, &rhs);
                leibniz.push(Verdict::identity(format!("f{n}: [e{i}, f e{j}]"), section_residual(&d)));
            }
        }
    }
    let jacobiator = |u: &[RationalFunction], v: &[RationalFunction], w: &[RationalFunction]| {
        let s1 = a.bracket(u, &a.bracket(v, w));
        let s2 = a.bracket(v, &a.bracket(w, u));
        let s3 = a.bracket(w, &a.bracket(u, v));
        (0..r).map(|x| &(&s1[x] + &s2[x]) + &s3[x]).collect::<Vec<RationalFunction>>()
    };
    let mut jacobi = Vec::new();
    for t in increasing_tuples(r, 3) {
        let sum = jacobiator(&a.basis(t[0]), &a.basis(t[1]), &a.basis(t[2]));
        jacobi.push(Verdict::identity(format!("e{},e{},e{}", t[0], t[1], t[2]), section_residual(&sum)));
    }
    // on frames alone the jacobiator can vanish while the anchor defect
    // shows up once a frame element is scaled by a function
    for (n, f) in test_functions.iter().enumerate() {
        let f = a.chart.conform(f)?;
        for i in 0..r {
            let fei: Vec<RationalFunction> = a.basis(i).iter().map(|x| x * &f).collect();
            for t in increasing_tuples(r, 2) {
                let sum = jacobiator(&fei, &a.basis(t[0]), &a.basis(t[1]));
                jacobi.push(Verdict::identity(format!("f{n} e{i},e{},e{}", t[0], t[1]), section_residual(&sum)));
            }
        }
    }
    let mut anchor = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let (ei, ej) = (a.basis(i), a.basis(j));
            let lhs = a.anchor_of(&a.bracket(&ei, &ej));
            let rhs = lie_bracket_vf(&a.anchor_of(&ei), &a.anchor_of(&ej))?;
            let d = lhs.sub(&rhs)?;
            anchor.push(Verdict::identity(format!("rho[e{i},e{j}]"), (!d.is_zero()).then_some(Residual::Vector(d))));
        }
    }
    Ok(Verdict::all(
        "algebroid axioms",
        vec![Verdict::all("leibniz", leibniz), Verdict::all("jacobi", jacobi), Verdict::all("anchor", anchor)],
    ))
}

/// A bundle map `μ: A → ∧ᵏT*M`, stored as the images of the frame.
#[derive(Clone, Debug)]
pub struct IMFormMap {
    algebroid: LieAlgebroid,
    k: usize,
    mu: Vec<DiffForm>,
}

impl IMFormMap {
    pub fn new(algebroid: LieAlgebroid, k: usize, mu: Vec<DiffForm>) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadDegree("IM forms need k >= 1".into()));
        }
        if mu.len() != algebroid.rank {
            return Err(Error::BadParameters(format!("mu needs {} forms", algebroid.rank)));
        }
        for m in &mu {
            algebroid.chart.check_same(m.chart())?;
            if m.degree() != k {
                return Err(Error::DegreeMismatch { expected: k, found: m.degree() });
            }
        }
        Ok(IMFormMap { algebroid, k, mu })
    }

    pub fn algebroid(&self) -> &LieAlgebroid {
        &self.algebroid
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn forms(&self) -> &[DiffForm] {
        &self.mu
    }

    /// `μ(u) = Σ u^i μ(e_i)`.
    pub fn apply(&self, u: &[RationalFunction]) -> Result<DiffForm> {
        let mut out = DiffForm::zero(&self.algebroid.chart, self.k);
        for (c, m) in u.iter().zip(&self.mu) {
            if !c.is_zero() {
                out = out.add(&m.scale(c))?;
            }
        }
        Ok(out)
    }
}

/// IM1 `i_{ρ(u)}μ(v) = −i_{ρ(v)}μ(u)` then IM2
/// `μ([u,v]) = L_{ρ(u)}μ(v) − i_{ρ(v)}dμ(u)` on frame pairs. IM2 is skipped
/// when IM1 fails.
pub fn check_im_form(m: &IMFormMap) -> Result<Verdict> {
    let a = &m.algebroid;
    let r = a.rank;
    let mut im1 = Vec::new();
    for i in 0..r {
        for j in i..r {
            let (ri, rj) = (a.anchor_of(&a.basis(i)), a.anchor_of(&a.basis(j)));
            let s = interior_product(&ri, &m.mu[j])?.add(&interior_product(&rj, &m.mu[i])?)?;
            im1.push(Verdict::identity(format!("({i},{j})"), (!s.is_zero()).then_some(Residual::Form(s))));
        }
    }
    let im1 = Verdict::all("IM1", im1);
    if !im1.passed() {
        let im2 = Verdict::skipped("IM2", "IM1 fails; frame-pair IM2 would not be meaningful");
        return Ok(Verdict::all("IM form", vec![im1, im2]));
    }
    let mut im2 = Vec::new();
    for i in 0..r {
        for j in 0..r {
            let (ei, ej) = (a.basis(i), a.basis(j));
            let lhs = m.apply(&a.bracket(&ei, &ej))?;
            let rhs = lie_derivative(&a.anchor_of(&ei), &m.mu[j])?
                .sub(&interior_product(&a.anchor_of(&ej), &exterior_derivative(&m.mu[i]))?)?;
            let d = lhs.sub(&rhs)?;
            im2.push(Verdict::identity(format!("({i},{j})"), (!d.is_zero()).then_some(Residual::Form(d))));
        }
    }
    Ok(Verdict::all("IM form", vec![im1, Verdict::all("IM2", im2)]))
}

/// (1) `ker μ = {0}` and (2) no nonzero `X` with `i_X μ(u) = 0` for all `u`.
pub fn check_im_nondeg(m: &IMFormMap, mode: &Mode) -> Result<Verdict> {
    let chart = m.algebroid.chart.clone();
    let columns: Vec<Vec<RationalFunction>> = m.mu.iter().map(DiffForm::components).collect();
    let rows = increasing_tuples(chart.dim(), m.k).len();
    let mat = SymMatrix::from_columns(chart.coords().clone(), rows, &columns);
    let one = trivial_kernel("(1)", &mat, mode, |k| Residual::Components(k.to_vec()))?;
    let forms: Vec<&DiffForm> = m.mu.iter().collect();
    let ann = annihilator_matrix(&chart, &forms)?;
    let two = trivial_kernel("(2)", &ann, mode, |k| {
        Residual::Vector(MultiVectorField::vector(&chart, k).expect("kernel length"))
    })?;
    Ok(Verdict::all("IM nondegenerate", vec![one, two]))
}

/// The algebroid `L` itself with anchor `pr₁` and `μ = pr₂`; structure
/// functions are the span coefficients of frame brackets.
pub fn algebroid_from_l(l: &SubbundleFrame) -> Result<(LieAlgebroid, IMFormMap)> {
    let chart = l.chart();
    let r = l.rank();
    let tester = l.span_tester();
    let mut structure = vec![vec![Vec::new(); r]; r];
    for i in 0..r {
        for j in 0..r {
            let b = dorfman_bracket(&l.sections()[i], &l.sections()[j])?;
            match tester.test(&b.components()) {
                SpanMembership::Member(c) => structure[i][j] = c,
                SpanMembership::Residual(_) => {
                    return Err(Error::NotInvolutive(format!("bracket of frame sections {i} and {j}")))
                }
            }
        }
    }
    let columns: Vec<Vec<RationalFunction>> = l.sections().iter().map(|s| s.vector().components()).collect();
    let anchor = if r == 0 {
        SymMatrix::zeros(chart.coords().clone(), chart.dim(), 0)
    } else {
        SymMatrix::from_columns(chart.coords().clone(), chart.dim(), &columns)
    };
    let a = LieAlgebroid::new(chart, anchor, structure)?;
    let mu = l.sections().iter().map(|s| s.form().clone()).collect();
    let m = IMFormMap::new(a.clone(), l.k(), mu)?;
    Ok((a, m))
}

/// Bracket `[α,β]_π = L_{π♯α}β − L_{π♯β}α − d(π(α,β))` on 1-forms, with
/// `π♯(α) = i_α π`.
pub fn koszul_bracket(pi: &MultiVectorField, alpha: &DiffForm, beta: &DiffForm) -> Result<DiffForm> {
    let (pa, pb) = (contract_form(alpha, pi)?, contract_form(beta, pi)?);
    // π(α,β) = β(π♯α)
    let pab = interior_product(&pa, beta)?;
    lie_derivative(&pa, beta)?.sub(&lie_derivative(&pb, alpha)?)?.sub(&exterior_derivative(&pab))
}

/// Cotangent algebroid of a bivector on the frame `dx_1, …, dx_n`, with
/// `μ = id` as a 1-form map.
pub fn cotangent_algebroid(pi: &MultiVectorField) -> Result<IMFormMap> {
    if pi.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: pi.degree() });
    }
    let chart = pi.chart();
    let n = chart.dim();
    let frame: Vec<DiffForm> = (0..n).map(|i| DiffForm::dx(chart, i)).collect();
    let columns: Vec<Vec<RationalFunction>> =
        frame.iter().map(|a| Ok(contract_form(a, pi)?.components())).collect::<Result<_>>()?;
    let anchor = SymMatrix::from_columns(chart.coords().clone(), n, &columns);
    let mut structure = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            structure[i][j] = koszul_bracket(pi, &frame[i], &frame[j])?.components();
        }
    }
    let a = LieAlgebroid::new(chart, anchor, structure)?;
    IMFormMap::new(a, 1, frame)
}

/// Decides whether `φ` (column `i` = `φ(e_i)` in the frame of `m2`'s
/// algebroid) is an algebroid isomorphism with `μ₂ ∘ φ = μ₁`.
pub fn check_equivalence(m1: &IMFormMap, m2: &IMFormMap, phi: &SymMatrix) -> Result<Verdict> {
    let (a1, a2) = (&m1.algebroid, &m2.algebroid);
    a1.chart.check_same(&a2.chart)?;
    if a1.rank != a2.rank || phi.rows() != a2.rank || phi.cols() != a1.rank {
        return Err(Error::BadParameters("ranks of the two algebroids and phi must agree".into()));
    }
    let r = a1.rank;
    let e = rref(phi);
    let invertible = if e.rank == r {
        Verdict::pass("invertible", if e.pivot_denominators.is_empty() { Validity::Identical } else { Validity::generic(e.pivot_denominators.clone()) })
    } else {
        Verdict::fail("invertible", Validity::Identical, e.kernel_basis.first().map(|k| Residual::Components(k.clone())))
    };
    let image = |u: &[RationalFunction]| phi.mul_vec(u);
    let mut anchors = Vec::new();
    let mut mus = Vec::new();
    for i in 0..r {
        let ei = a1.basis(i);
        let d = a2.anchor_of(&image(&ei)).sub(&a1.anchor_of(&ei))?;
        anchors.push(Verdict::identity(format!("e{i}"), (!d.is_zero()).then_some(Residual::Vector(d))));
        let d = m2.apply(&image(&ei))?.sub(&m1.apply(&ei)?)?;
        mus.push(Verdict::identity(format!("e{i}"), (!d.is_zero()).then_some(Residual::Form(d))));
    }
    let mut brackets = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let (ei, ej) = (a1.basis(i), a1.basis(j));
            let lhs = image(&a1.bracket(&ei, &ej));
            let rhs = a2.bracket(&image(&ei), &image(&ej));
            brackets.push(Verdict::identity(format!("[e{i},e{j}]"), section_residual(&sub_sections(&lhs, &rhs))));
        }
    }
    Ok(Verdict::all(
        "equivalence",
        vec![
            invertible,
            Verdict::all("anchor", anchors),
            Verdict::all("bracket", brackets),
            Verdict::all("mu", mus),
        ],
    ))
}
