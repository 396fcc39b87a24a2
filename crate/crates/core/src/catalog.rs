//! Constructors for the standard example structures.

use num_traits::Zero;

use crate::calculus::index::increasing_tuples;
use crate::calculus::{
    contract_form, exterior_derivative, interior_product, wedge, Chart, DiffForm, MultiVectorField, SmoothMap,
};
use crate::courant::{form_basis, lift_section, CourantSection, SubbundleFrame};
use crate::error::{Error, Result};
use crate::groupoid::GroupoidChart;
use crate::kplectic::{sharp_matrix, PlecticCandidate};
use crate::scalar::{Rational, RationalFunction};
use crate::verdict::{trivial_kernel, Mode, Residual, Verdict};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `∧ᵏT*Rⁿ` with its tautological k-form and `ω_can = dθ`.
#[derive(Clone, Debug)]
pub struct Multiphase {
    pub n: usize,
    pub k: usize,
    pub chart: Chart,
    pub theta: DiffForm,
    pub omega: DiffForm,
}

impl Multiphase {
    /// Index of the fiber coordinate `p_I`.
    pub fn fiber_index(&self, tuple: &[usize]) -> Option<usize> {
        increasing_tuples(self.n, self.k).iter().position(|t| t == tuple).map(|i| self.n + i)
    }
}

fn fiber_name(tuple: &[usize], n: usize) -> String {
    let parts: Vec<String> = tuple.iter().map(|i| (i + 1).to_string()).collect();
    if n < 10 {
        format!("p{}", parts.concat())
    } else {
        format!("p{}", parts.join("_"))
    }
}

/// Coordinates `q1..qn` and `p_I`, `θ = Σ p_I dq_I`.
pub fn canonical_multiphase(n: usize, k: usize) -> Result<Multiphase> {
    if k == 0 || k > n {
        return Err(Error::BadDegree(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let tuples = increasing_tuples(n, k);
    let mut names: Vec<String> = (1..=n).map(|i| format!("q{i}")).collect();
    names.extend(tuples.iter().map(|t| fiber_name(t, n)));
    let chart = Chart::new(format!("L{k}R{n}"), &names)?;
    let theta = DiffForm::from_terms(
        &chart,
        k,
        tuples.iter().enumerate().map(|(i, t)| (t.clone(), chart.coordinate(n + i))),
    )?;
    let omega = exterior_derivative(&theta);
    Ok(Multiphase { n, k, chart, theta, omega })
}

fn xs(prefix: &str, range: std::ops::Range<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

/// `dx1∧…∧dxn` on `Rⁿ`.
pub fn volume_plectic(n: usize) -> Result<PlecticCandidate> {
    if n < 2 {
        return Err(Error::BadDegree(format!("volume forms are plectic from dimension 2, got {n}")));
    }
    let chart = Chart::new(format!("R{n}"), &xs("x", 1..n + 1))?;
    let omega = DiffForm::from_terms(&chart, n, [((0..n).collect(), chart.one())])?;
    PlecticCandidate::generic(omega)
}

/// The three constant Kähler forms of flat `R⁴ = H`.
pub fn hyperkahler_forms() -> [DiffForm; 3] {
    let chart = Chart::new("H", &xs("x", 0..4)).expect("distinct names");
    let f = |terms: &[(usize, usize, i64)]| {
        DiffForm::from_terms(&chart, 2, terms.iter().map(|&(a, b, c)| (vec![a, b], chart.integer(c))))
            .expect("in range")
    };
    [f(&[(0, 1, 1), (2, 3, 1)]), f(&[(0, 2, 1), (1, 3, -1)]), f(&[(0, 3, 1), (1, 2, 1)])]
}

/// `Σ ωᵢ∧ωᵢ` on flat `R⁴`.
pub fn flat_hyperkahler() -> PlecticCandidate {
    let [a, b, c] = hyperkahler_forms();
    let sum = [a, b, c]
        .iter()
        .map(|w| wedge(w, w).expect("same chart"))
        .reduce(|x, y| x.add(&y).expect("same chart"))
        .expect("three forms");
    PlecticCandidate::generic(sum).expect("degree 4 on a 4-chart")
}

/// A finite-dimensional Lie algebra by structure constants
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`, with a symmetric pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct CEComplex {
    rank: usize,
    c: Vec<Vec<Vec<Rational>>>,
    pairing: Vec<Vec<Rational>>,
}

impl CEComplex {
    pub fn new(c: Vec<Vec<Vec<Rational>>>, pairing: Vec<Vec<Rational>>) -> Result<Self> {
        let n = c.len();
        if c.iter().any(|r| r.len() != n || r.iter().any(|s| s.len() != n)) {
            return Err(Error::BadParameters(format!("structure constants must be {n} x {n} x {n}")));
        }
        if pairing.len() != n || pairing.iter().any(|r| r.len() != n) {
            return Err(Error::BadParameters(format!("pairing must be {n} x {n}")));
        }
        for i in 0..n {
            for j in 0..n {
                if pairing[i][j] != pairing[j][i] {
                    return Err(Error::BadParameters("pairing is not symmetric".into()));
                }
                if (0..n).any(|k| c[i][j][k] != -c[j][i][k].clone()) {
                    return Err(Error::NotAntisymmetric { i, j });
                }
            }
        }
        Ok(CEComplex { rank: n, c, pairing })
    }

    fn from_brackets(n: usize, brackets: &[(usize, usize, usize, i64)], pairing: Vec<Vec<Rational>>) -> Result<Self> {
        let mut c = vec![vec![vec![q(0); n]; n]; n];
        for &(i, j, k, v) in brackets {
            c[i][j][k] = q(v);
            c[j][i][k] = q(-v);
        }
        CEComplex::new(c, pairing)
    }

    fn identity_pairing(n: usize) -> Vec<Vec<Rational>> {
        (0..n).map(|i| (0..n).map(|j| q((i == j) as i64)).collect()).collect()
    }

    /// `so(3)` with `[e1,e2] = e3` and cyclic, identity pairing.
    pub fn so3() -> Self {
        Self::from_brackets(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)], Self::identity_pairing(3)).expect("valid")
    }

    /// `so(3)` with `[e3,e1] = 2 e3` in place of `e2`; violates Jacobi.
    pub fn corrupted_so3() -> Self {
        Self::from_brackets(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 2, 2)], Self::identity_pairing(3)).expect("valid")
    }

    pub fn abelian(n: usize) -> Self {
        CEComplex::new(vec![vec![vec![q(0); n]; n]; n], Self::identity_pairing(n)).expect("valid")
    }

    /// `[e1,e2] = e2` with its Killing form `diag(1, 0)`.
    pub fn solvable2() -> Self {
        Self::from_brackets(2, &[(0, 1, 1, 1)], vec![vec![q(1), q(0)], vec![q(0), q(0)]]).expect("valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Rational>>] {
        &self.c
    }

    pub fn pairing(&self) -> &[Vec<Rational>] {
        &self.pairing
    }

    /// Chart whose coordinate differentials stand for the dual basis `e^i`.
    pub fn chart(&self) -> Chart {
        Chart::new("g", &xs("e", 1..self.rank + 1)).expect("distinct names")
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.rank;
        let mut out = vec![q(0); n];
        for i in 0..n {
            for j in 0..n {
                let w = &u[i] * &v[j];
                if w.is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &w * &self.c[i][j][k];
                }
            }
        }
        out
    }

    fn basis(&self, i: usize) -> Vec<Rational> {
        (0..self.rank).map(|j| q((i == j) as i64)).collect()
    }

    fn pair(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut s = q(0);
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += &u[i] * &self.pairing[i][j] * &v[j];
            }
        }
        s
    }

    /// First basis triple violating Jacobi, if any.
    pub fn jacobi_defect(&self) -> Option<(usize, usize, usize)> {
        for t in increasing_tuples(self.rank, 3) {
            let (a, b, c) = (self.basis(t[0]), self.basis(t[1]), self.basis(t[2]));
            let s1 = self.bracket(&a, &self.bracket(&b, &c));
            let s2 = self.bracket(&b, &self.bracket(&c, &a));
            let s3 = self.bracket(&c, &self.bracket(&a, &b));
            if (0..self.rank).any(|i| !(&s1[i] + &s2[i] + &s3[i]).is_zero()) {
                return Some((t[0], t[1], t[2]));
            }
        }
        None
    }

    /// `⟨[u,v],w⟩ + ⟨v,[u,w]⟩ = 0` on basis triples.
    pub fn pairing_invariant(&self) -> bool {
        let n = self.rank;
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|l| {
                    let (u, v, w) = (self.basis(i), self.basis(j), self.basis(l));
                    (self.pair(&self.bracket(&u, &v), &w) + self.pair(&v, &self.bracket(&u, &w))).is_zero()
                })
            })
        })
    }
}

/// Chevalley–Eilenberg differential on constant forms:
/// `d e^k = −Σ_{i<j} c^k_{ij} e^i∧e^j`, extended as a derivation.
pub fn ce_differential(cx: &CEComplex, a: &DiffForm) -> Result<DiffForm> {
    let chart = cx.chart();
    chart.check_same(a.chart())?;
    let de: Vec<DiffForm> = (0..cx.rank)
        .map(|k| {
            let terms = increasing_tuples(cx.rank, 2)
                .into_iter()
                .map(|t| {
                    let c = -cx.c[t[0]][t[1]][k].clone();
                    (t, chart.constant(c))
                })
                .collect::<Vec<_>>();
            DiffForm::from_terms(&chart, 2, terms)
        })
        .collect::<Result<_>>()?;
    let mut out = DiffForm::zero(&chart, a.degree() + 1);
    for (idx, coeff) in a.terms() {
        if coeff.as_constant().is_none() {
            return Err(Error::BadParameters("CE forms must have constant coefficients".into()));
        }
        for m in 0..idx.len() {
            let mut piece = DiffForm::scalar(&chart, coeff)?;
            for (pos, &i) in idx.iter().enumerate() {
                let factor = if pos == m { de[i].clone() } else { DiffForm::dx(&chart, i) };
                piece = wedge(&piece, &factor)?;
            }
            out = if m % 2 == 0 { out.add(&piece)? } else { out.sub(&piece)? };
        }
    }
    Ok(out)
}

/// The Cartan 3-form of a Lie algebra with invariant pairing.
#[derive(Clone, Debug)]
pub struct CartanForm {
    pub h: DiffForm,
    pub dh: DiffForm,
    pub nondegenerate: Verdict,
}

/// `H(u,v,w) = ⟨u,[v,w]⟩`.
pub fn ce_cartan(cx: &CEComplex) -> Result<CartanForm> {
    if cx.jacobi_defect().is_some() {
        return Err(Error::JacobiFails);
    }
    if !cx.pairing_invariant() {
        return Err(Error::PairingNotInvariant);
    }
    let chart = cx.chart();
    let terms = increasing_tuples(cx.rank, 3)
        .into_iter()
        .map(|t| {
            let v = cx.pair(&cx.basis(t[0]), &cx.bracket(&cx.basis(t[1]), &cx.basis(t[2])));
            (t, chart.constant(v))
        })
        .collect::<Vec<_>>();
    let h = DiffForm::from_terms(&chart, 3, terms)?;
    let dh = ce_differential(cx, &h)?;
    let nondegenerate = if cx.rank == 0 {
        Verdict::pass("nondegenerate", crate::verdict::Validity::Identical)
    } else {
        let m = sharp_matrix(&h)?;
        trivial_kernel("nondegenerate", &m, &Mode::Generic, |k| {
            Residual::Vector(MultiVectorField::vector(&chart, k).expect("kernel length"))
        })?
    };
    Ok(CartanForm { h, dh, nondegenerate })
}

/// Linear Poisson bivector `Σ_{i<j} c^k_{ij} x_k ∂_i∧∂_j` on the dual of the
/// algebra, coordinates `x1..xn`.
pub fn lie_poisson(cx: &CEComplex) -> Result<MultiVectorField> {
    let chart = Chart::new("gdual", &xs("x", 1..cx.rank + 1))?;
    let terms = increasing_tuples(cx.rank, 2)
        .into_iter()
        .map(|t| {
            let mut f = chart.zero();
            for k in 0..cx.rank {
                f = &f + &(&chart.constant(cx.c[t[0]][t[1]][k].clone()) * &chart.coordinate(k));
            }
            (t, f)
        })
        .collect::<Vec<_>>();
    MultiVectorField::from_terms(&chart, 2, terms)
}

/// `L = {(X, i_X ω)}`.
pub fn graph_of_form(omega: &DiffForm) -> Result<SubbundleFrame> {
    let chart = omega.chart();
    if omega.degree() < 2 {
        return Err(Error::BadDegree(format!("graph of a form needs degree >= 2, got {}", omega.degree())));
    }
    let k = omega.degree() - 1;
    let sections = (0..chart.dim())
        .map(|i| {
            let x = MultiVectorField::partial(chart, i);
            let a = interior_product(&x, omega)?;
            CourantSection::new(x, a)
        })
        .collect::<Result<Vec<_>>>()?;
    SubbundleFrame::new(chart, k, sections)
}

/// `L = {(i_α π, α)}` for `π` of top degree.
pub fn graph_of_top_multivector(pi: &MultiVectorField) -> Result<SubbundleFrame> {
    let chart = pi.chart();
    if pi.degree() != chart.dim() {
        return Err(Error::DegreeMismatch { expected: chart.dim(), found: pi.degree() });
    }
    if pi.degree() < 2 {
        return Err(Error::BadDegree("graph of a multivector needs degree >= 2".into()));
    }
    let k = pi.degree() - 1;
    let sections = form_basis(chart, k)
        .into_iter()
        .map(|a| CourantSection::new(contract_form(&a, pi)?, a))
        .collect::<Result<Vec<_>>>()?;
    SubbundleFrame::new(chart, k, sections)
}

/// Graph of a bivector, `L = {(i_α π, α)}` with k = 1.
pub fn graph_of_bivector(pi: &MultiVectorField) -> Result<SubbundleFrame> {
    if pi.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: pi.degree() });
    }
    let sections = form_basis(pi.chart(), 1)
        .into_iter()
        .map(|a| CourantSection::new(contract_form(&a, pi)?, a))
        .collect::<Result<Vec<_>>>()?;
    SubbundleFrame::new(pi.chart(), 1, sections)
}

/// `L = span{(0, αᵢ)}`.
pub fn vertical_subbundle(chart: &Chart, k: usize, forms: &[DiffForm]) -> Result<SubbundleFrame> {
    let sections = forms
        .iter()
        .map(|a| {
            chart.check_same(a.chart())?;
            if a.degree() != k {
                return Err(Error::DegreeMismatch { expected: k, found: a.degree() });
            }
            CourantSection::from_form(a.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    SubbundleFrame::new(chart, k, sections)
}

/// Full `∧ᵏT*M` as a vertical subbundle.
pub fn full_vertical(chart: &Chart, k: usize) -> Result<SubbundleFrame> {
    vertical_subbundle(chart, k, &form_basis(chart, k))
}

/// The line `{c ξ}` of a single form.
pub fn line_bundle(xi: &DiffForm) -> Result<SubbundleFrame> {
    vertical_subbundle(xi.chart(), xi.degree(), std::slice::from_ref(xi))
}

/// On `M×N`: `{(X, f i_X ω + α) | X ∈ TM, α ∈ ∧ᵏT*N}` with `f` on `N`.
pub fn scaled_family(f: &RationalFunction, n_chart: &Chart, omega: &DiffForm) -> Result<SubbundleFrame> {
    let m = omega.chart();
    if omega.degree() < 2 {
        return Err(Error::BadDegree("scaled family needs a form of degree >= 2".into()));
    }
    let k = omega.degree() - 1;
    let product = Chart::product(format!("{}x{}", m.name(), n_chart.name()), m, n_chart)?;
    let f = product.conform(&n_chart.conform(f)?)?;
    let mut sections = Vec::new();
    for s in graph_of_form(omega)?.sections() {
        let lifted = lift_section(s, &product)?;
        sections.push(CourantSection::new(lifted.vector().clone(), lifted.form().scale(&f))?);
    }
    if n_chart.dim() >= k {
        for a in form_basis(n_chart, k) {
            sections.push(lift_section(&CourantSection::from_form(a)?, &product)?);
        }
    }
    SubbundleFrame::new(&product, k, sections)
}

/// On `M₁×M₂`: `{(X, (i_X ω₁)∧ω₂) | X ∈ TM₁}`.
pub fn wedge_product_structure(omega1: &DiffForm, omega2: &DiffForm) -> Result<SubbundleFrame> {
    let (m1, m2) = (omega1.chart(), omega2.chart());
    if omega1.degree() < 1 {
        return Err(Error::BadDegree("first factor needs positive degree".into()));
    }
    let product = Chart::product(format!("{}x{}", m1.name(), m2.name()), m1, m2)?;
    let k = omega1.degree() - 1 + omega2.degree();
    let w2 = lift_section(&CourantSection::from_form(omega2.clone())?, &product)?.form().clone();
    let sections = (0..m1.dim())
        .map(|i| {
            let x = MultiVectorField::partial(m1, i);
            let a = interior_product(&x, omega1)?;
            let s = lift_section(&CourantSection::new(x, DiffForm::zero(m1, a.degree().max(1)))?, &product)?;
            let a = if a.degree() == 0 {
                w2.scale(&product.conform(&a.as_scalar().expect("degree 0"))?)
            } else {
                let lifted = lift_section(&CourantSection::from_form(a)?, &product)?.form().clone();
                wedge(&lifted, &w2)?
            };
            CourantSection::new(s.vector().clone(), a)
        })
        .collect::<Result<Vec<_>>>()?;
    SubbundleFrame::new(&product, k, sections)
}

fn suffixed(chart: &Chart, suffix: usize) -> Vec<String> {
    chart.coords().iter().map(|c| format!("{c}_{suffix}")).collect()
}

/// `M×M ⇉ M` with `s(x,y) = y`, `t(x,y) = x`, and `ω = p₁*ω₀ − p₂*ω₀`.
pub fn pair_groupoid(omega0: &DiffForm) -> Result<(GroupoidChart, DiffForm)> {
    let m = omega0.chart();
    let n = m.dim();
    let g = Chart::new(format!("{}^2", m.name()), &[suffixed(m, 1), suffixed(m, 2)].concat())?;
    let p = Chart::new(format!("{}^3", m.name()), &[suffixed(m, 1), suffixed(m, 2), suffixed(m, 3)].concat())?;
    let range = |a: usize| (a * n..(a + 1) * n).collect::<Vec<_>>();
    let cat = |parts: &[usize]| parts.iter().flat_map(|&a| range(a)).collect::<Vec<_>>();
    let p1 = SmoothMap::projection(&g, m, &range(0))?;
    let p2 = SmoothMap::projection(&g, m, &range(1))?;
    let diagonal: Vec<RationalFunction> = (0..2 * n).map(|i| m.coordinate(i % n)).collect();
    let eps = SmoothMap::new(m, &g, diagonal)?;
    let gc = GroupoidChart::new(
        &g,
        m,
        p2.clone(),
        p1.clone(),
        eps,
        SmoothMap::projection(&g, &g, &cat(&[1, 0]))?,
        SmoothMap::projection(&p, &g, &cat(&[0, 1]))?,
        SmoothMap::projection(&p, &g, &cat(&[1, 2]))?,
        SmoothMap::projection(&p, &g, &cat(&[0, 2]))?,
    )?
    .with_inverse_pair(SmoothMap::projection(&g, &p, &cat(&[0, 1]).into_iter().chain(range(0)).collect::<Vec<_>>())?)?;
    let complement = (0..n)
        .map(|i| (0..2 * n).map(|j| if i == j { m.one() } else { m.zero() }).collect())
        .collect();
    let right = (0..n).map(|i| MultiVectorField::partial(&g, i)).collect();
    let gc = gc.with_unit_complement(complement)?.with_right_ext(right)?;
    let omega = p1.pullback(omega0)?.sub(&p2.pullback(omega0)?)?;
    Ok((gc, omega))
}

/// Total space of a constant-coefficient vertical subbundle of `∧ᵏT*Rⁿ`
/// under fibrewise addition, with the pullback of `ω_can`.
pub fn vb_groupoid(l: &SubbundleFrame) -> Result<(GroupoidChart, DiffForm)> {
    let base = l.chart();
    let (n, k, r) = (base.dim(), l.k(), l.rank());
    for (i, s) in l.sections().iter().enumerate() {
        if !s.vector().is_zero() || s.form().terms().values().any(|c| c.as_constant().is_none()) {
            return Err(Error::NonConstantFrame(i));
        }
    }
    let fiber: Vec<String> = (1..=r).map(|i| format!("c{i}")).collect();
    let names = |suffixes: &[Option<usize>]| -> Vec<String> {
        let mut v: Vec<String> = base.coords().to_vec();
        for s in suffixes {
            v.extend(fiber.iter().map(|c| match s {
                Some(s) => format!("{c}_{s}"),
                None => c.clone(),
            }));
        }
        v
    };
    let g = Chart::new(format!("E({})", base.name()), &names(&[None]))?;
    let p = Chart::new(format!("E2({})", base.name()), &names(&[Some(1), Some(2)]))?;
    let basei: Vec<usize> = (0..n).collect();
    let proj = SmoothMap::projection(&g, base, &basei)?;
    let mut eps = (0..n).map(|i| base.coordinate(i)).collect::<Vec<_>>();
    eps.extend((0..r).map(|_| base.zero()));
    let inv = (0..n + r).map(|i| if i < n { g.coordinate(i) } else { -&g.coordinate(i) }).collect();
    let pr = |a: usize| {
        SmoothMap::projection(&p, &g, &basei.iter().copied().chain((0..r).map(|i| n + a * r + i)).collect::<Vec<_>>())
    };
    let mult = (0..n + r)
        .map(|i| if i < n { p.coordinate(i) } else { &p.coordinate(i) + &p.coordinate(i + r) })
        .collect();
    let pair = (0..n + 2 * r)
        .map(|i| if i < n + r { g.coordinate(i) } else { -&g.coordinate(i - r) })
        .collect();
    let complement = (0..r)
        .map(|i| (0..n + r).map(|j| if j == n + i { base.one() } else { base.zero() }).collect())
        .collect();
    let right = (0..r).map(|i| MultiVectorField::partial(&g, n + i)).collect();
    let gc = GroupoidChart::new(
        &g,
        base,
        proj.clone(),
        proj,
        SmoothMap::new(base, &g, eps)?,
        SmoothMap::new(&g, &g, inv)?,
        pr(0)?,
        pr(1)?,
        SmoothMap::new(&p, &g, mult)?,
    )?
    .with_inverse_pair(SmoothMap::new(&g, &p, pair)?)?
    .with_unit_complement(complement)?
    .with_right_ext(right)?;

    let can = canonical_multiphase(n, k)?;
    let mut incl: Vec<RationalFunction> = (0..n).map(|i| g.coordinate(i)).collect();
    for t in increasing_tuples(n, k) {
        let mut comp = g.zero();
        for (i, s) in l.sections().iter().enumerate() {
            let c = s.form().coeff(&t);
            if !c.is_zero() {
                comp = &comp + &(&g.conform(&c)? * &g.coordinate(n + i));
            }
        }
        incl.push(comp);
    }
    let iota = SmoothMap::new(&g, &can.chart, incl)?;
    let omega = iota.pullback(&can.omega)?;
    Ok((gc, omega))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::{check_im_form, check_im_nondeg};
    use crate::calculus::parse_form;
    use crate::courant::{check_nondeg_l, is_involutive, is_isotropic};
    use crate::groupoid::{check_groupoid_axioms, check_multiplicative, check_unit_inversion, induced_im_form};
    use crate::kplectic::{check_nondegenerate, is_closed};

    #[test]
    fn multiphase_shapes() {
        let m = canonical_multiphase(1, 1).unwrap();
        assert_eq!(m.omega.to_string(), "-d(q1)^d(p1)");
        let m = canonical_multiphase(3, 2).unwrap();
        assert_eq!(m.chart.dim(), 6);
        assert_eq!(m.fiber_index(&[0, 2]), Some(4));
        assert!(is_closed(&m.omega).passed());
        assert!(check_nondegenerate(&PlecticCandidate::generic(m.omega).unwrap()).unwrap().passed());
        let m = canonical_multiphase(2, 2).unwrap();
        assert_eq!(m.chart.dim(), 3);
        assert!(matches!(canonical_multiphase(1, 3), Err(Error::BadDegree(_))));
    }

    #[test]
    fn hyperkahler() {
        for w in hyperkahler_forms() {
            assert!(check_nondegenerate(&PlecticCandidate::generic(w).unwrap()).unwrap().passed());
        }
        let h = flat_hyperkahler();
        assert_eq!(h.omega().to_string(), "6*d(x0)^d(x1)^d(x2)^d(x3)");
        assert!(check_nondegenerate(&h).unwrap().passed());
        let [a, b, _] = hyperkahler_forms();
        assert!(wedge(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn chevalley_eilenberg() {
        let so3 = CEComplex::so3();
        let ch = so3.chart();
        assert_eq!(ce_differential(&so3, &DiffForm::dx(&ch, 0)).unwrap(), parse_form(&ch, "-d(e2)^d(e3)").unwrap());
        for i in 0..3 {
            let d = ce_differential(&so3, &DiffForm::dx(&ch, i)).unwrap();
            assert!(ce_differential(&so3, &d).unwrap().is_zero());
        }
        let cartan = ce_cartan(&so3).unwrap();
        assert_eq!(cartan.h.to_string(), "d(e1)^d(e2)^d(e3)");
        assert!(cartan.dh.is_zero());
        assert!(cartan.nondegenerate.passed());
        let bad = CEComplex::corrupted_so3();
        assert!(bad.jacobi_defect().is_some());
        assert!(matches!(ce_cartan(&bad), Err(Error::JacobiFails)));
        let d2 = (0..3).any(|i| {
            let d = ce_differential(&bad, &DiffForm::dx(&bad.chart(), i)).unwrap();
            !ce_differential(&bad, &d).unwrap().is_zero()
        });
        assert!(d2);
        let ab = ce_cartan(&CEComplex::abelian(3)).unwrap();
        assert!(ab.h.is_zero() && !ab.nondegenerate.passed());
        // a Killing form is always invariant; here it is degenerate and H vanishes
        let solv = CEComplex::solvable2();
        assert!(solv.pairing_invariant());
        assert!(ce_cartan(&solv).unwrap().h.is_zero());
    }

    #[test]
    fn graphs() {
        let c = Chart::new("M", &["x", "y", "z"]).unwrap();
        let l = graph_of_form(&parse_form(&c, "x*d(y)^d(z)").unwrap()).unwrap();
        assert!(is_isotropic(&l).unwrap().passed());
        assert!(!is_involutive(&l).unwrap().passed());
        let pi = crate::calculus::parse_multivector(&c, "e(x)^e(y)^e(z)").unwrap();
        let l = graph_of_top_multivector(&pi).unwrap();
        assert!(is_isotropic(&l).unwrap().passed());
        assert!(is_involutive(&l).unwrap().passed());
        assert!(check_nondeg_l(&l, &Mode::Generic).unwrap().passed());
        let v = vertical_subbundle(&c, 2, &[parse_form(&c, "d(x)^d(y)").unwrap()]).unwrap();
        assert!(!check_nondeg_l(&v, &Mode::Generic).unwrap().passed());
    }

    #[test]
    fn scaled() {
        let m = canonical_multiphase(3, 2).unwrap();
        let n = Chart::new("N", &["t1", "t2"]).unwrap();
        for (f, ok) in [("1", true), ("5", true), ("t1", false)] {
            let l = scaled_family(&n.scalar(f).unwrap(), &n, &m.omega).unwrap();
            assert_eq!(l.rank(), 7);
            assert_eq!(is_involutive(&l).unwrap().passed(), ok, "f = {f}");
        }
    }

    #[test]
    fn wedge_structure() {
        let a = Chart::new("A", &["x1", "y1"]).unwrap();
        let b = Chart::new("B", &["x2", "y2"]).unwrap();
        let l = wedge_product_structure(
            &parse_form(&a, "d(x1)^d(y1)").unwrap(),
            &parse_form(&b, "d(x2)^d(y2)").unwrap(),
        )
        .unwrap();
        assert_eq!(l.k(), 3);
        assert!(is_isotropic(&l).unwrap().passed());
        assert!(is_involutive(&l).unwrap().passed());
        assert!(check_nondeg_l(&l, &Mode::Generic).unwrap().passed());
    }

    #[test]
    fn groupoids() {
        let m = canonical_multiphase(3, 2).unwrap();
        let (g, w) = pair_groupoid(&m.omega).unwrap();
        assert!(check_groupoid_axioms(&g).unwrap().passed());
        assert!(check_multiplicative(&g, &w).unwrap().passed());
        assert!(check_unit_inversion(&g, &w).unwrap().passed());
        let mu = induced_im_form(&g, &w).unwrap();
        assert!(check_im_form(&mu).unwrap().passed());

        let c = Chart::new("R3", &["x", "y", "z"]).unwrap();
        let (g, w) = vb_groupoid(&full_vertical(&c, 2).unwrap()).unwrap();
        assert!(check_groupoid_axioms(&g).unwrap().passed());
        assert!(check_multiplicative(&g, &w).unwrap().passed());
        let mu = induced_im_form(&g, &w).unwrap();
        assert!(check_im_form(&mu).unwrap().passed());
        assert!(check_im_nondeg(&mu, &Mode::Generic).unwrap().passed());
        assert!(check_nondegenerate(&PlecticCandidate::generic(w).unwrap()).unwrap().passed());
    }
}
