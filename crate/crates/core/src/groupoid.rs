//! Lie groupoids presented by polynomial structure maps on charts.

use crate::algebroid::{IMFormMap, LieAlgebroid};
use crate::calculus::{interior_product, lie_bracket_vf, Chart, DiffForm, MultiVectorField, SmoothMap};
use crate::error::{Error, Result};
use crate::linalg::{in_span, SpanMembership, SymMatrix};
use crate::scalar::RationalFunction;
use crate::verdict::{Residual, Verdict};

/// Structure maps of `G ⇉ M`. Composable pairs are parametrized by the
/// chart `P` through `pr1`, `pr2`; `mult` is multiplication on `P`.
///
/// `unit_complement[i]` is a tangent vector to `G` along `ε(M)`, given by its
/// `dim G` components as functions on `M`. `right_ext[i]` is a vector field on
/// `G` extending it.
#[derive(Clone, Debug)]
pub struct GroupoidChart {
    pub g: Chart,
    pub m: Chart,
    pub s: SmoothMap,
    pub t: SmoothMap,
    pub eps: SmoothMap,
    pub inv: SmoothMap,
    pub p: Chart,
    pub pr1: SmoothMap,
    pub pr2: SmoothMap,
    pub mult: SmoothMap,
    /// `G → P`, `g ↦ (g, inv(g))`.
    pub inverse_pair: Option<SmoothMap>,
    pub unit_complement: Option<Vec<Vec<RationalFunction>>>,
    pub right_ext: Option<Vec<MultiVectorField>>,
    /// Declared structure functions of the algebroid frame.
    pub structure: Option<Vec<Vec<Vec<RationalFunction>>>>,
}

fn expect_map(name: &str, f: &SmoothMap, source: &Chart, target: &Chart) -> Result<()> {
    if f.source() != source || f.target() != target {
        return Err(Error::BadMap(format!("{name}: {} -> {} expected", source.name(), target.name())));
    }
    Ok(())
}

impl GroupoidChart {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        g: &Chart,
        m: &Chart,
        s: SmoothMap,
        t: SmoothMap,
        eps: SmoothMap,
        inv: SmoothMap,
        pr1: SmoothMap,
        pr2: SmoothMap,
        mult: SmoothMap,
    ) -> Result<Self> {
        let p = pr1.source().clone();
        expect_map("s", &s, g, m)?;
        expect_map("t", &t, g, m)?;
        expect_map("eps", &eps, m, g)?;
        expect_map("inv", &inv, g, g)?;
        expect_map("pr1", &pr1, &p, g)?;
        expect_map("pr2", &pr2, &p, g)?;
        expect_map("m", &mult, &p, g)?;
        Ok(GroupoidChart {
            g: g.clone(),
            m: m.clone(),
            s,
            t,
            eps,
            inv,
            p,
            pr1,
            pr2,
            mult,
            inverse_pair: None,
            unit_complement: None,
            right_ext: None,
            structure: None,
        })
    }

    pub fn with_inverse_pair(mut self, f: SmoothMap) -> Result<Self> {
        expect_map("inverse pair", &f, &self.g, &self.p)?;
        self.inverse_pair = Some(f);
        Ok(self)
    }

    pub fn with_unit_complement(mut self, vectors: Vec<Vec<RationalFunction>>) -> Result<Self> {
        let mut out = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != self.g.dim() {
                return Err(Error::BadParameters(format!("unit complement vectors need {} components", self.g.dim())));
            }
            out.push(v.iter().map(|c| self.m.conform(c)).collect::<Result<Vec<_>>>()?);
        }
        self.unit_complement = Some(out);
        Ok(self)
    }

    pub fn with_right_ext(mut self, fields: Vec<MultiVectorField>) -> Result<Self> {
        for x in &fields {
            self.g.check_same(x.chart())?;
            if x.degree() != 1 {
                return Err(Error::DegreeMismatch { expected: 1, found: x.degree() });
            }
        }
        self.right_ext = Some(fields);
        Ok(self)
    }

    pub fn with_structure(mut self, c: Vec<Vec<Vec<RationalFunction>>>) -> Self {
        self.structure = Some(c);
        self
    }

    /// Rank of the algebroid frame, if a unit complement is present.
    pub fn rank(&self) -> Option<usize> {
        self.unit_complement.as_ref().map(Vec::len)
    }
}

fn map_identity(label: &str, a: &SmoothMap, b: &SmoothMap) -> Result<Verdict> {
    let d = a.difference(b)?;
    let nonzero = d.iter().any(|x| !x.is_zero());
    Ok(Verdict::identity(label, nonzero.then_some(Residual::Components(d))))
}

/// Every declared compatibility of the structure maps, as exact polynomial
/// identities.
pub fn check_groupoid_axioms(g: &GroupoidChart) -> Result<Verdict> {
    let id_m = SmoothMap::identity(&g.m);
    let id_g = SmoothMap::identity(&g.g);
    let mut items = vec![
        map_identity("s.eps = id", &g.s.compose(&g.eps)?, &id_m)?,
        map_identity("t.eps = id", &g.t.compose(&g.eps)?, &id_m)?,
        map_identity("composable", &g.s.compose(&g.pr1)?, &g.t.compose(&g.pr2)?)?,
        map_identity("s.m = s.pr2", &g.s.compose(&g.mult)?, &g.s.compose(&g.pr2)?)?,
        map_identity("t.m = t.pr1", &g.t.compose(&g.mult)?, &g.t.compose(&g.pr1)?)?,
        map_identity("s.inv = t", &g.s.compose(&g.inv)?, &g.t)?,
        map_identity("t.inv = s", &g.t.compose(&g.inv)?, &g.s)?,
        map_identity("inv.inv = id", &g.inv.compose(&g.inv)?, &id_g)?,
    ];
    if let Some(ip) = &g.inverse_pair {
        items.push(map_identity("pair first", &g.pr1.compose(ip)?, &id_g)?);
        items.push(map_identity("pair second", &g.pr2.compose(ip)?, &g.inv)?);
        items.push(map_identity("m(g, inv g) = eps(t g)", &g.mult.compose(ip)?, &g.eps.compose(&g.t)?)?);
    }
    if let (Some(uc), Some(re)) = (&g.unit_complement, &g.right_ext) {
        if uc.len() != re.len() {
            return Err(Error::BadParameters("unit complement and right extensions differ in length".into()));
        }
        for (i, (u, x)) in uc.iter().zip(re).enumerate() {
            let along: Vec<RationalFunction> =
                x.components().iter().map(|c| g.eps.pull_scalar(c)).collect::<Result<_>>()?;
            let d: Vec<RationalFunction> = along.iter().zip(u).map(|(a, b)| a - b).collect();
            let nonzero = d.iter().any(|x| !x.is_zero());
            items.push(Verdict::identity(format!("right ext {i} along units"), nonzero.then_some(Residual::Components(d))));
        }
    }
    Ok(Verdict::all("groupoid axioms", items))
}

/// `m*ω = pr₁*ω + pr₂*ω`.
pub fn check_multiplicative(g: &GroupoidChart, omega: &DiffForm) -> Result<Verdict> {
    g.g.check_same(omega.chart())?;
    let d = g.mult.pullback(omega)?.sub(&g.pr1.pullback(omega)?.add(&g.pr2.pullback(omega)?)?)?;
    Ok(Verdict::identity("multiplicative", (!d.is_zero()).then_some(Residual::Form(d))))
}

/// `ε*ω = 0` and `inv*ω = −ω`.
pub fn check_unit_inversion(g: &GroupoidChart, omega: &DiffForm) -> Result<Verdict> {
    g.g.check_same(omega.chart())?;
    let e = g.eps.pullback(omega)?;
    let i = g.inv.pullback(omega)?.add(omega)?;
    Ok(Verdict::all(
        "unit and inversion",
        vec![
            Verdict::identity("eps*omega = 0", (!e.is_zero()).then_some(Residual::Form(e))),
            Verdict::identity("inv*omega = -omega", (!i.is_zero()).then_some(Residual::Form(i))),
        ],
    ))
}

fn complement(g: &GroupoidChart) -> Result<&Vec<Vec<RationalFunction>>> {
    g.unit_complement.as_ref().ok_or(Error::MissingUnitComplement)
}

/// Jacobian of `f: G → M` restricted to the units, as functions on `M`.
fn jacobian_along_units(g: &GroupoidChart, f: &SmoothMap) -> Result<SymMatrix> {
    let jac = f.jacobian();
    let rows = jac
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|c| g.eps.pull_scalar(c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(SymMatrix::from_rows(g.m.coords().clone(), rows))
}

/// `A = ker(ds)|_M` framed by the unit complement, anchor `dt`.
pub fn extract_algebroid(g: &GroupoidChart) -> Result<LieAlgebroid> {
    let uc = complement(g)?;
    let r = uc.len();
    let ds = jacobian_along_units(g, &g.s)?;
    for (i, u) in uc.iter().enumerate() {
        if ds.mul_vec(u).iter().any(|x| !x.is_zero()) {
            return Err(Error::ComplementNotInKernel(i));
        }
    }
    let dt = jacobian_along_units(g, &g.t)?;
    let columns: Vec<Vec<RationalFunction>> = uc.iter().map(|u| dt.mul_vec(u)).collect();
    let anchor = if r == 0 {
        SymMatrix::zeros(g.m.coords().clone(), g.m.dim(), 0)
    } else {
        SymMatrix::from_columns(g.m.coords().clone(), g.m.dim(), &columns)
    };
    let from_ext = match &g.right_ext {
        Some(re) => Some(structure_from_right_ext(g, uc, re)?),
        None => None,
    };
    let structure = match (from_ext, &g.structure) {
        (Some(c), Some(declared)) => {
            let agree = c.iter().flatten().flatten().zip(declared.iter().flatten().flatten()).all(|(a, b)| {
                g.m.conform(b).map(|b| (a - &b).is_zero()).unwrap_or(false)
            });
            if !agree || declared.len() != r {
                return Err(Error::BadParameters("declared structure functions disagree with right extensions".into()));
            }
            c
        }
        (Some(c), None) => c,
        (None, Some(declared)) => declared.clone(),
        (None, None) => return Err(Error::MissingRightExtension),
    };
    LieAlgebroid::new(&g.m, anchor, structure)
}

fn structure_from_right_ext(
    g: &GroupoidChart,
    uc: &[Vec<RationalFunction>],
    re: &[MultiVectorField],
) -> Result<Vec<Vec<Vec<RationalFunction>>>> {
    let r = uc.len();
    if re.len() != r {
        return Err(Error::BadParameters("unit complement and right extensions differ in length".into()));
    }
    let mut c = vec![vec![Vec::new(); r]; r];
    for i in 0..r {
        for j in 0..r {
            let b = lie_bracket_vf(&re[i], &re[j])?;
            let along: Vec<RationalFunction> =
                b.components().iter().map(|x| g.eps.pull_scalar(x)).collect::<Result<_>>()?;
            if along.iter().all(RationalFunction::is_zero) {
                c[i][j] = vec![g.m.zero(); r];
                continue;
            }
            match in_span(g.m.coords(), uc, &along) {
                SpanMembership::Member(coeffs) => c[i][j] = coeffs,
                SpanMembership::Residual(_) => {
                    return Err(Error::BadParameters(format!(
                        "bracket of right extensions {i}, {j} leaves the unit complement"
                    )))
                }
            }
        }
    }
    Ok(c)
}

/// `μ(eᵢ)(X₁,…,X_k) = ω(uᵢ, dε X₁, …, dε X_k)` along the units.
pub fn induced_im_form(g: &GroupoidChart, omega: &DiffForm) -> Result<IMFormMap> {
    g.g.check_same(omega.chart())?;
    if omega.degree() == 0 {
        return Err(Error::BadDegree("omega must have positive degree".into()));
    }
    let k = omega.degree() - 1;
    let uc = complement(g)?;
    let a = extract_algebroid(g)?;
    // ε* i_{∂_a} ω for each direction a of G
    let slices: Vec<DiffForm> = (0..g.g.dim())
        .map(|a| g.eps.pullback(&interior_product(&MultiVectorField::partial(&g.g, a), omega)?))
        .collect::<Result<_>>()?;
    let mut mu = Vec::with_capacity(uc.len());
    for u in uc {
        let mut acc = DiffForm::zero(&g.m, k);
        for (c, s) in u.iter().zip(&slices) {
            if !c.is_zero() {
                acc = acc.add(&s.scale(c))?;
            }
        }
        mu.push(acc);
    }
    IMFormMap::new(a, k, mu)
}

/// `i_{u^r}ω = t*μ(u)` and `i_{ū^l}ω = −s*μ(u)` with `ū^l = inv_*(u^r)`.
pub fn check_right_translation(g: &GroupoidChart, omega: &DiffForm, mu: &IMFormMap) -> Result<Verdict> {
    let re = g.right_ext.as_ref().ok_or(Error::MissingRightExtension)?;
    if re.len() != mu.forms().len() {
        return Err(Error::BadParameters("right extensions and mu differ in length".into()));
    }
    let mut right = Vec::new();
    let mut left = Vec::new();
    for (i, (x, m)) in re.iter().zip(mu.forms()).enumerate() {
        let d = interior_product(x, omega)?.sub(&g.t.pullback(m)?)?;
        right.push(Verdict::identity(format!("e{i}"), (!d.is_zero()).then_some(Residual::Form(d))));
        let xl = g.inv.push_forward(&g.inv, x)?;
        let d = interior_product(&xl, omega)?.add(&g.s.pullback(m)?)?;
        left.push(Verdict::identity(format!("e{i}"), (!d.is_zero()).then_some(Residual::Form(d))));
    }
    Ok(Verdict::all(
        "right translation",
        vec![Verdict::all("right invariant", right), Verdict::all("left invariant", left)],
    ))
}
