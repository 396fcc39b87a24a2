use super::graded::Alternating;
use super::index::{increasing_tuples, sort_with_sign};
use super::{DiffForm, MultiVectorField};
use crate::error::{Error, Result};
use crate::scalar::RationalFunction;

fn wedge_raw(a: &Alternating, b: &Alternating) -> Result<Alternating> {
    a.chart.check_same(&b.chart)?;
    let mut out = Alternating::zero(&a.chart, a.degree + b.degree);
    for (i, ca) in &a.coeffs {
        for (j, cb) in &b.coeffs {
            let mut idx = i.clone();
            idx.extend_from_slice(j);
            out.accumulate(&idx, ca * cb);
        }
    }
    Ok(out)
}

/// Contracts `outer` (degree m) into the front slots of `inner` (degree k):
/// result_K = Σ_I outer^I inner_{I K}.
fn contract_front(outer: &Alternating, inner: &Alternating) -> Result<Alternating> {
    outer.chart.check_same(&inner.chart)?;
    if outer.degree > inner.degree {
        return Err(Error::DegreeUnderflow { vector: outer.degree, form: inner.degree });
    }
    let mut out = Alternating::zero(&inner.chart, inner.degree - outer.degree);
    for (j, cj) in &inner.coeffs {
        for (i, ci) in &outer.coeffs {
            if !i.iter().all(|x| j.contains(x)) {
                continue;
            }
            let rest: Vec<usize> = j.iter().copied().filter(|x| !i.contains(x)).collect();
            let mut front = i.clone();
            front.extend_from_slice(&rest);
            let Some((_, sign)) = sort_with_sign(&front) else { continue };
            let v = ci * cj;
            out.accumulate(&rest, if sign < 0 { -v } else { v });
        }
    }
    Ok(out)
}

pub fn wedge(a: &DiffForm, b: &DiffForm) -> Result<DiffForm> {
    Ok(DiffForm(wedge_raw(&a.0, &b.0)?))
}

pub fn wedge_vectors(a: &MultiVectorField, b: &MultiVectorField) -> Result<MultiVectorField> {
    Ok(MultiVectorField(wedge_raw(&a.0, &b.0)?))
}

/// Exterior derivative. Top-degree forms map to the zero form of degree
/// `dim + 1`.
pub fn exterior_derivative(a: &DiffForm) -> DiffForm {
    let chart = a.chart();
    let mut out = Alternating::zero(chart, a.degree() + 1);
    for (idx, c) in a.terms() {
        for j in 0..chart.dim() {
            if idx.contains(&j) {
                continue;
            }
            let dc = c.derive_index(j);
            let mut full = Vec::with_capacity(idx.len() + 1);
            full.push(j);
            full.extend_from_slice(idx);
            out.accumulate(&full, dc);
        }
    }
    DiffForm(out)
}

/// Front-slot interior product `i_X a`. Contraction into a 0-form is an
/// error rather than zero.
pub fn interior_product(x: &MultiVectorField, a: &DiffForm) -> Result<DiffForm> {
    if a.degree() == 0 || x.degree() == 0 {
        return Err(Error::DegreeUnderflow { vector: x.degree(), form: a.degree() });
    }
    Ok(DiffForm(contract_front(&x.0, &a.0)?))
}

/// Contraction of a form into the front slots of a multivector field,
/// `i_a π`. For a bivector, `i_{df} π` is the vector field `π(df, ·)`.
pub fn contract_form(a: &DiffForm, pi: &MultiVectorField) -> Result<MultiVectorField> {
    if a.degree() == 0 || pi.degree() == 0 {
        return Err(Error::DegreeUnderflow { vector: pi.degree(), form: a.degree() });
    }
    Ok(MultiVectorField(contract_front(&a.0, &pi.0)?))
}

/// Applies a vector field to a function: `X(f) = i_X df`.
pub fn directional(x: &MultiVectorField, f: &RationalFunction) -> Result<RationalFunction> {
    if x.degree() != 1 {
        return Err(Error::DegreeMismatch { expected: 1, found: x.degree() });
    }
    let f = x.chart().conform(f)?;
    let mut out = x.chart().zero();
    for (idx, c) in x.terms() {
        out = out + c * &f.derive_index(idx[0]);
    }
    Ok(out)
}

/// Cartan formula `L_X = d i_X + i_X d`; on functions only `i_X d` remains.
pub fn lie_derivative(x: &MultiVectorField, a: &DiffForm) -> Result<DiffForm> {
    x.chart().check_same(a.chart())?;
    if x.degree() != 1 {
        return Err(Error::DegreeMismatch { expected: 1, found: x.degree() });
    }
    let second = interior_product(x, &exterior_derivative(a))?;
    if a.degree() == 0 {
        return Ok(second);
    }
    exterior_derivative(&interior_product(x, a)?).add(&second)
}

/// Coordinate Lie bracket `[X,Y]^i = X^j ∂_j Y^i − Y^j ∂_j X^i`.
pub fn lie_bracket_vf(x: &MultiVectorField, y: &MultiVectorField) -> Result<MultiVectorField> {
    x.chart().check_same(y.chart())?;
    for v in [x, y] {
        if v.degree() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: v.degree() });
        }
    }
    let chart = x.chart();
    let comps: Vec<RationalFunction> = (0..chart.dim())
        .map(|i| {
            let xi = x.coeff(&[i]);
            let yi = y.coeff(&[i]);
            directional(x, &yi).expect("vector") - directional(y, &xi).expect("vector")
        })
        .collect();
    MultiVectorField::vector(chart, &comps)
}

/// Jacobiator of a bivector:
/// `J^{ijl} = {x_i,{x_j,x_l}} + {x_j,{x_l,x_i}} + {x_l,{x_i,x_j}}` with
/// `{f,g} = π(df,dg)`. Vanishes iff π is Poisson.
pub fn poisson_jacobiator(pi: &MultiVectorField) -> Result<MultiVectorField> {
    if pi.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: pi.degree() });
    }
    let chart = pi.chart();
    let n = chart.dim();
    let term = |a: usize, b: usize, c: usize| -> RationalFunction {
        let mut s = chart.zero();
        for m in 0..n {
            let p = pi.coeff(&[a, m]);
            if p.is_zero() {
                continue;
            }
            s = s + &p * &pi.coeff(&[b, c]).derive_index(m);
        }
        s
    };
    let mut out = Alternating::zero(chart, 3);
    for t in increasing_tuples(n, 3) {
        let (i, j, l) = (t[0], t[1], t[2]);
        let v = term(i, j, l) + term(j, l, i) + term(l, i, j);
        out.accumulate(&t, v);
    }
    Ok(MultiVectorField(out))
}

/// Value `a(X_1, …, X_k)` of a k-form on vector fields.
pub fn evaluate_on(a: &DiffForm, xs: &[MultiVectorField]) -> Result<RationalFunction> {
    if xs.len() != a.degree() {
        return Err(Error::DegreeMismatch { expected: a.degree(), found: xs.len() });
    }
    let mut cur = a.clone();
    for x in xs {
        cur = interior_product(x, &cur)?;
    }
    Ok(cur.as_scalar().expect("degree 0"))
}
