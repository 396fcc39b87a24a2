//! k-plectic forms: closedness, nondegeneracy, hamiltonian forms and the
//! semibracket.

use crate::calculus::index::increasing_tuples;
use crate::calculus::{exterior_derivative, interior_product, Chart, DiffForm, MultiVectorField};
use crate::error::{Error, Result};
use crate::linalg::{rref, solve_linear, LinearSolution, SymMatrix};
use crate::scalar::{Polynomial, RationalFunction};
use crate::verdict::{trivial_kernel, Mode, Residual, Validity, Verdict};

/// Global sign in the jacobiator identity
/// `{α,{β,γ}} + {γ,{α,β}} + {β,{γ,α}} = ε · (−d i_{X_α} i_{X_β} i_{X_γ} ω)`
/// under the front-slot interior product. Pinned by the brute-force oracle
/// in the test suite.
pub const JACOBIATOR_SIGN: i32 = 1;

/// A `(k+1)`-form offered as a k-plectic structure, with the mode used to
/// certify its rank conditions.
#[derive(Clone, Debug)]
pub struct PlecticCandidate {
    omega: DiffForm,
    mode: Mode,
}

impl PlecticCandidate {
    pub fn new(omega: DiffForm, mode: Mode) -> Result<Self> {
        let deg = omega.degree();
        if deg < 2 || deg > omega.chart().dim() {
            return Err(Error::BadDegree(format!(
                "a k-plectic form needs degree between 2 and {}, got {deg}",
                omega.chart().dim()
            )));
        }
        Ok(PlecticCandidate { omega, mode })
    }

    pub fn generic(omega: DiffForm) -> Result<Self> {
        PlecticCandidate::new(omega, Mode::Generic)
    }

    pub fn omega(&self) -> &DiffForm {
        &self.omega
    }

    pub fn chart(&self) -> &Chart {
        self.omega.chart()
    }

    /// The k in "k-plectic": degree of ω minus one.
    pub fn k(&self) -> usize {
        self.omega.degree() - 1
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        PlecticCandidate { omega: self.omega.clone(), mode }
    }
}

/// A hamiltonian form together with its vector field: `i_X ω = dα`.
#[derive(Clone, Debug)]
pub struct HamiltonianPair {
    pub alpha: DiffForm,
    pub x: MultiVectorField,
    /// Region of validity of the exact solve.
    pub locus: Vec<Polynomial>,
}

/// Outcome of [`hamiltonian_vector_field`].
#[derive(Clone, Debug)]
pub enum HamiltonianSolve {
    Hamiltonian(HamiltonianPair),
    /// `dα` is outside the image of `ω♯`; the certificate is a covector on
    /// the form coefficients annihilating the image but not `dα`.
    NotHamiltonian { certificate: Vec<RationalFunction>, locus: Vec<Polynomial> },
}

impl HamiltonianSolve {
    pub fn pair(self) -> Result<HamiltonianPair> {
        match self {
            HamiltonianSolve::Hamiltonian(p) => Ok(p),
            HamiltonianSolve::NotHamiltonian { .. } => {
                Err(Error::NotHamiltonian("d(alpha) is not in the image of omega-sharp".into()))
            }
        }
    }
}

pub fn is_closed(omega: &DiffForm) -> Verdict {
    let d = exterior_derivative(omega);
    Verdict::identity("closed", (!d.is_zero()).then_some(Residual::Form(d)))
}

/// Matrix of `ω♯: X ↦ i_X ω` with one column per coordinate vector field
/// and one row per increasing k-tuple.
pub fn sharp_matrix(omega: &DiffForm) -> Result<SymMatrix> {
    let chart = omega.chart();
    let n = chart.dim();
    if omega.degree() == 0 {
        return Err(Error::DegreeUnderflow { vector: 1, form: 0 });
    }
    let columns: Vec<Vec<RationalFunction>> = (0..n)
        .map(|j| Ok(interior_product(&MultiVectorField::partial(chart, j), omega)?.components()))
        .collect::<Result<_>>()?;
    let rows = increasing_tuples(n, omega.degree() - 1).len();
    Ok(SymMatrix::from_columns(chart.coords().clone(), rows, &columns))
}

pub fn check_nondegenerate(c: &PlecticCandidate) -> Result<Verdict> {
    let chart = c.chart().clone();
    let m = sharp_matrix(&c.omega)?;
    trivial_kernel("nondegenerate", &m, &c.mode, |k| {
        Residual::Vector(MultiVectorField::vector(&chart, k).expect("kernel length"))
    })
}

/// Exact solve of `i_X ω = dα`. A kernel in `ω♯` makes the solution
/// non-unique, which is an error.
pub fn hamiltonian_vector_field(c: &PlecticCandidate, alpha: &DiffForm) -> Result<HamiltonianSolve> {
    c.chart().check_same(alpha.chart())?;
    if alpha.degree() + 1 != c.omega.degree() - 1 {
        return Err(Error::DegreeMismatch { expected: c.k() - 1, found: alpha.degree() });
    }
    let m = sharp_matrix(&c.omega)?;
    let rhs = exterior_derivative(alpha).components();
    Ok(match solve_linear(&m, &rhs) {
        LinearSolution::Solution { x, kernel, locus } => {
            if !kernel.is_empty() {
                return Err(Error::Degenerate(format!("omega-sharp has a {}-dimensional kernel", kernel.len())));
            }
            let x = MultiVectorField::vector(c.chart(), &x)?;
            HamiltonianSolve::Hamiltonian(HamiltonianPair { alpha: alpha.clone(), x, locus })
        }
        LinearSolution::Inconsistent { certificate, locus } => HamiltonianSolve::NotHamiltonian { certificate, locus },
    })
}

fn pair_for(c: &PlecticCandidate, alpha: &DiffForm) -> Result<HamiltonianPair> {
    hamiltonian_vector_field(c, alpha)?.pair()
}

/// `{α,β} = i_{X_α} i_{X_β} ω`.
pub fn semibracket_pairs(c: &PlecticCandidate, a: &HamiltonianPair, b: &HamiltonianPair) -> Result<DiffForm> {
    interior_product(&a.x, &interior_product(&b.x, &c.omega)?)
}

pub fn semibracket(c: &PlecticCandidate, alpha: &DiffForm, beta: &DiffForm) -> Result<DiffForm> {
    semibracket_pairs(c, &pair_for(c, alpha)?, &pair_for(c, beta)?)
}

/// `i_{X_α} i_{X_β} i_{X_γ} ω`; `None` when ω has degree 2 and the triple
/// contraction is empty.
fn triple_contraction(
    c: &PlecticCandidate,
    a: &HamiltonianPair,
    b: &HamiltonianPair,
    g: &HamiltonianPair,
) -> Result<Option<DiffForm>> {
    if c.omega.degree() < 3 {
        return Ok(None);
    }
    let t = interior_product(&g.x, &c.omega)?;
    let t = interior_product(&b.x, &t)?;
    Ok(Some(interior_product(&a.x, &t)?))
}

/// Both sides of the jacobiator identity: `(J, ε·(−d i_{X_α}i_{X_β}i_{X_γ}ω))`.
/// Inner brackets are re-solved for their hamiltonian vector fields.
pub fn jacobiator_sides(
    c: &PlecticCandidate,
    alpha: &DiffForm,
    beta: &DiffForm,
    gamma: &DiffForm,
) -> Result<(DiffForm, DiffForm)> {
    let (a, b, g) = (pair_for(c, alpha)?, pair_for(c, beta)?, pair_for(c, gamma)?);
    let bg = pair_for(c, &semibracket_pairs(c, &b, &g)?)?;
    let ab = pair_for(c, &semibracket_pairs(c, &a, &b)?)?;
    let ga = pair_for(c, &semibracket_pairs(c, &g, &a)?)?;
    let lhs = semibracket_pairs(c, &a, &bg)?
        .add(&semibracket_pairs(c, &g, &ab)?)?
        .add(&semibracket_pairs(c, &b, &ga)?)?;
    let rhs = match triple_contraction(c, &a, &b, &g)? {
        Some(t) => exterior_derivative(&t).scale_int(-i64::from(JACOBIATOR_SIGN)),
        None => DiffForm::zero(c.chart(), lhs.degree()),
    };
    Ok((lhs, rhs))
}

pub fn jacobiator_check(
    c: &PlecticCandidate,
    alpha: &DiffForm,
    beta: &DiffForm,
    gamma: &DiffForm,
) -> Result<Verdict> {
    let (lhs, rhs) = jacobiator_sides(c, alpha, beta, gamma)?;
    let diff = lhs.sub(&rhs)?;
    Ok(Verdict::identity("jacobiator", (!diff.is_zero()).then_some(Residual::Form(diff))))
}

/// `{f,g} = ω(X_g, X_f)` for a symplectic ω, where `i_{X_f}ω = df`.
pub fn symplectic_poisson_bracket(
    omega: &DiffForm,
    f: &RationalFunction,
    g: &RationalFunction,
) -> Result<RationalFunction> {
    if omega.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: omega.degree() });
    }
    let c = PlecticCandidate::generic(omega.clone())?;
    if !rref(&sharp_matrix(omega)?).kernel_basis.is_empty() {
        return Err(Error::Degenerate("symplectic bracket needs a nondegenerate 2-form".into()));
    }
    let chart = c.chart();
    let xf = pair_for(&c, &DiffForm::scalar(chart, f)?)?;
    let xg = pair_for(&c, &DiffForm::scalar(chart, g)?)?;
    let v = semibracket_pairs(&c, &xf, &xg)?;
    Ok(v.as_scalar().expect("0-form"))
}

/// Validity label for a hamiltonian solve.
pub fn solve_validity(p: &HamiltonianPair) -> Validity {
    if p.locus.is_empty() {
        Validity::Identical
    } else {
        Validity::generic(p.locus.clone())
    }
}
