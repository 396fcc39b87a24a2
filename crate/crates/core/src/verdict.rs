//! Check outcomes with explicit validity labels and residual evidence.

use std::fmt;

use crate::calculus::{DiffForm, MultiVectorField};
use crate::courant::CourantSection;
use crate::error::Result;
use crate::linalg::{merge_loci, numeric_kernel, rref, SymMatrix};
use crate::scalar::{Polynomial, Rational, RationalFunction, SamplePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// Not evaluated because a prerequisite item failed.
    Skipped,
}

/// Scope in which a verdict is certified.
#[derive(Clone, Debug, PartialEq)]
pub enum Validity {
    /// An exact identity in the fraction field.
    Identical,
    /// Holds off the zero sets of the listed polynomials.
    Generic { locus: Vec<Polynomial> },
    /// Checked exactly at the listed points only.
    Sampled { points: Vec<SamplePoint> },
    /// Both a generic certificate and pointwise checks.
    GenericAndSampled { locus: Vec<Polynomial>, points: Vec<SamplePoint> },
}

impl Validity {
    pub fn generic(locus: Vec<Polynomial>) -> Self {
        Validity::Generic { locus }
    }

    pub fn locus(&self) -> &[Polynomial] {
        match self {
            Validity::Generic { locus } | Validity::GenericAndSampled { locus, .. } => locus,
            _ => &[],
        }
    }

    pub fn points(&self) -> &[SamplePoint] {
        match self {
            Validity::Sampled { points } | Validity::GenericAndSampled { points, .. } => points,
            _ => &[],
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Validity::Identical => "identical",
            Validity::Generic { .. } => "generic",
            Validity::Sampled { .. } => "sampled",
            Validity::GenericAndSampled { .. } => "generic+sampled",
        }
    }

    /// Weakest common scope of two verdicts.
    pub fn merge(&self, other: &Validity) -> Validity {
        let mut locus = self.locus().to_vec();
        merge_loci(&mut locus, other.locus());
        let mut points = self.points().to_vec();
        for p in other.points() {
            if !points.contains(p) {
                points.push(p.clone());
            }
        }
        let generic = !matches!(self, Validity::Identical | Validity::Sampled { .. })
            || !matches!(other, Validity::Identical | Validity::Sampled { .. });
        let sampled = !points.is_empty()
            || matches!(self, Validity::Sampled { .. })
            || matches!(other, Validity::Sampled { .. });
        match (generic, sampled) {
            (false, false) => Validity::Identical,
            (true, false) => Validity::Generic { locus },
            (false, true) => Validity::Sampled { points },
            (true, true) => Validity::GenericAndSampled { locus, points },
        }
    }
}

/// Counterexample attached to a failing check.
#[derive(Clone, Debug)]
pub enum Residual {
    Scalar(RationalFunction),
    Form(DiffForm),
    Vector(MultiVectorField),
    Section(CourantSection),
    Components(Vec<RationalFunction>),
    Numeric(Vec<Rational>),
    Text(String),
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Scalar(s) => write!(f, "{s}"),
            Residual::Form(a) => write!(f, "{a}"),
            Residual::Vector(x) => write!(f, "{x}"),
            Residual::Section(s) => write!(f, "{s}"),
            Residual::Components(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            Residual::Numeric(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            Residual::Text(t) => write!(f, "{t}"),
        }
    }
}

/// Result of a check, possibly itemized into sub-checks.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub label: String,
    pub outcome: Outcome,
    pub validity: Validity,
    pub residual: Option<Residual>,
    pub detail: Option<String>,
    pub items: Vec<Verdict>,
}

impl Verdict {
    pub fn pass(label: impl Into<String>, validity: Validity) -> Self {
        Verdict {
            label: label.into(),
            outcome: Outcome::Pass,
            validity,
            residual: None,
            detail: None,
            items: Vec::new(),
        }
    }

    pub fn fail(label: impl Into<String>, validity: Validity, residual: Option<Residual>) -> Self {
        Verdict {
            label: label.into(),
            outcome: Outcome::Fail,
            validity,
            residual,
            detail: None,
            items: Vec::new(),
        }
    }

    pub fn skipped(label: impl Into<String>, reason: impl Into<String>) -> Self {
        Verdict {
            label: label.into(),
            outcome: Outcome::Skipped,
            validity: Validity::Identical,
            residual: None,
            detail: Some(reason.into()),
            items: Vec::new(),
        }
    }

    /// Verdict of an exact identity check: passes iff `residual` is `None`.
    pub fn identity(label: impl Into<String>, residual: Option<Residual>) -> Self {
        match residual {
            None => Verdict::pass(label, Validity::Identical),
            Some(r) => Verdict::fail(label, Validity::Identical, Some(r)),
        }
    }

    /// Combines sub-checks; passes iff every item passes. The first failing
    /// item's residual is lifted to the top level.
    pub fn all(label: impl Into<String>, items: Vec<Verdict>) -> Self {
        let mut validity = Validity::Identical;
        for it in &items {
            validity = validity.merge(&it.validity);
        }
        let failed = items.iter().find(|v| v.outcome != Outcome::Pass);
        let outcome = if failed.is_some() { Outcome::Fail } else { Outcome::Pass };
        let residual = failed.and_then(|v| v.residual.clone());
        Verdict { label: label.into(), outcome, validity, residual, detail: None, items }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn item(&self, label: &str) -> Option<&Verdict> {
        self.items.iter().find(|v| v.label == label)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIP",
        };
        write!(f, "{tag} {} [{}]", self.label, self.validity.label())?;
        if let Some(r) = &self.residual {
            write!(f, " residual: {r}")?;
        }
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

/// How rank conditions are certified.
#[derive(Clone, Debug, PartialEq)]
pub enum Mode {
    Generic,
    Sampled(Vec<SamplePoint>),
    Both(Vec<SamplePoint>),
}

impl Mode {
    pub fn points(&self) -> &[SamplePoint] {
        match self {
            Mode::Generic => &[],
            Mode::Sampled(p) | Mode::Both(p) => p,
        }
    }

    pub fn generic(&self) -> bool {
        !matches!(self, Mode::Sampled(_))
    }
}

/// Checks that the linear map `m` (one column per unknown) is injective.
/// Generic mode reads the kernel off the rref and reports the pivot loci;
/// sampled mode computes the exact kernel at every point. A failing verdict
/// carries one kernel vector, mapped through `witness`.
pub fn trivial_kernel(
    label: &str,
    m: &SymMatrix,
    mode: &Mode,
    witness: impl Fn(&[RationalFunction]) -> Residual,
) -> Result<Verdict> {
    let mut items = Vec::new();
    if mode.generic() {
        let e = rref(m);
        let validity = if e.pivot_denominators.is_empty() {
            Validity::Identical
        } else {
            Validity::generic(e.pivot_denominators.clone())
        };
        let detail = format!("generic rank {} of {}", e.rank, m.cols());
        let v = match e.kernel_basis.first() {
            None => Verdict::pass("generic", validity),
            Some(k) => Verdict::fail("generic", validity, Some(witness(k))),
        };
        items.push(v.with_detail(detail));
    }
    if !mode.points().is_empty() {
        let pts = mode.points().to_vec();
        let mut failure = None;
        for pt in &pts {
            let numeric = m.evaluate(pt)?;
            let kernel = numeric_kernel(&numeric, m.cols());
            if let Some(k) = kernel.into_iter().next() {
                failure = Some((pt.clone(), k));
                break;
            }
        }
        let validity = Validity::Sampled { points: pts };
        items.push(match failure {
            None => Verdict::pass("sampled", validity).with_detail(format!("full rank {} at every point", m.cols())),
            Some((pt, k)) => Verdict::fail("sampled", validity, Some(Residual::Numeric(k)))
                .with_detail(format!("kernel at {pt}")),
        });
    }
    if items.len() == 1 {
        let mut v = items.pop().expect("one item");
        v.label = label.to_string();
        return Ok(v);
    }
    Ok(Verdict::all(label, items))
}
