use thiserror::Error;

/// Errors raised by the engine.
///
/// Verification failures are not errors: they come back as a failing
/// [`Verdict`](crate::verdict::Verdict). Errors signal malformed input or an
/// operation whose precondition does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("coordinate `{0}` is not assigned by the sample point")]
    UnassignedCoordinate(String),
    #[error("pole at sample point {0}")]
    PoleAtPoint(String),
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("duplicate coordinate `{0}`")]
    DuplicateCoordinate(String),
    #[error("cannot contract degree {vector} multivector into degree {form} form")]
    DegreeUnderflow { vector: usize, form: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for chart of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("form is degenerate: {0}")]
    Degenerate(String),
    #[error("form is not hamiltonian: {0}")]
    NotHamiltonian(String),
    #[error("frame sections are not generically independent (rank {rank} < {len})")]
    DependentFrame { rank: usize, len: usize },
    #[error("subbundle is not involutive: {0}")]
    NotInvolutive(String),
    #[error("projection onto the form part is not injective on the frame")]
    ProjectionNotInjective,
    #[error("form does not lie in the span of D")]
    NotInD,
    #[error("requested tangent vector is not in the leaf distribution at the point")]
    PointNotOnLeafSpan,
    #[error("groupoid has no unit complement")]
    MissingUnitComplement,
    #[error("groupoid has no right-invariant extensions")]
    MissingRightExtension,
    #[error("unit complement vector {0} is not in ker(ds) along the units")]
    ComplementNotInKernel(usize),
    #[error("bad degree: {0}")]
    BadDegree(String),
    #[error("structure constants violate the Jacobi identity")]
    JacobiFails,
    #[error("pairing is not invariant under the bracket")]
    PairingNotInvariant,
    #[error("structure functions are not antisymmetric at ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("frame element {0} has non-constant coefficients")]
    NonConstantFrame(usize),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogName(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("map does not satisfy {0}")]
    BadMap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
