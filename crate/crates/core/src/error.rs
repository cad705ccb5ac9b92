use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: i32, found: i32 },

    #[error("differential does not square to zero (first nonzero block at source degree {degree})")]
    NotSquareZero { degree: i32 },

    #[error("subspace is not contained in the ambient subspace")]
    NotContained,

    #[error("map does not respect the given subquotients")]
    NotWellDefined,

    #[error("source/target mismatch in composition")]
    SourceTargetMismatch,

    #[error("map is not invertible in degree {degree}")]
    NotInvertible { degree: i32 },

    #[error("retract and multicomplex disagree: {0}")]
    Mismatch(String),

    #[error("invalid multicomplex: relation n = {n} fails")]
    InvalidMulticomplex { n: usize },

    #[error("series has the wrong constant term: {0}")]
    BadConstantTerm(&'static str),

    #[error("series live on different spaces")]
    SpaceMismatch,

    #[error("Hodge data fails: transferred operator of index {n} is nonzero")]
    HodgeDataFails { n: usize },

    #[error("bivector is not Poisson: [ω,ω] = {bracket}")]
    NotPoisson { bracket: String },

    #[error("pair is not Jacobi: {identity} fails ({residue})")]
    NotJacobi { identity: &'static str, residue: String },

    #[error("window {window} is too small, need at least {required}")]
    WindowTooSmall { window: usize, required: usize },

    #[error("operator leaves the truncated algebra on basis element {element}")]
    TruncationEscape { element: String },

    #[error("polyvector is not homogeneous in its exterior degree")]
    Inhomogeneous,

    #[error("internal identity violated: {0}")]
    IdentityViolated(String),
}
