use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The evaluation matrix of a node set is singular: the nodes are not
    /// unisolvent for the monomial space.
    #[error("evaluation matrix for m = {m} is singular")]
    SingularMatrix { m: usize },

    #[error("double factorial undefined for {0}")]
    Domain(i64),

    #[error("unknown scheme `{0}` (expected one of P5, C5, P9, C9, P13, C13)")]
    UnknownScheme(String),

    #[error("Dirichlet boundaries need a radius-1 stencil, scheme `{name}` has radius {radius}")]
    RadiusUnsupported { name: String, radius: u32 },

    #[error("scheme `{0}` is unstable for every tested Courant number")]
    NeverStable(String),

    /// The exact solution vanishes at every sampled space-time point, so the
    /// relative error has a zero denominator.
    #[error("relative error undefined: exact solution has zero norm")]
    DegenerateNorm,

    #[error("grid shape mismatch: {0} vs {1} subdivisions")]
    ShapeMismatch(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed scheme table line {line}: {reason}")]
    Parse { line: usize, reason: String },
}
