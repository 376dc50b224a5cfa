//! Exact-arithmetic invariants for configurations of points in P² and lines in P³.
//!
//! Everything is computed over ℚ or GF(p), never floating point. A configuration
//! is a finite union of codimension-2 linear subspaces, each cut out by a pair of
//! independent linear forms; degree slices of its symbolic powers are nullspaces
//! of explicit constraint matrices, from which α-invariants, Hilbert functions,
//! Waldschmidt quotients, and structure classifications (coplanar / star /
//! pseudostar / cone) all follow.

pub mod classify;
pub mod cli;
pub mod configgen;
pub mod exactalg;
pub mod geometry;
pub mod polyspace;
pub mod symbolic;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("the two forms of a component are linearly dependent")]
    DependentForms,
    #[error("duplicate line in input list")]
    DuplicateLine,
    #[error("duplicate component: {0}")]
    DuplicateComponent(String),
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("config schema: {0}")]
    SchemaError(String),
    #[error("no generic hyperplane found within {0} draws")]
    GenericityFailure(u32),
    #[error("line is contained in the hyperplane")]
    LineInHyperplane,
    #[error("coordinate change is singular")]
    SingularChange,
    #[error("degenerate draw persisted through {0} attempts")]
    DegenerateDraw(u32),
    #[error("alpha search at multiplicity {m} exceeded its certified bound {bound}")]
    BoundExceeded { m: usize, bound: usize },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit convention shared by the CLI and the C bindings:
    /// 2 rejects the input, 3 is a computation giving up, 5 is I/O.
    /// (0 is success and 4 a theorem inconsistency; neither is an Error.)
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SchemaError(_)
            | Error::DuplicateComponent(_)
            | Error::DuplicateLine
            | Error::DependentForms
            | Error::NonPrimeModulus(_) => 2,
            Error::DegenerateDraw(_)
            | Error::GenericityFailure(_)
            | Error::LineInHyperplane
            | Error::SingularChange
            | Error::BoundExceeded { .. }
            | Error::InvariantViolation(_) => 3,
            Error::Io(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
