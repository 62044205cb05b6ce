use thiserror::Error;

/// Library-wide error type.
///
/// The CLI maps these onto its exit-code contract: everything except
/// [`Error::Inconsistency`] is a problem with the input (exit 1), while
/// `Inconsistency` means two independent computations of the same quantity
/// disagreed, i.e. either the input lies outside the regime the identities
/// cover or the implementation has a bug worth reporting (exit 2).
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("gram matrix is degenerate")]
    DegenerateForm,

    #[error("mod-2 linear system is unsolvable")]
    UnsolvableMod2,

    #[error("{0}")]
    InvalidLattice(String),

    #[error("vectors are linearly dependent")]
    DependentVectors,

    #[error("sublattice is not contained in the claimed ambient lattice")]
    NotASublattice,

    #[error("element does not lie in the dual lattice")]
    NotInDual,

    #[error("operands belong to different parent modules")]
    ParentMismatch,

    #[error("quadratic values are only defined for even lattices")]
    OddLattice,

    #[error("invalid involution: {0}")]
    InvalidInvolution(String),

    #[error("invalid action triple: {0}")]
    InvalidTriple(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// True for the verdicts that signal disagreement between two
    /// independently computed sides of an identity.
    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}
