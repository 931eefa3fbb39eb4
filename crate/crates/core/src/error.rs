//! Crate-wide error type and result alias.

use thiserror::Error;

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while enumerating, building, or checking
/// arrays.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the supported range (strength, index,
    /// column count, run count, …).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An explicit array violates its own shape contract: ragged rows,
    /// an entry other than -1 or +1, or a row/column count mismatch.
    #[error("malformed design: {0}")]
    MalformedDesign(String),

    /// Two objects that must agree on dimensions do not.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A J-characteristic vector is not realizable by any array: inverting
    /// it yields a run count that is negative or not an integer.
    #[error(
        "J-vector is not realizable: run count for subset mask {subset} \
         would be {numerator}/{denominator}"
    )]
    InfeasibleJ {
        /// Bitmask of the offending run (column label j occupies bit j-1).
        subset: u32,
        /// The numerator the inversion produced for that run.
        numerator: i64,
        /// Always 2^m; kept explicit so messages are self-describing.
        denominator: i64,
    },

    /// An operation that presumes strength at least `required` was handed
    /// an array of lower strength.
    #[error("array has strength {actual}, but strength {required} is required")]
    InsufficientStrength { required: u32, actual: u32 },

    /// Sign solving cannot leave the requested slot unconstrained: with an
    /// odd column count the product over all columns is pinned by the other
    /// slots, so only one of the first m slots may float.
    #[error("cannot leave slot {position} unconstrained when the column count {m} is odd")]
    UnsupportedDrop { m: u32, position: usize },

    /// A brute-force fallback was asked to search a space too large to
    /// finish in reasonable time.
    #[error("problem size exceeds the supported limit: {0}")]
    SizeLimit(String),

    /// Malformed text input (array files, solution lists).
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
