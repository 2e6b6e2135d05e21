use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A size cap was exceeded (protects memory and runtime).
    #[error("limit exceeded: {what} = {value} is above the configured cap {cap}")]
    LimitExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    /// Two operands refer to different ground sets / dimensions.
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    /// `moebius(p, r)` requires `p` to refine `r`.
    #[error("not a refinement: the first partition does not refine the second")]
    NotARefinement,

    /// Diagram-basis arithmetic applied to orbit-basis coordinates or vice versa.
    #[error("basis mismatch: expected {expected} coordinates")]
    BasisMismatch { expected: &'static str },

    /// Operation requires a Brauer diagram (all blocks of size two).
    #[error("not a Brauer diagram: some block has size != 2")]
    NotBrauer,

    /// A multiset of U/L/T strings violating the cycle-type constraints.
    #[error("invalid generalized cycle type: {reason}")]
    InvalidGct { reason: String },

    /// An edge-labeled multidigraph with a vertex not covered by any arrow.
    #[error("isolated vertex {vertex} has no incident arrow")]
    IsolatedVertex { vertex: usize },

    /// Generator index outside `1..=d-1`.
    #[error("generator index {index} out of range for d = {d}")]
    IndexOutOfRange { index: usize, d: usize },

    /// A conjugation-orbit universe that is not closed under the action.
    #[error("universe not closed under conjugation: missing {missing}")]
    ClosureViolation { missing: String },

    /// Symplectic constructions need an even dimension.
    #[error("dimension {n} must be even for the symplectic flavor")]
    OddSymplecticDimension { n: usize },

    /// Malformed textual input (partition, graph, or element serialization).
    #[error("parse error: {0}")]
    Parse(String),
}
