//! Crate-wide error type.
//!
//! Every failure mode that can be reached through the public API gets its own
//! variant; invariant violations that should be unreachable from validated
//! inputs are funnelled through [`Error::Internal`] so that they surface
//! loudly instead of producing silently wrong mathematics.

use thiserror::Error;

/// Errors produced by the exact pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A conductor of 0, or one that does not support the requested value
    /// (e.g. asking for `i` in `ℚ(ζ_N)` with `4 ∤ N`).
    #[error("invalid conductor: {0}")]
    InvalidConductor(String),

    /// Two values or matrices living in different cyclotomic fields were
    /// combined without an explicit embedding.
    #[error("conductor mismatch: {0}")]
    ConductorMismatch(String),

    /// A linear system handed to the real-subfield kernel solver has an entry
    /// that is not fixed by complex conjugation.
    #[error("system entry at row {row}, column {col} is not in the real subfield")]
    NotRealCoefficient { row: usize, col: usize },

    /// A group modulus smaller than 2, or an empty modulus list.
    #[error("invalid abelian group: {0}")]
    BadGroup(String),

    /// Branch residues that do not sum to zero, so no cover has this data.
    #[error("inconsistent monodromy: branch residues sum to {0}, not zero")]
    InconsistentMonodromy(String),

    /// A branch residue equal to the identity (unramified points carry no
    /// branch data).
    #[error("identity branch element at position {0}")]
    IdentityMonodromy(usize),

    /// Base genus 0 with branch residues that do not generate the group, so
    /// the total space of the cover is disconnected.
    #[error("disconnected cover: branch residues generate a proper subgroup")]
    DisconnectedCover,

    /// An explicitly supplied generator matrix is not unitary.
    #[error("generator {0} is not unitary")]
    NotUnitary(usize),

    /// A symplectic generator does not commute with the reference complex
    /// structure `J₀`, i.e. it is not block-diagonal in the eigenbasis of
    /// `J₀`.
    #[error("generator {0} does not commute with the base complex structure")]
    NotBlockDiagonal(usize),

    /// An element was passed to an operation expecting the other summand of
    /// the Cartan decomposition (e.g. the complex structure applied to a
    /// `k`-part element).
    #[error("element is in the wrong Cartan summand: {0}")]
    WrongPart(String),

    /// The module decomposition found a reducible piece but no splitting
    /// eigenvalue inside the ambient cyclotomic field.  The triple records
    /// (real dimension, commutant real dimension, conductor).
    #[error(
        "cannot split a reducible invariant subspace over ℚ(ζ_{conductor}): \
         real dimension {dim_r}, commutant of real dimension {commutant_dim}"
    )]
    UnsplittableOverField {
        dim_r: usize,
        commutant_dim: usize,
        conductor: u32,
    },

    /// No sampled element of an invariant subspace produced an abelian
    /// centralizer, so the rank could not be certified.
    #[error("rank undecided after {0} samples: no abelian centralizer found")]
    RankUndecided(usize),

    /// A factor with `[W, W] = 0`; flat factors do not occur for these
    /// actions, so this always indicates corrupted input.
    #[error("invariant factor of real dimension {0} has vanishing bracket")]
    EuclideanFactor(usize),

    /// The computed invariant triple matches no catalogue row.
    #[error("no catalogue row matches (dim_C, k_dim, rank) = ({0}, {1}, {2})")]
    Unclassified(u32, u32, u32),

    /// The computed invariant triple matches several catalogue rows that are
    /// not isomorphic as symmetric spaces, so the triple alone cannot decide
    /// the label.
    #[error("ambiguous triple ({0}, {1}, {2}): matches non-isomorphic catalogue rows")]
    AmbiguousTriple(u32, u32, u32),

    /// The elliptic/anti-invariant split was requested for a cover whose base
    /// genus is not 1.
    #[error("not an elliptic cover: base genus is {0}")]
    NotElliptic(u32),

    /// The floating-point twin of an exact computation disagreed with it.
    #[error("float crosscheck mismatch in {context}: exact {exact}, numeric {numeric}")]
    CrosscheckMismatch {
        context: String,
        exact: usize,
        numeric: usize,
    },

    /// The sign of a real cyclotomic number could not be certified at the
    /// working interval precision.
    #[error("sign of a real cyclotomic value could not be certified: {0}")]
    SignUndecided(String),

    /// An invariant that validated inputs can never violate was violated.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
