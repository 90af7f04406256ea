//! Exact computation on finite groups given by explicit Cayley tables.
//!
//! Groups are dense multiplication tables over element indices `0..N`, with
//! the identity pinned at index `0`. On top of that representation the crate
//! computes the classical structural invariants (center, centralizers,
//! conjugacy classes, commutator sets, derived subgroup, upper central
//! series), decides isoclinism between two groups by exhaustive search, and
//! verifies a family of quantitative bounds relating `|G/Z(G)|`,
//! `|G/Z2(G)|` and the commutator structure, producing auditable reports.
//!
//! Everything is exact integer arithmetic except the `n^(2 log2 n)` bounds,
//! which are compared in the log2 domain with a fixed tolerance (and exactly
//! whenever the bound is an integer).

pub mod bounds;
pub mod catalog;
pub mod group;
pub mod invariants;
pub mod io;
pub mod isoclinism;

pub use bounds::{BoundReport, Hypothesis, SurveyRow, TheoremId};
pub use catalog::{GroupDescriptor, Sign};
pub use group::{Elem, GroupTable, Morphism, Quotient, Subgroup, TableDefect};
pub use invariants::{AbelianBasis, CentralSeries, CommutatorData};
pub use isoclinism::{CommutatorPairing, IsoclinismWitness, StemReduction};

/// Largest group order the constructors will materialize by default.
/// A dense `u16` table at this order costs ~50 MB.
pub const DEFAULT_ORDER_CAP: usize = 5000;

/// Default cap on `|G/Z(G)|` for the isoclinism search.
pub const DEFAULT_SEARCH_CAP: usize = 64;

/// Default tolerance for comparisons performed in the log2 domain.
pub const DEFAULT_LOG2_TOLERANCE: f64 = 1e-9;

/// Errors produced by table construction, input parsing and bound checks.
///
/// `Internal` marks violations of invariants that are theorems for valid
/// tables; it firing indicates a bug, never a property of the input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("map on {degree} points is not a permutation")]
    NotAPermutation { degree: usize },

    #[error("group order would exceed the cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("invalid multiplication table: {0}")]
    InvalidTable(#[from] TableDefect),

    #[error(
        "subgroup is not normal: conjugating member {member} by {conjugator} \
         leaves the subgroup"
    )]
    NotNormal { conjugator: usize, member: usize },

    #[error("map is not a homomorphism: images of {a} and {b} do not compose")]
    NotAMorphism { a: usize, b: usize },

    #[error("quotient is not abelian: cosets {a} and {b} do not commute")]
    NotAbelian { a: usize, b: usize },

    #[error("hypothesis `{name}` does not hold: {witness}")]
    Hypothesis { name: &'static str, witness: String },

    #[error("search cap {cap} exceeded: {what}")]
    Infeasible { what: String, cap: usize },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid descriptor: {0}")]
    Descriptor(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("internal invariant `{check}` violated: {detail}")]
    Internal { check: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn internal(check: &'static str, detail: impl Into<String>) -> Self {
        Error::Internal {
            check,
            detail: detail.into(),
        }
    }
}
