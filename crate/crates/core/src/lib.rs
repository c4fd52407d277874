//! Exact-arithmetic toolkit for graded Hilbert modules over the Hardy space
//! of the Hartogs triangle and the Hardy space of the bidisc.
//!
//! The pieces:
//! - [`index`]: the Hartogs exponent lattice, its grading, and the canonical
//!   level bases.
//! - [`scalar`] / [`element`] / [`parse`]: Gaussian-rational coefficients,
//!   formal elements over the monomial bases, and a small text grammar for
//!   polynomial input.
//! - [`transference`]: the unitary exponent relabeling between the two
//!   spaces and its intertwining identities.
//! - [`quotient`]: exact level slices of polynomial quotient modules,
//!   closed-form dimension laws, submodule slices, gradedness certificates.
//! - [`operators`]: compressed and restricted multiplication operators,
//!   Gram-weighted adjoints, commutator-defect diagnostics, and the
//!   non-decaying witness families behind the essential-normality verdicts.
//! - [`bidisc`]: truncated-series computations on the bidisc (Blaschke
//!   factors, the theta family along `z*w`) with certified geometric tail
//!   bounds.
//!
//! Every verdict from the Hartogs-side machinery is exact; bidisc-side
//! computations with Blaschke data are exact on the stored truncation and
//! carry explicit rational error bounds.

pub mod bidisc;
pub mod element;
pub mod error;
pub mod index;
pub mod linalg;
pub mod operators;
pub mod par;
pub mod parse;
pub mod quotient;
pub mod scalar;
pub mod transference;
pub mod verify;

pub use element::{HElement, MultiplierPoly, Space};
pub use error::{DomainError, EngineError, OperatorError, ParseError, SeriesError};
pub use index::{level_basis, LevelBasis, MonomialIndex};
pub use scalar::{GaussianRational, Rat};
