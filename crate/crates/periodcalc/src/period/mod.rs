//! Formal monomial calculus over period symbols.
//!
//! Relations of the shape "equal up to a nonzero element of a number field"
//! are modelled as exact exponent identities between monomials, modulo
//! constant-class symbols; rationality fields travel as opaque tags.

pub mod axioms;
pub mod character;
pub mod context;
pub mod monomial;
pub mod normalize;
pub mod replay;
pub mod report;
pub mod symbol;
pub mod verify;

use thiserror::Error;

use crate::critical::CriticalError;
use crate::descent::DescentError;
use crate::half::HalfInt;
use crate::hodge::SplitError;
use crate::spectral::SpectralError;

pub use axioms::{AxiomPair, Fault, RepData};
pub use character::{BasisCharId, CharacterExpr, ConjBehavior};
pub use context::PeriodContext;
pub use monomial::PeriodMonomial;
pub use normalize::{normalize, normalize_with_order, NormalizeError};
pub use replay::{replay_factorization, ReplayOptions};
pub use report::{
    assert_equivalent, classify_residual, Derivation, DerivationReport, DerivationStep,
    FieldTagSet, JsonReport, JsonStep, Verdict,
};
pub use symbol::{AsaiSign, ConstLabel, Datum, LValueKind, PeriodSymbol, RepTag, SymbolClass};
pub use verify::{verify_main_conjecture, verify_main_factorization};

#[derive(Debug, Error)]
pub enum PeriodError {
    #[error("s₀ = {s0} is not a critical point")]
    NotCritical { s0: HalfInt },
    #[error("2πi exponent is not an integer (doubled value {doubled})")]
    NonIntegralExponent { doubled: i64 },
    #[error("index q = {q} out of range (need 0 ≤ q ≤ {max})")]
    IndexOutOfRange { q: usize, max: usize },
    #[error("parameter fails the required regularity: {detail}")]
    NotRegular { detail: String },
    #[error("central-character identity has not been registered for the auxiliary character")]
    MissingCentralCharacterIdentity,
    #[error("derivation left an open residual with support: {}", support.join(", "))]
    OpenResidual {
        support: Vec<String>,
        report: Box<DerivationReport>,
    },
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error(transparent)]
    Critical(#[from] CriticalError),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Descent(#[from] DescentError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("place counts disagree: parameter has {param}, shape has {shape}")]
    ShapeMismatch { param: usize, shape: usize },
}

/// Converts an open-verdict report into the corresponding error, passing
/// closed reports through.
pub fn require_closed(report: DerivationReport) -> Result<DerivationReport, PeriodError> {
    match &report.verdict {
        Verdict::Open(support) => Err(PeriodError::OpenResidual {
            support: support.clone(),
            report: Box::new(report),
        }),
        _ => Ok(report),
    }
}
