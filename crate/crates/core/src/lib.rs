//! Library for exact, desk-scale study of list recovery of punctured codes:
//! finite fields, Reed-Solomon and explicit codes, an exact list-recovery
//! solver, Johnson-bound and puncturing-theorem calculators, adversarial
//! list constructions, code expander graphs, and a Monte Carlo harness.

pub mod adversarial;
pub mod code;
pub mod expander;
pub mod experiments;
pub mod gf;
pub mod io;
pub mod listrecovery;
pub mod rat;

pub use code::{Code, Codeword, ExplicitCode, PunctureMap, ReedSolomonCode};
pub use gf::{make_field, FieldElement, FieldSpec};
pub use listrecovery::{ListFamily, RecoveryQuery, RecoveryResult};
pub use rat::Rat;

use thiserror::Error;

/// Umbrella error for CLI-facing call paths.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Gf(#[from] gf::GfError),
    #[error(transparent)]
    Code(#[from] code::CodeError),
    #[error(transparent)]
    Recovery(#[from] listrecovery::RecoveryError),
    #[error(transparent)]
    Adversarial(#[from] adversarial::AdversarialError),
    #[error(transparent)]
    Expander(#[from] expander::ExpanderError),
    #[error(transparent)]
    Experiment(#[from] experiments::ExperimentError),
    #[error(transparent)]
    Format(#[from] io::FormatError),
}

impl Error {
    /// True when the failure is a configured enumeration/work/search cap
    /// rather than a violated precondition. The CLI maps this to exit 2.
    pub fn cap_exceeded(&self) -> bool {
        use experiments::ExperimentError;
        match self {
            Error::Code(code::CodeError::EnumerationTooLarge { .. }) => true,
            Error::Recovery(e) => recovery_cap(e),
            Error::Adversarial(e) => adversarial_cap(e),
            Error::Expander(e) => match e {
                expander::ExpanderError::EnumerationTooLarge { .. } => true,
                expander::ExpanderError::SearchSpaceTooLarge { .. } => true,
                expander::ExpanderError::Recovery(e) => recovery_cap(e),
                _ => false,
            },
            Error::Experiment(e) => match e {
                ExperimentError::Code(code::CodeError::EnumerationTooLarge { .. }) => true,
                ExperimentError::Recovery(e) => recovery_cap(e),
                ExperimentError::Adversarial(e) => adversarial_cap(e),
                _ => false,
            },
            _ => false,
        }
    }
}

fn recovery_cap(e: &listrecovery::RecoveryError) -> bool {
    matches!(
        e,
        listrecovery::RecoveryError::WorkCapExceeded { .. }
            | listrecovery::RecoveryError::SearchSpaceTooLarge { .. }
    )
}

fn adversarial_cap(e: &adversarial::AdversarialError) -> bool {
    matches!(e, adversarial::AdversarialError::EnumerationTooLarge { .. })
}

