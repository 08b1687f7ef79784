use alloc::string::String;
use alloc::vec::Vec;

/// Everything that can go wrong in the library.
///
/// Variants map one-to-one onto the failure kinds the CLI reports, so the
/// `kind()` string is stable and used in JSON diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("not-global: first projection of the graph is a proper subgroup of the source")]
    NotGlobal,
    #[error("katakernel-exceeds-bound: katakernel is not contained in the negligibility bound")]
    KatakernelExceedsBound,
    #[error("not-weakly-invariant: subgroup is not weakly invariant under the endogeny")]
    NotWeaklyInvariant,
    #[error("not-sharply-commuting: {0}")]
    NotSharplyCommuting(String),
    #[error("closure-cap-exceeded: more than {0} elements")]
    ClosureCapExceeded(usize),
    #[error("search-cap-exceeded: {0}")]
    SearchCapExceeded(String),
    #[error("cap-exceeded: order {order} above oracle cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
    #[error("budget-exceeded: {0}")]
    BudgetExceeded(String),
    #[error("generation-budget-exceeded: {0}")]
    GenerationBudgetExceeded(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("hypothesis-violation: {reason}")]
    HypothesisViolation {
        reason: String,
        /// Offending subspace basis (rows) when the failure is reducibility.
        witness: Option<Vec<Vec<u32>>>,
    },
    #[error("field-test-failure: {0}")]
    FieldTestFailure(String),
    #[error("no-projection-found: {0}")]
    NoProjectionFound(String),
    #[error("no-transporter: {0}")]
    NoTransporter(String),
    #[error("not-locally-central: {0}")]
    NotLocallyCentral(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    /// Stable short identifier of the failure kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::AmbientMismatch(_) => "ambient-mismatch",
            Error::NotGlobal => "not-global",
            Error::KatakernelExceedsBound => "katakernel-exceeds-bound",
            Error::NotWeaklyInvariant => "not-weakly-invariant",
            Error::NotSharplyCommuting(_) => "not-sharply-commuting",
            Error::ClosureCapExceeded(_) => "closure-cap-exceeded",
            Error::SearchCapExceeded(_) => "search-cap-exceeded",
            Error::CapExceeded { .. } => "cap-exceeded",
            Error::BudgetExceeded(_) => "budget-exceeded",
            Error::GenerationBudgetExceeded(_) => "generation-budget-exceeded",
            Error::Overflow => "overflow",
            Error::HypothesisViolation { .. } => "hypothesis-violation",
            Error::FieldTestFailure(_) => "field-test-failure",
            Error::NoProjectionFound(_) => "no-projection-found",
            Error::NoTransporter(_) => "no-transporter",
            Error::NotLocallyCentral(_) => "not-locally-central",
            Error::Inconclusive(_) => "inconclusive",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::AmbientMismatch(msg.into())
    }
}

pub type Result<T> = core::result::Result<T, Error>;
