use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("Riemann-Hurwitz has no positive integral genus for this data set")]
    NonIntegralGenus,
    #[error("invalid data set: {0}")]
    InvalidDataSet(String),
    #[error("power is the identity")]
    DegenerateResult,
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u32, u32),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("curves do not form a chain")]
    NotAChain,
    #[error("unsupported star index {0}")]
    UnsupportedIndex(u32),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("no ribbon data for curve `{0}`")]
    MissingRibbonData(String),
    #[error("data set is not irreducible Type 1")]
    NotIrreducibleType1,
    #[error("no interleaved letter pair in the boundary word")]
    NoHandlePattern,
    #[error("polygon realization failed: {0}")]
    Realization(String),
    #[error("block genera sum to {got}, expected {want}")]
    GenusSumMismatch { got: u32, want: u32 },
    #[error("data set is not of genus one")]
    NotGenusOne,
    #[error("data set is not a non-free involution")]
    NotInvolution,
    #[error("data set is not rotational")]
    NotRotational,
    #[error("no exponent of the assembled rotation passes the certificate")]
    NoCertifiedExponent,
    #[error("not chain-realizable")]
    NotChainRealizable,
    #[error("not star-realizable")]
    NotStarRealizable,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("not root-realizable: {0}")]
    NotRootRealizable(String),
    #[error("synthesis failed: {}", fmt_reasons(.0))]
    SynthesisFailed(Vec<(String, String)>),
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("search space exhausted without a certified word")]
    NotFound,
}

fn fmt_reasons(r: &[(String, String)]) -> String {
    r.iter().map(|(m, why)| format!("{m}: {why}")).collect::<Vec<_>>().join("; ")
}
