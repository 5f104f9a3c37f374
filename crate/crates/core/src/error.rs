//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("device has no dots")]
    EmptyDevice,
    #[error("dot {position}: {field} = {value} is outside [0, 1]")]
    InvalidProbability {
        position: u32,
        field: &'static str,
        value: f64,
    },
    #[error("unknown circuit `{0}`")]
    UnknownCircuit(String),
    #[error("circuit `{0}` has not been gated")]
    InactiveCircuit(String),
    #[error("gating requires a negative voltage, got {0} V")]
    UnsupportedGating(f64),
    #[error("gating duration must be non-negative, got {0} min")]
    InvalidDuration(f64),
    #[error("enrollment tie at dot {position} after {trials} trials; re-enroll with an odd trial count")]
    EnrollmentTie { position: u32, trials: u32 },
    #[error("sequence lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("dot {0} is in the paramagnetic OFF state; analytics require degaussed states")]
    OffState(usize),
    #[error("need at least {needed} traces, got {got}")]
    TooFewTraces { needed: usize, got: usize },
    #[error("symbol distribution for dot {position} sums to {sum}, expected 1")]
    UnnormalizedDistribution { position: usize, sum: f64 },
    #[error("bit extraction requires a binary direction mapping")]
    BinaryMappingRequired,
    #[error("entropy is defined over the binary direction mapping only")]
    BinaryEntropyOnly,
    #[error("majority voting requires an odd trial count, got {0}")]
    EvenTrials(u32),
    #[error("negative total entropy: {0}")]
    NegativeEntropy(f64),
    #[error("guess rate must be positive, got {0}")]
    NonPositiveRate(f64),
    #[error("challenged dot {0} is inactive or was never gated")]
    InactiveDot(u32),
    #[error("position {position} is outside the library of {len} dots")]
    PositionOutOfRange { position: u32, len: usize },
    #[error("duplicate challenge position {0}")]
    DuplicatePosition(u32),
    #[error("challenge must contain at least one position")]
    EmptyChallenge,
    #[error("challenge size {k} exceeds the {n}-dot array")]
    ChallengeTooLarge { k: usize, n: usize },
    #[error("response length {got} does not match challenge length {expected}")]
    ResponseLengthMismatch { got: usize, expected: usize },
    #[error("library has no profiles")]
    EmptyLibrary,
    #[error("library majority state is tied at dot {0} (p_sd = 0.5); stored libraries must be re-enrolled with odd trials")]
    MajorityTie(u32),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("checksum mismatch: file says {stored}, payload hashes to {computed}")]
    ChecksumMismatch { stored: String, computed: String },
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),
}
