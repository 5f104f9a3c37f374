//! Randomness analytics: Hamming-distance metrics, Shannon entropy, TRN
//! extraction, and lock-strength arithmetic.

mod bits;
mod entropy;
mod fhd;
mod mapping;

pub use bits::{
    extract_bits, extract_bitstream, monobit_statistic, runs_statistic, RunsCheck,
};
pub use entropy::{
    lock_strength, sequence_count, shannon_entropy_bit, total_entropy, EntropyReport,
    LockStrength, SECONDS_PER_YEAR,
};
pub use fhd::{expected_fhd, fhd_intra, fhd_intra_seq, hamming_distance, FhdResult};
pub use mapping::{DirectionGrouping, StateMapping};
