//! Shannon entropy of the direction subclass, TRN sequence counts, and
//! magneto-ionic lock strength.

use crate::analytics::mapping::StateMapping;
use crate::error::{Error, Result};
use crate::model::{check_probability, DeviceLibrary};

/// Seconds per year used for brute-force time conversion.
pub const SECONDS_PER_YEAR: f64 = 3.156e7;

/// Entropy of one bit with success probability `p`, in bits:
/// `-p log2 p - (1-p) log2 (1-p)`, with `0 log2 0 = 0`.
pub fn shannon_entropy_bit(p: f64) -> Result<f64> {
    check_probability(0, "p", p)?;
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    Ok(-p * p.log2() - (1.0 - p) * (1.0 - p).log2())
}

/// Per-bit and total Shannon entropy of a library.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    pub per_bit: Vec<f64>,
    pub h_total: f64,
    pub h_mean: f64,
}

/// Total entropy of a library over the direction subclass. The direction
/// probabilities are the unbiased ones (pairwise FHD sits at 0.5), so the
/// entropy of an N-dot circuit approaches N bits. Only binary mappings are
/// supported; both groupings give the same entropy since H(p) = H(1-p).
pub fn total_entropy(library: &DeviceLibrary, mapping: StateMapping) -> Result<EntropyReport> {
    if !matches!(mapping, StateMapping::BinaryDirection(_)) {
        return Err(Error::BinaryEntropyOnly);
    }
    if library.is_empty() {
        return Err(Error::EmptyLibrary);
    }
    let per_bit = library
        .profiles
        .iter()
        .map(|dot| shannon_entropy_bit(dot.p_dir_rcw))
        .collect::<Result<Vec<f64>>>()?;
    let h_total: f64 = per_bit.iter().sum();
    let h_mean = h_total / per_bit.len() as f64;
    Ok(EntropyReport {
        per_bit,
        h_total,
        h_mean,
    })
}

/// Number of distinguishable N-bit sequences at a given total entropy:
/// `S = 2^h_total`.
pub fn sequence_count(h_total: f64) -> Result<f64> {
    if !h_total.is_finite() || h_total < 0.0 {
        return Err(Error::NegativeEntropy(h_total));
    }
    Ok(h_total.exp2())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LockStrength {
    pub active_dots: usize,
    pub h_total: f64,
    pub sequence_count: f64,
    pub brute_force_years: f64,
}

/// Password strength of one or more activated circuits: total entropy summed
/// across all their dots, the sequence count `2^H`, and the expected
/// brute-force time at the given guess rate.
pub fn lock_strength(
    libraries: &[&DeviceLibrary],
    guesses_per_second: f64,
) -> Result<LockStrength> {
    if libraries.is_empty() {
        return Err(Error::EmptyLibrary);
    }
    if !(guesses_per_second > 0.0) {
        return Err(Error::NonPositiveRate(guesses_per_second));
    }
    let mut h_total = 0.0;
    let mut active_dots = 0;
    for library in libraries {
        let report = total_entropy(library, StateMapping::binary())?;
        h_total += report.h_total;
        active_dots += library.len();
    }
    let s = sequence_count(h_total)?;
    Ok(LockStrength {
        active_dots,
        h_total,
        sequence_count: s,
        brute_force_years: s / guesses_per_second / SECONDS_PER_YEAR,
    })
}
