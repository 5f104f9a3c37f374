//! Probabilistic inter-device Hamming distance.

use crate::error::Result;
use crate::model::DeviceLibrary;
use crate::puf::Challenge;

/// Probability that two independent readouts of the same dot position on
/// two devices disagree in SD/vortex class, from the vortex probabilities:
/// `p_v1 + p_v2 - 2 p_v1 p_v2`.
pub fn mismatch_probability(p_v1: f64, p_v2: f64) -> f64 {
    p_v1 + p_v2 - 2.0 * p_v1 * p_v2
}

/// Same quantity written as `p_v1 p_sd2 + p_sd1 p_v2`. Algebraically equal
/// to [`mismatch_probability`] whenever `p_sd = 1 - p_v`; both forms are
/// kept so the identity can be checked directly.
pub fn mismatch_probability_product_form(p_v1: f64, p_sd1: f64, p_v2: f64, p_sd2: f64) -> f64 {
    p_v1 * p_sd2 + p_sd1 * p_v2
}

/// Expected fractional SD/vortex mismatch between two devices over the
/// challenged dots. Values near 0.5 mark combinations with strong
/// uniqueness; identical deterministic libraries score 0.
pub fn pfhd_inter(
    lib1: &DeviceLibrary,
    lib2: &DeviceLibrary,
    challenge: &Challenge,
) -> Result<f64> {
    challenge.validate_against(lib1)?;
    challenge.validate_against(lib2)?;
    let mut sum = 0.0;
    for &p in challenge.positions() {
        sum += mismatch_probability(lib1.dot(p)?.p_v, lib2.dot(p)?.p_v);
    }
    Ok(sum / challenge.len() as f64)
}
