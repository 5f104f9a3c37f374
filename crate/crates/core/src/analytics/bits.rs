//! TRN bit extraction and the smoke-level randomness checks.

use crate::analytics::mapping::StateMapping;
use crate::error::Result;
use crate::model::DegaussTrace;

/// One bit per active dot in reading order, under a binary mapping.
pub fn extract_bits(trace: &DegaussTrace, mapping: StateMapping) -> Result<Vec<bool>> {
    trace
        .states
        .iter()
        .enumerate()
        .map(|(k, &s)| mapping.bit(s, k + 1))
        .collect()
}

/// Concatenates the bits of consecutive traces into one stream; TRN length
/// is tuned by the number of degauss cycles.
pub fn extract_bitstream(traces: &[DegaussTrace], mapping: StateMapping) -> Result<Vec<bool>> {
    let mut bits = Vec::with_capacity(traces.iter().map(DegaussTrace::len).sum());
    for trace in traces {
        bits.extend(extract_bits(trace, mapping)?);
    }
    Ok(bits)
}

/// Monobit statistic `|ones - zeros| / sqrt(n)`; approximately standard
/// normal for an unbiased source.
pub fn monobit_statistic(bits: &[bool]) -> f64 {
    if bits.is_empty() {
        return 0.0;
    }
    let ones = bits.iter().filter(|&&b| b).count() as f64;
    let zeros = bits.len() as f64 - ones;
    (ones - zeros).abs() / (bits.len() as f64).sqrt()
}

/// Wald-Wolfowitz runs check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunsCheck {
    pub runs: u64,
    pub expected: f64,
    pub z: f64,
}

/// Counts maximal same-bit runs and compares against the expectation for an
/// independent sequence with the observed bit balance.
pub fn runs_statistic(bits: &[bool]) -> RunsCheck {
    if bits.len() < 2 {
        return RunsCheck {
            runs: bits.len() as u64,
            expected: bits.len() as f64,
            z: 0.0,
        };
    }
    let n = bits.len() as f64;
    let ones = bits.iter().filter(|&&b| b).count() as f64;
    let zeros = n - ones;
    let runs = 1 + bits.windows(2).filter(|w| w[0] != w[1]).count() as u64;
    if ones == 0.0 || zeros == 0.0 {
        return RunsCheck {
            runs,
            expected: 1.0,
            z: 0.0,
        };
    }
    let expected = 2.0 * ones * zeros / n + 1.0;
    let variance = 2.0 * ones * zeros * (2.0 * ones * zeros - n) / (n * n * (n - 1.0));
    RunsCheck {
        runs,
        expected,
        z: (runs as f64 - expected) / variance.sqrt(),
    }
}
