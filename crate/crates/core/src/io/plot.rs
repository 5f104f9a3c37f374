//! Plot-data emission: CSV files consumable by any plotting tool.

use std::io::Write;

use crate::analytics::FhdResult;
use crate::error::Result;
use crate::inference::InferenceRun;

/// FHD histogram as `bin_lo,bin_hi,count` rows, binned at the natural
/// width 1/N. An empty histogram produces a header-only file.
pub fn write_fhd_histogram<W: Write>(mut writer: W, result: &FhdResult) -> Result<()> {
    writeln!(writer, "bin_lo,bin_hi,count")?;
    for (lo, hi, count) in result.bins() {
        writeln!(writer, "{lo:.6},{hi:.6},{count}")?;
    }
    Ok(())
}

/// BER curve as `trials,ber` rows over odd trial counts.
pub fn write_ber_curve<W: Write>(mut writer: W, curve: &[(u32, f64)]) -> Result<()> {
    writeln!(writer, "trials,ber")?;
    for (t, ber) in curve {
        writeln!(writer, "{t},{ber:.8}")?;
    }
    Ok(())
}

/// Inference run as `trial,per_trial_prob,cumulative_prob` rows (1-based
/// trials, probabilities as fractions).
pub fn write_inference_run<W: Write>(mut writer: W, run: &InferenceRun) -> Result<()> {
    writeln!(writer, "trial,per_trial_prob,cumulative_prob")?;
    for (i, (p, c)) in run
        .per_trial_prob
        .iter()
        .zip(&run.cumulative_prob)
        .enumerate()
    {
        writeln!(writer, "{},{p:.6},{c:.6}", i + 1)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_histogram_is_header_only() {
        let result = FhdResult {
            mean_fhd: 0.0,
            histogram: vec![],
            pair_count: 0,
            trace_len: 1,
        };
        let mut out = Vec::new();
        write_fhd_histogram(&mut out, &result).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "bin_lo,bin_hi,count\n");
    }

    #[test]
    fn histogram_bins_are_one_over_n_wide() {
        let result = FhdResult {
            mean_fhd: 0.5,
            histogram: vec![1, 2, 1],
            pair_count: 4,
            trace_len: 2,
        };
        let mut out = Vec::new();
        write_fhd_histogram(&mut out, &result).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("0.000000,0.500000,1"));
        assert!(text.contains("0.500000,1.000000,2"));
        assert!(text.contains("1.000000,1.500000,1"));
    }

    #[test]
    fn ber_curve_rows() {
        let mut out = Vec::new();
        write_ber_curve(&mut out, &[(1, 0.1942), (5, 0.0969)]).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("trials,ber\n1,0.19420000\n5,0.09690000\n"));
    }
}
