//! Fractional Hamming distance over repeated degauss readouts.

use crate::analytics::mapping::StateMapping;
use crate::error::{Error, Result};
use crate::model::DegaussTrace;

/// Pairwise intra-device Hamming statistics over M traces of N dots.
///
/// `histogram[d]` counts pairs at Hamming distance `d`, so the fractional
/// distances fall on the lattice `d / N` — bins are 1/N wide by nature.
#[derive(Clone, Debug, PartialEq)]
pub struct FhdResult {
    pub mean_fhd: f64,
    pub histogram: Vec<u64>,
    pub pair_count: u64,
    pub trace_len: usize,
}

impl FhdResult {
    /// Histogram bins as `(lo, hi, count)` with width `1/N`; the pair count
    /// at distance d lands in the bin starting at `d/N`.
    pub fn bins(&self) -> impl Iterator<Item = (f64, f64, u64)> + '_ {
        let n = self.trace_len as f64;
        self.histogram
            .iter()
            .enumerate()
            .map(move |(d, &count)| (d as f64 / n, (d as f64 + 1.0) / n, count))
    }
}

fn mapped(traces: &[DegaussTrace], mapping: StateMapping) -> Result<Vec<Vec<u8>>> {
    let n = traces[0].len();
    traces
        .iter()
        .map(|t| {
            if t.len() != n {
                return Err(Error::LengthMismatch(n, t.len()));
            }
            t.states
                .iter()
                .enumerate()
                .map(|(k, &s)| mapping.symbol(s).ok_or(Error::OffState(k + 1)))
                .collect()
        })
        .collect()
}

fn distance(a: &[u8], b: &[u8]) -> u32 {
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u32
}

/// Number of positions where two equally long traces settle differently
/// under the given mapping.
pub fn hamming_distance(a: &DegaussTrace, b: &DegaussTrace, mapping: StateMapping) -> Result<u32> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let pair = [a.clone(), b.clone()];
    let rows = mapped(&pair, mapping)?;
    Ok(distance(&rows[0], &rows[1]))
}

/// Mean fractional Hamming distance over all unique trace pairs:
/// `2 / (M (M-1) N) * sum of pairwise distances`, plus the full pair
/// histogram.
pub fn fhd_intra(traces: &[DegaussTrace], mapping: StateMapping) -> Result<FhdResult> {
    let rows = check_and_map(traces, mapping)?;
    #[cfg(feature = "parallel")]
    let histogram = {
        use rayon::prelude::*;
        (0..rows.len())
            .into_par_iter()
            .fold(
                || vec![0u64; rows[0].len() + 1],
                |mut hist, i| {
                    for j in i + 1..rows.len() {
                        hist[distance(&rows[i], &rows[j]) as usize] += 1;
                    }
                    hist
                },
            )
            .reduce(
                || vec![0u64; rows[0].len() + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    };
    #[cfg(not(feature = "parallel"))]
    let histogram = pair_histogram(&rows);
    Ok(summarize(histogram, traces.len(), rows[0].len()))
}

/// Single-threaded counterpart of [`fhd_intra`]; same output.
pub fn fhd_intra_seq(traces: &[DegaussTrace], mapping: StateMapping) -> Result<FhdResult> {
    let rows = check_and_map(traces, mapping)?;
    let histogram = pair_histogram(&rows);
    Ok(summarize(histogram, traces.len(), rows[0].len()))
}

fn check_and_map(traces: &[DegaussTrace], mapping: StateMapping) -> Result<Vec<Vec<u8>>> {
    if traces.len() < 2 {
        return Err(Error::TooFewTraces {
            needed: 2,
            got: traces.len(),
        });
    }
    mapped(traces, mapping)
}

fn pair_histogram(rows: &[Vec<u8>]) -> Vec<u64> {
    let mut hist = vec![0u64; rows[0].len() + 1];
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            hist[distance(&rows[i], &rows[j]) as usize] += 1;
        }
    }
    hist
}

fn summarize(histogram: Vec<u64>, m: usize, n: usize) -> FhdResult {
    let pair_count = (m as u64) * (m as u64 - 1) / 2;
    let total: u64 = histogram
        .iter()
        .enumerate()
        .map(|(d, &c)| d as u64 * c)
        .sum();
    FhdResult {
        mean_fhd: total as f64 / (pair_count as f64 * n as f64),
        histogram,
        pair_count,
        trace_len: n,
    }
}

/// Expected fractional mismatch rate between two independent draws:
/// `(1/N) * sum over dots of (1 - sum over symbols of p^2)`. This is the
/// analytic oracle the Monte-Carlo [`fhd_intra`] must converge to.
pub fn expected_fhd(profiles: &[Vec<f64>]) -> Result<f64> {
    if profiles.is_empty() {
        return Err(Error::TooFewTraces { needed: 1, got: 0 });
    }
    let mut sum = 0.0;
    for (k, dist) in profiles.iter().enumerate() {
        let total: f64 = dist.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::UnnormalizedDistribution {
                position: k + 1,
                sum: total,
            });
        }
        sum += 1.0 - dist.iter().map(|p| p * p).sum::<f64>();
    }
    Ok(sum / profiles.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MagneticState::{SdLeft, SdRight, VortexCcw, VortexCw};

    fn trace(states: Vec<crate::model::MagneticState>) -> DegaussTrace {
        DegaussTrace {
            trial_index: 0,
            states,
        }
    }

    #[test]
    fn identical_traces_have_zero_distance() {
        let a = trace(vec![SdRight, VortexCw]);
        assert_eq!(hamming_distance(&a, &a, StateMapping::FourState).unwrap(), 0);
    }

    #[test]
    fn full_mismatch_counts_every_position() {
        let a = trace(vec![SdRight, SdLeft]);
        let b = trace(vec![SdLeft, SdRight]);
        assert_eq!(hamming_distance(&a, &b, StateMapping::FourState).unwrap(), 2);
    }

    #[test]
    fn binary_mapping_collapses_direction_subclass() {
        // States (1,4,2) and (3,4,3) map to (1,0,0) and (1,0,1): distance 1.
        let a = trace(vec![SdRight, VortexCcw, SdLeft]);
        let b = trace(vec![VortexCw, VortexCcw, VortexCw]);
        assert_eq!(hamming_distance(&a, &b, StateMapping::binary()).unwrap(), 1);
    }

    #[test]
    fn length_mismatch_and_off_states_error() {
        let a = trace(vec![SdRight]);
        let b = trace(vec![SdRight, SdLeft]);
        assert!(hamming_distance(&a, &b, StateMapping::FourState).is_err());
        let c = trace(vec![crate::model::MagneticState::ParamagneticOff]);
        assert!(matches!(
            hamming_distance(&a, &c, StateMapping::FourState),
            Err(Error::OffState(1))
        ));
    }

    #[test]
    fn three_trace_example_by_exhaustive_pairs() {
        // Pair distances {1, 1, 2} over three 2-dot traces: FHD = 4/6.
        let traces = vec![
            trace(vec![SdRight, SdLeft]),
            trace(vec![SdRight, VortexCw]),
            trace(vec![SdLeft, SdLeft]),
        ];
        let result = fhd_intra(&traces, StateMapping::FourState).unwrap();
        assert!((result.mean_fhd - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(result.pair_count, 3);
        assert_eq!(result.histogram, vec![0, 2, 1]);
    }

    #[test]
    fn identical_set_has_zero_fhd() {
        let traces = vec![trace(vec![SdRight, VortexCcw]); 5];
        let result = fhd_intra(&traces, StateMapping::FourState).unwrap();
        assert_eq!(result.mean_fhd, 0.0);
        assert_eq!(result.histogram[0], 10);
    }

    #[test]
    fn fewer_than_two_traces_error() {
        let traces = vec![trace(vec![SdRight])];
        assert!(matches!(
            fhd_intra(&traces, StateMapping::FourState),
            Err(Error::TooFewTraces { needed: 2, got: 1 })
        ));
    }

    #[test]
    fn expected_fhd_uniform_cases() {
        assert!((expected_fhd(&[vec![0.5, 0.5]]).unwrap() - 0.5).abs() < 1e-12);
        assert!((expected_fhd(&[vec![0.25; 4]]).unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn expected_fhd_rejects_unnormalized_input() {
        assert!(matches!(
            expected_fhd(&[vec![0.5, 0.6]]),
            Err(Error::UnnormalizedDistribution { position: 1, .. })
        ));
    }

    #[test]
    fn parallel_and_sequential_agree_exactly() {
        use crate::model::{Circuit, Device, DotParams, GatingEvent, GridPos};
        use crate::rng::Seed;
        let mut circuit = Circuit::new(
            "A",
            (0..6).map(|i| GridPos { row: 0, col: i }).collect(),
        );
        circuit.activation = true;
        circuit.gating_history.push(GatingEvent {
            voltage_v: -10.0,
            duration_min: 60.0,
        });
        circuit.dot_params = Some(vec![
            DotParams {
                p_sd: 0.3,
                p_dir_rcw: 0.6
            };
            6
        ]);
        let device = Device::new("dev", vec![circuit]).unwrap();
        let traces = crate::model::sample_traces(&device, 300, Seed(17)).unwrap();
        let a = fhd_intra(&traces, StateMapping::FourState).unwrap();
        let b = fhd_intra_seq(&traces, StateMapping::FourState).unwrap();
        assert_eq!(a, b);
    }
}
