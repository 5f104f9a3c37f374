//! Analytic oracles and Monte-Carlo studies for the inference protocol.

use crate::error::Result;
use crate::inference::infer::{infer, AlignmentRule, Decision, Label};
use crate::model::{degauss_sample, Device, DeviceLibrary, StateClass};
use crate::puf::Challenge;
use crate::rng::Seed;

/// Exact probability that at least `min_count` of the independent events
/// with probabilities `ps` occur, by Poisson-binomial convolution.
pub fn poisson_binomial_tail(ps: &[f64], min_count: usize) -> f64 {
    let mut dist = vec![0.0; ps.len() + 1];
    dist[0] = 1.0;
    for (i, &p) in ps.iter().enumerate() {
        for j in (0..=i).rev() {
            let stay = dist[j] * (1.0 - p);
            dist[j + 1] += dist[j] * p;
            dist[j] = stay;
        }
    }
    dist[min_count.min(ps.len())..].iter().sum()
}

/// One-trial behaviour of a known device against the two candidate
/// libraries: per-dot probability of being labeled "1", and the exact
/// probability that a majority of the challenged dots is.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialOracle {
    pub per_dot_label1: Vec<f64>,
    pub mean_label1: f64,
    pub majority_label1: f64,
}

/// Composes the labeling rule with the true per-dot state probabilities:
/// a dot draws SD with its true `p_sd`, and that observation earns label 1
/// whenever the rule assigns SD (or vortex) to library 1.
pub fn per_trial_accept_prob(
    true_lib: &DeviceLibrary,
    lib1: &DeviceLibrary,
    lib2: &DeviceLibrary,
    challenge: &Challenge,
    rule: AlignmentRule,
) -> Result<TrialOracle> {
    challenge.validate_against(true_lib)?;
    challenge.validate_against(lib1)?;
    challenge.validate_against(lib2)?;
    let mut per_dot = Vec::with_capacity(challenge.len());
    for &p in challenge.positions() {
        let truth = true_lib.dot(p)?;
        let d1 = lib1.dot(p)?;
        let d2 = lib2.dot(p)?;
        let mut label1 = 0.0;
        for class in [StateClass::Sd, StateClass::Vortex] {
            let is_one = match rule {
                AlignmentRule::Likelihood => d1.class_prob(class) > d2.class_prob(class),
                AlignmentRule::MajorityState => {
                    class == d1.majority_state && class != d2.majority_state
                }
            };
            if is_one {
                label1 += truth.class_prob(class);
            }
        }
        per_dot.push(label1);
    }
    let k = per_dot.len();
    let mean_label1 = per_dot.iter().sum::<f64>() / k as f64;
    let majority_label1 = poisson_binomial_tail(&per_dot, k / 2 + 1);
    Ok(TrialOracle {
        per_dot_label1: per_dot,
        mean_label1,
        majority_label1,
    })
}

/// Aggregate outcome of many independent simulated inference runs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InferenceStudy {
    pub runs: u64,
    pub trials_per_run: u32,
    pub decided_sample1: u64,
    pub accuracy_for_sample1: f64,
    pub mean_per_trial_prob: f64,
}

/// Simulates `runs` independent inference runs of `trials_per_run` trials
/// each against a device drawn from `true_lib`, and reports how often the
/// final decision lands on library 1. Run `r` derives its degauss streams
/// from `seed.child(r)`.
pub fn simulate_inference_runs(
    true_lib: &DeviceLibrary,
    lib1: &DeviceLibrary,
    lib2: &DeviceLibrary,
    challenge: &Challenge,
    trials_per_run: u32,
    runs: u64,
    seed: Seed,
    rule: AlignmentRule,
) -> Result<InferenceStudy> {
    let outcomes = run_outcomes::<true>(true_lib, lib1, lib2, challenge, trials_per_run, runs, seed, rule)?;
    Ok(summarize(outcomes, runs, trials_per_run, challenge.len()))
}

/// Single-threaded counterpart of [`simulate_inference_runs`]; same output.
#[allow(clippy::too_many_arguments)]
pub fn simulate_inference_runs_seq(
    true_lib: &DeviceLibrary,
    lib1: &DeviceLibrary,
    lib2: &DeviceLibrary,
    challenge: &Challenge,
    trials_per_run: u32,
    runs: u64,
    seed: Seed,
    rule: AlignmentRule,
) -> Result<InferenceStudy> {
    let outcomes = run_outcomes::<false>(true_lib, lib1, lib2, challenge, trials_per_run, runs, seed, rule)?;
    Ok(summarize(outcomes, runs, trials_per_run, challenge.len()))
}

#[allow(clippy::too_many_arguments)]
fn run_outcomes<const PARALLEL: bool>(
    true_lib: &DeviceLibrary,
    lib1: &DeviceLibrary,
    lib2: &DeviceLibrary,
    challenge: &Challenge,
    trials_per_run: u32,
    runs: u64,
    seed: Seed,
    rule: AlignmentRule,
) -> Result<(u64, u64)> {
    let device = Device::from_library(true_lib);
    // Per-trial probabilities are multiples of 0.5 / k; summing label
    // half-units keeps the reduction in integers, so the parallel and
    // sequential paths agree exactly.
    let one_run = |r: u64| -> Result<(u64, u64)> {
        let run_seed = seed.child(r);
        let mut observations = Vec::with_capacity(trials_per_run as usize);
        for t in 0..u64::from(trials_per_run) {
            let trace = degauss_sample(&device, t, &mut run_seed.stream(t))?;
            let classes = trace.classes()?;
            observations.push(
                challenge
                    .positions()
                    .iter()
                    .map(|&p| classes[p as usize - 1])
                    .collect::<Vec<StateClass>>(),
            );
        }
        let run = infer(&observations, lib1, lib2, challenge, rule)?;
        let sample1 = u64::from(run.decision == Decision::Sample1);
        let half_units: u64 = run
            .trial_labels
            .iter()
            .flatten()
            .map(|label| match label {
                Label::Sample1 => 2,
                Label::Abstain => 1,
                Label::Sample2 => 0,
            })
            .sum();
        Ok((sample1, half_units))
    };

    #[cfg(feature = "parallel")]
    if PARALLEL {
        use rayon::prelude::*;
        return (0..runs)
            .into_par_iter()
            .map(one_run)
            .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)));
    }
    let mut acc = (0u64, 0u64);
    for r in 0..runs {
        let (s, h) = one_run(r)?;
        acc = (acc.0 + s, acc.1 + h);
    }
    Ok(acc)
}

fn summarize(
    outcomes: (u64, u64),
    runs: u64,
    trials_per_run: u32,
    challenge_len: usize,
) -> InferenceStudy {
    let (decided_sample1, half_units) = outcomes;
    let total_trials = runs as f64 * f64::from(trials_per_run);
    InferenceStudy {
        runs,
        trials_per_run,
        decided_sample1,
        accuracy_for_sample1: decided_sample1 as f64 / runs as f64,
        mean_per_trial_prob: half_units as f64 / (2.0 * challenge_len as f64 * total_trials),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DotProfile, GatingEvent, Provenance};

    fn library(p_sds: &[f64]) -> DeviceLibrary {
        DeviceLibrary {
            device_id: "dev".into(),
            circuit_id: "A".into(),
            gating: GatingEvent {
                voltage_v: -10.0,
                duration_min: 60.0,
            },
            enrollment_trials: 100,
            provenance: Provenance::enrolled(),
            profiles: p_sds
                .iter()
                .enumerate()
                .map(|(i, &p)| DotProfile::new(i as u32 + 1, p, 0.5).unwrap())
                .collect(),
        }
    }

    #[test]
    fn poisson_binomial_degenerate_cases() {
        assert_eq!(poisson_binomial_tail(&[1.0; 5], 3), 1.0);
        assert_eq!(poisson_binomial_tail(&[0.0; 5], 3), 0.0);
        // Five fair coins: P(>= 3 heads) = 0.5 by symmetry.
        assert!((poisson_binomial_tail(&[0.5; 5], 3) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn poisson_binomial_matches_direct_enumeration() {
        let ps = [0.911, 0.758, 0.419, 0.935, 0.844];
        let mut direct = 0.0;
        for mask in 0u32..32 {
            if mask.count_ones() >= 3 {
                let mut prob = 1.0;
                for (i, &p) in ps.iter().enumerate() {
                    prob *= if mask & (1 << i) != 0 { p } else { 1.0 - p };
                }
                direct += prob;
            }
        }
        let conv = poisson_binomial_tail(&ps, 3);
        assert!((conv - direct).abs() < 1e-12);
        assert!((conv - 0.945_018_575_708_48).abs() < 1e-12);
    }

    #[test]
    fn oracle_composes_labeling_with_truth() {
        // Dot 13 re-indexed at 1: labels 1 iff SD, so p(label 1) = 0.911.
        // Dot 9 at position 3: labels 1 iff SD, p = 0.419.
        let lib1 = library(&[0.911, 0.242, 0.419, 0.065, 0.156]);
        let lib2 = library(&[0.666, 0.55, 0.118, 0.85, 0.372]);
        let challenge = Challenge::new(vec![1, 2, 3, 4, 5]).unwrap();
        let oracle =
            per_trial_accept_prob(&lib1, &lib1, &lib2, &challenge, AlignmentRule::Likelihood)
                .unwrap();
        let expected = [0.911, 0.758, 0.419, 0.935, 0.844];
        for (got, want) in oracle.per_dot_label1.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        assert!((oracle.mean_label1 - 0.7734).abs() < 1e-12);
    }

    #[test]
    fn all_certain_dots_give_majority_one() {
        let lib1 = library(&[0.9; 3]);
        let lib2 = library(&[0.1; 3]);
        let truth = library(&[1.0, 1.0, 1.0]);
        let challenge = Challenge::new(vec![1, 2, 3]).unwrap();
        let oracle =
            per_trial_accept_prob(&truth, &lib1, &lib2, &challenge, AlignmentRule::Likelihood)
                .unwrap();
        assert_eq!(oracle.per_dot_label1, vec![1.0; 3]);
        assert_eq!(oracle.majority_label1, 1.0);
    }

    #[test]
    fn parallel_and_sequential_studies_agree_exactly() {
        let lib1 = library(&[0.911, 0.242, 0.419]);
        let lib2 = library(&[0.666, 0.55, 0.118]);
        let challenge = Challenge::new(vec![1, 2, 3]).unwrap();
        let a = simulate_inference_runs(
            &lib1, &lib1, &lib2, &challenge, 9, 500, Seed(2), AlignmentRule::Likelihood,
        )
        .unwrap();
        let b = simulate_inference_runs_seq(
            &lib1, &lib1, &lib2, &challenge, 9, 500, Seed(2), AlignmentRule::Likelihood,
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
