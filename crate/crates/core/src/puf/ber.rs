//! Bit error rate of majority-voted responses: closed form and Monte Carlo.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::model::{Device, DeviceLibrary};
use crate::puf::challenge::Challenge;
use crate::puf::crp::binomial;
use crate::puf::respond::respond;
use crate::rng::Seed;

/// Probability that a dot with single-readout error probability `p_e` still
/// reads wrong after majority voting over `trials` (odd) readouts:
/// the binomial tail `sum_{k > trials/2} C(trials, k) p_e^k (1-p_e)^(t-k)`.
pub fn majority_error(p_e: f64, trials: u32) -> Result<f64> {
    if trials == 0 || trials % 2 == 0 {
        return Err(Error::EvenTrials(trials));
    }
    if !(0.0..=1.0).contains(&p_e) || !p_e.is_finite() {
        return Err(Error::InvalidProbability {
            position: 0,
            field: "p_e",
            value: p_e,
        });
    }
    let t = trials as u64;
    let mut tail = 0.0;
    for k in t / 2 + 1..=t {
        let c = biguint_to_f64(&binomial(t, k));
        tail += c * p_e.powi(k as i32) * (1.0 - p_e).powi((t - k) as i32);
    }
    Ok(tail.min(1.0))
}

fn biguint_to_f64(v: &BigUint) -> f64 {
    v.to_string().parse::<f64>().expect("decimal digits")
}

/// Closed-form BER of a challenge: each dot errs when it reads its enrolled
/// minority class, so `p_e = min(p_sd, p_v)` (zero for d-bits), and the BER
/// is the mean majority-voting tail over the challenged dots.
pub fn ber_closed_form(
    library: &DeviceLibrary,
    challenge: &Challenge,
    trials: u32,
) -> Result<f64> {
    challenge.validate_against(library)?;
    let mut sum = 0.0;
    for &p in challenge.positions() {
        sum += majority_error(library.dot(p)?.minority_prob(), trials)?;
    }
    Ok(sum / challenge.len() as f64)
}

/// Closed-form BER at every odd trial count up to `max_trials`.
pub fn ber_curve(
    library: &DeviceLibrary,
    challenge: &Challenge,
    max_trials: u32,
) -> Result<Vec<(u32, f64)>> {
    (1..=max_trials)
        .step_by(2)
        .map(|t| Ok((t, ber_closed_form(library, challenge, t)?)))
        .collect()
}

/// Monte-Carlo BER estimate with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BerEstimate {
    pub ber: f64,
    pub std_error: f64,
    pub repetitions: u64,
}

/// Estimates the BER by running `repetitions` majority-voted responses and
/// counting bits that disagree with the library's majority states.
/// Repetition `r` derives its trial streams from `seed.child(r)`, so the
/// estimate is reproducible and identical to the sequential path.
pub fn ber_empirical(
    device: &Device,
    circuit_id: &str,
    library: &DeviceLibrary,
    challenge: &Challenge,
    trials: u32,
    repetitions: u64,
    seed: Seed,
) -> Result<BerEstimate> {
    let counts = mismatch_counts::<true>(device, circuit_id, library, challenge, trials, repetitions, seed)?;
    Ok(estimate(counts, challenge.len(), repetitions))
}

/// Single-threaded counterpart of [`ber_empirical`]; same output.
pub fn ber_empirical_seq(
    device: &Device,
    circuit_id: &str,
    library: &DeviceLibrary,
    challenge: &Challenge,
    trials: u32,
    repetitions: u64,
    seed: Seed,
) -> Result<BerEstimate> {
    let counts = mismatch_counts::<false>(device, circuit_id, library, challenge, trials, repetitions, seed)?;
    Ok(estimate(counts, challenge.len(), repetitions))
}

fn mismatch_counts<const PARALLEL: bool>(
    device: &Device,
    circuit_id: &str,
    library: &DeviceLibrary,
    challenge: &Challenge,
    trials: u32,
    repetitions: u64,
    seed: Seed,
) -> Result<Vec<u64>> {
    if repetitions == 0 {
        return Err(Error::TooFewTraces { needed: 1, got: 0 });
    }
    challenge.validate_against(library)?;
    let majority: Vec<_> = challenge
        .positions()
        .iter()
        .map(|&p| library.dot(p).map(|d| d.majority_state))
        .collect::<Result<_>>()?;

    let one_rep = |rep: u64| -> Result<Vec<u64>> {
        let response = respond(device, circuit_id, challenge, trials, seed.child(rep))?;
        Ok(response
            .states
            .iter()
            .zip(&majority)
            .map(|(got, want)| u64::from(got != want))
            .collect())
    };
    let merge = |mut a: Vec<u64>, b: Vec<u64>| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };

    #[cfg(feature = "parallel")]
    if PARALLEL {
        use rayon::prelude::*;
        return (0..repetitions)
            .into_par_iter()
            .map(one_rep)
            .try_reduce(|| vec![0u64; challenge.len()], |a, b| Ok(merge(a, b)));
    }
    let mut acc = vec![0u64; challenge.len()];
    for rep in 0..repetitions {
        acc = merge(acc, one_rep(rep)?);
    }
    Ok(acc)
}

fn estimate(counts: Vec<u64>, k: usize, repetitions: u64) -> BerEstimate {
    let reps = repetitions as f64;
    let ber = counts.iter().sum::<u64>() as f64 / (reps * k as f64);
    // Dots err independently, so the variance of the mean is the sum of the
    // per-dot binomial variances.
    let variance: f64 = counts
        .iter()
        .map(|&c| {
            let p = c as f64 / reps;
            p * (1.0 - p) / reps
        })
        .sum::<f64>()
        / (k * k) as f64;
    BerEstimate {
        ber,
        std_error: variance.sqrt(),
        repetitions,
    }
}
