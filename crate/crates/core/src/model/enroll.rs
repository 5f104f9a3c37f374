//! Enrollment: repeated degauss/readout cycles that estimate each dot's
//! state probabilities and produce the device library.

use crate::error::{Error, Result};
use crate::model::degauss::degauss_sample;
use crate::model::device::Device;
use crate::model::profile::{DeviceLibrary, DotProfile, Provenance};
use crate::model::state::{Direction, StateClass};
use crate::rng::Seed;

#[derive(Clone, Copy, Default)]
struct DotCounts {
    sd: u64,
    rcw: u64,
}

/// Enrolls one circuit: runs `trials` degauss cycles and estimates each
/// dot's SD probability and direction probability from the observed counts.
/// A dot whose outcomes all share one class becomes a d-bit; an even trial
/// count that splits a dot's classes exactly in half has no majority and
/// errors, directing the caller to an odd trial count.
pub fn enroll(device: &Device, circuit_id: &str, trials: u32, seed: Seed) -> Result<DeviceLibrary> {
    let counts = count_outcomes::<true>(device, circuit_id, trials, seed)?;
    build_library(device, circuit_id, trials, counts)
}

/// Single-threaded counterpart of [`enroll`]; same output.
pub fn enroll_seq(
    device: &Device,
    circuit_id: &str,
    trials: u32,
    seed: Seed,
) -> Result<DeviceLibrary> {
    let counts = count_outcomes::<false>(device, circuit_id, trials, seed)?;
    build_library(device, circuit_id, trials, counts)
}

fn count_outcomes<const PARALLEL: bool>(
    device: &Device,
    circuit_id: &str,
    trials: u32,
    seed: Seed,
) -> Result<Vec<DotCounts>> {
    if trials == 0 {
        return Err(Error::TooFewTraces { needed: 1, got: 0 });
    }
    let circuit = device.circuit(circuit_id)?;
    if !circuit.is_active() {
        return Err(Error::InactiveCircuit(circuit_id.into()));
    }
    let (offset, len) = device.circuit_span(circuit_id)?;

    let tally = |trial: u64| -> Result<Vec<DotCounts>> {
        let trace = degauss_sample(device, trial, &mut seed.stream(trial))?;
        let mut counts = vec![DotCounts::default(); len];
        for (c, state) in counts.iter_mut().zip(&trace.states[offset..offset + len]) {
            if state.class() == Some(StateClass::Sd) {
                c.sd += 1;
            }
            if state.direction() == Some(Direction::RightCw) {
                c.rcw += 1;
            }
        }
        Ok(counts)
    };
    let merge = |mut a: Vec<DotCounts>, b: Vec<DotCounts>| {
        for (x, y) in a.iter_mut().zip(b) {
            x.sd += y.sd;
            x.rcw += y.rcw;
        }
        a
    };

    #[cfg(feature = "parallel")]
    if PARALLEL {
        use rayon::prelude::*;
        return (0..trials as u64)
            .into_par_iter()
            .map(tally)
            .try_reduce(|| vec![DotCounts::default(); len], |a, b| Ok(merge(a, b)));
    }
    let mut acc = vec![DotCounts::default(); len];
    for trial in 0..trials as u64 {
        acc = merge(acc, tally(trial)?);
    }
    Ok(acc)
}

fn build_library(
    device: &Device,
    circuit_id: &str,
    trials: u32,
    counts: Vec<DotCounts>,
) -> Result<DeviceLibrary> {
    let circuit = device.circuit(circuit_id)?;
    let m = u64::from(trials);
    let mut profiles = Vec::with_capacity(counts.len());
    for (i, c) in counts.iter().enumerate() {
        let position = i as u32 + 1;
        if 2 * c.sd == m {
            return Err(Error::EnrollmentTie { position, trials });
        }
        profiles.push(DotProfile::new(
            position,
            c.sd as f64 / m as f64,
            c.rcw as f64 / m as f64,
        )?);
    }
    let gating = *circuit
        .gating_history
        .last()
        .ok_or_else(|| Error::InactiveCircuit(circuit_id.into()))?;
    Ok(DeviceLibrary {
        device_id: device.device_id.clone(),
        circuit_id: circuit_id.into(),
        gating,
        enrollment_trials: trials,
        provenance: Provenance::enrolled(),
        profiles,
    })
}
