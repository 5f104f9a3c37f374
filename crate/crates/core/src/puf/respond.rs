//! Majority-voted responses and verification against an enrolled library.

use crate::error::{Error, Result};
use crate::model::{degauss_sample, Device, DeviceLibrary, StateClass};
use crate::puf::challenge::{Challenge, Response};
use crate::rng::Seed;

/// Reads the challenged dots over `trials` degauss cycles (odd) and returns
/// the class each dot showed in more than half of them. A challenged dot
/// that reads OFF means the circuit was never gated, or the challenge is
/// probing outside the activated region: both are reported as tamper.
pub fn respond(
    device: &Device,
    circuit_id: &str,
    challenge: &Challenge,
    trials: u32,
    seed: Seed,
) -> Result<Response> {
    if trials == 0 || trials % 2 == 0 {
        return Err(Error::EvenTrials(trials));
    }
    let (offset, len) = device.circuit_span(circuit_id)?;
    for &p in challenge.positions() {
        if p == 0 || p as usize > len {
            return Err(Error::PositionOutOfRange { position: p, len });
        }
    }
    let mut sd_votes = vec![0u32; challenge.len()];
    for trial in 0..u64::from(trials) {
        let trace = degauss_sample(device, trial, &mut seed.stream(trial))?;
        for (votes, &p) in sd_votes.iter_mut().zip(challenge.positions()) {
            let state = trace.states[offset + p as usize - 1];
            match state.class() {
                Some(StateClass::Sd) => *votes += 1,
                Some(StateClass::Vortex) => {}
                None => return Err(Error::InactiveDot(p)),
            }
        }
    }
    let states = sd_votes
        .iter()
        .map(|&votes| {
            if 2 * votes > trials {
                StateClass::Sd
            } else {
                StateClass::Vortex
            }
        })
        .collect();
    Ok(Response {
        states,
        trials_used: trials,
    })
}

/// Outcome of comparing a response against the enrolled majority states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verification {
    pub mismatches: u32,
    pub threshold: u32,
    pub pass: bool,
}

/// Counts positions where the response class differs from the library's
/// majority-voted state. Passes when mismatches stay at or below the
/// threshold; the default `floor(k/2)` accepts a k=5 response with at
/// least three aligned dots.
pub fn verify(
    response: &Response,
    library: &DeviceLibrary,
    challenge: &Challenge,
    threshold: Option<u32>,
) -> Result<Verification> {
    if response.states.len() != challenge.len() {
        return Err(Error::ResponseLengthMismatch {
            got: response.states.len(),
            expected: challenge.len(),
        });
    }
    challenge.validate_against(library)?;
    let mismatches = challenge
        .positions()
        .iter()
        .zip(&response.states)
        .filter(|(&p, &state)| {
            library
                .dot(p)
                .map(|dot| dot.majority_state != state)
                .unwrap_or(true)
        })
        .count() as u32;
    let threshold = threshold.unwrap_or(challenge.len() as u32 / 2);
    Ok(Verification {
        mismatches,
        threshold,
        pass: mismatches <= threshold,
    })
}
