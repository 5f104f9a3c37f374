//! CRP selection by inter-device uniqueness.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::inference::pfhd::pfhd_inter;
use crate::model::DeviceLibrary;
use crate::puf::{ber_closed_form, Challenge};

/// A candidate challenge annotated with its uniqueness and reliability
/// figures against both libraries.
#[derive(Clone, Debug, PartialEq)]
pub struct RankedChallenge {
    pub challenge: Challenge,
    pub pfhd: f64,
    pub p_bits_1: u32,
    pub p_bits_2: u32,
    /// Closed-form BER per requested trial count, library 1.
    pub ber_1: Vec<(u32, f64)>,
    /// Same for library 2.
    pub ber_2: Vec<(u32, f64)>,
}

/// Enumerates every k-dot subset of the array, keeps those whose
/// inter-device mismatch probability is within `tolerance` of `target`,
/// and ranks them by closeness (ties broken by position order). Exhaustive
/// enumeration is fine at array scale: C(18, 5) = 8568 subsets.
pub fn select_crps(
    lib1: &DeviceLibrary,
    lib2: &DeviceLibrary,
    k: usize,
    target: f64,
    tolerance: f64,
    ber_trials: &[u32],
) -> Result<Vec<RankedChallenge>> {
    let n = lib1.len().min(lib2.len());
    if k == 0 {
        return Err(Error::EmptyChallenge);
    }
    if k > n {
        return Err(Error::ChallengeTooLarge { k, n });
    }
    let subsets: Vec<Vec<u32>> = (1..=n as u32).combinations(k).collect();

    let score = |positions: &Vec<u32>| -> Result<Option<RankedChallenge>> {
        let challenge = Challenge::new(positions.clone())?;
        let pfhd = pfhd_inter(lib1, lib2, &challenge)?;
        if (pfhd - target).abs() > tolerance {
            return Ok(None);
        }
        let count_p_bits = |lib: &DeviceLibrary| -> Result<u32> {
            let mut count = 0;
            for &p in challenge.positions() {
                count += u32::from(lib.dot(p)?.is_p_bit());
            }
            Ok(count)
        };
        let ber_set = |lib: &DeviceLibrary| -> Result<Vec<(u32, f64)>> {
            ber_trials
                .iter()
                .map(|&t| Ok((t, ber_closed_form(lib, &challenge, t)?)))
                .collect()
        };
        Ok(Some(RankedChallenge {
            p_bits_1: count_p_bits(lib1)?,
            p_bits_2: count_p_bits(lib2)?,
            ber_1: ber_set(lib1)?,
            ber_2: ber_set(lib2)?,
            challenge,
            pfhd,
        }))
    };

    #[cfg(feature = "parallel")]
    let mut hits: Vec<RankedChallenge> = {
        use rayon::prelude::*;
        subsets
            .par_iter()
            .map(score)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut hits: Vec<RankedChallenge> = subsets
        .iter()
        .map(score)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    hits.sort_by(|a, b| {
        (a.pfhd - target)
            .abs()
            .total_cmp(&(b.pfhd - target).abs())
            .then_with(|| a.challenge.positions().cmp(b.challenge.positions()))
    });
    Ok(hits)
}
