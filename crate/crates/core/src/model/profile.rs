//! Per-dot probability profiles and enrolled device libraries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::device::GatingEvent;
use crate::model::state::StateClass;

/// Ground-truth sampling parameters of one gated dot: probability of
/// settling into an SD state, and probability of the right/CW direction
/// subclass. Class and direction are drawn independently.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DotParams {
    pub p_sd: f64,
    pub p_dir_rcw: f64,
}

impl DotParams {
    pub fn validate(&self, position: u32) -> Result<()> {
        check_probability(position, "p_sd", self.p_sd)?;
        check_probability(position, "p_dir_rcw", self.p_dir_rcw)
    }
}

pub(crate) fn check_probability(position: u32, field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidProbability {
            position,
            field,
            value,
        })
    }
}

/// Deterministic vs probabilistic classification of a dot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BitKind {
    #[serde(rename = "d")]
    DBit,
    #[serde(rename = "p")]
    PBit,
}

/// Enrolled profile of one dot: empirical state probabilities, the
/// majority-voted class, and the d-bit/p-bit classification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DotProfile {
    /// 1-based index in reading order (left to right, top to bottom).
    pub position: u32,
    pub p_sd: f64,
    pub p_v: f64,
    pub p_dir_rcw: f64,
    pub majority_state: StateClass,
    pub bit_kind: BitKind,
}

impl DotProfile {
    /// Builds a profile from `p_sd` and `p_dir_rcw`, deriving the remaining
    /// fields. A dot is a d-bit iff its class is certain (`p_sd` exactly 0
    /// or 1); an exact 0.5 tie has no majority and is rejected.
    pub fn new(position: u32, p_sd: f64, p_dir_rcw: f64) -> Result<Self> {
        check_probability(position, "p_sd", p_sd)?;
        check_probability(position, "p_dir_rcw", p_dir_rcw)?;
        let majority_state = if p_sd > 0.5 {
            StateClass::Sd
        } else if p_sd < 0.5 {
            StateClass::Vortex
        } else {
            return Err(Error::MajorityTie(position));
        };
        let bit_kind = if p_sd == 0.0 || p_sd == 1.0 {
            BitKind::DBit
        } else {
            BitKind::PBit
        };
        Ok(DotProfile {
            position,
            p_sd,
            p_v: 1.0 - p_sd,
            p_dir_rcw,
            majority_state,
            bit_kind,
        })
    }

    /// Checks every stored-profile invariant. Loaded files go through this.
    pub fn validate(&self) -> Result<()> {
        check_probability(self.position, "p_sd", self.p_sd)?;
        check_probability(self.position, "p_v", self.p_v)?;
        check_probability(self.position, "p_dir_rcw", self.p_dir_rcw)?;
        if (self.p_sd + self.p_v - 1.0).abs() > 1e-6 {
            return Err(Error::Invariant(format!(
                "dot {}: p_sd + p_v = {} differs from 1 by more than 1e-6",
                self.position,
                self.p_sd + self.p_v
            )));
        }
        if self.p_sd == 0.5 {
            return Err(Error::MajorityTie(self.position));
        }
        let expect_majority = if self.p_sd > 0.5 {
            StateClass::Sd
        } else {
            StateClass::Vortex
        };
        if self.majority_state != expect_majority {
            return Err(Error::Invariant(format!(
                "dot {}: majority state {} contradicts p_sd = {}",
                self.position, self.majority_state, self.p_sd
            )));
        }
        let expect_kind = if self.p_sd == 0.0 || self.p_sd == 1.0 {
            BitKind::DBit
        } else {
            BitKind::PBit
        };
        if self.bit_kind != expect_kind {
            return Err(Error::Invariant(format!(
                "dot {}: bit kind {:?} contradicts p_sd = {}",
                self.position, self.bit_kind, self.p_sd
            )));
        }
        Ok(())
    }

    /// Probability of the given class on a fresh degauss.
    pub fn class_prob(&self, class: StateClass) -> f64 {
        match class {
            StateClass::Sd => self.p_sd,
            StateClass::Vortex => self.p_v,
        }
    }

    /// Probability of observing the non-majority class: the per-dot error
    /// probability of a single readout. Zero for d-bits.
    pub fn minority_prob(&self) -> f64 {
        self.p_sd.min(self.p_v)
    }

    pub fn params(&self) -> DotParams {
        DotParams {
            p_sd: self.p_sd,
            p_dir_rcw: self.p_dir_rcw,
        }
    }

    pub fn is_p_bit(&self) -> bool {
        self.bit_kind == BitKind::PBit
    }
}

/// Where the numbers in a library came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub p_sd: String,
    pub p_dir_rcw: String,
}

impl Provenance {
    pub fn enrolled() -> Self {
        Provenance {
            p_sd: "enrolled".into(),
            p_dir_rcw: "enrolled".into(),
        }
    }
}

/// Enrolled fingerprint of one circuit: ordered dot profiles plus the
/// gating conditions they were measured under.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeviceLibrary {
    pub device_id: String,
    pub circuit_id: String,
    pub gating: GatingEvent,
    pub enrollment_trials: u32,
    pub provenance: Provenance,
    pub profiles: Vec<DotProfile>,
}

impl DeviceLibrary {
    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    /// Profile at 1-based reading-order `position`.
    pub fn dot(&self, position: u32) -> Result<&DotProfile> {
        if position == 0 || position as usize > self.profiles.len() {
            return Err(Error::PositionOutOfRange {
                position,
                len: self.profiles.len(),
            });
        }
        Ok(&self.profiles[position as usize - 1])
    }

    pub fn p_bit_count(&self) -> usize {
        self.profiles.iter().filter(|p| p.is_p_bit()).count()
    }

    pub fn d_bit_count(&self) -> usize {
        self.len() - self.p_bit_count()
    }

    pub fn validate(&self) -> Result<()> {
        if self.profiles.is_empty() {
            return Err(Error::EmptyLibrary);
        }
        for (i, profile) in self.profiles.iter().enumerate() {
            profile.validate()?;
            if profile.position != i as u32 + 1 {
                return Err(Error::Invariant(format!(
                    "profile at index {i} has position {}, expected {}",
                    profile.position,
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Ground-truth sampling parameters, for building a synthetic device
    /// that behaves like this library.
    pub fn dot_params(&self) -> Vec<DotParams> {
        self.profiles.iter().map(DotProfile::params).collect()
    }
}
