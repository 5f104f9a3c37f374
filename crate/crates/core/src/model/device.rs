//! Dot-array devices: circuits, selective gating, and tamper evidence.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::profile::{DeviceLibrary, DotParams};

/// One voltage actuation of a circuit. Negative voltage expels ions and
/// activates the dots; positive-voltage reversal is not modeled.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GatingEvent {
    pub voltage_v: f64,
    pub duration_min: f64,
}

/// Grid coordinate of a dot, row-major from the top-left corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridPos {
    pub row: u32,
    pub col: u32,
}

/// A selectively contacted group of dots. Dot order follows the reading
/// direction (left to right, top to bottom); the 1-based index into that
/// order is what challenges and libraries refer to.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub circuit_id: String,
    pub dot_positions: Vec<GridPos>,
    pub activation: bool,
    pub gating_history: Vec<GatingEvent>,
    /// Sampling parameters per dot, set once the circuit has been gated.
    pub dot_params: Option<Vec<DotParams>>,
}

impl Circuit {
    /// New ungated circuit. Positions are normalized to reading order.
    pub fn new(circuit_id: impl Into<String>, mut dot_positions: Vec<GridPos>) -> Self {
        dot_positions.sort();
        Circuit {
            circuit_id: circuit_id.into(),
            dot_positions,
            activation: false,
            gating_history: Vec::new(),
            dot_params: None,
        }
    }

    pub fn len(&self) -> usize {
        self.dot_positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dot_positions.is_empty()
    }

    /// Active iff at least one negative-voltage gating event was applied.
    pub fn is_active(&self) -> bool {
        self.activation
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for pos in &self.dot_positions {
            if !seen.insert(*pos) {
                return Err(Error::Invariant(format!(
                    "circuit {}: duplicate dot position ({}, {})",
                    self.circuit_id, pos.row, pos.col
                )));
            }
        }
        if self.dot_positions.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invariant(format!(
                "circuit {}: dot positions are not in reading order",
                self.circuit_id
            )));
        }
        if self.activation && !self.gating_history.iter().any(|e| e.voltage_v < 0.0) {
            return Err(Error::Invariant(format!(
                "circuit {}: marked active without a negative-voltage gating event",
                self.circuit_id
            )));
        }
        if let Some(params) = &self.dot_params {
            if params.len() != self.dot_positions.len() {
                return Err(Error::Invariant(format!(
                    "circuit {}: {} parameter sets for {} dots",
                    self.circuit_id,
                    params.len(),
                    self.dot_positions.len()
                )));
            }
            for (i, p) in params.iter().enumerate() {
                p.validate(i as u32 + 1)?;
            }
        }
        Ok(())
    }
}

/// Per-circuit gating calibration: dot parameters at one or more anchor
/// actuation times. Between anchors, parameters interpolate linearly in
/// duration; outside the anchor range they clamp to the nearest anchor,
/// so extending the gating time beyond the last anchor changes nothing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GatingCalibration {
    pub circuit_id: String,
    pub anchors: Vec<CalibrationAnchor>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationAnchor {
    pub duration_min: f64,
    pub dots: Vec<DotParams>,
}

impl GatingCalibration {
    pub fn validate(&self) -> Result<()> {
        if self.anchors.is_empty() {
            return Err(Error::Schema("calibration has no anchors".into()));
        }
        let n = self.anchors[0].dots.len();
        for anchor in &self.anchors {
            if anchor.duration_min <= 0.0 {
                return Err(Error::Schema(format!(
                    "calibration anchor at {} min must be at a positive duration",
                    anchor.duration_min
                )));
            }
            if anchor.dots.len() != n {
                return Err(Error::Schema(
                    "calibration anchors have inconsistent dot counts".into(),
                ));
            }
            for (i, p) in anchor.dots.iter().enumerate() {
                p.validate(i as u32 + 1)?;
            }
        }
        if self
            .anchors
            .windows(2)
            .any(|w| w[0].duration_min >= w[1].duration_min)
        {
            return Err(Error::Schema(
                "calibration anchors must be sorted by strictly increasing duration".into(),
            ));
        }
        Ok(())
    }

    pub fn dot_count(&self) -> usize {
        self.anchors.first().map_or(0, |a| a.dots.len())
    }

    /// Dot parameters for a gating of `duration_min` minutes (must be > 0).
    pub fn params_at(&self, duration_min: f64) -> Vec<DotParams> {
        let first = self.anchors.first().expect("validated: non-empty");
        let last = self.anchors.last().expect("validated: non-empty");
        if duration_min <= first.duration_min {
            return first.dots.clone();
        }
        if duration_min >= last.duration_min {
            return last.dots.clone();
        }
        let hi = self
            .anchors
            .iter()
            .position(|a| a.duration_min >= duration_min)
            .expect("duration below last anchor");
        let (a, b) = (&self.anchors[hi - 1], &self.anchors[hi]);
        let t = (duration_min - a.duration_min) / (b.duration_min - a.duration_min);
        a.dots
            .iter()
            .zip(&b.dots)
            .map(|(pa, pb)| DotParams {
                p_sd: pa.p_sd + t * (pb.p_sd - pa.p_sd),
                p_dir_rcw: pa.p_dir_rcw + t * (pb.p_dir_rcw - pa.p_dir_rcw),
            })
            .collect()
    }
}

/// A patterned dot array with one or more selectively contacted circuits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Device {
    pub device_id: String,
    pub circuits: Vec<Circuit>,
}

impl Device {
    pub fn new(device_id: impl Into<String>, circuits: Vec<Circuit>) -> Result<Self> {
        let device = Device {
            device_id: device_id.into(),
            circuits,
        };
        device.validate()?;
        Ok(device)
    }

    /// Synthetic single-circuit device that reproduces the statistics of an
    /// enrolled library. The circuit comes up gated with the library's
    /// recorded gating event.
    pub fn from_library(library: &DeviceLibrary) -> Device {
        let positions = (0..library.len() as u32)
            .map(|i| GridPos {
                row: i / 10,
                col: i % 10,
            })
            .collect();
        let mut circuit = Circuit::new(library.circuit_id.clone(), positions);
        circuit.activation = true;
        circuit.gating_history.push(library.gating);
        circuit.dot_params = Some(library.dot_params());
        Device {
            device_id: library.device_id.clone(),
            circuits: vec![circuit],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut ids = BTreeSet::new();
        let mut positions = BTreeSet::new();
        for circuit in &self.circuits {
            circuit.validate()?;
            if !ids.insert(circuit.circuit_id.clone()) {
                return Err(Error::Invariant(format!(
                    "duplicate circuit id `{}`",
                    circuit.circuit_id
                )));
            }
            for pos in &circuit.dot_positions {
                if !positions.insert(*pos) {
                    return Err(Error::Invariant(format!(
                        "dot position ({}, {}) belongs to more than one circuit",
                        pos.row, pos.col
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn circuit(&self, circuit_id: &str) -> Result<&Circuit> {
        self.circuits
            .iter()
            .find(|c| c.circuit_id == circuit_id)
            .ok_or_else(|| Error::UnknownCircuit(circuit_id.into()))
    }

    fn circuit_mut(&mut self, circuit_id: &str) -> Result<&mut Circuit> {
        self.circuits
            .iter_mut()
            .find(|c| c.circuit_id == circuit_id)
            .ok_or_else(|| Error::UnknownCircuit(circuit_id.into()))
    }

    /// Total dots across all circuits; the length of a device trace.
    pub fn total_dots(&self) -> usize {
        self.circuits.iter().map(Circuit::len).sum()
    }

    pub fn active_dots(&self) -> usize {
        self.circuits
            .iter()
            .filter(|c| c.is_active())
            .map(Circuit::len)
            .sum()
    }

    /// Offset and length of a circuit's slice within a device trace.
    pub fn circuit_span(&self, circuit_id: &str) -> Result<(usize, usize)> {
        let mut offset = 0;
        for circuit in &self.circuits {
            if circuit.circuit_id == circuit_id {
                return Ok((offset, circuit.len()));
            }
            offset += circuit.len();
        }
        Err(Error::UnknownCircuit(circuit_id.into()))
    }

    /// Applies a gating event to one circuit, setting each dot's sampling
    /// parameters from the calibration at the event's duration and marking
    /// the circuit active. A zero-duration event is a no-op: the circuit
    /// stays in whatever state it was in.
    pub fn apply_gating(
        &mut self,
        circuit_id: &str,
        event: GatingEvent,
        calibration: &GatingCalibration,
    ) -> Result<()> {
        calibration.validate()?;
        if event.voltage_v >= 0.0 {
            return Err(Error::UnsupportedGating(event.voltage_v));
        }
        if event.duration_min < 0.0 || !event.duration_min.is_finite() {
            return Err(Error::InvalidDuration(event.duration_min));
        }
        let circuit = self.circuit_mut(circuit_id)?;
        if calibration.dot_count() != circuit.len() {
            return Err(Error::Schema(format!(
                "calibration covers {} dots but circuit `{}` has {}",
                calibration.dot_count(),
                circuit_id,
                circuit.len()
            )));
        }
        if event.duration_min == 0.0 {
            return Ok(());
        }
        circuit.dot_params = Some(calibration.params_at(event.duration_min));
        circuit.activation = true;
        circuit.gating_history.push(event);
        Ok(())
    }

    /// Compares each listed circuit's activation flag against the expected
    /// value. Unauthorized gating shows up here: an intruder's voltage
    /// switches dots that were supposed to stay OFF.
    pub fn tamper_check(&self, expected: &BTreeMap<String, bool>) -> Result<TamperReport> {
        let mut violations = Vec::new();
        for (circuit_id, &expected_active) in expected {
            let circuit = self.circuit(circuit_id)?;
            if circuit.is_active() != expected_active {
                violations.push(TamperViolation {
                    circuit_id: circuit_id.clone(),
                    expected_active,
                    actual_active: circuit.is_active(),
                });
            }
        }
        Ok(TamperReport { violations })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TamperViolation {
    pub circuit_id: String,
    pub expected_active: bool,
    pub actual_active: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TamperReport {
    pub violations: Vec<TamperViolation>,
}

impl TamperReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}
