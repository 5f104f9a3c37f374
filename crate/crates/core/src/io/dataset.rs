//! The reference dataset shipped with the repository: enrolled probability
//! tables, direction-subclass tables, reference CRP metrics, the recorded
//! inference run, plus library/calibration/device files derived from them.
//!
//! Tables ship as data, not code, so tests exercise the same files users
//! see. The library and calibration JSONs are deterministic renderings of
//! the tables; `rebuild_shipped_files` regenerates them byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::inference::Label;
use crate::io::files::{calibration_to_json, device_to_json, load_calibration, load_device};
use crate::io::library::{library_to_json, load_library};
use crate::model::{
    CalibrationAnchor, Circuit, Device, DeviceLibrary, DotProfile, GatingCalibration, GatingEvent,
    GridPos, Provenance, StateClass,
};
use crate::puf::Challenge;

pub const ENROLLED_TABLE: &str = "tables/enrolled_sd_probabilities.csv";
pub const DIRECTION_TABLE_A: &str = "tables/direction_probabilities_circuit_a.csv";
pub const DIRECTION_TABLE_B: &str = "tables/direction_probabilities_circuit_b.csv";
pub const REFERENCE_CRP_TABLE: &str = "tables/reference_crp_metrics.csv";
pub const INFERENCE_REPLAY_TABLE: &str = "tables/inference_replay.csv";
pub const SAMPLE1_A_LIBRARY: &str = "libraries/sample1_circuit_a.json";
pub const SAMPLE2_A_LIBRARY: &str = "libraries/sample2_circuit_a.json";
pub const SAMPLE1_B_LIBRARY: &str = "libraries/sample1_circuit_b.json";
pub const CIRCUIT_A_CALIBRATION: &str = "calibration/circuit_a.json";
pub const CIRCUIT_B_CALIBRATION: &str = "calibration/circuit_b.json";
pub const TWO_CIRCUIT_DEVICE: &str = "devices/two_circuit_array.json";
pub const MANIFEST: &str = "MANIFEST.sha256";

/// Aggregate SD probability of circuit B; per-dot values were never
/// published, so its library carries this uniform placeholder.
pub const CIRCUIT_B_AGGREGATE_P_SD: f64 = 0.087;

/// One row of the enrolled SD/vortex probability table (percentages as
/// printed, two devices side by side).
#[derive(Clone, Debug, PartialEq)]
pub struct EnrolledRow {
    pub dot: u32,
    pub s1_p_sd_pct: f64,
    pub s1_p_v_pct: f64,
    pub s1_majority: StateClass,
    pub s2_p_sd_pct: f64,
    pub s2_p_v_pct: f64,
    pub s2_majority: StateClass,
}

/// One row of a direction-subclass probability table.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionRow {
    pub dot: u32,
    pub p_rcw_pct: f64,
    pub p_lccw_pct: f64,
    pub entropy_bits: f64,
}

/// One row of the reference CRP metrics table: a five-dot challenge with
/// published BER percentages at T = 1, 5, 11, 27 for both devices and the
/// inter-device pFHD.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceCrpRow {
    pub positions: Vec<u32>,
    pub s1_p_bits: u32,
    pub s1_ber_pct: [f64; 4],
    pub s2_p_bits: u32,
    pub s2_ber_pct: [f64; 4],
    pub pfhd_inter: f64,
}

pub const REFERENCE_BER_TRIALS: [u32; 4] = [1, 5, 11, 27];

/// The recorded 27-trial inference run: per-trial labels for each
/// challenged dot, with the published per-trial and (at odd trials)
/// cumulative percentages.
#[derive(Clone, Debug, PartialEq)]
pub struct InferenceReplay {
    pub challenge: Challenge,
    pub labels: Vec<Vec<Label>>,
    pub per_trial_pct: Vec<f64>,
    pub cumulative_pct: Vec<Option<f64>>,
}

/// Root handle over the shipped data directory.
#[derive(Clone, Debug)]
pub struct Dataset {
    root: PathBuf,
}

impl Dataset {
    pub fn at(root: impl Into<PathBuf>) -> Self {
        Dataset { root: root.into() }
    }

    /// Finds a `data/` directory holding a manifest, starting from `start`
    /// and walking up a few levels.
    pub fn discover(start: impl AsRef<Path>) -> Result<Self> {
        let mut dir = start.as_ref().to_path_buf();
        for _ in 0..5 {
            let candidate = dir.join("data");
            if candidate.join(MANIFEST).is_file() {
                return Ok(Dataset::at(candidate));
            }
            if !dir.pop() {
                break;
            }
        }
        Err(Error::Schema(format!(
            "no data directory with a {MANIFEST} found above {}",
            start.as_ref().display()
        )))
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, rel: &str) -> PathBuf {
        self.root.join(rel)
    }

    // ---- raw tables ----

    pub fn enrolled_rows(&self) -> Result<Vec<EnrolledRow>> {
        let mut rows = Vec::new();
        for record in self.records(ENROLLED_TABLE)? {
            let r = record?;
            rows.push(EnrolledRow {
                dot: parse(&r, 0)?,
                s1_p_sd_pct: parse(&r, 1)?,
                s1_p_v_pct: parse(&r, 2)?,
                s1_majority: parse_class(&r, 3)?,
                s2_p_sd_pct: parse(&r, 4)?,
                s2_p_v_pct: parse(&r, 5)?,
                s2_majority: parse_class(&r, 6)?,
            });
        }
        Ok(rows)
    }

    pub fn direction_rows_circuit_a(&self) -> Result<Vec<DirectionRow>> {
        self.direction_rows(DIRECTION_TABLE_A)
    }

    pub fn direction_rows_circuit_b(&self) -> Result<Vec<DirectionRow>> {
        self.direction_rows(DIRECTION_TABLE_B)
    }

    fn direction_rows(&self, rel: &str) -> Result<Vec<DirectionRow>> {
        let mut rows = Vec::new();
        for record in self.records(rel)? {
            let r = record?;
            rows.push(DirectionRow {
                dot: parse(&r, 0)?,
                p_rcw_pct: parse(&r, 1)?,
                p_lccw_pct: parse(&r, 2)?,
                entropy_bits: parse(&r, 3)?,
            });
        }
        Ok(rows)
    }

    pub fn reference_crp_rows(&self) -> Result<Vec<ReferenceCrpRow>> {
        let mut rows = Vec::new();
        for record in self.records(REFERENCE_CRP_TABLE)? {
            let r = record?;
            let positions = r
                .get(0)
                .ok_or_else(|| Error::Schema("missing positions".into()))?
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Schema(format!("bad position `{p}`")))
                })
                .collect::<Result<Vec<u32>>>()?;
            rows.push(ReferenceCrpRow {
                positions,
                s1_p_bits: parse(&r, 1)?,
                s1_ber_pct: [parse(&r, 2)?, parse(&r, 3)?, parse(&r, 4)?, parse(&r, 5)?],
                s2_p_bits: parse(&r, 6)?,
                s2_ber_pct: [parse(&r, 7)?, parse(&r, 8)?, parse(&r, 9)?, parse(&r, 10)?],
                pfhd_inter: parse(&r, 11)?,
            });
        }
        Ok(rows)
    }

    pub fn inference_replay(&self) -> Result<InferenceReplay> {
        let text = self.read(INFERENCE_REPLAY_TABLE)?;
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let headers = reader.headers()?.clone();
        let mut positions = Vec::new();
        for h in headers.iter().skip(1) {
            if let Some(rest) = h.strip_prefix("dot_") {
                positions.push(rest.parse::<u32>().map_err(|_| {
                    Error::Schema(format!("bad replay column `{h}`"))
                })?);
            }
        }
        let challenge = Challenge::new(positions)?;
        let k = challenge.len();

        let mut labels = Vec::new();
        let mut per_trial = Vec::new();
        let mut cumulative = Vec::new();
        for record in reader.records() {
            let r = record?;
            let mut row = Vec::with_capacity(k);
            for i in 0..k {
                row.push(match r.get(1 + i) {
                    Some("1") => Label::Sample1,
                    Some("2") => Label::Sample2,
                    other => {
                        return Err(Error::Schema(format!(
                            "bad replay label {other:?} in trial row {}",
                            labels.len() + 1
                        )))
                    }
                });
            }
            labels.push(row);
            per_trial.push(parse(&r, 1 + k)?);
            let cum_cell = r.get(2 + k).unwrap_or("").trim();
            cumulative.push(if cum_cell.is_empty() {
                None
            } else {
                Some(cum_cell.parse::<f64>().map_err(|_| {
                    Error::Schema(format!("bad cumulative value `{cum_cell}`"))
                })?)
            });
        }
        Ok(InferenceReplay {
            challenge,
            labels,
            per_trial_pct: per_trial,
            cumulative_pct: cumulative,
        })
    }

    // ---- shipped artifacts ----

    pub fn sample1_circuit_a(&self) -> Result<DeviceLibrary> {
        load_library(self.path(SAMPLE1_A_LIBRARY))
    }

    pub fn sample2_circuit_a(&self) -> Result<DeviceLibrary> {
        load_library(self.path(SAMPLE2_A_LIBRARY))
    }

    pub fn sample1_circuit_b(&self) -> Result<DeviceLibrary> {
        load_library(self.path(SAMPLE1_B_LIBRARY))
    }

    pub fn circuit_a_calibration(&self) -> Result<GatingCalibration> {
        load_calibration(self.path(CIRCUIT_A_CALIBRATION))
    }

    pub fn circuit_b_calibration(&self) -> Result<GatingCalibration> {
        load_calibration(self.path(CIRCUIT_B_CALIBRATION))
    }

    pub fn two_circuit_device(&self) -> Result<Device> {
        load_device(self.path(TWO_CIRCUIT_DEVICE))
    }

    // ---- builders: tables -> artifacts ----

    /// Builds the circuit-A library of device 1 from the tables: enrolled
    /// SD probabilities plus the measured direction probabilities.
    pub fn build_sample1_circuit_a(&self) -> Result<DeviceLibrary> {
        let enrolled = self.enrolled_rows()?;
        let directions = self.direction_rows_circuit_a()?;
        if enrolled.len() != directions.len() {
            return Err(Error::Schema(
                "enrolled and direction tables disagree on dot count".into(),
            ));
        }
        let profiles = enrolled
            .iter()
            .zip(&directions)
            .map(|(e, d)| DotProfile::new(e.dot, e.s1_p_sd_pct / 100.0, d.p_rcw_pct / 100.0))
            .collect::<Result<Vec<_>>>()?;
        Ok(DeviceLibrary {
            device_id: "sample1".into(),
            circuit_id: "A".into(),
            gating: GatingEvent {
                voltage_v: -10.0,
                duration_min: 60.0,
            },
            enrollment_trials: 100,
            provenance: Provenance {
                p_sd: "enrolled-table".into(),
                p_dir_rcw: "direction-table".into(),
            },
            profiles,
        })
    }

    /// Circuit-A library of device 2. Direction statistics were never
    /// published for this device; the unbiased 0.5 placeholder stands in.
    pub fn build_sample2_circuit_a(&self) -> Result<DeviceLibrary> {
        let profiles = self
            .enrolled_rows()?
            .iter()
            .map(|e| DotProfile::new(e.dot, e.s2_p_sd_pct / 100.0, 0.5))
            .collect::<Result<Vec<_>>>()?;
        Ok(DeviceLibrary {
            device_id: "sample2".into(),
            circuit_id: "A".into(),
            gating: GatingEvent {
                voltage_v: -10.0,
                duration_min: 30.0,
            },
            enrollment_trials: 100,
            provenance: Provenance {
                p_sd: "enrolled-table".into(),
                p_dir_rcw: "uniform-placeholder".into(),
            },
            profiles,
        })
    }

    /// Circuit-B library of device 1. Only the aggregate SD rate is known,
    /// so every dot carries the same synthetic `p_sd`; directions come from
    /// the measured table.
    pub fn build_sample1_circuit_b(&self) -> Result<DeviceLibrary> {
        let profiles = self
            .direction_rows_circuit_b()?
            .iter()
            .map(|d| DotProfile::new(d.dot, CIRCUIT_B_AGGREGATE_P_SD, d.p_rcw_pct / 100.0))
            .collect::<Result<Vec<_>>>()?;
        Ok(DeviceLibrary {
            device_id: "sample1".into(),
            circuit_id: "B".into(),
            gating: GatingEvent {
                voltage_v: -10.0,
                duration_min: 60.0,
            },
            enrollment_trials: 100,
            provenance: Provenance {
                p_sd: "aggregate-placeholder".into(),
                p_dir_rcw: "direction-table".into(),
            },
            profiles,
        })
    }

    /// Gating calibration for A-type circuits: the 30-minute anchor takes
    /// the short-gating profile, the 60-minute anchor the long-gating one.
    pub fn build_circuit_a_calibration(&self) -> Result<GatingCalibration> {
        Ok(GatingCalibration {
            circuit_id: "A".into(),
            anchors: vec![
                CalibrationAnchor {
                    duration_min: 30.0,
                    dots: self.build_sample2_circuit_a()?.dot_params(),
                },
                CalibrationAnchor {
                    duration_min: 60.0,
                    dots: self.build_sample1_circuit_a()?.dot_params(),
                },
            ],
        })
    }

    /// Single-anchor calibration for circuit B (only the 60-minute gating
    /// was characterized).
    pub fn build_circuit_b_calibration(&self) -> Result<GatingCalibration> {
        Ok(GatingCalibration {
            circuit_id: "B".into(),
            anchors: vec![CalibrationAnchor {
                duration_min: 60.0,
                dots: self.build_sample1_circuit_b()?.dot_params(),
            }],
        })
    }

    /// Ungated 10x10 array template with circuit A in the bottom-left
    /// corner (3x6 dots) and circuit B in the top-right corner (4x6).
    pub fn build_two_circuit_device(&self) -> Result<Device> {
        let a = (0..18u32).map(|i| GridPos {
            row: 7 + i / 6,
            col: i % 6,
        });
        let b = (0..24u32).map(|i| GridPos {
            row: i / 6,
            col: 4 + i % 6,
        });
        Device::new(
            "sample1",
            vec![
                Circuit::new("A", a.collect()),
                Circuit::new("B", b.collect()),
            ],
        )
    }

    /// Renders every derived artifact (libraries, calibrations, device
    /// template) from the tables, as `(relative path, file contents)`.
    pub fn rendered_artifacts(&self) -> Result<Vec<(&'static str, String)>> {
        Ok(vec![
            (
                SAMPLE1_A_LIBRARY,
                library_to_json(&self.build_sample1_circuit_a()?)?,
            ),
            (
                SAMPLE2_A_LIBRARY,
                library_to_json(&self.build_sample2_circuit_a()?)?,
            ),
            (
                SAMPLE1_B_LIBRARY,
                library_to_json(&self.build_sample1_circuit_b()?)?,
            ),
            (
                CIRCUIT_A_CALIBRATION,
                calibration_to_json(&self.build_circuit_a_calibration()?)?,
            ),
            (
                CIRCUIT_B_CALIBRATION,
                calibration_to_json(&self.build_circuit_b_calibration()?)?,
            ),
            (
                TWO_CIRCUIT_DEVICE,
                device_to_json(&self.build_two_circuit_device()?)?,
            ),
        ])
    }

    /// Regenerates the derived artifacts and the manifest in place.
    /// Returns the relative paths written.
    pub fn rebuild_shipped_files(&self) -> Result<Vec<&'static str>> {
        let artifacts = self.rendered_artifacts()?;
        let mut written = Vec::new();
        for (rel, contents) in &artifacts {
            let path = self.path(rel);
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent)?;
            }
            fs::write(path, contents)?;
            written.push(*rel);
        }
        let manifest = self.render_manifest()?;
        fs::write(self.path(MANIFEST), manifest)?;
        written.push(MANIFEST);
        Ok(written)
    }

    fn tracked_files(&self) -> Vec<&'static str> {
        vec![
            ENROLLED_TABLE,
            DIRECTION_TABLE_A,
            DIRECTION_TABLE_B,
            REFERENCE_CRP_TABLE,
            INFERENCE_REPLAY_TABLE,
            SAMPLE1_A_LIBRARY,
            SAMPLE2_A_LIBRARY,
            SAMPLE1_B_LIBRARY,
            CIRCUIT_A_CALIBRATION,
            CIRCUIT_B_CALIBRATION,
            TWO_CIRCUIT_DEVICE,
        ]
    }

    fn render_manifest(&self) -> Result<String> {
        let mut out = String::new();
        for rel in self.tracked_files() {
            let bytes = fs::read(self.path(rel))?;
            let digest = Sha256::digest(&bytes);
            let mut hexdigest = String::new();
            for b in digest {
                let _ = write!(hexdigest, "{b:02x}");
            }
            let _ = writeln!(out, "{hexdigest}  {rel}");
        }
        Ok(out)
    }

    /// Verifies every tracked file against the manifest.
    pub fn verify_manifest(&self) -> Result<()> {
        let stored = self.read(MANIFEST)?;
        let computed = self.render_manifest()?;
        if stored != computed {
            return Err(Error::ChecksumMismatch {
                stored: format!("{} manifest entries", stored.lines().count()),
                computed: "dataset files changed since the manifest was written".into(),
            });
        }
        Ok(())
    }

    fn read(&self, rel: &str) -> Result<String> {
        Ok(fs::read_to_string(self.path(rel))?)
    }

    fn records(&self, rel: &str) -> Result<csv::StringRecordsIntoIter<std::fs::File>> {
        let reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_path(self.path(rel))?;
        Ok(reader.into_records())
    }
}

fn parse<T: std::str::FromStr>(record: &csv::StringRecord, index: usize) -> Result<T> {
    record
        .get(index)
        .and_then(|cell| cell.trim().parse::<T>().ok())
        .ok_or_else(|| Error::Schema(format!("bad or missing field {index} in {record:?}")))
}

fn parse_class(record: &csv::StringRecord, index: usize) -> Result<StateClass> {
    match record.get(index).map(str::trim) {
        Some("SD") => Ok(StateClass::Sd),
        Some("V") => Ok(StateClass::Vortex),
        other => Err(Error::Schema(format!("bad majority class {other:?}"))),
    }
}
