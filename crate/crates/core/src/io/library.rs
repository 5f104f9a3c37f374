//! Versioned, checksummed JSON persistence of device libraries.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::io::json::to_json_string;
use crate::model::{DeviceLibrary, DotProfile, GatingEvent, Provenance};

pub const LIBRARY_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct LibraryFile {
    schema_version: u32,
    device_id: String,
    circuit_id: String,
    gating: GatingEvent,
    enrollment_trials: u32,
    provenance: Provenance,
    profiles: Vec<DotProfile>,
    payload_sha256: String,
}

/// Canonical digest over the library payload. Covers everything except the
/// checksum field itself, with probabilities at the stored six-decimal
/// precision.
fn payload_digest(library: &DeviceLibrary) -> String {
    let mut canon = String::new();
    let _ = writeln!(canon, "magion-library-v{LIBRARY_SCHEMA_VERSION}");
    let _ = writeln!(canon, "device_id={}", library.device_id);
    let _ = writeln!(canon, "circuit_id={}", library.circuit_id);
    let _ = writeln!(
        canon,
        "gating={:.6}V/{:.6}min",
        library.gating.voltage_v, library.gating.duration_min
    );
    let _ = writeln!(canon, "trials={}", library.enrollment_trials);
    let _ = writeln!(
        canon,
        "provenance={}|{}",
        library.provenance.p_sd, library.provenance.p_dir_rcw
    );
    for dot in &library.profiles {
        let _ = writeln!(
            canon,
            "dot={},{:.6},{:.6},{:.6},{},{:?}",
            dot.position, dot.p_sd, dot.p_v, dot.p_dir_rcw, dot.majority_state, dot.bit_kind
        );
    }
    hex(&Sha256::digest(canon.as_bytes()))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::new(), |mut acc, b| {
        let _ = write!(acc, "{b:02x}");
        acc
    })
}

/// Renders a library to its on-disk JSON form.
pub fn library_to_json(library: &DeviceLibrary) -> Result<String> {
    library.validate()?;
    let file = LibraryFile {
        schema_version: LIBRARY_SCHEMA_VERSION,
        device_id: library.device_id.clone(),
        circuit_id: library.circuit_id.clone(),
        gating: library.gating,
        enrollment_trials: library.enrollment_trials,
        provenance: library.provenance.clone(),
        profiles: library.profiles.clone(),
        payload_sha256: payload_digest(library),
    };
    Ok(to_json_string(&file)?)
}

/// Parses and fully validates a library: schema version, payload checksum,
/// and every profile invariant.
pub fn library_from_json(text: &str) -> Result<DeviceLibrary> {
    let file: LibraryFile = serde_json::from_str(text)?;
    if file.schema_version != LIBRARY_SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "unsupported library schema version {} (expected {})",
            file.schema_version, LIBRARY_SCHEMA_VERSION
        )));
    }
    let library = DeviceLibrary {
        device_id: file.device_id,
        circuit_id: file.circuit_id,
        gating: file.gating,
        enrollment_trials: file.enrollment_trials,
        provenance: file.provenance,
        profiles: file.profiles,
    };
    let computed = payload_digest(&library);
    if computed != file.payload_sha256 {
        return Err(Error::ChecksumMismatch {
            stored: file.payload_sha256,
            computed,
        });
    }
    library.validate()?;
    Ok(library)
}

pub fn save_library(library: &DeviceLibrary, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, library_to_json(library)?)?;
    Ok(())
}

pub fn load_library(path: impl AsRef<Path>) -> Result<DeviceLibrary> {
    library_from_json(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::StateClass;

    fn library() -> DeviceLibrary {
        DeviceLibrary {
            device_id: "sample1".into(),
            circuit_id: "A".into(),
            gating: GatingEvent {
                voltage_v: -10.0,
                duration_min: 60.0,
            },
            enrollment_trials: 100,
            provenance: Provenance::enrolled(),
            profiles: vec![
                DotProfile::new(1, 0.0, 0.3871).unwrap(),
                DotProfile::new(2, 0.911, 0.5161).unwrap(),
            ],
        }
    }

    #[test]
    fn round_trip_is_byte_identical() {
        // Files store probabilities at six decimals; that file form is the
        // canonical one, so load-then-save must reproduce it byte for byte.
        let json = library_to_json(&library()).unwrap();
        let loaded = library_from_json(&json).unwrap();
        assert_eq!(library_to_json(&loaded).unwrap(), json);
        assert_eq!(loaded.profiles[1].p_sd, 0.911);
        assert_eq!(loaded.profiles[1].majority_state, StateClass::Sd);
    }

    #[test]
    fn tampered_payload_fails_the_checksum() {
        let json = library_to_json(&library()).unwrap();
        let tampered = json.replace("0.911000", "0.912000");
        assert!(matches!(
            library_from_json(&tampered),
            Err(Error::ChecksumMismatch { .. })
        ));
    }

    #[test]
    fn wrong_schema_version_is_a_schema_error() {
        let json = library_to_json(&library()).unwrap();
        let wrong = json.replace("\"schema_version\": 1", "\"schema_version\": 9");
        assert!(matches!(library_from_json(&wrong), Err(Error::Schema(_))));
    }

    #[test]
    fn invariant_violations_are_rejected_on_load() {
        // p_sd = 1.2 breaks the probability invariant; recompute the digest
        // so the checksum stage passes and the invariant check triggers.
        let mut bad = library();
        bad.profiles[1].p_sd = 1.2;
        bad.profiles[1].p_v = -0.2;
        let file = LibraryFile {
            schema_version: LIBRARY_SCHEMA_VERSION,
            device_id: bad.device_id.clone(),
            circuit_id: bad.circuit_id.clone(),
            gating: bad.gating,
            enrollment_trials: bad.enrollment_trials,
            provenance: bad.provenance.clone(),
            profiles: bad.profiles.clone(),
            payload_sha256: payload_digest(&bad),
        };
        let json = to_json_string(&file).unwrap();
        assert!(matches!(
            library_from_json(&json),
            Err(Error::InvalidProbability { .. })
        ));
    }

    #[test]
    fn save_and_load_through_a_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("lib.json");
        save_library(&library(), &path).unwrap();
        let loaded = load_library(&path).unwrap();
        save_library(&loaded, dir.path().join("again.json")).unwrap();
        assert_eq!(
            fs::read(&path).unwrap(),
            fs::read(dir.path().join("again.json")).unwrap()
        );
    }
}
