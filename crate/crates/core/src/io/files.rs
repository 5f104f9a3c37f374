//! Versioned JSON persistence for devices and gating calibrations.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::json::to_json_string;
use crate::model::{Device, GatingCalibration};

pub const DEVICE_SCHEMA_VERSION: u32 = 1;
pub const CALIBRATION_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct DeviceFile {
    schema_version: u32,
    #[serde(flatten)]
    device: Device,
}

#[derive(Serialize, Deserialize)]
struct CalibrationFile {
    schema_version: u32,
    #[serde(flatten)]
    calibration: GatingCalibration,
}

pub fn device_to_json(device: &Device) -> Result<String> {
    device.validate()?;
    Ok(to_json_string(&DeviceFile {
        schema_version: DEVICE_SCHEMA_VERSION,
        device: device.clone(),
    })?)
}

pub fn device_from_json(text: &str) -> Result<Device> {
    let file: DeviceFile = serde_json::from_str(text)?;
    if file.schema_version != DEVICE_SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "unsupported device schema version {}",
            file.schema_version
        )));
    }
    file.device.validate()?;
    Ok(file.device)
}

pub fn save_device(device: &Device, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, device_to_json(device)?)?;
    Ok(())
}

pub fn load_device(path: impl AsRef<Path>) -> Result<Device> {
    device_from_json(&fs::read_to_string(path)?)
}

pub fn calibration_to_json(calibration: &GatingCalibration) -> Result<String> {
    calibration.validate()?;
    Ok(to_json_string(&CalibrationFile {
        schema_version: CALIBRATION_SCHEMA_VERSION,
        calibration: calibration.clone(),
    })?)
}

pub fn calibration_from_json(text: &str) -> Result<GatingCalibration> {
    let file: CalibrationFile = serde_json::from_str(text)?;
    if file.schema_version != CALIBRATION_SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "unsupported calibration schema version {}",
            file.schema_version
        )));
    }
    file.calibration.validate()?;
    Ok(file.calibration)
}

pub fn save_calibration(calibration: &GatingCalibration, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, calibration_to_json(calibration)?)?;
    Ok(())
}

pub fn load_calibration(path: impl AsRef<Path>) -> Result<GatingCalibration> {
    calibration_from_json(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CalibrationAnchor, Circuit, DotParams, GridPos};

    #[test]
    fn device_round_trip() {
        let device = Device::new(
            "dev",
            vec![Circuit::new(
                "A",
                vec![GridPos { row: 0, col: 0 }, GridPos { row: 0, col: 1 }],
            )],
        )
        .unwrap();
        let json = device_to_json(&device).unwrap();
        assert_eq!(device_from_json(&json).unwrap(), device);
    }

    #[test]
    fn calibration_round_trip_and_validation() {
        let calibration = GatingCalibration {
            circuit_id: "A".into(),
            anchors: vec![CalibrationAnchor {
                duration_min: 60.0,
                dots: vec![DotParams {
                    p_sd: 0.107,
                    p_dir_rcw: 0.5,
                }],
            }],
        };
        let json = calibration_to_json(&calibration).unwrap();
        assert_eq!(calibration_from_json(&json).unwrap(), calibration);

        let empty = GatingCalibration {
            circuit_id: "A".into(),
            anchors: vec![],
        };
        assert!(calibration_to_json(&empty).is_err());
    }
}
