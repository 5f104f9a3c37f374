//! Persistence and the shipped reference dataset.

mod dataset;
mod files;
mod json;
mod library;
mod plot;
mod traces;

pub use dataset::{
    Dataset, DirectionRow, EnrolledRow, InferenceReplay, ReferenceCrpRow,
    CIRCUIT_A_CALIBRATION, CIRCUIT_B_AGGREGATE_P_SD, CIRCUIT_B_CALIBRATION, DIRECTION_TABLE_A,
    DIRECTION_TABLE_B, ENROLLED_TABLE, INFERENCE_REPLAY_TABLE, MANIFEST, REFERENCE_BER_TRIALS,
    REFERENCE_CRP_TABLE, SAMPLE1_A_LIBRARY, SAMPLE1_B_LIBRARY, SAMPLE2_A_LIBRARY,
    TWO_CIRCUIT_DEVICE,
};
pub use files::{
    calibration_from_json, calibration_to_json, device_from_json, device_to_json,
    load_calibration, load_device, save_calibration, save_device, CALIBRATION_SCHEMA_VERSION,
    DEVICE_SCHEMA_VERSION,
};
pub use json::to_json_string;
pub use library::{
    library_from_json, library_to_json, load_library, save_library, LIBRARY_SCHEMA_VERSION,
};
pub use plot::{write_ber_curve, write_fhd_histogram, write_inference_run};
pub use traces::{read_traces, traces_to_csv, write_traces};
