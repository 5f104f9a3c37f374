//! Core device model: states, profiles, circuits, gating, degauss sampling,
//! enrollment, and tamper evidence.

mod degauss;
mod device;
mod enroll;
mod profile;
mod state;

pub use degauss::{degauss_sample, sample_traces, sample_traces_seq, DegaussTrace};
pub use device::{
    CalibrationAnchor, Circuit, Device, GatingCalibration, GatingEvent, GridPos, TamperReport,
    TamperViolation,
};
pub use enroll::{enroll, enroll_seq};
pub use profile::{BitKind, DeviceLibrary, DotParams, DotProfile, Provenance};
pub(crate) use profile::check_probability;
pub use state::{compose, Direction, MagneticState, StateClass};
