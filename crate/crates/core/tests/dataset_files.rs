//! Consistency of the shipped data directory: derived files must match the
//! tables they were rendered from, the manifest must match every file, and
//! the libraries must carry the documented structure.
//!
//! After editing a table, regenerate the derived files with
//! `cargo test -p magion --test dataset_files -- --ignored bless`.

use std::fs;

use magion::io::{library_to_json, load_library, Dataset};
use magion::model::{BitKind, StateClass};

fn dataset() -> Dataset {
    Dataset::at(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data"))
}

#[test]
#[ignore = "writes the derived data files in place"]
fn bless_shipped_files() {
    let written = dataset().rebuild_shipped_files().unwrap();
    println!("regenerated {written:?}");
}

#[test]
fn shipped_files_match_their_sources() {
    let ds = dataset();
    for (rel, expected) in ds.rendered_artifacts().unwrap() {
        let on_disk = fs::read_to_string(ds.path(rel)).unwrap();
        assert_eq!(on_disk, expected, "{rel} is stale; re-run the bless test");
    }
}

#[test]
fn manifest_covers_every_file() {
    dataset().verify_manifest().unwrap();
}

#[test]
fn sample1_circuit_a_has_eleven_d_bits_and_seven_p_bits() {
    let lib = dataset().sample1_circuit_a().unwrap();
    assert_eq!(lib.len(), 18);
    assert_eq!(lib.p_bit_count(), 7);
    assert_eq!(lib.d_bit_count(), 11);
    // Every deterministic dot of this device is vortex-only.
    assert!(lib
        .profiles
        .iter()
        .filter(|p| p.bit_kind == BitKind::DBit)
        .all(|p| p.majority_state == StateClass::Vortex && p.p_sd == 0.0));
}

#[test]
fn sample2_circuit_a_has_nine_p_bits_with_dot5_sd_deterministic() {
    let lib = dataset().sample2_circuit_a().unwrap();
    assert_eq!(lib.len(), 18);
    assert_eq!(lib.p_bit_count(), 9);
    let dot5 = lib.dot(5).unwrap();
    assert_eq!(dot5.bit_kind, BitKind::DBit);
    assert_eq!(dot5.majority_state, StateClass::Sd);
    assert_eq!(dot5.p_sd, 1.0);
}

#[test]
fn circuit_b_library_has_24_dots_with_placeholder_split() {
    let lib = dataset().sample1_circuit_b().unwrap();
    assert_eq!(lib.len(), 24);
    assert!(lib.profiles.iter().all(|p| p.p_sd == 0.087));
    assert_eq!(lib.provenance.p_sd, "aggregate-placeholder");
}

#[test]
fn shipped_libraries_round_trip_byte_identically() {
    let ds = dataset();
    for rel in [
        magion::io::SAMPLE1_A_LIBRARY,
        magion::io::SAMPLE2_A_LIBRARY,
        magion::io::SAMPLE1_B_LIBRARY,
    ] {
        let bytes = fs::read_to_string(ds.path(rel)).unwrap();
        let lib = load_library(ds.path(rel)).unwrap();
        assert_eq!(library_to_json(&lib).unwrap(), bytes, "{rel}");
    }
}

#[test]
fn replay_table_matches_its_printed_per_trial_column() {
    let replay = dataset().inference_replay().unwrap();
    assert_eq!(replay.challenge.positions(), &[13, 7, 9, 18, 17]);
    assert_eq!(replay.labels.len(), 27);
    let run = magion::inference::replay_labels(&replay.labels).unwrap();
    for (computed, printed) in run.per_trial_prob.iter().zip(&replay.per_trial_pct) {
        assert_eq!(computed * 100.0, *printed);
    }
}

#[test]
fn device_template_is_ungated_with_18_plus_24_dots() {
    let device = dataset().two_circuit_device().unwrap();
    assert_eq!(device.total_dots(), 42);
    assert_eq!(device.active_dots(), 0);
    assert_eq!(device.circuit("A").unwrap().len(), 18);
    assert_eq!(device.circuit("B").unwrap().len(), 24);
}

#[test]
fn calibrations_cover_their_circuits() {
    let ds = dataset();
    let a = ds.circuit_a_calibration().unwrap();
    assert_eq!(a.anchors.len(), 2);
    assert_eq!(a.dot_count(), 18);
    let b = ds.circuit_b_calibration().unwrap();
    assert_eq!(b.anchors.len(), 1);
    assert_eq!(b.dot_count(), 24);
}
