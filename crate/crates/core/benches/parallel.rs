//! Seq-vs-parallel comparison of the Monte-Carlo heavy operations.
//!
//! The public entry points run on rayon when the `parallel` feature is
//! enabled (the default); the `_seq` variants are always single-threaded.
//! Benching both side by side shows what the data-parallel inner loops buy.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use magion::inference::{
    simulate_inference_runs, simulate_inference_runs_seq, AlignmentRule,
};
use magion::analytics::{fhd_intra, fhd_intra_seq, StateMapping};
use magion::model::{
    enroll, enroll_seq, sample_traces, Device, DeviceLibrary, DotProfile, GatingEvent, Provenance,
};
use magion::puf::{ber_empirical, ber_empirical_seq, Challenge};
use magion::Seed;

const S1_P_SD: [f64; 18] = [
    0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.242, 0.0, 0.419, 0.112, 0.0, 0.0, 0.911, 0.032, 0.0, 0.0,
    0.156, 0.065,
];
const S2_P_SD: [f64; 18] = [
    0.0, 0.0, 0.059, 0.0, 1.0, 0.0, 0.55, 0.0, 0.118, 0.0, 0.274, 0.784, 0.666, 0.0, 0.411, 0.0,
    0.372, 0.85,
];

fn library(device_id: &str, p_sds: &[f64]) -> DeviceLibrary {
    DeviceLibrary {
        device_id: device_id.into(),
        circuit_id: "A".into(),
        gating: GatingEvent {
            voltage_v: -10.0,
            duration_min: 60.0,
        },
        enrollment_trials: 100,
        provenance: Provenance::enrolled(),
        profiles: p_sds
            .iter()
            .enumerate()
            .map(|(i, &p)| DotProfile::new(i as u32 + 1, p, 0.5).unwrap())
            .collect(),
    }
}

fn bench_enroll(c: &mut Criterion) {
    let lib = library("sample1", &S1_P_SD);
    let device = Device::from_library(&lib);
    let mut group = c.benchmark_group("enroll_10k_trials");
    group.bench_function("parallel", |b| {
        b.iter(|| enroll(black_box(&device), "A", 10_001, Seed(7)).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| enroll_seq(black_box(&device), "A", 10_001, Seed(7)).unwrap())
    });
    group.finish();
}

fn bench_fhd(c: &mut Criterion) {
    let lib = library("sample1", &S1_P_SD);
    let device = Device::from_library(&lib);
    let traces = sample_traces(&device, 800, Seed(3)).unwrap();
    let mut group = c.benchmark_group("fhd_intra_800_traces");
    group.bench_function("parallel", |b| {
        b.iter(|| fhd_intra(black_box(&traces), StateMapping::binary()).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| fhd_intra_seq(black_box(&traces), StateMapping::binary()).unwrap())
    });
    group.finish();
}

fn bench_ber(c: &mut Criterion) {
    let lib = library("sample1", &S1_P_SD);
    let device = Device::from_library(&lib);
    let challenge = Challenge::parse("7,9,13,17,18").unwrap();
    let mut group = c.benchmark_group("ber_empirical_20k_reps_t5");
    group.bench_function("parallel", |b| {
        b.iter(|| {
            ber_empirical(
                black_box(&device),
                "A",
                &lib,
                &challenge,
                5,
                20_000,
                Seed(11),
            )
            .unwrap()
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            ber_empirical_seq(
                black_box(&device),
                "A",
                &lib,
                &challenge,
                5,
                20_000,
                Seed(11),
            )
            .unwrap()
        })
    });
    group.finish();
}

fn bench_inference(c: &mut Criterion) {
    let lib1 = library("sample1", &S1_P_SD);
    let lib2 = library("sample2", &S2_P_SD);
    let challenge = Challenge::parse("13,7,9,18,17").unwrap();
    let mut group = c.benchmark_group("inference_2k_runs_27_trials");
    group.bench_function("parallel", |b| {
        b.iter(|| {
            simulate_inference_runs(
                black_box(&lib1),
                &lib1,
                &lib2,
                &challenge,
                27,
                2_000,
                Seed(13),
                AlignmentRule::Likelihood,
            )
            .unwrap()
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            simulate_inference_runs_seq(
                black_box(&lib1),
                &lib1,
                &lib2,
                &challenge,
                27,
                2_000,
                Seed(13),
                AlignmentRule::Likelihood,
            )
            .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_enroll, bench_fhd, bench_ber, bench_inference);
criterion_main!(benches);
