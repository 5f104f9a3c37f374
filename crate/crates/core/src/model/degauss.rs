//! Degauss sampling: one independent class/direction draw per active dot.

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::device::Device;
use crate::model::state::{compose, Direction, MagneticState, StateClass};
use crate::rng::Seed;

/// States observed across the whole device after one degauss cycle, in
/// device reading order (circuits in declared order, dots in reading order
/// within each circuit). Dots of never-gated circuits read as OFF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegaussTrace {
    pub trial_index: u64,
    pub states: Vec<MagneticState>,
}

impl DegaussTrace {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// SD/vortex class per dot; errors on the first OFF dot.
    pub fn classes(&self) -> Result<Vec<StateClass>> {
        self.states
            .iter()
            .enumerate()
            .map(|(k, s)| s.class().ok_or(Error::OffState(k + 1)))
            .collect()
    }
}

/// Samples one degauss outcome. Each active dot draws its SD/vortex class
/// with probability `(p_sd, 1 - p_sd)` and, independently, its direction
/// subclass with probability `(p_dir_rcw, 1 - p_dir_rcw)`. Inactive dots
/// stay OFF. The same RNG state always yields the same trace.
pub fn degauss_sample(
    device: &Device,
    trial_index: u64,
    rng: &mut impl Rng,
) -> Result<DegaussTrace> {
    if device.total_dots() == 0 {
        return Err(Error::EmptyDevice);
    }
    let mut states = Vec::with_capacity(device.total_dots());
    for circuit in &device.circuits {
        match (&circuit.dot_params, circuit.is_active()) {
            (Some(params), true) => {
                for (i, p) in params.iter().enumerate() {
                    p.validate(i as u32 + 1)?;
                    let class = if rng.random_bool(p.p_sd) {
                        StateClass::Sd
                    } else {
                        StateClass::Vortex
                    };
                    let direction = if rng.random_bool(p.p_dir_rcw) {
                        Direction::RightCw
                    } else {
                        Direction::LeftCcw
                    };
                    states.push(compose(class, direction));
                }
            }
            _ => states.extend(std::iter::repeat_n(
                MagneticState::ParamagneticOff,
                circuit.len(),
            )),
        }
    }
    Ok(DegaussTrace {
        trial_index,
        states,
    })
}

/// Samples `trials` degauss cycles, one independent sub-stream per trial.
/// Trial `i` uses `seed.stream(i)`, so traces are reproducible and
/// independent of how the loop is scheduled.
pub fn sample_traces(device: &Device, trials: u64, seed: Seed) -> Result<Vec<DegaussTrace>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..trials)
            .into_par_iter()
            .map(|i| degauss_sample(device, i, &mut seed.stream(i)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        sample_traces_seq(device, trials, seed)
    }
}

/// Single-threaded counterpart of [`sample_traces`]; same output.
pub fn sample_traces_seq(device: &Device, trials: u64, seed: Seed) -> Result<Vec<DegaussTrace>> {
    (0..trials)
        .map(|i| degauss_sample(device, i, &mut seed.stream(i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::device::{Circuit, GatingEvent, GridPos};
    use crate::model::profile::DotParams;

    fn one_dot_device(p_sd: f64, p_dir_rcw: f64) -> Device {
        let mut circuit = Circuit::new(
            "A",
            vec![GridPos { row: 0, col: 0 }],
        );
        circuit.activation = true;
        circuit.gating_history.push(GatingEvent {
            voltage_v: -10.0,
            duration_min: 60.0,
        });
        circuit.dot_params = Some(vec![DotParams { p_sd, p_dir_rcw }]);
        Device::new("dev", vec![circuit]).unwrap()
    }

    #[test]
    fn degenerate_profile_is_deterministic() {
        let device = one_dot_device(1.0, 1.0);
        for seed in [0u64, 1, 99, 12345] {
            let trace = degauss_sample(&device, 0, &mut Seed(seed).stream(0)).unwrap();
            assert_eq!(trace.states, vec![MagneticState::SdRight]);
        }
    }

    #[test]
    fn never_gated_dot_reads_off() {
        let device = Device::new(
            "dev",
            vec![Circuit::new("A", vec![GridPos { row: 0, col: 0 }])],
        )
        .unwrap();
        let trace = degauss_sample(&device, 0, &mut Seed(0).stream(0)).unwrap();
        assert_eq!(trace.states, vec![MagneticState::ParamagneticOff]);
        assert!(trace.classes().is_err());
    }

    #[test]
    fn empty_device_is_an_error() {
        let device = Device::new("dev", vec![]).unwrap();
        assert!(matches!(
            degauss_sample(&device, 0, &mut Seed(0).stream(0)),
            Err(Error::EmptyDevice)
        ));
    }

    #[test]
    fn fair_dot_frequency_within_three_sigma() {
        // Binomial 3-sigma for p = 0.5 over 1e5 draws is 0.00474.
        let device = one_dot_device(0.5, 0.5);
        let traces = sample_traces(&device, 100_000, Seed(7)).unwrap();
        let sd = traces
            .iter()
            .filter(|t| t.states[0].class() == Some(StateClass::Sd))
            .count();
        let frac = sd as f64 / traces.len() as f64;
        assert!((frac - 0.5).abs() < 0.005, "sd fraction {frac}");
    }

    #[test]
    fn grouped_state_probability_matches_direction_probability() {
        // P(SdRight) + P(VortexCw) must equal p_dir_rcw under independence.
        let device = one_dot_device(0.3, 0.7);
        let traces = sample_traces(&device, 100_000, Seed(11)).unwrap();
        let rcw = traces
            .iter()
            .filter(|t| t.states[0].direction() == Some(crate::model::state::Direction::RightCw))
            .count();
        let frac = rcw as f64 / traces.len() as f64;
        // 4 sigma for p = 0.7 over 1e5 draws.
        assert!((frac - 0.7).abs() < 4.0 * (0.7f64 * 0.3 / 1e5).sqrt());
    }

    #[test]
    fn identical_seed_gives_identical_traces() {
        let device = one_dot_device(0.42, 0.58);
        let a = sample_traces(&device, 500, Seed(3)).unwrap();
        let b = sample_traces_seq(&device, 500, Seed(3)).unwrap();
        assert_eq!(a, b);
    }
}
