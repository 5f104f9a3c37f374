//! Trial-by-trial device inference with cumulative probability averaging.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DeviceLibrary, StateClass};
use crate::puf::Challenge;

/// Per-dot assignment of one observation to a candidate library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "1")]
    Sample1,
    #[serde(rename = "2")]
    Sample2,
    /// Both libraries rate the observed class equally likely: the dot
    /// contributes 0.5 to the trial probability instead of a coin flip, so
    /// inference stays deterministic given the observations.
    #[serde(rename = "-")]
    Abstain,
}

/// How a single dot observation is assigned to a library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AlignmentRule {
    /// Label with the library giving the observed class higher enrolled
    /// probability. This is the rule behind the recorded inference run.
    #[default]
    Likelihood,
    /// Label with the library whose majority-voted state the observation
    /// matches; abstain when it matches both or neither.
    MajorityState,
}

/// Classification of one k-dot observation.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialClassification {
    pub labels: Vec<Label>,
    /// Fraction of dots assigned to library 1 (abstentions count 0.5).
    pub prob_sample1: f64,
}

/// Labels each challenged dot of one observation against the two candidate
/// libraries and returns the fraction pointing at library 1.
pub fn classify_trial(
    observation: &[StateClass],
    lib1: &DeviceLibrary,
    lib2: &DeviceLibrary,
    challenge: &Challenge,
    rule: AlignmentRule,
) -> Result<TrialClassification> {
    if observation.len() != challenge.len() {
        return Err(Error::ResponseLengthMismatch {
            got: observation.len(),
            expected: challenge.len(),
        });
    }
    challenge.validate_against(lib1)?;
    challenge.validate_against(lib2)?;
    let labels = observation
        .iter()
        .zip(challenge.positions())
        .map(|(&class, &p)| {
            let d1 = lib1.dot(p)?;
            let d2 = lib2.dot(p)?;
            Ok(match rule {
                AlignmentRule::Likelihood => {
                    let (p1, p2) = (d1.class_prob(class), d2.class_prob(class));
                    if p1 > p2 {
                        Label::Sample1
                    } else if p1 < p2 {
                        Label::Sample2
                    } else {
                        Label::Abstain
                    }
                }
                AlignmentRule::MajorityState => {
                    match (class == d1.majority_state, class == d2.majority_state) {
                        (true, false) => Label::Sample1,
                        (false, true) => Label::Sample2,
                        _ => Label::Abstain,
                    }
                }
            })
        })
        .collect::<Result<Vec<Label>>>()?;
    Ok(TrialClassification {
        prob_sample1: label_fraction(&labels),
        labels,
    })
}

fn label_fraction(labels: &[Label]) -> f64 {
    let score: f64 = labels
        .iter()
        .map(|l| match l {
            Label::Sample1 => 1.0,
            Label::Sample2 => 0.0,
            Label::Abstain => 0.5,
        })
        .sum();
    score / labels.len() as f64
}

/// Final call of an inference run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Sample1,
    Sample2,
    /// Cumulative probability ended exactly at 0.5; run more trials.
    Undecided,
}

/// Full record of an inference run: per-trial labels, per-trial
/// probabilities, their running mean, and the final decision.
#[derive(Clone, Debug, PartialEq)]
pub struct InferenceRun {
    pub trial_labels: Vec<Vec<Label>>,
    pub per_trial_prob: Vec<f64>,
    pub cumulative_prob: Vec<f64>,
    pub decision: Decision,
}

impl InferenceRun {
    pub fn trials(&self) -> usize {
        self.per_trial_prob.len()
    }

    pub fn final_cumulative(&self) -> f64 {
        *self
            .cumulative_prob
            .last()
            .expect("runs hold at least one trial")
    }
}

/// Runs the inference protocol over a sequence of observed trials:
/// classify each trial, average the per-trial probabilities cumulatively,
/// and decide for library 1 iff the final running mean exceeds 0.5.
pub fn infer(
    observations: &[Vec<StateClass>],
    lib1: &DeviceLibrary,
    lib2: &DeviceLibrary,
    challenge: &Challenge,
    rule: AlignmentRule,
) -> Result<InferenceRun> {
    if observations.is_empty() {
        return Err(Error::TooFewTraces { needed: 1, got: 0 });
    }
    let mut trial_labels = Vec::with_capacity(observations.len());
    let mut per_trial = Vec::with_capacity(observations.len());
    for observation in observations {
        let classified = classify_trial(observation, lib1, lib2, challenge, rule)?;
        per_trial.push(classified.prob_sample1);
        trial_labels.push(classified.labels);
    }
    Ok(assemble(trial_labels, per_trial))
}

/// Rebuilds an inference run from already-recorded labels (for replaying
/// archived runs; no libraries needed).
pub fn replay_labels(trial_labels: &[Vec<Label>]) -> Result<InferenceRun> {
    if trial_labels.is_empty() {
        return Err(Error::TooFewTraces { needed: 1, got: 0 });
    }
    let k = trial_labels[0].len();
    if k == 0 {
        return Err(Error::EmptyChallenge);
    }
    for row in trial_labels {
        if row.len() != k {
            return Err(Error::LengthMismatch(k, row.len()));
        }
    }
    let per_trial = trial_labels.iter().map(|row| label_fraction(row)).collect();
    Ok(assemble(trial_labels.to_vec(), per_trial))
}

fn assemble(trial_labels: Vec<Vec<Label>>, per_trial_prob: Vec<f64>) -> InferenceRun {
    let mut cumulative_prob = Vec::with_capacity(per_trial_prob.len());
    let mut running = 0.0;
    for (i, &p) in per_trial_prob.iter().enumerate() {
        running += p;
        cumulative_prob.push(running / (i + 1) as f64);
    }
    let last = *cumulative_prob.last().expect("non-empty");
    let decision = if last > 0.5 {
        Decision::Sample1
    } else if last < 0.5 {
        Decision::Sample2
    } else {
        Decision::Undecided
    };
    InferenceRun {
        trial_labels,
        per_trial_prob,
        cumulative_prob,
        decision,
    }
}
