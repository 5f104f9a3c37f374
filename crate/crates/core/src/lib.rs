//! Stochastic model and hardware-security toolkit for voltage-gated
//! magneto-ionic dot arrays.
//!
//! Arrays of initially paramagnetic dots are activated circuit by circuit
//! through negative gate voltages. After every AC degauss, each active dot
//! settles into a single-domain or vortex state with a random orientation
//! or chirality; the SD/vortex split is voltage-tuneable per dot while the
//! direction stays unbiased. This crate models those statistics and builds
//! the security primitives on top:
//!
//! - [`model`]: devices, selective gating, degauss sampling, enrollment,
//!   and tamper evidence;
//! - [`analytics`]: Hamming-distance randomness metrics, Shannon entropy,
//!   TRN bit extraction, and lock strength;
//! - [`puf`]: challenge-response machinery with majority voting and
//!   closed-form plus empirical bit error rates;
//! - [`inference`]: probabilistic device fingerprinting across candidate
//!   libraries;
//! - [`io`]: JSON/CSV persistence and the shipped reference dataset.
//!
//! All stochastic operations take an explicit [`Seed`] and are reproducible
//! bit for bit, with or without the `parallel` feature (rayon).

pub mod analytics;
pub mod error;
pub mod inference;
pub mod io;
pub mod model;
pub mod puf;
pub mod rng;

pub use error::{Error, Result};
pub use rng::Seed;
