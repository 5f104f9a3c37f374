//! Challenge-response machinery: CRP counting, majority-voted responses,
//! verification, and bit error rates.

mod ber;
mod challenge;
mod crp;
mod respond;

pub use ber::{
    ber_closed_form, ber_curve, ber_empirical, ber_empirical_seq, majority_error, BerEstimate,
};
pub use challenge::{Challenge, Response};
pub use crp::{binomial, crp_count};
pub use respond::{respond, verify, Verification};
