//! Challenge-response pair counting.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of challenge-response pairs for a circuit with `p_bits`
/// probabilistic and `d_bits` deterministic dots under `k`-dot challenges:
/// a challenge with m p-bits admits 2^m responses, so
/// `sum over m of C(P, m) C(D, k-m) 2^m`. With no p-bits this reduces to
/// the plain challenge count C(P+D, k).
pub fn crp_count(p_bits: u32, d_bits: u32, k: u32) -> Result<BigUint> {
    let n = p_bits as usize + d_bits as usize;
    if k as usize > n {
        return Err(Error::ChallengeTooLarge { k: k as usize, n });
    }
    let mut total = BigUint::from(0u32);
    for m in 0..=k.min(p_bits) {
        let challenges =
            binomial(u64::from(p_bits), u64::from(m)) * binomial(u64::from(d_bits), u64::from(k - m));
        total += challenges << m;
    }
    Ok(total)
}
