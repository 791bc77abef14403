//! Polar transform and the shared min-sum LLR kernels.
//!
//! All decoders in this crate pass two kinds of messages through the decoder
//! tree: soft LLR values (`f_update` on the way to a left child, `g_update`
//! on the way to a right child) and hard partial sums
//! (`combine_partial_sums` on the way back up). The encoder is the same
//! butterfly run over hard bits.

use crate::{Error, Result};

/// Sign convention used everywhere: an LLR of exactly 0 counts as positive,
/// i.e. decodes to bit 0.
#[inline]
pub fn hard_decision(llr: f64) -> u8 {
    if llr < 0.0 {
        1
    } else {
        0
    }
}

/// Min-sum check-node update: sign is the product of the input signs, the
/// magnitude is the smaller of the two input magnitudes.
#[inline]
pub fn f_update(a: f64, b: f64) -> f64 {
    let sign = if (a < 0.0) != (b < 0.0) { -1.0 } else { 1.0 };
    sign * a.abs().min(b.abs())
}

/// Variable-node update: `b + a` when the left partial sum is 0, `b - a`
/// when it is 1.
#[inline]
pub fn g_update(a: f64, b: f64, beta: u8) -> f64 {
    debug_assert!(beta <= 1);
    if beta == 0 {
        b + a
    } else {
        b - a
    }
}

/// Combines the two child partial-sum vectors of a tree node: the first half
/// is the XOR of the halves, the second half is the right child unchanged.
pub fn combine_partial_sums(beta_l: &[u8], beta_r: &[u8]) -> Result<Vec<u8>> {
    if beta_l.len() != beta_r.len() {
        return Err(Error::LengthMismatch {
            expected: beta_l.len(),
            got: beta_r.len(),
        });
    }
    let half = beta_l.len();
    let mut out = vec![0u8; 2 * half];
    for i in 0..half {
        out[i] = beta_l[i] ^ beta_r[i];
        out[half + i] = beta_r[i];
    }
    Ok(out)
}

/// In-place polar transform (the n-fold Kronecker butterfly over GF(2)).
///
/// The transform is an involution: applying it twice restores the input.
pub fn polar_transform_in_place(bits: &mut [u8]) {
    let n = bits.len();
    debug_assert!(n.is_power_of_two());
    let mut step = 1;
    while step < n {
        for block in (0..n).step_by(2 * step) {
            for j in block..block + step {
                bits[j] ^= bits[j + step];
            }
        }
        step *= 2;
    }
}

/// Encodes an input vector `u` of length N (frozen positions already zero)
/// into the codeword `x = u G^{⊗n}`.
pub fn encode(u: &[u8]) -> Result<Vec<u8>> {
    if !u.len().is_power_of_two() {
        return Err(Error::BlocklengthNotPowerOfTwo(u.len()));
    }
    if let Some(&b) = u.iter().find(|&&b| b > 1) {
        return Err(Error::InvalidBit(b));
    }
    let mut x = u.to_vec();
    polar_transform_in_place(&mut x);
    Ok(x)
}
