//! Flat-buffer decoder tree shared by SC, SCL and PSCL.
//!
//! Level `s` of the tree holds vectors of 2^s values; level `n = log2(N)` is
//! the channel itself and is not stored (callers pass the channel LLRs in, so
//! list decoding keeps a single shared copy). Per tree instance the LLR
//! buffers hold N-1 values and the partial-sum buffers 2N-1 bits, matching
//! the storage schedule the memory model accounts for.

use crate::codec::{combine_partial_sums, f_update, g_update};

#[derive(Debug, Clone)]
pub(crate) struct DecoderTree {
    log_n: usize,
    /// alpha[s]: LLRs of the node currently visited at level s, s < log_n.
    alpha: Vec<Vec<f64>>,
    /// beta[s]: partial sums of the most recent left child at level s;
    /// beta[log_n] receives the full codeword after the last leaf.
    beta: Vec<Vec<u8>>,
}

impl DecoderTree {
    pub fn new(log_n: usize) -> Self {
        DecoderTree {
            log_n,
            alpha: (0..log_n).map(|s| vec![0.0; 1 << s]).collect(),
            beta: (0..=log_n).map(|s| vec![0u8; 1 << s]).collect(),
        }
    }

    /// Recomputes the LLR vector of the subtree root at `stop` with index
    /// `idx` (0-based among the 2^(log_n - stop) subtrees, visited in order).
    ///
    /// Only the levels that actually change are touched: the first subtree
    /// runs f-updates all the way down; later subtrees apply one g-update at
    /// the level where the visit turns from a left to a right child, then
    /// f-updates below it.
    pub fn refine(&mut self, chan: &[f64], stop: usize, idx: usize) {
        debug_assert_eq!(chan.len(), 1 << self.log_n);
        if stop == self.log_n {
            return;
        }
        if idx == 0 {
            for s in (stop..self.log_n).rev() {
                self.f_into(chan, s);
            }
        } else {
            let turn = stop + idx.trailing_zeros() as usize;
            self.g_into(chan, turn);
            for s in (stop..turn).rev() {
                self.f_into(chan, s);
            }
        }
    }

    /// alpha[s] := f(parent), elementwise over the half pairs.
    fn f_into(&mut self, chan: &[f64], s: usize) {
        let (lo, hi) = self.alpha.split_at_mut(s + 1);
        let dst = &mut lo[s];
        let parent: &[f64] = if s + 1 == self.log_n { chan } else { &hi[0] };
        let half = dst.len();
        for i in 0..half {
            dst[i] = f_update(parent[i], parent[i + half]);
        }
    }

    /// alpha[s] := g(parent, left-sibling partial sums).
    fn g_into(&mut self, chan: &[f64], s: usize) {
        let left = &self.beta[s];
        let (lo, hi) = self.alpha.split_at_mut(s + 1);
        let dst = &mut lo[s];
        let parent: &[f64] = if s + 1 == self.log_n { chan } else { &hi[0] };
        let half = dst.len();
        for i in 0..half {
            dst[i] = g_update(parent[i], parent[i + half], left[i]);
        }
    }

    /// LLR vector at level `stop` (valid after `refine(chan, stop, idx)`).
    pub fn alpha_at(&self, stop: usize) -> &[f64] {
        &self.alpha[stop]
    }

    /// Leaf LLR after `refine(chan, 0, idx)`.
    pub fn leaf_llr(&self, chan: &[f64]) -> f64 {
        if self.log_n == 0 {
            chan[0]
        } else {
            self.alpha[0][0]
        }
    }

    /// Feeds the decided bits of subtree `idx` at level `stop` back up:
    /// combines with stored left siblings while the index is odd, then parks
    /// the result as the left sibling of the level it stopped at. After the
    /// final subtree this leaves the complete codeword at the root.
    pub fn absorb(&mut self, stop: usize, idx: usize, bits: &[u8]) {
        debug_assert_eq!(bits.len(), 1 << stop);
        let mut level = stop;
        let mut j = idx;
        let mut cur = bits.to_vec();
        while j & 1 == 1 {
            cur = combine_partial_sums(&self.beta[level], &cur).expect("equal halves");
            j >>= 1;
            level += 1;
        }
        self.beta[level] = cur;
    }

    /// The re-encoded codeword, available once every leaf has been absorbed.
    pub fn codeword(&self) -> &[u8] {
        &self.beta[self.log_n]
    }
}
