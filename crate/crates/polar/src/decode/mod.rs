//! SC, CRC-aided SCL and partitioned SCL decoding.
//!
//! All three decoders share the same tree kernels and the same sign
//! convention, so the reduction identities hold bit-exactly: SCL with list
//! size 1 equals SC, and PSCL with a single partition equals SCL.

mod list;
mod tree;

pub use list::{metric_update, prune, ForkCandidate, Path};

use crate::codec::hard_decision;
use crate::construction::{partition_layout, PolarCode};
use crate::crc::{CrcSpec, FrameLayout};
use crate::{Error, Result};

use list::{list_decode_subtree, select_path};
use tree::DecoderTree;

/// Successive-cancellation decoding. Returns the length-N leaf decisions û;
/// frozen positions decode to 0, the rest follow the LLR sign (0 counts as
/// positive).
pub fn sc_decode(code: &PolarCode, channel_llrs: &[f64]) -> Vec<u8> {
    let n = code.blocklength();
    assert_eq!(channel_llrs.len(), n, "LLR vector must have length N");
    debug_assert!(channel_llrs.iter().all(|l| l.is_finite()));
    let mut tree = DecoderTree::new(code.log_blocklength());
    let mut u = Vec::with_capacity(n);
    for leaf in 0..n {
        tree.refine(channel_llrs, 0, leaf);
        let bit = if code.is_frozen(leaf) {
            0
        } else {
            hard_decision(tree.leaf_llr(channel_llrs))
        };
        u.push(bit);
        tree.absorb(0, leaf, &[bit]);
    }
    u
}

/// SCL decoding over the whole tree, returning the final surviving paths.
/// No CRC selection is applied; paths are in final generation order.
pub fn scl_decode_paths(code: &PolarCode, channel_llrs: &[f64], list_size: usize) -> Vec<Path> {
    assert_eq!(channel_llrs.len(), code.blocklength());
    debug_assert!(channel_llrs.iter().all(|l| l.is_finite()));
    let frozen = code.frozen_mask();
    list_decode_subtree(channel_llrs, frozen, list_size, |_, _| ())
}

/// Like [`scl_decode_paths`] but reports every surviving generation to
/// `observe`; used by invariant tests that track metric trajectories.
#[doc(hidden)]
pub fn scl_decode_observed<F>(
    code: &PolarCode,
    channel_llrs: &[f64],
    list_size: usize,
    observe: F,
) -> Vec<Path>
where
    F: FnMut(usize, &[Path]),
{
    assert_eq!(channel_llrs.len(), code.blocklength());
    list_decode_subtree(channel_llrs, code.frozen_mask(), list_size, observe)
}

/// CRC-aided SCL decoding. Among the surviving paths the lowest-metric one
/// passing the CRC wins; if none passes, or no CRC is given, the
/// lowest-metric path wins. Returns the length-N leaf decisions.
pub fn scl_decode(
    code: &PolarCode,
    channel_llrs: &[f64],
    list_size: usize,
    crc: Option<&CrcSpec>,
) -> Vec<u8> {
    let paths = scl_decode_paths(code, channel_llrs, list_size);
    let best = match crc {
        Some(spec) if !spec.is_disabled() => {
            let layout =
                partition_layout(code, 1, &[spec.width]).expect("single partition is always legal");
            let frame = FrameLayout::new(code, &layout);
            if layout.crc_width(0) == 0 {
                // Too few info bits to carry the CRC: plain metric selection.
                select_path(&paths, |_| false)
            } else {
                select_path(&paths, |p| frame.check_partition(spec, 0, p.decisions()))
            }
        }
        _ => select_path(&paths, |_| false),
    };
    best.decisions().to_vec()
}

/// Partitioned-SCL configuration: partition count, list size and the
/// per-partition CRCs (empty = no CRC anywhere).
#[derive(Debug, Clone, PartialEq)]
pub struct PsclConfig {
    pub partitions: usize,
    pub list_size: usize,
    pub crc: Vec<CrcSpec>,
}

impl PsclConfig {
    pub fn new(partitions: usize, list_size: usize) -> Self {
        PsclConfig {
            partitions,
            list_size,
            crc: Vec::new(),
        }
    }

    /// Attaches one CRC spec per partition.
    pub fn with_crc(mut self, crc: Vec<CrcSpec>) -> Self {
        self.crc = crc;
        self
    }

    /// Attaches the same CRC spec to every partition.
    pub fn with_uniform_crc(mut self, spec: CrcSpec) -> Self {
        self.crc = vec![spec; self.partitions];
        self
    }
}

/// Partitioned SCL decoding.
///
/// The tree above the partitions follows plain SC rules over a single
/// shared state: for each partition in order, the partition-root LLR vector
/// is computed from the channel and the partial sums of the survivors of
/// earlier partitions, the partition is list-decoded locally (metric starts
/// at zero), one survivor is selected with the partition's CRC, and only
/// that survivor's partial sums are fed back into the upper tree.
pub fn pscl_decode(code: &PolarCode, channel_llrs: &[f64], cfg: &PsclConfig) -> Result<Vec<u8>> {
    let n = code.blocklength();
    if channel_llrs.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: channel_llrs.len(),
        });
    }
    debug_assert!(channel_llrs.iter().all(|l| l.is_finite()));
    if !cfg.crc.is_empty() && cfg.crc.len() != cfg.partitions {
        return Err(Error::CrcWidthCount {
            expected: cfg.partitions,
            got: cfg.crc.len(),
        });
    }
    if cfg.list_size == 0 {
        return Err(Error::Config("list size must be at least 1".into()));
    }
    let widths: Vec<usize> = if cfg.crc.is_empty() {
        vec![0; cfg.partitions]
    } else {
        cfg.crc.iter().map(|s| s.width).collect()
    };
    let layout = partition_layout(code, cfg.partitions, &widths)?;
    let frame = FrameLayout::new(code, &layout);

    let log_n = code.log_blocklength();
    let stop = log_n - cfg.partitions.trailing_zeros() as usize;
    let sub_size = 1usize << stop;
    let mut upper = DecoderTree::new(log_n);
    let mut u = Vec::with_capacity(n);

    for p in 0..cfg.partitions {
        let frozen = &code.frozen_mask()[p * sub_size..(p + 1) * sub_size];
        let paths = if stop == log_n {
            list_decode_subtree(channel_llrs, frozen, cfg.list_size, |_, _| ())
        } else {
            upper.refine(channel_llrs, stop, p);
            list_decode_subtree(upper.alpha_at(stop), frozen, cfg.list_size, |_, _| ())
        };
        let best = if layout.crc_width(p) > 0 {
            let spec = &cfg.crc[p];
            select_path(&paths, |path| {
                frame.check_partition(spec, p, path.decisions())
            })
        } else {
            select_path(&paths, |_| false)
        };
        u.extend_from_slice(best.decisions());
        if stop < log_n {
            upper.absorb(stop, p, best.codeword());
        }
    }
    Ok(u)
}
