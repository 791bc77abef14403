//! Polar code construction: bit-channel reliability ranking, frozen-set
//! selection and partition layouts.
//!
//! The default construction is Gaussian-approximation density evolution for
//! BPSK-AWGN at the design SNR. A Bhattacharyya-parameter construction is
//! available behind [`ConstructionMethod`]. Both are deterministic; ties in
//! reliability are broken by ascending index.

use std::fmt;
use std::io::{BufRead, Write};

use crate::{Error, Result};

/// Reliability-ranking method used to pick the frozen set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ConstructionMethod {
    /// Gaussian-approximation density evolution (default).
    #[default]
    GaussianApproximation,
    /// Bhattacharyya-parameter evolution, tracked in the log domain.
    Bhattacharyya,
}

impl fmt::Display for ConstructionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionMethod::GaussianApproximation => write!(f, "gaussian-approximation"),
            ConstructionMethod::Bhattacharyya => write!(f, "bhattacharyya"),
        }
    }
}

impl std::str::FromStr for ConstructionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ga" | "gaussian" | "gaussian-approximation" => {
                Ok(ConstructionMethod::GaussianApproximation)
            }
            "bhattacharyya" | "bh" => Ok(ConstructionMethod::Bhattacharyya),
            other => Err(Error::Config(format!(
                "unknown construction method `{other}`"
            ))),
        }
    }
}

/// Static description of a polar code: blocklength, frozen set and the
/// reliability permutation it was derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarCode {
    n: usize,
    log_n: usize,
    k: usize,
    design_snr_db: f64,
    frozen_mask: Vec<bool>,
    frozen: Vec<usize>,
    reliability_order: Vec<usize>,
}

impl PolarCode {
    /// Blocklength N.
    pub fn blocklength(&self) -> usize {
        self.n
    }

    /// log2(N).
    pub fn log_blocklength(&self) -> usize {
        self.log_n
    }

    /// Number of non-frozen input positions (info bits, CRC included).
    pub fn info_count(&self) -> usize {
        self.k
    }

    /// Code rate K/N.
    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// Design Eb/N0 in dB the reliability ranking was computed at.
    pub fn design_snr_db(&self) -> f64 {
        self.design_snr_db
    }

    /// Sorted frozen indices, |F| = N - K.
    pub fn frozen_indices(&self) -> &[usize] {
        &self.frozen
    }

    /// Frozen mask of length N (`true` = frozen).
    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen_mask
    }

    pub fn is_frozen(&self, index: usize) -> bool {
        self.frozen_mask[index]
    }

    /// Permutation of 0..N-1 from least to most reliable bit-channel.
    pub fn reliability_order(&self) -> &[usize] {
        &self.reliability_order
    }

    /// Sorted non-frozen indices, in ascending natural order.
    pub fn info_indices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| !self.frozen_mask[i]).collect()
    }

    /// Builds a code from an explicit frozen set. The reliability order is
    /// synthesized as frozen-ascending followed by info-ascending, which is
    /// consistent with the frozen set being the N-K least reliable indices.
    pub fn from_frozen_set(n: usize, frozen: &[usize], design_snr_db: f64) -> Result<Self> {
        if !n.is_power_of_two() {
            return Err(Error::BlocklengthNotPowerOfTwo(n));
        }
        let mut frozen_mask = vec![false; n];
        for &i in frozen {
            if i >= n {
                return Err(Error::Config(format!("frozen index {i} out of range")));
            }
            if frozen_mask[i] {
                return Err(Error::Config(format!("duplicate frozen index {i}")));
            }
            frozen_mask[i] = true;
        }
        let mut frozen: Vec<usize> = frozen.to_vec();
        frozen.sort_unstable();
        let k = n - frozen.len();
        let mut reliability_order = frozen.clone();
        reliability_order.extend((0..n).filter(|&i| !frozen_mask[i]));
        Ok(PolarCode {
            n,
            log_n: n.trailing_zeros() as usize,
            k,
            design_snr_db,
            frozen_mask,
            frozen,
            reliability_order,
        })
    }
}

/// Constructs a polar code with the default (Gaussian-approximation)
/// reliability ranking.
pub fn construct(n: usize, k: usize, design_snr_db: f64) -> Result<PolarCode> {
    construct_with_method(n, k, design_snr_db, ConstructionMethod::default())
}

/// Constructs a polar code: ranks the N bit-channels at the design SNR and
/// freezes the N-K least reliable ones.
///
/// The Eb/N0 → noise-variance conversion uses rate R = K/N, matching the
/// simulation harness.
pub fn construct_with_method(
    n: usize,
    k: usize,
    design_snr_db: f64,
    method: ConstructionMethod,
) -> Result<PolarCode> {
    if !n.is_power_of_two() || n == 0 {
        return Err(Error::BlocklengthNotPowerOfTwo(n));
    }
    if k > n {
        return Err(Error::InfoCountOutOfRange { n, k });
    }
    let rate = if k == 0 {
        // Degenerate all-frozen code; the ranking still needs a finite
        // noise variance, so fall back to rate 1/2 for the design point.
        0.5
    } else {
        k as f64 / n as f64
    };
    let ebn0 = 10f64.powf(design_snr_db / 10.0);
    let reliabilities = match method {
        ConstructionMethod::GaussianApproximation => ga_reliabilities(n, rate * ebn0),
        ConstructionMethod::Bhattacharyya => bhattacharyya_reliabilities(n, rate * ebn0),
    };

    // Least reliable first; ties broken by ascending index.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        reliabilities[a]
            .total_cmp(&reliabilities[b])
            .then(a.cmp(&b))
    });

    let mut frozen_mask = vec![false; n];
    for &i in &order[..n - k] {
        frozen_mask[i] = true;
    }
    let mut frozen = order[..n - k].to_vec();
    frozen.sort_unstable();
    Ok(PolarCode {
        n,
        log_n: n.trailing_zeros() as usize,
        k,
        design_snr_db,
        frozen_mask,
        frozen,
        reliability_order: order,
    })
}

/// Mean-LLR cap keeping φ comfortably inside normal f64 range; channels this
/// reliable are far from any realistic frozen/info boundary.
const GA_MEAN_CLAMP: f64 = 2000.0;

/// The two branches of the φ approximation cross here; switching at the
/// crossing keeps φ continuous and monotone, which the bisection inverse
/// relies on.
const GA_PHI_SWITCH: f64 = 6.1779758661594055;

fn ga_phi(x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else if x < GA_PHI_SWITCH {
        // The fitted branch slightly exceeds 1 for x below ~0.03; cap it so
        // φ stays a probability-like quantity.
        (-0.4527 * x.powf(0.86) + 0.0218).exp().min(1.0)
    } else {
        (std::f64::consts::PI / x).sqrt() * (-x / 4.0).exp() * (1.0 - 10.0 / (7.0 * x))
    }
}

fn ga_phi_inv(y: f64) -> f64 {
    if y >= 1.0 {
        return 0.0;
    }
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    while ga_phi(hi) > y && hi < 4.0 * GA_MEAN_CLAMP {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ga_phi(mid) > y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Gaussian-approximation density evolution: tracks the mean LLR of every
/// synthetic channel. Returns one reliability score per input index
/// (higher = more reliable).
fn ga_reliabilities(n: usize, es_over_n0: f64) -> Vec<f64> {
    // Channel LLR mean for BPSK-AWGN: 2/σ² = 4 Es/N0.
    let mut mean = vec![4.0 * es_over_n0; 1];
    let stages = n.trailing_zeros();
    for _ in 0..stages {
        let mut next = Vec::with_capacity(2 * mean.len());
        for &m in &mean {
            let phi = ga_phi(m);
            let minus = ga_phi_inv(1.0 - (1.0 - phi) * (1.0 - phi));
            let plus = 2.0 * m;
            next.push(minus.min(GA_MEAN_CLAMP));
            next.push(plus.min(GA_MEAN_CLAMP));
        }
        mean = next;
    }
    // The recursion above emits channels in the order (minus, plus) per
    // parent, which is exactly index order u_0..u_{N-1}.
    mean
}

/// Bhattacharyya-parameter evolution in the log domain:
/// lnZ⁻ = lnZ + ln(2 − Z), lnZ⁺ = 2 lnZ. Reliability is −lnZ.
fn bhattacharyya_reliabilities(n: usize, es_over_n0: f64) -> Vec<f64> {
    let mut lz = vec![-es_over_n0; 1];
    let stages = n.trailing_zeros();
    for _ in 0..stages {
        let mut next = Vec::with_capacity(2 * lz.len());
        for &z in &lz {
            next.push(z + (2.0 - z.exp()).ln());
            next.push(2.0 * z);
        }
        lz = next;
    }
    lz.into_iter().map(|z| -z).collect()
}

/// How the decoder tree is split into equal consecutive leaf ranges, with
/// per-partition info counts and CRC widths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionLayout {
    partition_count: usize,
    partition_size: usize,
    info_counts: Vec<usize>,
    crc_widths: Vec<usize>,
    crc_disabled: Vec<usize>,
}

impl PartitionLayout {
    pub fn partition_count(&self) -> usize {
        self.partition_count
    }

    /// Leaf range covered by partition `p`.
    pub fn range(&self, p: usize) -> std::ops::Range<usize> {
        p * self.partition_size..(p + 1) * self.partition_size
    }

    pub fn partition_size(&self) -> usize {
        self.partition_size
    }

    /// Non-frozen leaves inside partition `p`.
    pub fn info_count(&self, p: usize) -> usize {
        self.info_counts[p]
    }

    /// Effective CRC width of partition `p` (0 when disabled).
    pub fn crc_width(&self, p: usize) -> usize {
        self.crc_widths[p]
    }

    pub fn crc_widths(&self) -> &[usize] {
        &self.crc_widths
    }

    /// Partitions whose requested CRC was disabled because the partition has
    /// too few info bits (K_p ≤ x_p).
    pub fn crc_disabled(&self) -> &[usize] {
        &self.crc_disabled
    }
}

/// Splits the code into ``p`` equal consecutive partitions and records each
/// partition's info count and CRC width.
///
/// A partition whose info count does not exceed its requested CRC width gets
/// the CRC disabled (width forced to 0); the affected indices are reported
/// via [`PartitionLayout::crc_disabled`].
pub fn partition_layout(
    code: &PolarCode,
    p: usize,
    crc_widths: &[usize],
) -> Result<PartitionLayout> {
    let n = code.blocklength();
    if p == 0 || !p.is_power_of_two() || p > n {
        return Err(Error::BadPartitionCount { n, p });
    }
    if crc_widths.len() != p {
        return Err(Error::CrcWidthCount {
            expected: p,
            got: crc_widths.len(),
        });
    }
    let partition_size = n / p;
    let mut info_counts = Vec::with_capacity(p);
    let mut widths = Vec::with_capacity(p);
    let mut crc_disabled = Vec::new();
    for (idx, &requested) in crc_widths.iter().enumerate() {
        let range = idx * partition_size..(idx + 1) * partition_size;
        let k_p = range.filter(|&i| !code.is_frozen(i)).count();
        info_counts.push(k_p);
        if requested > 0 && k_p <= requested {
            crc_disabled.push(idx);
            widths.push(0);
        } else {
            widths.push(requested);
        }
    }
    Ok(PartitionLayout {
        partition_count: p,
        partition_size,
        info_counts,
        crc_widths: widths,
        crc_disabled,
    })
}

/// Writes the two-line code file: `N K design_snr_db` then the sorted frozen
/// indices, space-separated.
pub fn write_code_file<W: Write>(code: &PolarCode, mut w: W) -> Result<()> {
    writeln!(
        w,
        "{} {} {}",
        code.blocklength(),
        code.info_count(),
        code.design_snr_db()
    )?;
    let line: Vec<String> = code
        .frozen_indices()
        .iter()
        .map(|i| i.to_string())
        .collect();
    writeln!(w, "{}", line.join(" "))?;
    Ok(())
}

/// Reads a code file produced by [`write_code_file`].
pub fn read_code_file<R: BufRead>(r: R) -> Result<PolarCode> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Config("empty code file".into()))??;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::Config(format!(
            "bad code file header `{header}` (want `N K design_snr_db`)"
        )));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| Error::Config(format!("bad N `{}`", fields[0])))?;
    let k: usize = fields[1]
        .parse()
        .map_err(|_| Error::Config(format!("bad K `{}`", fields[1])))?;
    let snr: f64 = fields[2]
        .parse()
        .map_err(|_| Error::Config(format!("bad design SNR `{}`", fields[2])))?;
    let frozen_line = match lines.next() {
        Some(line) => line?,
        None if k == n => String::new(),
        None => return Err(Error::Config("missing frozen-index line".into())),
    };
    let frozen: Vec<usize> = frozen_line
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Config(format!("bad frozen index `{t}`")))
        })
        .collect::<Result<_>>()?;
    let code = PolarCode::from_frozen_set(n, &frozen, snr)?;
    if code.info_count() != k {
        return Err(Error::Config(format!(
            "code file claims K={k} but has {} frozen indices",
            frozen.len()
        )));
    }
    Ok(code)
}
