//! Storage-footprint models for SC, SCL and PSCL decoders.
//!
//! The models count bits for three stores: internal LLRs (width `Q_alpha`),
//! path metrics (width `Q_pm`) and partial sums (1 bit each). SC needs one
//! tree; SCL needs L copies of everything below the shared channel stage;
//! PSCL keeps L copies only of the partition subtrees and shares one upper
//! tree, which is where the savings come from.
//!
//! Values are held as exact rationals: for large partition counts the model
//! terms N/2^k become dyadic fractions far below f64 resolution, and the
//! monotonicity guarantees in the tests are exact statements.

use std::fmt;

pub use num::rational::BigRational;

use num::{BigInt, One, ToPrimitive, Zero};

/// Storage widths for quantized LLRs and path metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantSpec {
    pub q_alpha: u32,
    pub q_pm: u32,
}

impl QuantSpec {
    pub fn new(q_alpha: u32, q_pm: u32) -> Self {
        assert!(q_alpha >= 1 && q_pm >= 1);
        QuantSpec { q_alpha, q_pm }
    }
}

impl Default for QuantSpec {
    /// The reference operating point used throughout: 6-bit LLRs and 8-bit
    /// path metrics.
    fn default() -> Self {
        QuantSpec {
            q_alpha: 6,
            q_pm: 8,
        }
    }
}

/// Which decoder a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MemAlgorithm {
    Sc,
    Scl { list_size: usize },
    Pscl { partitions: usize, list_size: usize },
}

impl fmt::Display for MemAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MemAlgorithm::Sc => write!(f, "SC"),
            MemAlgorithm::Scl { list_size } => write!(f, "SCL({list_size})"),
            MemAlgorithm::Pscl {
                partitions,
                list_size,
            } => {
                write!(f, "PSCL({partitions},{list_size})")
            }
        }
    }
}

/// Bit counts of one decoder configuration, split into the three stores.
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryReport {
    pub algorithm: MemAlgorithm,
    alpha: BigRational,
    path_metrics: BigRational,
    beta: BigRational,
}

impl MemoryReport {
    pub fn alpha_bits(&self) -> &BigRational {
        &self.alpha
    }

    pub fn pm_bits(&self) -> &BigRational {
        &self.path_metrics
    }

    pub fn beta_bits(&self) -> &BigRational {
        &self.beta
    }

    /// Exact total: always the sum of the three components.
    pub fn total_bits(&self) -> BigRational {
        &self.alpha + &self.path_metrics + &self.beta
    }

    /// Total as f64 for presentation.
    pub fn total_bits_f64(&self) -> f64 {
        self.total_bits().to_f64().unwrap_or(f64::NAN)
    }

    /// Exact integer total, when the model produces one (it does whenever
    /// the partition subtrees are at least one leaf wide).
    pub fn total_bits_exact(&self) -> Option<BigInt> {
        let total = self.total_bits();
        if total.is_integer() {
            Some(total.to_integer())
        } else {
            None
        }
    }
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// 2^exp as an exact rational; negative exponents give dyadic fractions.
fn pow2(exp: i64) -> BigRational {
    if exp >= 0 {
        BigRational::from_integer(BigInt::one() << exp as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-exp) as usize)
    }
}

fn assert_power_of_two(n: usize, what: &str) {
    assert!(
        n.is_power_of_two() && n >= 1,
        "{what} must be a power of two"
    );
}

/// SC decoder: (2N−1) LLR words and N−1 partial-sum bits, no path metrics.
pub fn mem_sc(n: usize, q: QuantSpec) -> MemoryReport {
    assert_power_of_two(n, "N");
    let n = n as u64;
    MemoryReport {
        algorithm: MemAlgorithm::Sc,
        alpha: int(2 * n - 1) * int(q.q_alpha as u64),
        path_metrics: BigRational::zero(),
        beta: int(n - 1),
    }
}

/// SCL decoder: the channel stage is shared, everything below is per path.
pub fn mem_scl(n: usize, list_size: usize, q: QuantSpec) -> MemoryReport {
    assert_power_of_two(n, "N");
    assert!(list_size >= 1, "L must be at least 1");
    let n = n as u64;
    let l = list_size as u64;
    MemoryReport {
        algorithm: MemAlgorithm::Scl { list_size },
        alpha: (int(n) + int(n - 1) * int(l)) * int(q.q_alpha as u64),
        path_metrics: int(l) * int(q.q_pm as u64),
        beta: int(2 * n - 1) * int(l),
    }
}

/// PSCL decoder with P partitions: one shared copy of the upper-tree stages
/// plus L copies of the partition subtrees. P = 1 reduces exactly to the
/// SCL model.
pub fn mem_pscl(n: usize, partitions: usize, list_size: usize, q: QuantSpec) -> MemoryReport {
    assert_power_of_two(n, "N");
    assert_power_of_two(partitions, "P");
    assert!(partitions <= n, "P must not exceed N");
    assert!(list_size >= 1, "L must be at least 1");
    let p = partitions as i64;
    let l = int(list_size as u64);
    let n_exact = int(n as u64);

    // Σ_{k=0}^{P-1} N/2^k
    let mut alpha_shared = BigRational::zero();
    for k in 0..p {
        alpha_shared += &n_exact * pow2(-k);
    }
    // (N/2^{P-1} − 1) L
    let alpha_listed = (&n_exact * pow2(1 - p) - BigRational::one()) * &l;

    // Σ_{k=1}^{P-2} N/2^k (empty for P ≤ 2)
    let mut beta_shared = BigRational::zero();
    for k in 1..=(p - 2) {
        beta_shared += &n_exact * pow2(-k);
    }
    // (N/2^{P-2} − 1) L
    let beta_listed = (&n_exact * pow2(2 - p) - BigRational::one()) * &l;

    MemoryReport {
        algorithm: MemAlgorithm::Pscl {
            partitions,
            list_size,
        },
        alpha: (alpha_shared + alpha_listed) * int(q.q_alpha as u64),
        path_metrics: l * int(q.q_pm as u64),
        beta: beta_shared + beta_listed,
    }
}

/// Renders a bit count: integers print exactly, dyadic-fraction cells (deep
/// partition counts) fall back to a decimal rendering.
pub fn format_bit_count(value: &BigRational) -> String {
    if value.is_integer() {
        value.to_integer().to_string()
    } else {
        format!("{:.6}", value.to_f64().unwrap_or(f64::NAN))
    }
}

/// One report per (P, L) grid cell, preceded by the SC reference and one SCL
/// reference per list size.
pub fn sweep(
    n: usize,
    partitions: &[usize],
    list_sizes: &[usize],
    q: QuantSpec,
) -> Vec<MemoryReport> {
    let mut out = Vec::with_capacity(1 + list_sizes.len() * (1 + partitions.len()));
    out.push(mem_sc(n, q));
    for &l in list_sizes {
        out.push(mem_scl(n, l, q));
    }
    for &l in list_sizes {
        for &p in partitions {
            out.push(mem_pscl(n, p, l, q));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;

    fn total(r: &MemoryReport) -> BigRational {
        r.total_bits()
    }

    #[test]
    fn sc_smallest_code() {
        let r = mem_sc(2, QuantSpec::new(1, 1));
        assert_eq!(total(&r), int(4));
    }

    #[test]
    fn reference_values_at_n2048() {
        let q = QuantSpec::default();
        assert_eq!(total(&mem_sc(2048, q)), int(26617));
        assert_eq!(total(&mem_scl(2048, 2, q)), int(45058));
        assert_eq!(total(&mem_scl(2048, 4, q)), int(77828));
        assert_eq!(total(&mem_pscl(2048, 2, 2, q)), int(34818));
        assert_eq!(total(&mem_pscl(2048, 4, 2, q)), int(28674));
        assert_eq!(total(&mem_pscl(2048, 4, 4, q)), int(32772));
    }

    #[test]
    fn pscl_component_breakdown_matches_hand_evaluation() {
        let q = QuantSpec::default();
        let r = mem_pscl(2048, 2, 2, q);
        assert_eq!(r.alpha_bits(), &(int(3072 + 2046) * int(6)));
        assert_eq!(r.pm_bits(), &int(16));
        assert_eq!(r.beta_bits(), &int(4094));
        let r = mem_pscl(2048, 4, 4, q);
        assert_eq!(r.alpha_bits(), &(int(3840 + 1020) * int(6)));
        assert_eq!(r.pm_bits(), &int(32));
        assert_eq!(r.beta_bits(), &int(1536 + 2044));
    }

    #[test]
    fn alpha_component_is_linear_in_q_alpha() {
        let a = mem_sc(64, QuantSpec::new(3, 8));
        let b = mem_sc(64, QuantSpec::new(6, 8));
        assert_eq!(b.alpha_bits(), &(a.alpha_bits() * int(2)));
    }

    #[test]
    fn pm_component_is_exactly_l_times_qpm() {
        for l in [1usize, 2, 4, 8, 32] {
            let r = mem_scl(256, l, QuantSpec::new(6, 8));
            assert_eq!(r.pm_bits(), &(int(l as u64) * int(8)));
        }
    }

    #[test]
    fn pscl_with_one_partition_equals_scl_componentwise() {
        let q = QuantSpec::default();
        for n in [4usize, 64, 2048] {
            for l in [1usize, 2, 4, 8] {
                let pscl = mem_pscl(n, 1, l, q);
                let scl = mem_scl(n, l, q);
                assert_eq!(pscl.alpha_bits(), scl.alpha_bits());
                assert_eq!(pscl.pm_bits(), scl.pm_bits());
                assert_eq!(pscl.beta_bits(), scl.beta_bits());
            }
        }
    }

    #[test]
    fn totals_are_sums_of_components() {
        let q = QuantSpec::default();
        for r in sweep(2048, &[1, 2, 4, 8, 16], &[1, 2, 4, 8], q) {
            let sum = r.alpha_bits() + r.pm_bits() + r.beta_bits();
            assert_eq!(r.total_bits(), sum);
        }
    }

    #[test]
    fn strictly_decreasing_in_partitions_for_l_at_least_two() {
        let q = QuantSpec::default();
        let grid: Vec<usize> = (0..=9).map(|e| 1usize << e).collect(); // 1..512
        for l in [2usize, 4, 8] {
            let mut prev: Option<BigRational> = None;
            for &p in &grid {
                let cur = total(&mem_pscl(2048, p, l, q));
                if let Some(prev) = prev {
                    assert!(cur < prev, "P={p}, L={l}: {cur} !< {prev}");
                }
                prev = Some(cur);
            }
        }
    }

    #[test]
    fn sc_and_scl_bound_every_pscl_cell() {
        let q = QuantSpec::default();
        let sc = total(&mem_sc(2048, q));
        let grid: Vec<usize> = (0..=9).map(|e| 1usize << e).collect();
        for l in [1usize, 2, 4, 8] {
            let scl = total(&mem_scl(2048, l, q));
            for &p in &grid {
                let cell = total(&mem_pscl(2048, p, l, q));
                assert!(cell >= sc, "P={p}, L={l} below SC");
                assert!(cell <= scl, "P={p}, L={l} above SCL({l})");
            }
        }
    }

    #[test]
    fn four_partitions_at_l4_beat_scl2() {
        let q = QuantSpec::default();
        assert!(total(&mem_pscl(2048, 4, 4, q)) < total(&mem_scl(2048, 2, q)));
    }

    #[test]
    fn fractional_totals_stay_positive_and_ordered_at_huge_p() {
        // Deep partition counts give dyadic-fraction terms; the exact
        // arithmetic keeps them ordered where f64 would see equal values.
        let q = QuantSpec::default();
        let a = total(&mem_pscl(2048, 256, 2, q));
        let b = total(&mem_pscl(2048, 512, 2, q));
        assert!(b < a);
        assert!(b.is_positive());
        let gap = (a.to_f64().unwrap() - b.to_f64().unwrap()).abs();
        assert!(gap < 1e-9, "difference visible to f64: {gap}");
    }
}
