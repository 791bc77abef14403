//! CRC computation and the payload ↔ frame bit layout.
//!
//! Every partition of a PSCL code carries its own CRC over its own payload
//! bits. The CRC occupies the last `x_p` non-frozen leaf indices of the
//! partition (in ascending natural order), so the decoder can check it once
//! the partition is fully decided. Frozen bits are never covered.

use std::fmt;
use std::str::FromStr;

use crate::construction::{PartitionLayout, PolarCode};
use crate::{Error, Result};

/// A CRC definition: width, generator polynomial (without the leading
/// x^width term), initial register value, reflection and final XOR.
///
/// Width 0 means "disabled": no bits are reserved and every check passes.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CrcSpec {
    pub width: usize,
    pub poly: u64,
    pub init: u64,
    pub reflect: bool,
    pub xor_out: u64,
}

impl CrcSpec {
    pub fn new(width: usize, poly: u64) -> Self {
        CrcSpec {
            width,
            poly,
            init: 0,
            reflect: false,
            xor_out: 0,
        }
    }

    /// Disabled CRC (`0:0`).
    pub fn disabled() -> Self {
        CrcSpec::new(0, 0)
    }

    /// CRC-32 with polynomial 0x04C11DB7, init 0, no reflection.
    pub fn crc32() -> Self {
        CrcSpec::new(32, 0x04C1_1DB7)
    }

    /// CRC-16/CCITT polynomial 0x1021, init 0, no reflection.
    pub fn crc16() -> Self {
        CrcSpec::new(16, 0x1021)
    }

    /// CRC-8 with polynomial 0x07, init 0, no reflection.
    pub fn crc8() -> Self {
        CrcSpec::new(8, 0x07)
    }

    pub fn is_disabled(&self) -> bool {
        self.width == 0
    }
}

impl fmt::Display for CrcSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_disabled() {
            write!(f, "0:0")
        } else if self.init == 0 {
            write!(f, "{}:{:X}", self.width, self.poly)
        } else {
            write!(f, "{}:{:X}:{:X}", self.width, self.poly, self.init)
        }
    }
}

impl FromStr for CrcSpec {
    type Err = Error;

    /// Parses `width:polyhex[:inithex]`; `0:0` disables the CRC.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidCrcSpec(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(bad());
        }
        let width: usize = parts[0].parse().map_err(|_| bad())?;
        let poly = u64::from_str_radix(parts[1], 16).map_err(|_| bad())?;
        let init = match parts.get(2) {
            Some(t) => u64::from_str_radix(t, 16).map_err(|_| bad())?,
            None => 0,
        };
        if width > 64 {
            return Err(bad());
        }
        if width == 0 {
            return Ok(CrcSpec::disabled());
        }
        let mask = width_mask(width);
        if poly & !mask != 0 || init & !mask != 0 {
            return Err(bad());
        }
        Ok(CrcSpec {
            width,
            poly,
            init,
            reflect: false,
            xor_out: 0,
        })
    }
}

fn width_mask(width: usize) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

fn reflect_bits(value: u64, width: usize) -> u64 {
    let mut out = 0u64;
    for i in 0..width {
        if value >> i & 1 == 1 {
            out |= 1 << (width - 1 - i);
        }
    }
    out
}

/// Computes the CRC of a payload given as individual bits, most significant
/// bit of the register first in the returned vector.
pub fn crc_compute(spec: &CrcSpec, payload: &[u8]) -> Vec<u8> {
    assert!(spec.width >= 1, "crc_compute needs an enabled spec");
    let width = spec.width;
    let mask = width_mask(width);
    let mut reg = spec.init & mask;
    if spec.reflect {
        let poly = reflect_bits(spec.poly, width);
        for &bit in payload {
            let fb = (reg ^ bit as u64) & 1;
            reg >>= 1;
            if fb == 1 {
                reg ^= poly;
            }
        }
        reg = reflect_bits(reg, width);
    } else {
        for &bit in payload {
            let fb = (reg >> (width - 1)) & 1 ^ bit as u64;
            reg = (reg << 1) & mask;
            if fb == 1 {
                reg ^= spec.poly;
            }
        }
    }
    reg ^= spec.xor_out;
    (0..width)
        .map(|i| (reg >> (width - 1 - i) & 1) as u8)
        .collect()
}

/// Which leaf indices hold payload bits and which hold CRC bits, for every
/// partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameLayout {
    partitions: Vec<PartitionSlots>,
    payload_len: usize,
    blocklength: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct PartitionSlots {
    start: usize,
    end: usize,
    payload: Vec<usize>,
    crc: Vec<usize>,
}

impl FrameLayout {
    /// Derives the payload/CRC slot assignment from a code and a partition
    /// layout: within each partition the CRC takes the last `x_p` non-frozen
    /// indices, the payload the rest.
    pub fn new(code: &PolarCode, layout: &PartitionLayout) -> FrameLayout {
        let mut partitions = Vec::with_capacity(layout.partition_count());
        let mut payload_len = 0;
        for p in 0..layout.partition_count() {
            let range = layout.range(p);
            let info: Vec<usize> = range.clone().filter(|&i| !code.is_frozen(i)).collect();
            let x_p = layout.crc_width(p);
            let split = info.len() - x_p;
            let (payload, crc) = (info[..split].to_vec(), info[split..].to_vec());
            payload_len += payload.len();
            partitions.push(PartitionSlots {
                start: range.start,
                end: range.end,
                payload,
                crc,
            });
        }
        FrameLayout {
            partitions,
            payload_len,
            blocklength: code.blocklength(),
        }
    }

    pub fn partition_count(&self) -> usize {
        self.partitions.len()
    }

    /// Total payload bits per frame: K − Σ x_p.
    pub fn payload_len(&self) -> usize {
        self.payload_len
    }

    pub fn blocklength(&self) -> usize {
        self.blocklength
    }

    /// Payload slot indices of partition `p`, ascending.
    pub fn payload_positions(&self, p: usize) -> &[usize] {
        &self.partitions[p].payload
    }

    /// CRC slot indices of partition `p`, ascending.
    pub fn crc_positions(&self, p: usize) -> &[usize] {
        &self.partitions[p].crc
    }

    /// All payload slot indices across partitions, ascending.
    pub fn all_payload_positions(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.payload_len);
        for slots in &self.partitions {
            out.extend_from_slice(&slots.payload);
        }
        out
    }

    /// Builds the length-N input vector `u`: payload bits fill the payload
    /// slots in index order, each partition's CRC fills its CRC slots, and
    /// frozen positions stay 0.
    pub fn attach_crcs(&self, specs: &[CrcSpec], payload: &[u8]) -> Result<Vec<u8>> {
        if specs.len() != self.partitions.len() {
            return Err(Error::CrcWidthCount {
                expected: self.partitions.len(),
                got: specs.len(),
            });
        }
        if payload.len() != self.payload_len {
            return Err(Error::LengthMismatch {
                expected: self.payload_len,
                got: payload.len(),
            });
        }
        let mut u = vec![0u8; self.blocklength];
        let mut consumed = 0;
        for (slots, spec) in self.partitions.iter().zip(specs) {
            let part_payload = &payload[consumed..consumed + slots.payload.len()];
            for (&pos, &bit) in slots.payload.iter().zip(part_payload) {
                u[pos] = bit & 1;
            }
            if !slots.crc.is_empty() {
                debug_assert_eq!(slots.crc.len(), spec.width);
                let crc = crc_compute(spec, part_payload);
                for (&pos, &bit) in slots.crc.iter().zip(&crc) {
                    u[pos] = bit;
                }
            }
            consumed += slots.payload.len();
        }
        Ok(u)
    }

    /// Checks partition `p`'s CRC against decoded leaf decisions.
    ///
    /// `decisions` may be the full length-N vector or just the partition's
    /// own range. Vacuously true when the partition has no CRC bits.
    pub fn check_partition(&self, spec: &CrcSpec, p: usize, decisions: &[u8]) -> bool {
        let slots = &self.partitions[p];
        if slots.crc.is_empty() {
            return true;
        }
        let offset = if decisions.len() == self.blocklength {
            0
        } else {
            debug_assert_eq!(decisions.len(), slots.end - slots.start);
            slots.start
        };
        let payload: Vec<u8> = slots
            .payload
            .iter()
            .map(|&i| decisions[i - offset])
            .collect();
        let crc = crc_compute(spec, &payload);
        slots
            .crc
            .iter()
            .zip(&crc)
            .all(|(&pos, &bit)| decisions[pos - offset] == bit)
    }

    /// Extracts the payload bits from decoded leaf decisions.
    pub fn extract_payload(&self, decisions: &[u8]) -> Vec<u8> {
        debug_assert_eq!(decisions.len(), self.blocklength);
        let mut out = Vec::with_capacity(self.payload_len);
        for slots in &self.partitions {
            out.extend(slots.payload.iter().map(|&i| decisions[i]));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{construct, partition_layout, PolarCode};
    use proptest::prelude::*;

    /// Independent oracle: polynomial long division over GF(2) on plain bit
    /// vectors (append `width` zeros, divide by the full generator).
    fn long_division_crc(width: usize, poly: u64, payload: &[u8]) -> Vec<u8> {
        let mut dividend: Vec<u8> = payload.to_vec();
        dividend.extend(std::iter::repeat_n(0, width));
        // Full generator polynomial including the leading term.
        let mut generator = vec![1u8];
        for i in (0..width).rev() {
            generator.push((poly >> i & 1) as u8);
        }
        for i in 0..payload.len() {
            if dividend[i] == 1 {
                for (j, &g) in generator.iter().enumerate() {
                    dividend[i + j] ^= g;
                }
            }
        }
        dividend[payload.len()..].to_vec()
    }

    fn ascii_bits(s: &str) -> Vec<u8> {
        s.bytes()
            .flat_map(|byte| (0..8).rev().map(move |i| (byte >> i) & 1))
            .collect()
    }

    #[test]
    fn zero_payload_gives_zero_crc() {
        let spec = CrcSpec::crc8();
        assert_eq!(crc_compute(&spec, &[0; 40]), vec![0; 8]);
    }

    #[test]
    fn crc8_check_value() {
        // Standard check input "123456789" for CRC-8 (poly 0x07, init 0):
        // expected remainder 0xF4, confirmed by the long-division oracle.
        let bits = ascii_bits("123456789");
        let oracle = long_division_crc(8, 0x07, &bits);
        let expected: Vec<u8> = (0..8).map(|i| (0xF4u8 >> (7 - i)) & 1).collect();
        assert_eq!(oracle, expected);
        assert_eq!(crc_compute(&CrcSpec::crc8(), &bits), expected);
    }

    #[test]
    fn matches_long_division_for_all_default_polys() {
        let payload = ascii_bits("polar codes");
        for spec in [CrcSpec::crc8(), CrcSpec::crc16(), CrcSpec::crc32()] {
            assert_eq!(
                crc_compute(&spec, &payload),
                long_division_crc(spec.width, spec.poly, &payload),
                "width {}",
                spec.width
            );
        }
    }

    proptest! {
        #[test]
        fn single_bit_flip_changes_crc(payload in proptest::collection::vec(0u8..2, 1..64), flip in 0usize..64) {
            let flip = flip % payload.len();
            let spec = CrcSpec::crc16();
            let a = crc_compute(&spec, &payload);
            let mut flipped = payload.clone();
            flipped[flip] ^= 1;
            let b = crc_compute(&spec, &flipped);
            prop_assert_ne!(a, b);
        }
    }

    #[test]
    fn spec_string_round_trip() {
        for s in ["8:07", "32:04C11DB7", "16:1021:FFFF", "0:0"] {
            let spec: CrcSpec = s.parse().unwrap();
            let back: CrcSpec = spec.to_string().parse().unwrap();
            assert_eq!(spec, back);
        }
        assert!("8".parse::<CrcSpec>().is_err());
        assert!("8:GG".parse::<CrcSpec>().is_err());
        assert!("65:0".parse::<CrcSpec>().is_err());
        assert!("8:1FF".parse::<CrcSpec>().is_err());
    }

    #[test]
    fn attach_all_zero_payload_gives_all_zero_frame() {
        let code = construct(16, 8, 2.0).unwrap();
        let layout = partition_layout(&code, 2, &[2, 2]).unwrap();
        let frame = FrameLayout::new(&code, &layout);
        let specs = vec![CrcSpec::new(2, 0x3), CrcSpec::new(2, 0x3)];
        let u = frame
            .attach_crcs(&specs, &vec![0; frame.payload_len()])
            .unwrap();
        assert_eq!(u, vec![0; 16]);
    }

    #[test]
    fn conventional_crc32_frame_layout() {
        let code = construct(2048, 1024, 2.0).unwrap();
        let layout = partition_layout(&code, 1, &[32]).unwrap();
        let frame = FrameLayout::new(&code, &layout);
        assert_eq!(frame.payload_len(), 992);
        assert_eq!(frame.crc_positions(0).len(), 32);
        // CRC occupies the last non-frozen indices in ascending order.
        let info = code.info_indices();
        assert_eq!(frame.crc_positions(0), &info[992..]);
    }

    #[test]
    fn rate_is_conserved_across_partitionings() {
        // SCL-CRC32, PSCL(2,·)-CRC16 and PSCL(4,·)-CRC8 all spend 32 CRC
        // bits, so the payload is 992 bits in each case.
        let code = construct(2048, 1024, 2.0).unwrap();
        for (p, w) in [(1usize, 32usize), (2, 16), (4, 8)] {
            let layout = partition_layout(&code, p, &vec![w; p]).unwrap();
            let frame = FrameLayout::new(&code, &layout);
            assert_eq!(frame.payload_len(), 992, "P={p}");
        }
    }

    #[test]
    fn attach_then_check_round_trips_and_detects_flips() {
        // Partition 0 of this code carries only 8 info bits, so give it a
        // narrower CRC than partition 1 to keep both checks enabled.
        let code = construct(64, 32, 2.0).unwrap();
        let layout = partition_layout(&code, 2, &[4, 8]).unwrap();
        assert!(layout.crc_disabled().is_empty());
        let frame = FrameLayout::new(&code, &layout);
        let specs = vec![CrcSpec::new(4, 0x3), CrcSpec::crc8()];
        let payload: Vec<u8> = (0..frame.payload_len())
            .map(|i| (i % 3 == 0) as u8)
            .collect();
        let u = frame.attach_crcs(&specs, &payload).unwrap();

        for (p, spec) in specs.iter().enumerate() {
            assert!(frame.check_partition(spec, p, &u));
        }
        assert_eq!(frame.extract_payload(&u), payload);

        // Flipping any single non-frozen bit of a partition breaks its CRC.
        for (p, spec) in specs.iter().enumerate() {
            for &pos in frame
                .payload_positions(p)
                .iter()
                .chain(frame.crc_positions(p))
            {
                let mut damaged = u.clone();
                damaged[pos] ^= 1;
                assert!(
                    !frame.check_partition(spec, p, &damaged),
                    "flip at {pos} went undetected"
                );
            }
        }
    }

    #[test]
    fn check_accepts_partition_local_slices() {
        let code = construct(32, 16, 2.0).unwrap();
        let layout = partition_layout(&code, 2, &[4, 4]).unwrap();
        let frame = FrameLayout::new(&code, &layout);
        let specs = vec![CrcSpec::new(4, 0x3), CrcSpec::new(4, 0x3)];
        let payload: Vec<u8> = (0..frame.payload_len()).map(|i| (i & 1) as u8).collect();
        let u = frame.attach_crcs(&specs, &payload).unwrap();
        assert!(frame.check_partition(&specs[1], 1, &u[16..32]));
    }

    #[test]
    fn disabled_crc_is_vacuously_true() {
        let code = PolarCode::from_frozen_set(8, &[0, 1, 2, 4], 2.0).unwrap();
        let layout = partition_layout(&code, 2, &[1, 1]).unwrap();
        // Partition 0 has K_p = 1 ≤ 1, so its CRC got disabled.
        let frame = FrameLayout::new(&code, &layout);
        assert!(frame.check_partition(&CrcSpec::disabled(), 0, &[1u8; 8]));
        assert_eq!(frame.payload_len(), 4 - 1);
    }

    #[test]
    fn attach_rejects_wrong_payload_length() {
        let code = construct(16, 8, 2.0).unwrap();
        let layout = partition_layout(&code, 1, &[4]).unwrap();
        let frame = FrameLayout::new(&code, &layout);
        assert!(frame.attach_crcs(&[CrcSpec::new(4, 0x3)], &[0; 3]).is_err());
        assert!(frame.attach_crcs(&[], &[0; 4]).is_err());
    }
}
