//! Monte-Carlo FER/BER campaign runner.
//!
//! Frames are simulated in fixed-size batches: within a batch frames run in
//! parallel, batches are accumulated in order, and the stopping rule is
//! evaluated between batches. Every frame draws from its own RNG stream
//! keyed by (seed, frame index), so a campaign's outcome is bit-identical
//! for any worker count.

use std::fs::File;
use std::io::{BufRead, BufWriter, Write};
use std::path::{Path as FsPath, PathBuf};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{channel_llrs, modulate, transmit, ChannelConfig, RngStream};
use crate::codec::encode;
use crate::construction::{construct_with_method, partition_layout, ConstructionMethod, PolarCode};
use crate::crc::{CrcSpec, FrameLayout};
use crate::decode::{pscl_decode, sc_decode, scl_decode, PsclConfig};
use crate::{Error, Result};

/// Frames per scheduling batch. Fixed so that the set of simulated frames
/// depends only on the stopping rule, never on the worker count.
const BATCH_FRAMES: u64 = 256;

/// Which decoder a campaign exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoderKind {
    Sc,
    Scl,
    Pscl,
}

impl std::fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DecoderKind::Sc => write!(f, "sc"),
            DecoderKind::Scl => write!(f, "scl"),
            DecoderKind::Pscl => write!(f, "pscl"),
        }
    }
}

impl std::str::FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sc" => Ok(DecoderKind::Sc),
            "scl" => Ok(DecoderKind::Scl),
            "pscl" => Ok(DecoderKind::Pscl),
            other => Err(Error::Config(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// Full description of a simulation campaign.
#[derive(Debug, Clone, Serialize)]
pub struct SimConfig {
    pub n: usize,
    pub k: usize,
    pub design_snr_db: f64,
    pub construction: ConstructionMethod,
    pub algo: DecoderKind,
    pub list_size: usize,
    pub partitions: usize,
    pub crc: Vec<CrcSpec>,
    pub ebn0_db: Vec<f64>,
    pub min_frame_errors: u64,
    pub max_frames: u64,
    pub seed: u64,
    pub workers: usize,
    pub name: String,
}

impl SimConfig {
    /// A config with the documented defaults; `n`, `k`, `algo` and the sweep
    /// still have to be set.
    pub fn new(n: usize, k: usize, algo: DecoderKind) -> Self {
        SimConfig {
            n,
            k,
            design_snr_db: 2.0,
            construction: ConstructionMethod::default(),
            algo,
            list_size: 1,
            partitions: 1,
            crc: Vec::new(),
            ebn0_db: Vec::new(),
            min_frame_errors: 100,
            max_frames: 1_000_000,
            seed: 1,
            workers: 0,
            name: "sim".to_string(),
        }
    }

    /// Parses the flat key-value config format (`key = value`, `#` comments).
    pub fn parse<R: BufRead>(reader: R) -> Result<SimConfig> {
        let mut cfg = SimConfig::new(0, 0, DecoderKind::Sc);
        let mut seen_algo = false;
        for line in reader.lines() {
            let line = line?;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected `key = value`, got `{line}`")))?;
            if key.trim() == "algo" {
                seen_algo = true;
            }
            cfg.apply_override(key.trim(), value.trim())?;
        }
        if cfg.n == 0 || cfg.ebn0_db.is_empty() || !seen_algo {
            return Err(Error::Config(
                "config must set at least `n`, `k`, `algo` and `ebn0_db`".into(),
            ));
        }
        Ok(cfg)
    }

    /// Applies one `key=value` override.
    pub fn apply_override(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::Config(format!("bad value `{value}` for `{what}`"));
        match key {
            "n" => self.n = value.parse().map_err(|_| bad("n"))?,
            "k" => self.k = value.parse().map_err(|_| bad("k"))?,
            "design_snr_db" => {
                self.design_snr_db = value.parse().map_err(|_| bad("design_snr_db"))?
            }
            "construction" => self.construction = value.parse()?,
            "algo" => self.algo = value.parse()?,
            "list_size" => self.list_size = value.parse().map_err(|_| bad("list_size"))?,
            "partitions" => self.partitions = value.parse().map_err(|_| bad("partitions"))?,
            "crc" => {
                if value.eq_ignore_ascii_case("none") {
                    self.crc = Vec::new();
                } else {
                    self.crc = value
                        .split(',')
                        .map(|t| t.trim().parse())
                        .collect::<Result<Vec<CrcSpec>>>()?;
                }
            }
            "ebn0_db" => {
                self.ebn0_db = value
                    .split(',')
                    .map(|t| t.trim().parse().map_err(|_| bad("ebn0_db")))
                    .collect::<Result<Vec<f64>>>()?;
            }
            "min_frame_errors" => {
                self.min_frame_errors = value.parse().map_err(|_| bad("min_frame_errors"))?
            }
            "max_frames" => self.max_frames = value.parse().map_err(|_| bad("max_frames"))?,
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "workers" => self.workers = value.parse().map_err(|_| bad("workers"))?,
            "name" => self.name = value.to_string(),
            other => return Err(Error::Config(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }
}

/// One Eb/N0 point of a campaign.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointResult {
    pub ebn0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub fer: f64,
    pub ber: f64,
    pub ci95: f64,
}

/// Campaign results plus the metadata needed to reproduce them.
#[derive(Debug, Clone, Serialize)]
pub struct SimResult {
    pub metadata: Metadata,
    pub points: Vec<PointResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub version: String,
    pub config: SimConfig,
    pub construction: String,
    pub crc_polynomials: Vec<String>,
    pub payload_bits_per_frame: usize,
    pub crc_disabled_partitions: Vec<usize>,
    pub seed: u64,
}

/// Everything derived from the config once per campaign.
struct Prepared {
    code: PolarCode,
    frame: FrameLayout,
    specs: Vec<CrcSpec>,
    kind: DecoderKind,
    list_size: usize,
    pscl: Option<PsclConfig>,
    payload_len: usize,
    crc_disabled: Vec<usize>,
}

fn prepare(cfg: &SimConfig) -> Result<Prepared> {
    if cfg.ebn0_db.is_empty() {
        return Err(Error::Config("Eb/N0 sweep must not be empty".into()));
    }
    if cfg.max_frames == 0 {
        return Err(Error::Config("max_frames must be at least 1".into()));
    }
    if cfg.list_size == 0 {
        return Err(Error::Config("list_size must be at least 1".into()));
    }
    let code = construct_with_method(cfg.n, cfg.k, cfg.design_snr_db, cfg.construction)?;

    let partitions = match cfg.algo {
        DecoderKind::Pscl => cfg.partitions,
        _ => 1,
    };
    let mut specs = match cfg.algo {
        DecoderKind::Sc => {
            if !cfg.crc.is_empty() {
                return Err(Error::Config("sc does not take a CRC".into()));
            }
            vec![CrcSpec::disabled()]
        }
        DecoderKind::Scl => match cfg.crc.len() {
            0 => vec![CrcSpec::disabled()],
            1 => vec![cfg.crc[0].clone()],
            got => return Err(Error::CrcWidthCount { expected: 1, got }),
        },
        DecoderKind::Pscl => match cfg.crc.len() {
            0 => vec![CrcSpec::disabled(); partitions],
            1 => vec![cfg.crc[0].clone(); partitions],
            got if got == partitions => cfg.crc.clone(),
            got => {
                return Err(Error::CrcWidthCount {
                    expected: partitions,
                    got,
                })
            }
        },
    };
    let widths: Vec<usize> = specs.iter().map(|s| s.width).collect();
    let layout = partition_layout(&code, partitions, &widths)?;
    let crc_disabled = layout.crc_disabled().to_vec();
    for &p in &crc_disabled {
        specs[p] = CrcSpec::disabled();
    }
    let frame = FrameLayout::new(&code, &layout);
    if frame.payload_len() == 0 {
        return Err(Error::Config(
            "no payload bits left after frozen and CRC positions".into(),
        ));
    }
    let pscl = match cfg.algo {
        DecoderKind::Pscl => Some(PsclConfig {
            partitions,
            list_size: cfg.list_size,
            crc: specs.clone(),
        }),
        _ => None,
    };
    let payload_len = frame.payload_len();
    Ok(Prepared {
        code,
        frame,
        specs,
        kind: cfg.algo,
        list_size: cfg.list_size,
        pscl,
        payload_len,
        crc_disabled,
    })
}

impl Prepared {
    /// Encode → modulate → AWGN → decode → compare payload bits.
    fn simulate_frame(
        &self,
        streams: &RngStream,
        ch: &ChannelConfig,
        frame_idx: u64,
    ) -> (bool, u64) {
        let mut rng = streams.frame(frame_idx);
        let payload: Vec<u8> = (0..self.payload_len)
            .map(|_| rng.random_range(0..2u8))
            .collect();
        let u = self
            .frame
            .attach_crcs(&self.specs, &payload)
            .expect("prepared layout and payload length agree");
        let x = encode(&u).expect("prepared blocklength is a power of two");
        let symbols = modulate(&x);
        let received = transmit(&symbols, ch, &mut rng);
        let llrs = channel_llrs(&received, ch);
        let u_hat = match self.kind {
            DecoderKind::Sc => sc_decode(&self.code, &llrs),
            DecoderKind::Scl => {
                let spec = (!self.specs[0].is_disabled()).then_some(&self.specs[0]);
                scl_decode(&self.code, &llrs, self.list_size, spec)
            }
            DecoderKind::Pscl => pscl_decode(&self.code, &llrs, self.pscl.as_ref().unwrap())
                .expect("prepared PSCL config is consistent"),
        };
        let decoded = self.frame.extract_payload(&u_hat);
        let bit_errors = payload.iter().zip(&decoded).filter(|(a, b)| a != b).count() as u64;
        (bit_errors > 0, bit_errors)
    }
}

fn point_from_counts(
    ebn0_db: f64,
    frames: u64,
    frame_errors: u64,
    bit_errors: u64,
    payload_len: usize,
) -> PointResult {
    let fer = frame_errors as f64 / frames as f64;
    let ber = bit_errors as f64 / (frames as f64 * payload_len as f64);
    let ci95 = 1.96 * (fer * (1.0 - fer) / frames as f64).sqrt();
    PointResult {
        ebn0_db,
        frames,
        frame_errors,
        bit_errors,
        fer,
        ber,
        ci95,
    }
}

fn run_point_prepared(
    cfg: &SimConfig,
    prep: &Prepared,
    pool: &rayon::ThreadPool,
    ebn0_db: f64,
) -> PointResult {
    let ch = ChannelConfig::new(ebn0_db, prep.code.rate());
    let streams = RngStream::new(cfg.seed);
    let mut frames = 0u64;
    let mut frame_errors = 0u64;
    let mut bit_errors = 0u64;
    while frames < cfg.max_frames && frame_errors < cfg.min_frame_errors {
        let count = BATCH_FRAMES.min(cfg.max_frames - frames);
        let (fe, be) = pool.install(|| {
            (frames..frames + count)
                .into_par_iter()
                .map(|idx| {
                    let (err, bits) = prep.simulate_frame(&streams, &ch, idx);
                    (err as u64, bits)
                })
                .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
        });
        frames += count;
        frame_errors += fe;
        bit_errors += be;
    }
    point_from_counts(ebn0_db, frames, frame_errors, bit_errors, prep.payload_len)
}

/// Simulates a single Eb/N0 point.
pub fn run_point(cfg: &SimConfig, ebn0_db: f64) -> Result<PointResult> {
    let prep = prepare(cfg)?;
    let pool = build_pool(cfg.workers)?;
    Ok(run_point_prepared(cfg, &prep, &pool, ebn0_db))
}

/// Runs the full sweep. When `out_dir` is given, `<name>.csv` and
/// `<name>.json` are rewritten after every completed point, so interrupted
/// campaigns keep their finished rows.
pub fn run_campaign(cfg: &SimConfig, out_dir: Option<&FsPath>) -> Result<SimResult> {
    let prep = prepare(cfg)?;
    let pool = build_pool(cfg.workers)?;
    let mut result = SimResult {
        metadata: Metadata {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: cfg.clone(),
            construction: cfg.construction.to_string(),
            crc_polynomials: prep.specs.iter().map(|s| s.to_string()).collect(),
            payload_bits_per_frame: prep.payload_len,
            crc_disabled_partitions: prep.crc_disabled.clone(),
            seed: cfg.seed,
        },
        points: Vec::with_capacity(cfg.ebn0_db.len()),
    };
    let mut sweep = cfg.ebn0_db.clone();
    sweep.sort_by(f64::total_cmp);
    for ebn0 in sweep {
        let point = run_point_prepared(cfg, &prep, &pool, ebn0);
        result.points.push(point);
        if let Some(dir) = out_dir {
            emit_files(&result, dir)?;
        }
    }
    Ok(result)
}

fn build_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("failed to build worker pool: {e}")))
}

/// Writes `<name>.csv` and `<name>.json` into `dir`, returning the paths.
pub fn emit_files(result: &SimResult, dir: &FsPath) -> Result<(PathBuf, PathBuf)> {
    let csv_path = dir.join(format!("{}.csv", result.metadata.config.name));
    let json_path = dir.join(format!("{}.json", result.metadata.config.name));
    let mut csv = BufWriter::new(File::create(&csv_path)?);
    write_csv(result, &mut csv)?;
    csv.flush()?;
    let mut json = BufWriter::new(File::create(&json_path)?);
    serde_json::to_writer_pretty(&mut json, result)
        .map_err(|e| Error::Config(format!("json emit failed: {e}")))?;
    json.flush()?;
    Ok((csv_path, json_path))
}

/// CSV with a stable column order. Floats are printed with Rust's shortest
/// round-trip formatting, so parsing the file back recovers them exactly.
pub fn write_csv<W: Write>(result: &SimResult, mut w: W) -> Result<()> {
    writeln!(w, "ebn0_db,frames,frame_errors,bit_errors,fer,ber,ci95")?;
    for p in &result.points {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            p.ebn0_db, p.frames, p.frame_errors, p.bit_errors, p.fer, p.ber, p.ci95
        )?;
    }
    Ok(())
}

/// Parses a CSV produced by [`write_csv`].
pub fn parse_csv<R: BufRead>(reader: R) -> Result<Vec<PointResult>> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Config("empty CSV".into()))??;
    if header.trim() != "ebn0_db,frames,frame_errors,bit_errors,fer,ber,ci95" {
        return Err(Error::Config(format!("unexpected CSV header `{header}`")));
    }
    let mut out = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(Error::Config(format!("bad CSV row `{line}`")));
        }
        let parse_f = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::Config(format!("bad float `{s}`")))
        };
        let parse_u = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| Error::Config(format!("bad count `{s}`")))
        };
        out.push(PointResult {
            ebn0_db: parse_f(fields[0])?,
            frames: parse_u(fields[1])?,
            frame_errors: parse_u(fields[2])?,
            bit_errors: parse_u(fields[3])?,
            fer: parse_f(fields[4])?,
            ber: parse_f(fields[5])?,
            ci95: parse_f(fields[6])?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg(algo: DecoderKind) -> SimConfig {
        let mut cfg = SimConfig::new(64, 32, algo);
        cfg.ebn0_db = vec![2.0];
        cfg.min_frame_errors = 20;
        cfg.max_frames = 2000;
        cfg.seed = 5;
        cfg.name = "test".into();
        cfg
    }

    #[test]
    fn bounded_run_respects_max_frames() {
        let mut cfg = small_cfg(DecoderKind::Scl);
        cfg.list_size = 2;
        cfg.ebn0_db = vec![1.0];
        cfg.max_frames = 10;
        let point = run_point(&cfg, 1.0).unwrap();
        assert_eq!(point.frames, 10);
        assert!(point.fer <= 1.0);
        assert!(point.ber <= point.fer);
    }

    #[test]
    fn identical_seed_reproduces_results() {
        let cfg = small_cfg(DecoderKind::Sc);
        let a = run_point(&cfg, 2.0).unwrap();
        let b = run_point(&cfg, 2.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let mut cfg = small_cfg(DecoderKind::Scl);
        cfg.list_size = 2;
        cfg.crc = vec![CrcSpec::crc8()];
        cfg.workers = 1;
        let serial = run_point(&cfg, 1.5).unwrap();
        cfg.workers = 4;
        let parallel = run_point(&cfg, 1.5).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn noiseless_point_has_zero_fer() {
        let mut cfg = small_cfg(DecoderKind::Sc);
        cfg.max_frames = 16;
        let point = run_point(&cfg, 100.0).unwrap();
        assert_eq!(point.frame_errors, 0);
        assert_eq!(point.fer, 0.0);
        assert_eq!(point.ber, 0.0);
    }

    #[test]
    fn campaign_emits_rows_in_ascending_order_and_files() {
        let mut cfg = small_cfg(DecoderKind::Sc);
        cfg.ebn0_db = vec![3.0, 1.0];
        cfg.max_frames = 64;
        cfg.min_frame_errors = 5;
        let dir = tempfile::tempdir().unwrap();
        let result = run_campaign(&cfg, Some(dir.path())).unwrap();
        assert_eq!(result.points.len(), 2);
        assert!(result.points[0].ebn0_db < result.points[1].ebn0_db);
        let csv = std::fs::read_to_string(dir.path().join("test.csv")).unwrap();
        assert_eq!(csv.lines().count(), 3);
        let json = std::fs::read_to_string(dir.path().join("test.json")).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["metadata"]["seed"], 5);
        assert_eq!(parsed["points"].as_array().unwrap().len(), 2);
        assert_eq!(parsed["metadata"]["construction"], "gaussian-approximation");
    }

    #[test]
    fn csv_round_trips_all_numeric_fields_exactly() {
        let points = vec![
            PointResult {
                ebn0_db: 1.5,
                frames: 12345,
                frame_errors: 101,
                bit_errors: 777,
                fer: 101.0 / 12345.0,
                ber: 777.0 / (12345.0 * 992.0),
                ci95: 0.1 + 0.2,
            },
            PointResult {
                ebn0_db: -0.25,
                frames: 1,
                frame_errors: 0,
                bit_errors: 0,
                fer: 0.0,
                ber: 1e-300,
                ci95: f64::MIN_POSITIVE,
            },
        ];
        let result = SimResult {
            metadata: Metadata {
                version: "0".into(),
                config: small_cfg(DecoderKind::Sc),
                construction: "ga".into(),
                crc_polynomials: vec![],
                payload_bits_per_frame: 992,
                crc_disabled_partitions: vec![],
                seed: 0,
            },
            points: points.clone(),
        };
        let mut buf = Vec::new();
        write_csv(&result, &mut buf).unwrap();
        let back = parse_csv(buf.as_slice()).unwrap();
        assert_eq!(back, points);
    }

    #[test]
    fn empty_result_is_header_only_csv() {
        let result = SimResult {
            metadata: Metadata {
                version: "0".into(),
                config: small_cfg(DecoderKind::Sc),
                construction: "ga".into(),
                crc_polynomials: vec![],
                payload_bits_per_frame: 32,
                crc_disabled_partitions: vec![],
                seed: 0,
            },
            points: vec![],
        };
        let mut buf = Vec::new();
        write_csv(&result, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "ebn0_db,frames,frame_errors,bit_errors,fer,ber,ci95\n"
        );
    }

    #[test]
    fn confidence_interval_roughly_halves_when_errors_quadruple() {
        // Quadrupling the frame budget quadruples the error count (up to
        // sampling noise) and must roughly halve the confidence interval.
        let mut cfg = small_cfg(DecoderKind::Sc);
        cfg.min_frame_errors = u64::MAX;
        cfg.max_frames = 512;
        let small = run_point(&cfg, 1.0).unwrap();
        cfg.max_frames = 2048;
        let large = run_point(&cfg, 1.0).unwrap();
        let errors_ratio = large.frame_errors as f64 / small.frame_errors as f64;
        assert!(
            (3.0..=5.0).contains(&errors_ratio),
            "errors ratio {errors_ratio}"
        );
        let ratio = large.ci95 / small.ci95;
        assert!(
            (0.4..=0.6).contains(&ratio),
            "ci ratio {ratio} outside halving band"
        );
    }

    #[test]
    fn config_parsing_and_overrides() {
        let text = "\
# campaign description
n = 2048
k = 1024            # includes CRC bits
algo = pscl
list_size = 4
partitions = 4
crc = 8:07
ebn0_db = 1.0, 1.5, 2.0
seed = 99
name = pscl44
";
        let mut cfg = SimConfig::parse(text.as_bytes()).unwrap();
        assert_eq!(cfg.n, 2048);
        assert_eq!(cfg.k, 1024);
        assert_eq!(cfg.algo, DecoderKind::Pscl);
        assert_eq!(cfg.partitions, 4);
        assert_eq!(cfg.crc, vec![CrcSpec::crc8()]);
        assert_eq!(cfg.ebn0_db, vec![1.0, 1.5, 2.0]);
        assert_eq!(cfg.min_frame_errors, 100);
        assert_eq!(cfg.max_frames, 1_000_000);
        assert_eq!(cfg.seed, 99);
        assert_eq!(cfg.name, "pscl44");

        cfg.apply_override("ebn0_db", "2.5").unwrap();
        assert_eq!(cfg.ebn0_db, vec![2.5]);
        assert!(cfg.apply_override("bogus", "1").is_err());
        assert!(cfg.apply_override("n", "abc").is_err());

        assert!(SimConfig::parse("n = 8\n".as_bytes()).is_err());
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut cfg = small_cfg(DecoderKind::Sc);
        cfg.crc = vec![CrcSpec::crc8()];
        assert!(run_point(&cfg, 1.0).is_err());

        let mut cfg = small_cfg(DecoderKind::Scl);
        cfg.crc = vec![CrcSpec::crc8(), CrcSpec::crc8()];
        assert!(run_point(&cfg, 1.0).is_err());

        let mut cfg = small_cfg(DecoderKind::Pscl);
        cfg.partitions = 2;
        cfg.crc = vec![CrcSpec::crc8(), CrcSpec::crc8(), CrcSpec::crc8()];
        assert!(run_point(&cfg, 1.0).is_err());

        let mut cfg = small_cfg(DecoderKind::Sc);
        cfg.ebn0_db.clear();
        assert!(run_campaign(&cfg, None).is_err());

        let mut cfg = small_cfg(DecoderKind::Sc);
        cfg.max_frames = 0;
        assert!(run_point(&cfg, 1.0).is_err());
    }

    #[test]
    fn disabled_partition_crcs_are_recorded_in_metadata() {
        // Partition 0 of the (64, 32) code at 2 dB has exactly 8 info bits,
        // so a requested CRC-8 gets disabled there.
        let mut cfg = small_cfg(DecoderKind::Pscl);
        cfg.partitions = 2;
        cfg.list_size = 2;
        cfg.crc = vec![CrcSpec::crc8()];
        cfg.max_frames = 8;
        let result = run_campaign(&cfg, None).unwrap();
        assert_eq!(result.metadata.crc_disabled_partitions, vec![0]);
        assert_eq!(result.metadata.payload_bits_per_frame, 32 - 8);
    }

    #[test]
    fn fer_is_non_increasing_across_ascending_sweep() {
        // Statistical sanity: with at least 100 errors per row the FER curve
        // must come out monotone over a well-separated sweep.
        let mut cfg = SimConfig::new(256, 128, DecoderKind::Sc);
        cfg.ebn0_db = vec![2.5, 0.5, 1.5];
        cfg.min_frame_errors = 100;
        cfg.max_frames = 200_000;
        cfg.seed = 8;
        let result = run_campaign(&cfg, None).unwrap();
        assert_eq!(result.points.len(), 3);
        for pair in result.points.windows(2) {
            assert!(pair[0].frame_errors >= 100);
            assert!(pair[1].frame_errors >= 100);
            assert!(
                pair[1].fer <= pair[0].fer,
                "fer rose from {} to {}",
                pair[0].fer,
                pair[1].fer
            );
        }
    }

    #[test]
    fn ber_is_bounded_by_fer() {
        let mut cfg = small_cfg(DecoderKind::Scl);
        cfg.list_size = 2;
        cfg.min_frame_errors = 15;
        let point = run_point(&cfg, 0.5).unwrap();
        assert!(point.frame_errors > 0);
        assert!(point.ber <= point.fer);
        assert!(point.ber > 0.0);
    }
}
