//! `polar` — construct polar codes, encode/decode frames, evaluate decoder
//! memory footprints and run Monte-Carlo FER/BER campaigns.

mod io;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use polar::construction::{
    construct_with_method, partition_layout, read_code_file, write_code_file, ConstructionMethod,
    PolarCode,
};
use polar::crc::CrcSpec;
use polar::decode::{pscl_decode, sc_decode, scl_decode, PsclConfig};
use polar::memory::{format_bit_count, sweep, QuantSpec};
use polar::sim::{run_campaign, SimConfig};

#[derive(Parser)]
#[command(name = "polar", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a polar code and write its frozen set to a code file.
    Construct(ConstructArgs),
    /// Codec operations on frame files.
    #[command(subcommand)]
    Codec(CodecCommand),
    /// Decode LLR frames with SC, SCL or PSCL.
    Decode(DecodeArgs),
    /// Evaluate the decoder memory models over a (P, L) grid.
    Memory(MemoryArgs),
    /// Run a Monte-Carlo FER/BER campaign from a config file.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Design Eb/N0 in dB.
    #[arg(long = "design-snr")]
    design_snr: f64,
    /// Reliability ranking method.
    #[arg(long, value_enum, default_value_t = Method::Ga)]
    method: Method,
    /// Output code file (`N K design_snr_db` + sorted frozen indices).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Ga,
    Bhattacharyya,
}

impl From<Method> for ConstructionMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Ga => ConstructionMethod::GaussianApproximation,
            Method::Bhattacharyya => ConstructionMethod::Bhattacharyya,
        }
    }
}

#[derive(Subcommand)]
enum CodecCommand {
    /// Encode input frames (length-N u vectors, frozen positions zero).
    Encode(CodecEncodeArgs),
}

#[derive(Args)]
struct CodecEncodeArgs {
    /// Code file produced by `construct`.
    #[arg(long)]
    code: PathBuf,
    /// Input bit file, one frame of N 0/1 characters per line.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output bit file of codewords.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Sc,
    Scl,
    Pscl,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    /// Code file produced by `construct`.
    #[arg(long)]
    code: PathBuf,
    /// List size L (scl and pscl).
    #[arg(long, default_value_t = 1)]
    list: usize,
    /// Partition count P (pscl only).
    #[arg(long, default_value_t = 1)]
    partitions: usize,
    /// CRC spec `width:polyhex[:inithex]`, or a comma list with one entry
    /// per partition; `0:0` disables.
    #[arg(long)]
    crc: Option<String>,
    /// Input LLR file, one frame of N space-separated reals per line.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output bit file of leaf decisions û.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MemoryArgs {
    #[arg(long)]
    n: usize,
    /// Bits per stored LLR.
    #[arg(long, default_value_t = 6)]
    qalpha: u32,
    /// Bits per stored path metric.
    #[arg(long, default_value_t = 8)]
    qpm: u32,
    /// Comma-separated list sizes.
    #[arg(long, value_delimiter = ',', default_value = "2,4")]
    list: Vec<usize>,
    /// Comma-separated partition counts.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
    partitions: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Args)]
struct SimulateArgs {
    /// Campaign config file (flat `key = value` lines).
    #[arg(long)]
    config: PathBuf,
    /// Override a config key, repeatable (`--override seed=7`).
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Directory for `<name>.csv` / `<name>.json` (default: current dir).
    #[arg(long = "out-dir", default_value = ".")]
    out_dir: PathBuf,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Codec(CodecCommand::Encode(args)) => cmd_encode(args),
        Command::Decode(args) => cmd_decode(args),
        Command::Memory(args) => cmd_memory(args),
        Command::Simulate(args) => cmd_simulate(args),
    }
}

fn cmd_construct(args: ConstructArgs) -> Result<()> {
    let code = construct_with_method(args.n, args.k, args.design_snr, args.method.into())?;
    let file =
        File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let mut w = BufWriter::new(file);
    write_code_file(&code, &mut w)?;
    w.flush()?;
    Ok(())
}

fn load_code(path: &PathBuf) -> Result<PolarCode> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(read_code_file(BufReader::new(file))?)
}

fn cmd_encode(args: CodecEncodeArgs) -> Result<()> {
    let code = load_code(&args.code)?;
    let frames = io::read_bit_frames(&args.input)?;
    let mut out = Vec::with_capacity(frames.len());
    for (idx, u) in frames.iter().enumerate() {
        if u.len() != code.blocklength() {
            bail!(
                "frame {}: length {} does not match N = {}",
                idx + 1,
                u.len(),
                code.blocklength()
            );
        }
        if let Some(pos) = code.frozen_indices().iter().find(|&&i| u[i] != 0) {
            bail!("frame {}: frozen position {pos} is not zero", idx + 1);
        }
        out.push(polar::codec::encode(u)?);
    }
    io::write_bit_frames(&args.out, &out)?;
    Ok(())
}

fn parse_crc_list(raw: Option<&str>, partitions: usize) -> Result<Vec<CrcSpec>> {
    let Some(raw) = raw else {
        return Ok(Vec::new());
    };
    let specs = raw
        .split(',')
        .map(|t| t.trim().parse::<CrcSpec>())
        .collect::<polar::Result<Vec<_>>>()?;
    if specs.len() == 1 && partitions > 1 {
        return Ok(vec![specs[0].clone(); partitions]);
    }
    if specs.len() != partitions {
        bail!("expected 1 or {partitions} CRC specs, got {}", specs.len());
    }
    Ok(specs)
}

fn cmd_decode(args: DecodeArgs) -> Result<()> {
    let code = load_code(&args.code)?;
    let frames = io::read_llr_frames(&args.input)?;
    for (idx, llrs) in frames.iter().enumerate() {
        if llrs.len() != code.blocklength() {
            bail!(
                "frame {}: {} LLRs but N = {}",
                idx + 1,
                llrs.len(),
                code.blocklength()
            );
        }
    }
    let decoded: Vec<Vec<u8>> = match args.algo {
        Algo::Sc => {
            if args.crc.is_some() {
                bail!("sc does not take a CRC");
            }
            frames.iter().map(|llrs| sc_decode(&code, llrs)).collect()
        }
        Algo::Scl => {
            let specs = parse_crc_list(args.crc.as_deref(), 1)?;
            let spec = specs.first().filter(|s| !s.is_disabled());
            warn_disabled_crcs(&code, 1, &specs)?;
            frames
                .iter()
                .map(|llrs| scl_decode(&code, llrs, args.list, spec))
                .collect()
        }
        Algo::Pscl => {
            let specs = parse_crc_list(args.crc.as_deref(), args.partitions)?;
            warn_disabled_crcs(&code, args.partitions, &specs)?;
            let cfg = PsclConfig {
                partitions: args.partitions,
                list_size: args.list,
                crc: specs,
            };
            frames
                .iter()
                .map(|llrs| pscl_decode(&code, llrs, &cfg))
                .collect::<polar::Result<_>>()?
        }
    };
    io::write_bit_frames(&args.out, &decoded)?;
    Ok(())
}

fn warn_disabled_crcs(code: &PolarCode, partitions: usize, specs: &[CrcSpec]) -> Result<()> {
    if specs.is_empty() {
        return Ok(());
    }
    let widths: Vec<usize> = specs.iter().map(|s| s.width).collect();
    let layout = partition_layout(code, partitions, &widths)?;
    for &p in layout.crc_disabled() {
        eprintln!(
            "warning: partition {p} has only {} info bits, CRC-{} disabled",
            layout.info_count(p),
            widths[p]
        );
    }
    Ok(())
}

fn cmd_memory(args: MemoryArgs) -> Result<()> {
    for &p in &args.partitions {
        if !p.is_power_of_two() || p > args.n {
            bail!("partition count {p} must be a power of two ≤ N");
        }
    }
    let q = QuantSpec::new(args.qalpha, args.qpm);
    let reports = sweep(args.n, &args.partitions, &args.list, q);
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            [
                r.algorithm.to_string(),
                format_bit_count(r.alpha_bits()),
                format_bit_count(r.pm_bits()),
                format_bit_count(r.beta_bits()),
                format_bit_count(&r.total_bits()),
            ]
        })
        .collect();
    let header = [
        "algorithm",
        "alpha_bits",
        "pm_bits",
        "beta_bits",
        "total_bits",
    ];
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    match args.format {
        Format::Csv => {
            writeln!(w, "{}", header.join(","))?;
            for row in &rows {
                writeln!(w, "{}", row.join(","))?;
            }
        }
        Format::Table => {
            let mut widths = header.map(str::len);
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            writeln!(
                w,
                "{:<w0$}  {:>w1$}  {:>w2$}  {:>w3$}  {:>w4$}",
                header[0],
                header[1],
                header[2],
                header[3],
                header[4],
                w0 = widths[0],
                w1 = widths[1],
                w2 = widths[2],
                w3 = widths[3],
                w4 = widths[4]
            )?;
            for row in &rows {
                writeln!(
                    w,
                    "{:<w0$}  {:>w1$}  {:>w2$}  {:>w3$}  {:>w4$}",
                    row[0],
                    row[1],
                    row[2],
                    row[3],
                    row[4],
                    w0 = widths[0],
                    w1 = widths[1],
                    w2 = widths[2],
                    w3 = widths[3],
                    w4 = widths[4]
                )?;
            }
        }
    }
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> Result<()> {
    let file =
        File::open(&args.config).with_context(|| format!("opening {}", args.config.display()))?;
    let mut cfg = SimConfig::parse(BufReader::new(file))?;
    for entry in &args.overrides {
        let (key, value) = entry
            .split_once('=')
            .with_context(|| format!("override `{entry}` is not KEY=VALUE"))?;
        cfg.apply_override(key.trim(), value.trim())?;
    }
    eprintln!(
        "simulating {} at {} points (seed {}, stopping at {} frame errors or {} frames)",
        cfg.name,
        cfg.ebn0_db.len(),
        cfg.seed,
        cfg.min_frame_errors,
        cfg.max_frames
    );
    let result = run_campaign(&cfg, Some(&args.out_dir))?;
    for &p in &result.metadata.crc_disabled_partitions {
        eprintln!("warning: CRC disabled on partition {p} (too few info bits)");
    }
    println!("ebn0_db,frames,frame_errors,bit_errors,fer,ber,ci95");
    for point in &result.points {
        println!(
            "{},{},{},{},{},{},{}",
            point.ebn0_db,
            point.frames,
            point.frame_errors,
            point.bit_errors,
            point.fer,
            point.ber,
            point.ci95
        );
    }
    eprintln!(
        "wrote {}.csv and {}.json in {}",
        cfg.name,
        cfg.name,
        args.out_dir.display()
    );
    Ok(())
}
