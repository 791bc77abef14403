//! Frame-file formats: ASCII bit frames (one line of 0/1 characters per
//! frame) and ASCII LLR frames (one line of space-separated reals).

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};

pub fn read_bit_frames(path: &Path) -> Result<Vec<Vec<u8>>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut frames = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut frame = Vec::with_capacity(line.len());
        for ch in line.chars() {
            match ch {
                '0' => frame.push(0u8),
                '1' => frame.push(1u8),
                other => bail!(
                    "{}:{}: invalid bit character `{other}`",
                    path.display(),
                    lineno + 1
                ),
            }
        }
        frames.push(frame);
    }
    Ok(frames)
}

pub fn write_bit_frames(path: &Path, frames: &[Vec<u8>]) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    for frame in frames {
        let line: String = frame
            .iter()
            .map(|&b| if b == 0 { '0' } else { '1' })
            .collect();
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_llr_frames(path: &Path) -> Result<Vec<Vec<f64>>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut frames = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut frame = Vec::new();
        for token in line.split_whitespace() {
            let value: f64 = token
                .parse()
                .with_context(|| format!("{}:{}: bad LLR `{token}`", path.display(), lineno + 1))?;
            if !value.is_finite() {
                bail!(
                    "{}:{}: non-finite LLR `{token}`",
                    path.display(),
                    lineno + 1
                );
            }
            frame.push(value);
        }
        frames.push(frame);
    }
    Ok(frames)
}
