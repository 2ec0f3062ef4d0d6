//! Deterministic artifact writing: JSON reports with stable key order,
//! RFC-4180-style CSV with '.' decimal separator and a header row, and the
//! run manifest with a sha256 per emitted file.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::spectral::SpectralEvaluation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

/// Shortest round-trip decimal representation; locale-independent.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// Pretty JSON plus trailing newline. Struct field order is declaration
/// order and maps are BTreeMaps, so bytes are stable across runs.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Numerical(format!("serialization failed: {e}")))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Header row plus data rows. Fields never contain commas or quotes, so no
/// quoting is required.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "{}", header.join(","))?;
    for row in rows {
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()?;
    Ok(())
}

/// (lambda, value) pairs of spectral evaluations.
pub fn write_spectral_csv(path: &Path, evals: &[SpectralEvaluation]) -> Result<()> {
    let rows: Vec<Vec<String>> = evals
        .iter()
        .map(|e| vec![fmt_f64(e.lambda), fmt_f64(e.value)])
        .collect();
    write_csv(path, &["lambda", "value"], &rows)
}

pub fn sha256_hex(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path)?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(hex_string(&hasher.finalize()))
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Serialize)]
struct ManifestEntry {
    file: String,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    config: &'a serde_json::Value,
    seeds: crate::experiments::SeedsEcho,
    artifacts: Vec<ManifestEntry>,
}

/// Write `manifest.json` listing every artifact with its content hash.
/// Returns the manifest path.
pub fn write_manifest(
    out_dir: &Path,
    config_echo: &serde_json::Value,
    seeds: crate::experiments::SeedsEcho,
    artifacts: &[PathBuf],
) -> Result<PathBuf> {
    let mut entries = Vec::with_capacity(artifacts.len());
    for p in artifacts {
        let name = p
            .file_name()
            .and_then(|n| n.to_str())
            .ok_or_else(|| Error::Config(format!("artifact path {} has no name", p.display())))?
            .to_string();
        entries.push(ManifestEntry {
            file: name,
            sha256: sha256_hex(p)?,
        });
    }
    entries.sort_by(|a, b| a.file.cmp(&b.file));
    let manifest = Manifest {
        config: config_echo,
        seeds,
        artifacts: entries,
    };
    let path = out_dir.join("manifest.json");
    write_json(&path, &manifest)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_bytes_are_stable() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        let rows = vec![vec![fmt_f64(0.1 + 0.2), fmt_f64(1.0)]];
        write_csv(&p, &["a", "b"], &rows).unwrap();
        let first = std::fs::read(&p).unwrap();
        write_csv(&p, &["a", "b"], &rows).unwrap();
        assert_eq!(first, std::fs::read(&p).unwrap());
        let text = String::from_utf8(first).unwrap();
        assert_eq!(text, "a,b\n0.30000000000000004,1\n");
    }

    #[test]
    fn manifest_lists_hashes() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("data.csv");
        std::fs::write(&f, "x\n1\n").unwrap();
        let echo = serde_json::json!({"kind": "test"});
        let seeds = crate::experiments::SeedsEcho {
            master_seed: 1,
            stream_id: 2,
        };
        let m = write_manifest(dir.path(), &echo, seeds, std::slice::from_ref(&f)).unwrap();
        let text = std::fs::read_to_string(m).unwrap();
        assert!(text.contains("data.csv"));
        assert!(text.contains(&sha256_hex(&f).unwrap()));
    }
}
