//! Writing enumeration results to disk.
//!
//! A census directory holds `manifest.json`, `summary.csv` (`size,count`)
//! and one code file per written class. Code files carry no timing data, so
//! reruns with the same parameters reproduce them byte for byte.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::canon::{Equivalence, CERTIFICATE_VERSION};
use crate::error::{Error, Result};
use crate::search::{ClassRecord, EnumerationResult, Mode};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex digits of the certificate digest used in file names.
const NAME_DIGEST_LEN: usize = 16;

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub tool_version: String,
    pub certificate_version: u8,
    pub status: Status,
    pub degree: usize,
    pub min_distance: usize,
    pub mode: Mode,
    pub equivalence: Equivalence,
    pub maximal_only: bool,
    pub classes: usize,
    pub maximal: usize,
    pub counts_by_size: BTreeMap<usize, u64>,
    pub maximal_counts_by_size: BTreeMap<usize, u64>,
    pub files: Vec<String>,
    pub nodes: u64,
    pub wall_time_seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "state", rename_all = "kebab-case")]
pub enum Status {
    Complete,
    /// The run hit a resource cap; counts are partial and must not be
    /// read as a census.
    Aborted {
        reason: String,
        nodes: u64,
        classes_so_far: usize,
    },
}

/// File name of a class: zero-padded size, then a digest prefix.
pub fn class_file_name(record: &ClassRecord) -> String {
    format!("{:03}-{}.code", record.code.len(), &record.certificate.digest()[..NAME_DIGEST_LEN])
}

fn class_file_body(record: &ClassRecord) -> String {
    format!(
        "# certificate-version {}\n# certificate-sha256 {}\n# stabilizer-order {}\n# maximal {}\n{}",
        CERTIFICATE_VERSION,
        record.certificate.digest(),
        record.stabilizer_order,
        record.maximal,
        record.code.to_text()
    )
}

/// Rows of `summary.csv`: class counts by size, maximal ones only if
/// `maximal_only`.
pub fn summary_csv(result: &EnumerationResult, maximal_only: bool) -> String {
    let counts = if maximal_only { result.maximal_counts_by_size() } else { result.counts_by_size() };
    let mut out = String::from("size,count\n");
    for (size, count) in counts {
        out.push_str(&format!("{size},{count}\n"));
    }
    out
}

pub fn manifest(result: &EnumerationResult, maximal_only: bool, files: Vec<String>) -> Manifest {
    Manifest {
        tool_version: TOOL_VERSION.into(),
        certificate_version: CERTIFICATE_VERSION,
        status: Status::Complete,
        degree: result.degree,
        min_distance: result.min_distance,
        mode: result.mode.clone(),
        equivalence: result.equivalence,
        maximal_only,
        classes: result.total(),
        maximal: result.maximal_count(),
        counts_by_size: result.counts_by_size(),
        maximal_counts_by_size: result.maximal_counts_by_size(),
        files,
        nodes: result.nodes,
        wall_time_seconds: result.wall_time.as_secs_f64(),
    }
}

/// Writes a complete census into `dir`, creating it if needed. Returns the
/// paths of the written code files.
pub fn write_census(dir: &Path, result: &EnumerationResult, maximal_only: bool) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    let mut names = Vec::new();
    for record in result.classes.iter().filter(|c| c.maximal || !maximal_only) {
        let name = class_file_name(record);
        let path = dir.join(&name);
        fs::write(&path, class_file_body(record))?;
        names.push(name);
        paths.push(path);
    }
    fs::write(dir.join("summary.csv"), summary_csv(result, maximal_only))?;
    let m = manifest(result, maximal_only, names);
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&m)? + "\n")?;
    Ok(paths)
}

/// Records an aborted run in `dir/manifest.json` so that a partial run can
/// never be mistaken for a census.
pub fn write_aborted(
    dir: &Path,
    degree: usize,
    min_distance: usize,
    mode: Mode,
    equivalence: Equivalence,
    error: &Error,
) -> Result<()> {
    fs::create_dir_all(dir)?;
    let (nodes, classes_so_far, seconds) = match error {
        Error::ResourceCap { nodes, classes, seconds } => (*nodes, *classes, *seconds),
        _ => (0, 0, 0.0),
    };
    let m = Manifest {
        tool_version: TOOL_VERSION.into(),
        certificate_version: CERTIFICATE_VERSION,
        status: Status::Aborted { reason: error.to_string(), nodes, classes_so_far },
        degree,
        min_distance,
        mode,
        equivalence,
        maximal_only: false,
        classes: 0,
        maximal: 0,
        counts_by_size: BTreeMap::new(),
        maximal_counts_by_size: BTreeMap::new(),
        files: Vec::new(),
        nodes,
        wall_time_seconds: seconds,
    };
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&m)? + "\n")?;
    Ok(())
}
