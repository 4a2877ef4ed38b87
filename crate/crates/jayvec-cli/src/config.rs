//! Job-file schema and report types.
//!
//! One JSON document in, one JSON document out: a job names an operator
//! matrix, optionally a cutting plane, and numeric parameters; reports are
//! plain JSON on stdout so runs can be piped (`solve` output feeds
//! `verify` unchanged).

use jayvec::planewave::WaveSolution;
use jayvec::{Mat3, Vec3};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Parsed `--input` document.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    /// Optional command name; used when no subcommand is given on the
    /// command line.
    pub command: Option<String>,
    /// Row-major operator matrix.
    pub matrix: Option<[[f64; 3]; 3]>,
    /// Spanning pair of the section plane (orthonormalized on load).
    pub frame: Option<FrameSpec>,
    #[serde(default)]
    pub params: Params,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameSpec {
    pub m: [f64; 3],
    pub n: [f64; 3],
}

/// Numeric job parameters; all optional with documented defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Wave number (default 1).
    pub t: Option<f64>,
    /// Amplitude of the cos/cosh/exponential part (default 1).
    pub amp_plus: Option<f64>,
    /// Amplitude of the sin/sinh part (default 0).
    pub amp_minus: Option<f64>,
    /// CSD sweep phase (default 0 = principal axes).
    pub psi: Option<f64>,
    /// Residual sample-point count (default 100).
    pub samples: Option<usize>,
    /// RNG seed for sample points (default 0).
    pub seed: Option<u64>,
    /// Euler angles (roll, pitch, yaw) selecting the ellipsoid CSD triad
    /// (default identity).
    pub rotation: Option<[f64; 3]>,
    /// Pseudo-rotation word selecting the hyperboloid CSD triad, applied
    /// left to right (default identity).
    pub boosts: Option<Vec<BoostStep>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoostStep {
    /// Fixed axis of the generator: "x", "y", or "z" (or "1".."3").
    pub axis: String,
    pub theta: f64,
}

impl JobConfig {
    pub fn require_matrix(&self) -> Result<Mat3, CliError> {
        let rows = self
            .matrix
            .ok_or_else(|| CliError::Config("job file is missing \"matrix\"".into()))?;
        Ok(jayvec::serde_util::mat3_from_rows(rows))
    }

    pub fn frame_vectors(&self) -> Option<(Vec3, Vec3)> {
        self.frame.as_ref().map(|f| {
            (
                jayvec::serde_util::vec3_from_array(f.m),
                jayvec::serde_util::vec3_from_array(f.n),
            )
        })
    }
}

/// Everything `verify` needs to recheck a `solve` run: the solution, the
/// residuals claimed for it, the matrix they were measured against, and
/// the seed/count that regenerate the identical sample points.
#[derive(Debug, Serialize, Deserialize)]
pub struct SolveReport {
    #[serde(flatten)]
    pub solution: WaveSolution,
    pub residual_analytic: f64,
    pub residual_fd: f64,
    #[serde(with = "jayvec::serde_util::mat3")]
    pub matrix: Mat3,
    pub seed: u64,
    pub samples: usize,
    pub operator_class: String,
    pub section_class: String,
    /// Sign applied to the input operator during normalization.
    pub sign: f64,
}

pub fn read_to_string(path: &str) -> Result<String, CliError> {
    if path == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Config(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {path}: {e}")))
    }
}

pub fn parse_job(text: &str) -> Result<JobConfig, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("malformed job JSON: {e}")))
}

pub fn write_report(path: &str, report: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| CliError::Config(format!("cannot serialize report: {e}")))?;
    text.push('\n');
    if path == "-" {
        use std::io::Write;
        std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Config(format!("cannot write stdout: {e}")))
    } else {
        std::fs::write(path, text)
            .map_err(|e| CliError::Config(format!("cannot write {path}: {e}")))
    }
}
