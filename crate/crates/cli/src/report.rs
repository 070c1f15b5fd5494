use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::CliError;
use crate::input::InputDigest;

pub const SCHEMA: &str = "entroplex.report/v1";

#[derive(Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

/// Envelope for every command's output. `timing` is the only field allowed
/// to differ between two runs with the same inputs and seed.
#[derive(Serialize)]
pub struct ReportDocument<R: Serialize> {
    pub schema: &'static str,
    pub tool: Tool,
    pub command: &'static str,
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
    pub results: R,
    pub timing: Timing,
}

#[derive(Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

impl<R: Serialize> ReportDocument<R> {
    pub fn new(
        command: &'static str,
        inputs: Vec<InputDigest>,
        seed: Option<u64>,
        results: R,
        elapsed: std::time::Duration,
    ) -> Self {
        Self {
            schema: SCHEMA,
            tool: Tool {
                name: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
            },
            command,
            inputs,
            seed,
            results,
            timing: Timing {
                elapsed_ms: elapsed.as_secs_f64() * 1e3,
            },
        }
    }
}

fn write_to(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

/// Pretty JSON to `path`, or stdout.
pub fn emit<R: Serialize>(doc: &ReportDocument<R>, path: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc).expect("report types serialize");
    text.push('\n');
    write_to(path, text.as_bytes())
}

/// Decimal rendering with 12 significant digits and no exponent.
pub fn fmt_sig12(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).clamp(0, 40) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut text = header.join(",");
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    write_to(Some(path), text.as_bytes())
}
