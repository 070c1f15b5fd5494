//! JSON input documents. Complex entries are `[re, im]` pairs; matrices are
//! lists of rows.
//!
//! ```json
//! {"unitary": [[[1,0],[0,0]], [[0,0],[1,0]]]}          basis, columns are vectors
//! {"dim": 2, "elements": [M0, M1, ...]}                POVM
//! {"dims": [2, 2], "data": M}                          state
//! {"kraus": [K0, K1, ...]}                             channel
//! ```
//!
//! Measurements and channels may also be named inline: `computational:<d>`,
//! `fourier:<d>`, `identity:<d>`, `depolarizing:<d>`, `dephasing:<d>`.

use std::path::Path;

use entroplex::linalg::ComplexMatrix;
use entroplex::quantum::{DensityMatrix, KrausChannel, OrthonormalBasis, Povm};
use num_complex::Complex64;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Context};

type RawMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub dim: Option<usize>,
    pub dims: Option<Vec<usize>>,
    pub data: Option<RawMatrix>,
    pub unitary: Option<RawMatrix>,
    pub elements: Option<Vec<RawMatrix>>,
    pub kraus: Option<Vec<RawMatrix>>,
}

/// Where an input came from, for the report.
#[derive(Clone, Debug, serde::Serialize)]
pub struct InputDigest {
    pub role: String,
    pub source: String,
    pub sha256: String,
}

fn digest(role: &str, source: &str, bytes: &[u8]) -> InputDigest {
    InputDigest {
        role: role.to_string(),
        source: source.to_string(),
        sha256: hex::encode(Sha256::digest(bytes)),
    }
}

/// Parses a document from text. Errors carry serde's line and column.
pub fn parse_document(text: &str, origin: &str) -> Result<MatrixDocument, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::parse(origin, e.to_string()))
}

fn to_matrix(raw: &RawMatrix, origin: &str, what: &str) -> Result<ComplexMatrix, CliError> {
    let rows = raw.len();
    let cols = raw.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(CliError::parse(origin, format!("{what} is empty")));
    }
    if let Some(i) = raw.iter().position(|r| r.len() != cols) {
        return Err(CliError::parse(
            origin,
            format!(
                "{what}: row {i} has {} entries, row 0 has {cols}",
                raw[i].len()
            ),
        ));
    }
    let flat: Vec<Complex64> = raw
        .iter()
        .flatten()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    ComplexMatrix::from_vec(rows, cols, flat).context(format!("{origin}: {what}"))
}

fn named(spec: &str) -> Option<(&str, Result<usize, CliError>)> {
    let (name, d) = spec.split_once(':')?;
    let d =
        d.parse::<usize>().ok().filter(|&d| d > 0).ok_or_else(|| {
            CliError::Usage(format!("`{spec}`: dimension must be a positive integer"))
        });
    Some((name, d))
}

fn read(path: &str, role: &str) -> Result<(MatrixDocument, InputDigest), CliError> {
    let bytes = std::fs::read(Path::new(path)).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CliError::parse(path, e.to_string()))?;
    Ok((parse_document(text, path)?, digest(role, path, &bytes)))
}

fn builtin_digest(role: &str, spec: &str) -> InputDigest {
    digest(role, spec, spec.as_bytes())
}

/// A measurement: a basis document, a POVM document, or a named basis.
pub fn load_measurement(spec: &str, role: &str) -> Result<(Povm, InputDigest), CliError> {
    if let Some((name, d)) = named(spec) {
        let basis = named_basis(spec, name, d?)?;
        return Ok((Povm::from_basis(&basis), builtin_digest(role, spec)));
    }
    let (doc, dig) = read(spec, role)?;
    Ok((measurement_from_document(&doc, spec)?, dig))
}

pub fn measurement_from_document(doc: &MatrixDocument, origin: &str) -> Result<Povm, CliError> {
    match (&doc.unitary, &doc.elements) {
        (Some(u), None) => Ok(Povm::from_basis(&basis_from_raw(u, origin)?)),
        (None, Some(elements)) => {
            let mats = elements
                .iter()
                .enumerate()
                .map(|(j, e)| to_matrix(e, origin, &format!("element {j}")))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(d) = doc.dim {
                if let Some(j) = mats.iter().position(|m| m.rows() != d || m.cols() != d) {
                    return Err(CliError::parse(
                        origin,
                        format!("element {j} does not match declared dim {d}"),
                    ));
                }
            }
            Povm::new(mats).context(format!("{origin}: POVM"))
        }
        _ => Err(CliError::parse(
            origin,
            "a measurement needs exactly one of \"unitary\" or \"elements\"",
        )),
    }
}

fn basis_from_raw(raw: &RawMatrix, origin: &str) -> Result<OrthonormalBasis, CliError> {
    OrthonormalBasis::new(to_matrix(raw, origin, "unitary")?).context(format!("{origin}: basis"))
}

fn named_basis(spec: &str, name: &str, d: usize) -> Result<OrthonormalBasis, CliError> {
    match name {
        "computational" => Ok(OrthonormalBasis::computational(d)),
        "fourier" => Ok(OrthonormalBasis::fourier(d)),
        _ => Err(CliError::Usage(format!(
            "`{spec}`: unknown basis, expected computational:<d> or fourier:<d>"
        ))),
    }
}

/// An orthonormal basis: a `unitary` document or a named basis.
pub fn load_basis(spec: &str, role: &str) -> Result<(OrthonormalBasis, InputDigest), CliError> {
    if let Some((name, d)) = named(spec) {
        return Ok((named_basis(spec, name, d?)?, builtin_digest(role, spec)));
    }
    let (doc, dig) = read(spec, role)?;
    let u = doc.unitary.as_ref().ok_or_else(|| {
        CliError::parse(spec, "expected a basis document with a \"unitary\" field")
    })?;
    Ok((basis_from_raw(u, spec)?, dig))
}

pub fn load_state(path: &str, role: &str) -> Result<(DensityMatrix, InputDigest), CliError> {
    let (doc, dig) = read(path, role)?;
    Ok((state_from_document(&doc, path)?, dig))
}

pub fn state_from_document(doc: &MatrixDocument, origin: &str) -> Result<DensityMatrix, CliError> {
    let raw = doc.data.as_ref().ok_or_else(|| {
        CliError::parse(origin, "expected a state document with a \"data\" field")
    })?;
    let m = to_matrix(raw, origin, "data")?;
    let dims = match (&doc.dims, doc.dim) {
        (Some(dims), _) => dims.clone(),
        (None, Some(d)) => vec![d],
        (None, None) => vec![m.rows()],
    };
    if dims.iter().product::<usize>() != m.rows() || m.rows() != m.cols() {
        return Err(CliError::parse(
            origin,
            format!(
                "dims {dims:?} do not match a {}x{} matrix",
                m.rows(),
                m.cols()
            ),
        ));
    }
    DensityMatrix::new(m, dims).context(format!("{origin}: state"))
}

/// A channel: a `kraus` document or a named channel.
pub fn load_channel(spec: &str, role: &str) -> Result<(KrausChannel, InputDigest), CliError> {
    if let Some((name, d)) = named(spec) {
        let d = d?;
        let ch = match name {
            "identity" => KrausChannel::identity(d),
            "depolarizing" => KrausChannel::fully_depolarizing(d),
            "dephasing" => KrausChannel::dephasing(d),
            _ => {
                return Err(CliError::Usage(format!(
                    "`{spec}`: unknown channel, expected identity, depolarizing or dephasing"
                )))
            }
        };
        return Ok((ch, builtin_digest(role, spec)));
    }
    let (doc, dig) = read(spec, role)?;
    let ops = doc
        .kraus
        .as_ref()
        .ok_or_else(|| CliError::parse(spec, "expected a channel document with a \"kraus\" field"))?
        .iter()
        .enumerate()
        .map(|(i, k)| to_matrix(k, spec, &format!("Kraus operator {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((
        KrausChannel::new(ops).context(format!("{spec}: channel"))?,
        dig,
    ))
}
