//! Result files. Every file is written to a `.tmp` sibling and renamed
//! into place, so readers never see a partial file.
//!
//! Floats are written as `{:.16e}` (17 significant digits), which reads
//! back to the identical `f64`.

use std::path::{Path, PathBuf};

use super::{PhaseDiagramResult, RunManifest, StabilityResult};
use crate::error::{Error, Result};
use crate::recovery::Selector;

pub const PHASE_HEADER: [&str; 7] = [
    "selector",
    "k",
    "s",
    "trials",
    "successes",
    "probability",
    "failures_numerical",
];
pub const STABILITY_HEADER: [&str; 4] = ["delta", "trials", "median_error", "ratio"];

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes `bytes` to `path` through a temporary sibling.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        Error::io(path, e)
    })
}

fn csv_bytes(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    w.into_inner().expect("in-memory csv")
}

/// Reads a CSV whose header must equal `header` exactly.
fn read_csv(path: &Path, header: &[&str]) -> Result<Vec<csv::StringRecord>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    let got = r.headers().map_err(|e| csv_error(path, e))?.clone();
    for (pos, want) in header.iter().enumerate() {
        match got.get(pos) {
            Some(col) if col == *want => {}
            Some(col) => {
                return Err(Error::parse(
                    path,
                    format!("unexpected column {col:?} at position {pos}, expected {want:?}"),
                ))
            }
            None => return Err(Error::parse(path, format!("missing column {want:?}"))),
        }
    }
    if let Some(extra) = got.get(header.len()) {
        return Err(Error::parse(path, format!("unexpected column {extra:?}")));
    }
    r.records()
        .map(|rec| rec.map_err(|e| csv_error(path, e)))
        .collect()
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::parse(path, format!("{other:?}")),
    }
}

fn field<T: std::str::FromStr>(path: &Path, rec: &csv::StringRecord, pos: usize, name: &str) -> Result<T> {
    let line = rec.position().map_or(0, |p| p.line());
    let raw = rec
        .get(pos)
        .ok_or_else(|| Error::parse(path, format!("line {line}: missing {name}")))?;
    raw.parse()
        .map_err(|_| Error::parse(path, format!("line {line}: bad {name} {raw:?}")))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseRow {
    pub selector: Selector,
    pub k: usize,
    pub s: usize,
    pub trials: usize,
    pub successes: usize,
    pub probability: f64,
    pub failures_numerical: usize,
}

impl PhaseDiagramResult {
    /// One row per `(selector, k, s)`, selector-major.
    pub fn rows(&self) -> Vec<PhaseRow> {
        let c = &self.config;
        let mut out = Vec::new();
        for (j, sel) in c.selectors.iter().enumerate() {
            for (ki, &k) in c.k_grid.iter().enumerate() {
                for (si, &s) in c.s_grid.iter().enumerate() {
                    out.push(PhaseRow {
                        selector: *sel,
                        k,
                        s,
                        trials: c.trials,
                        successes: self.successes(j, ki, si),
                        probability: self.probability(j, ki, si),
                        failures_numerical: self.failures_numerical(j, ki, si),
                    });
                }
            }
        }
        out
    }
}

pub fn phase_csv(rows: &[PhaseRow]) -> Vec<u8> {
    csv_bytes(
        &PHASE_HEADER,
        rows.iter().map(|r| {
            vec![
                r.selector.to_string(),
                r.k.to_string(),
                r.s.to_string(),
                r.trials.to_string(),
                r.successes.to_string(),
                float(r.probability),
                r.failures_numerical.to_string(),
            ]
        }),
    )
}

pub fn write_phase_csv(path: &Path, result: &PhaseDiagramResult) -> Result<()> {
    write_atomic(path, &phase_csv(&result.rows()))
}

pub fn read_phase_csv(path: &Path) -> Result<Vec<PhaseRow>> {
    read_csv(path, &PHASE_HEADER)?
        .iter()
        .map(|rec| {
            Ok(PhaseRow {
                selector: field(path, rec, 0, "selector")?,
                k: field(path, rec, 1, "k")?,
                s: field(path, rec, 2, "s")?,
                trials: field(path, rec, 3, "trials")?,
                successes: field(path, rec, 4, "successes")?,
                probability: field(path, rec, 5, "probability")?,
                failures_numerical: field(path, rec, 6, "failures_numerical")?,
            })
        })
        .collect()
}

/// One point of a median curve; `x` is `k` or `n` by the file's axis.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRow {
    pub x: usize,
    pub trials: usize,
    pub median_value: f64,
}

pub fn curve_csv(axis: &str, rows: &[CurveRow]) -> Vec<u8> {
    csv_bytes(
        &[axis, "trials", "median_value"],
        rows.iter()
            .map(|r| vec![r.x.to_string(), r.trials.to_string(), float(r.median_value)]),
    )
}

/// `axis` names the first column, `k` or `n`.
pub fn write_curve_csv(path: &Path, axis: &str, rows: &[CurveRow]) -> Result<()> {
    write_atomic(path, &curve_csv(axis, rows))
}

pub fn read_curve_csv(path: &Path, axis: &str) -> Result<Vec<CurveRow>> {
    read_csv(path, &[axis, "trials", "median_value"])?
        .iter()
        .map(|rec| {
            Ok(CurveRow {
                x: field(path, rec, 0, axis)?,
                trials: field(path, rec, 1, "trials")?,
                median_value: field(path, rec, 2, "median_value")?,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityRow {
    pub delta: f64,
    pub trials: usize,
    pub median_error: f64,
    pub ratio: f64,
}

impl StabilityResult {
    pub fn rows(&self) -> Vec<StabilityRow> {
        self.config
            .delta_grid
            .iter()
            .enumerate()
            .map(|(i, &delta)| StabilityRow {
                delta,
                trials: self.config.trials,
                median_error: self.median_error[i],
                ratio: self.ratio[i],
            })
            .collect()
    }
}

pub fn stability_csv(rows: &[StabilityRow]) -> Vec<u8> {
    csv_bytes(
        &STABILITY_HEADER,
        rows.iter().map(|r| {
            vec![
                float(r.delta),
                r.trials.to_string(),
                float(r.median_error),
                float(r.ratio),
            ]
        }),
    )
}

pub fn write_stability_csv(path: &Path, result: &StabilityResult) -> Result<()> {
    write_atomic(path, &stability_csv(&result.rows()))
}

pub fn read_stability_csv(path: &Path) -> Result<Vec<StabilityRow>> {
    read_csv(path, &STABILITY_HEADER)?
        .iter()
        .map(|rec| {
            Ok(StabilityRow {
                delta: field(path, rec, 0, "delta")?,
                trials: field(path, rec, 1, "trials")?,
                median_error: field(path, rec, 2, "median_error")?,
                ratio: field(path, rec, 3, "ratio")?,
            })
        })
        .collect()
}

pub fn write_manifest(path: &Path, manifest: &RunManifest) -> Result<()> {
    let mut text = serde_json::to_string_pretty(manifest)
        .map_err(|e| Error::NumericalFailure(format!("manifest serialization: {e}")))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

pub fn read_manifest(path: &Path) -> Result<RunManifest> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::parse(path, e.to_string()))
}

/// Plain graymap of one selector's table: rows follow `k`, columns `s`,
/// gray `round(255 (1 - p))` so certain success is black.
pub fn phase_heatmap(result: &PhaseDiagramResult, sel: usize) -> String {
    let c = &result.config;
    let mut out = format!(
        "P2\n# selector {}: rows k = {:?}, columns s = {:?}, gray = round(255 (1 - p))\n{} {}\n255\n",
        c.selectors[sel],
        c.k_grid,
        c.s_grid,
        c.s_grid.len(),
        c.k_grid.len()
    );
    for ki in 0..c.k_grid.len() {
        let line: Vec<String> = (0..c.s_grid.len())
            .map(|si| ((255.0 * (1.0 - result.probability(sel, ki, si))).round() as u8).to_string())
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Writes `heatmap_<selector>.pgm` per selector into `dir`.
pub fn write_phase_heatmaps(dir: &Path, result: &PhaseDiagramResult) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for (j, sel) in result.config.selectors.iter().enumerate() {
        let name: String = sel
            .to_string()
            .chars()
            .map(|ch| if ch.is_ascii_alphanumeric() || ch == '.' { ch } else { '_' })
            .collect();
        let path = dir.join(format!("heatmap_{name}.pgm"));
        write_atomic(&path, phase_heatmap(result, j).as_bytes())?;
        paths.push(path);
    }
    Ok(paths)
}
