//! CSV readers and writers. Numbers are written through `f64`'s `Display`
//! (the shortest representation that parses back to the same double), so
//! every emitted file survives a parse → re-emit round trip byte for byte
//! while carrying full precision; the 4-decimal rounding is reserved for
//! terminal summaries.

use std::path::Path;

use claimcheck::{GridResult, Probability, ReferencePoint};

use crate::CliError;

/// Grid CSV header.
pub const GRID_HEADER: [&str; 5] = ["task", "delta_seed", "n", "delta_obs", "prob"];
/// Contour CSV header.
pub const CONTOUR_HEADER: [&str; 2] = ["n", "delta_at_threshold"];
/// Calibration reference CSV header.
pub const REFS_HEADER: [&str; 3] = ["n", "delta", "target_prob"];
/// Calibration trace CSV header.
pub const TRACE_HEADER: [&str; 2] = ["s", "sse"];

fn open_writer(path: &Path) -> Result<csv::Writer<std::fs::File>, CliError> {
    csv::Writer::from_path(path)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn finish(writer: csv::Writer<std::fs::File>, path: &Path) -> Result<(), CliError> {
    writer
        .into_inner()
        .map_err(|e| CliError::Io(format!("cannot flush {}: {e}", path.display())))?
        .sync_all()
        .map_err(|e| CliError::Io(format!("cannot flush {}: {e}", path.display())))?;
    Ok(())
}

fn write_row<I, S>(w: &mut csv::Writer<std::fs::File>, path: &Path, row: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<[u8]>,
{
    w.write_record(row)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// One row per cell, row-major by Δ then n.
pub fn write_grid_csv(path: &Path, result: &GridResult, delta_seed: f64) -> Result<(), CliError> {
    let mut w = open_writer(path)?;
    write_row(&mut w, path, GRID_HEADER)?;
    let task = result.task.to_string();
    for (di, &delta) in result.delta_values.iter().enumerate() {
        for (ni, &n) in result.n_values.iter().enumerate() {
            write_row(
                &mut w,
                path,
                [
                    task.clone(),
                    delta_seed.to_string(),
                    n.to_string(),
                    delta.to_string(),
                    result.probs[di][ni].to_string(),
                ],
            )?;
        }
    }
    finish(w, path)
}

/// One row per n; a column that never reaches the threshold leaves the
/// delta field empty.
pub fn write_contour_csv(path: &Path, result: &GridResult) -> Result<(), CliError> {
    let mut w = open_writer(path)?;
    write_row(&mut w, path, CONTOUR_HEADER)?;
    for (&n, contour) in result.n_values.iter().zip(&result.contour) {
        let delta = contour.map_or(String::new(), |d| d.to_string());
        write_row(&mut w, path, [n.to_string(), delta])?;
    }
    finish(w, path)
}

/// Per-candidate calibration trace, grid pass first.
pub fn write_trace_csv(path: &Path, trace: &[(f64, f64)]) -> Result<(), CliError> {
    let mut w = open_writer(path)?;
    write_row(&mut w, path, TRACE_HEADER)?;
    for &(s, sse) in trace {
        write_row(&mut w, path, [s.to_string(), sse.to_string()])?;
    }
    finish(w, path)
}

fn parse_field<T: std::str::FromStr>(
    raw: &str,
    name: &str,
    line: u64,
    path: &Path,
) -> Result<T, CliError> {
    raw.trim().parse().map_err(|_| {
        CliError::Validation(format!(
            "{} line {line}: cannot parse {name} from '{raw}'",
            path.display()
        ))
    })
}

/// Reads calibration reference points (`n,delta,target_prob`).
pub fn read_reference_csv(path: &Path) -> Result<Vec<ReferencePoint>, CliError> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    if headers.iter().map(str::trim).ne(REFS_HEADER) {
        return Err(CliError::Validation(format!(
            "{}: expected header '{}', got '{}'",
            path.display(),
            REFS_HEADER.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut refs = Vec::new();
    for record in reader.records() {
        let record =
            record.map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 3 {
            return Err(CliError::Validation(format!(
                "{} line {line}: expected 3 fields, got {}",
                path.display(),
                record.len()
            )));
        }
        let n = parse_field(&record[0], "n", line, path)?;
        let delta_obs = parse_field(&record[1], "delta", line, path)?;
        let target: f64 = parse_field(&record[2], "target_prob", line, path)?;
        let target_prob = Probability::new(target).map_err(|e| {
            CliError::Validation(format!("{} line {line}: {e}", path.display()))
        })?;
        refs.push(ReferencePoint {
            n,
            delta_obs,
            target_prob,
        });
    }
    Ok(refs)
}
