//! Batch claim audit: read a CSV of claimed improvements, annotate each
//! row with its false-claim probability both without (`p_false_baseline`)
//! and with (`p_false_underspec`) the row's seed-variance terms, and a
//! CONCERNING/OK verdict on the underspecified value.
//!
//! Rows are validated independently: a bad row is reported on stderr with
//! its line number and skipped, the remaining rows are still processed,
//! and the command exits 1 when anything was skipped. Stochastic rows are
//! keyed by their content, so re-ordering or pruning the input never
//! changes another row's numbers.

use std::path::Path;

use claimcheck::{
    clf_false_claim_underspec, seg_false_claim_prob, ClfComparison, ClfParams, Rng, SegComparison,
    SegParams, Task,
};

use crate::CliError;

/// Audit input header.
pub const AUDIT_HEADER: [&str; 7] = [
    "task",
    "mu_a",
    "mu_b",
    "n",
    "spread_or_congruence",
    "delta_a",
    "delta_b",
];
/// Columns appended to each output row.
pub const AUDIT_APPENDED: [&str; 3] = ["p_false_baseline", "p_false_underspec", "verdict"];

/// One parsed claim: method A is claimed to outperform method B. The
/// `spread_or_congruence` column carries the per-case score spread s for
/// segmentation rows and the congruence p11 for classification rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditRow {
    pub task: Task,
    pub mu_a: f64,
    pub mu_b: f64,
    pub n: u32,
    pub spread_or_congruence: f64,
    pub delta_a: f64,
    pub delta_b: f64,
}

/// Shared model settings not carried by the CSV columns.
#[derive(Debug, Clone, Copy)]
pub struct AuditOptions {
    pub corr: f64,
    pub prior: [f64; 4],
    pub outer_samples: u32,
    pub mc_samples: u32,
    pub threshold: f64,
    pub seed: u64,
}

impl AuditRow {
    fn parse(record: &csv::StringRecord) -> Result<AuditRow, String> {
        fn field<T: std::str::FromStr>(raw: &str, name: &str) -> Result<T, String> {
            raw.trim()
                .parse()
                .map_err(|_| format!("cannot parse {name} from '{raw}'"))
        }
        if record.len() != AUDIT_HEADER.len() {
            return Err(format!(
                "expected {} fields, got {}",
                AUDIT_HEADER.len(),
                record.len()
            ));
        }
        let task = record[0]
            .trim()
            .parse::<Task>()
            .map_err(|e| e.to_string())?;
        let row = AuditRow {
            task,
            mu_a: field(&record[1], "mu_a")?,
            mu_b: field(&record[2], "mu_b")?,
            n: field(&record[3], "n")?,
            spread_or_congruence: field(&record[4], "spread_or_congruence")?,
            delta_a: field(&record[5], "delta_a")?,
            delta_b: field(&record[6], "delta_b")?,
        };
        Ok(row)
    }

    /// Both probabilities for the claim: δ = 0 baseline first, then with
    /// the row's seed-variance terms.
    fn evaluate(&self, opts: &AuditOptions) -> Result<(f64, f64), String> {
        if self.mu_a < self.mu_b {
            return Err(format!(
                "not an outperformance claim: mu_a {} < mu_b {}",
                self.mu_a, self.mu_b
            ));
        }
        match self.task {
            Task::Segmentation => {
                let cmp = SegComparison {
                    mu_hat_a: self.mu_a,
                    mu_hat_b: self.mu_b,
                    n: self.n,
                };
                let underspec = SegParams {
                    s_a: self.spread_or_congruence,
                    s_b: self.spread_or_congruence,
                    r_ab: opts.corr,
                    delta_a: self.delta_a,
                    delta_b: self.delta_b,
                };
                let baseline = SegParams {
                    delta_a: 0.0,
                    delta_b: 0.0,
                    ..underspec
                };
                Ok((
                    seg_false_claim_prob(&cmp, &baseline)
                        .map_err(|e| e.to_string())?
                        .prob
                        .value(),
                    seg_false_claim_prob(&cmp, &underspec)
                        .map_err(|e| e.to_string())?
                        .prob
                        .value(),
                ))
            }
            Task::Classification => {
                let cmp = ClfComparison {
                    p_hat_a: self.mu_a,
                    p_hat_b: self.mu_b,
                    n: self.n,
                };
                let underspec = ClfParams {
                    congruence_p11: self.spread_or_congruence,
                    prior_alphas: opts.prior,
                    delta_a: self.delta_a,
                    delta_b: self.delta_b,
                    mc_samples: opts.mc_samples,
                    outer_samples: opts.outer_samples,
                    inner_mc: false,
                    seed: self.content_seed(opts.seed),
                };
                let baseline = ClfParams {
                    delta_a: 0.0,
                    delta_b: 0.0,
                    ..underspec
                };
                Ok((
                    clf_false_claim_underspec(&cmp, &baseline)
                        .map_err(|e| e.to_string())?
                        .value(),
                    clf_false_claim_underspec(&cmp, &underspec)
                        .map_err(|e| e.to_string())?
                        .value(),
                ))
            }
        }
    }

    fn content_seed(&self, seed: u64) -> u64 {
        Rng::fold_seed(
            seed,
            &[
                match self.task {
                    Task::Segmentation => 0,
                    Task::Classification => 1,
                },
                self.mu_a.to_bits(),
                self.mu_b.to_bits(),
                u64::from(self.n),
                self.spread_or_congruence.to_bits(),
                self.delta_a.to_bits(),
                self.delta_b.to_bits(),
            ],
        )
    }
}

/// Runs the audit; returns the process exit code (0, or 1 when any row was
/// skipped).
pub fn run_audit(input: &Path, output: &Path, opts: &AuditOptions) -> Result<i32, CliError> {
    let mut reader = csv::Reader::from_path(input)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", input.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Validation(format!("{}: {e}", input.display())))?;
    if headers.iter().map(str::trim).ne(AUDIT_HEADER) {
        return Err(CliError::Validation(format!(
            "{}: expected header '{}', got '{}'",
            input.display(),
            AUDIT_HEADER.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }

    let mut writer = csv::Writer::from_path(output)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", output.display())))?;
    writer
        .write_record(AUDIT_HEADER.iter().chain(AUDIT_APPENDED.iter()))
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", output.display())))?;

    let mut failures = 0u32;
    for record in reader.records() {
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                failures += 1;
                eprintln!("{}: skipping row: {e}", input.display());
                continue;
            }
        };
        let line = record.position().map_or(0, |p| p.line());
        let evaluated = AuditRow::parse(&record).and_then(|row| {
            let (baseline, underspec) = row.evaluate(opts)?;
            Ok((row, baseline, underspec))
        });
        let (row, baseline, underspec) = match evaluated {
            Ok(v) => v,
            Err(message) => {
                failures += 1;
                eprintln!("{} line {line}: skipping row: {message}", input.display());
                continue;
            }
        };
        let verdict = if underspec >= opts.threshold {
            "CONCERNING"
        } else {
            "OK"
        };
        writer
            .write_record([
                row.task.to_string(),
                row.mu_a.to_string(),
                row.mu_b.to_string(),
                row.n.to_string(),
                row.spread_or_congruence.to_string(),
                row.delta_a.to_string(),
                row.delta_b.to_string(),
                baseline.to_string(),
                underspec.to_string(),
                verdict.to_string(),
            ])
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", output.display())))?;
    }
    writer
        .flush()
        .map_err(|e| CliError::Io(format!("cannot flush {}: {e}", output.display())))?;
    if failures > 0 {
        eprintln!("audit: {failures} row(s) skipped");
        Ok(1)
    } else {
        Ok(0)
    }
}
