use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CampaignConfig, OutputFormat};
use crate::entropy::GainCertificate;
use crate::roof::Verdict;
use crate::Result;

pub const CSV_HEADER: &str = "trial,seed,lhs,rhs,margin,pass";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    /// Absent when the trial could not be evaluated (see `error`).
    pub certificate: Option<GainCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TrialRecord {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.certificate.as_ref().is_some_and(|c| c.pass)
    }

    pub fn margin(&self) -> Option<f64> {
        self.certificate.as_ref().map(|c| c.margin)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub min_margin: Option<f64>,
    pub argmin_trial: Option<usize>,
    pub argmin_seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    /// `"verification"` for proven statements, `"probe"` for the conjecture.
    pub kind: String,
    pub note: String,
    pub summary: Summary,
    pub records: Vec<TrialRecord>,
    pub wall_clock_seconds: f64,
}

impl CampaignReport {
    pub fn assemble(config: CampaignConfig, records: Vec<TrialRecord>, wall_clock_seconds: f64) -> Self {
        let passed = records.iter().filter(|r| r.pass()).count();
        let mut argmin: Option<&TrialRecord> = None;
        for r in &records {
            if let Some(m) = r.margin() {
                if argmin.and_then(TrialRecord::margin).is_none_or(|best| m < best) {
                    argmin = Some(r);
                }
            }
        }
        let summary = Summary {
            trials: records.len(),
            passed,
            failed: records.len() - passed,
            min_margin: argmin.and_then(TrialRecord::margin),
            argmin_trial: argmin.map(|r| r.trial),
            argmin_seed: argmin.map(|r| r.seed),
        };
        let (kind, note) = if config.theorem.theorem_backed() {
            (
                "verification",
                "every trial checks a proven statement; a failing trial indicates an implementation bug",
            )
        } else {
            (
                "probe",
                "verdicts are SUPPORTED or INCONCLUSIVE; the roof value is an upper estimate, so a shortfall is never a counterexample",
            )
        };
        Self {
            config,
            kind: kind.into(),
            note: note.into(),
            summary,
            records,
            wall_clock_seconds,
        }
    }

    /// Number of failures that count against the exit status.
    pub fn theorem_backed_failures(&self) -> usize {
        if self.config.theorem.theorem_backed() {
            self.summary.failed
        } else {
            0
        }
    }

    /// Copy with the wall-clock field zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_clock_seconds: 0.0,
            ..self.clone()
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            match &r.certificate {
                Some(c) => writeln!(out, "{},{},{:?},{:?},{:?},{}", r.trial, r.seed, c.lhs, c.rhs, c.margin, r.pass()),
                None => writeln!(out, "{},{},,,,false", r.trial, r.seed),
            }
            .expect("writing to a String");
        }
        out
    }
}

pub fn render_report(report: &CampaignReport, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => crate::io::to_json(report),
        OutputFormat::Csv => Ok(report.to_csv()),
    }
}

pub fn emit_report(report: &CampaignReport, format: OutputFormat, path: impl AsRef<Path>) -> Result<()> {
    let mut text = render_report(report, format)?;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}
