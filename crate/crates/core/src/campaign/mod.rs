//! Seeded randomized verification campaigns.
//!
//! Trial `i` of a campaign with master seed `s` draws everything from
//! `derive_seed(s, i)`, so any record can be replayed on its own with
//! [`run_trial_with_seed`]. Trials may run concurrently; results are assembled in index order.

mod report;
mod trials;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use report::{emit_report, render_report, CampaignReport, Summary, TrialRecord, CSV_HEADER};
pub use trials::run_trial_with_seed;

use crate::rng::derive_seed;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    Eq3,
    Prop1,
    Thm1,
    Cor1,
    Cor2,
    Thm4,
    Thm5,
    Conjecture,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::Eq3,
        TheoremId::Prop1,
        TheoremId::Thm1,
        TheoremId::Cor1,
        TheoremId::Cor2,
        TheoremId::Thm4,
        TheoremId::Thm5,
        TheoremId::Conjecture,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Eq3 => "eq3",
            TheoremId::Prop1 => "prop1",
            TheoremId::Thm1 => "thm1",
            TheoremId::Cor1 => "cor1",
            TheoremId::Cor2 => "cor2",
            TheoremId::Thm4 => "thm4",
            TheoremId::Thm5 => "thm5",
            TheoremId::Conjecture => "conjecture",
        }
    }

    /// Whether a failing trial contradicts a proven statement (and so signals a bug).
    pub fn theorem_backed(self) -> bool {
        self != TheoremId::Conjecture
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            TheoremId::Thm4 | TheoremId::Thm5 => crate::CHANNEL_EQ_TOL,
            _ => crate::INEQUALITY_TOL,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Config {
                field: "theorem",
                reason: format!(
                    "unknown id `{s}` (expected one of {})",
                    Self::ALL.map(|t| t.as_str()).join(", ")
                ),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::Config {
                field: "format",
                reason: format!("unknown format `{s}` (expected json or csv)"),
            }),
        }
    }
}

/// Campaign parameters. Dimensions and `num_kraus` are upper bounds; each trial draws its
/// own values in `1..=max`. For `thm4` the cyclic group order ranges over `2..=max(2, dim_h)`;
/// for `thm5` the kernel size is drawn up to `dim_h` and the atom count up to `num_kraus`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub theorem: TheoremId,
    pub trials: usize,
    pub dim_h: usize,
    pub dim_k: usize,
    pub num_kraus: usize,
    pub tolerance: f64,
    pub master_seed: u64,
    /// Roof search size `m`; defaults to `dim_k²` per trial.
    #[serde(default)]
    pub ensemble_size: Option<usize>,
    pub restarts: usize,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

impl CampaignConfig {
    pub fn new(theorem: TheoremId, trials: usize) -> Self {
        Self {
            theorem,
            trials,
            dim_h: 4,
            dim_k: 3,
            num_kraus: 3,
            tolerance: theorem.default_tolerance(),
            master_seed: 0,
            ensemble_size: None,
            restarts: 4,
            output: None,
            format: OutputFormat::Json,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("trials", self.trials),
            ("dim_h", self.dim_h),
            ("dim_k", self.dim_k),
            ("num_kraus", self.num_kraus),
            ("restarts", self.restarts),
        ];
        for (field, v) in positive {
            if v == 0 {
                return Err(Error::Config {
                    field,
                    reason: "must be at least 1".into(),
                });
            }
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::Config {
                field: "tolerance",
                reason: format!("must be a positive finite number, got {}", self.tolerance),
            });
        }
        if self.ensemble_size == Some(0) {
            return Err(Error::Config {
                field: "ensemble_size",
                reason: "must be at least 1".into(),
            });
        }
        Ok(())
    }
}

pub fn trial_seed(cfg: &CampaignConfig, index: usize) -> u64 {
    derive_seed(cfg.master_seed, index as u64)
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    cfg.validate()?;
    let start = Instant::now();
    let run = |i: usize| {
        let mut rec = run_trial_with_seed(cfg, trial_seed(cfg, i));
        rec.trial = i;
        rec
    };

    #[cfg(feature = "parallel")]
    let records: Vec<TrialRecord> = {
        use rayon::prelude::*;
        (0..cfg.trials).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let records: Vec<TrialRecord> = (0..cfg.trials).map(run).collect();

    Ok(CampaignReport::assemble(
        cfg.clone(),
        records,
        start.elapsed().as_secs_f64(),
    ))
}
