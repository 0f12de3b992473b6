use std::path::PathBuf;

use serde::Serialize;

use crate::codes::{pair_from_parity_check, rm_code_pair, CodePair};
use crate::error::{Error, Result};
use crate::harness::io::load_parity_check;
use crate::phase2::TrellisMode;

/// Which code pair to build.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum CodeSpec {
    /// `C = RM(r, m)` inside `C̄ = RM(rbar, m)`.
    ReedMuller { r: usize, rbar: usize, m: usize },
    /// A parity-check file whose first `prefix` rows define the supercode.
    ParityCheck { path: PathBuf, prefix: usize },
}

impl CodeSpec {
    pub fn build(&self) -> Result<CodePair> {
        match self {
            CodeSpec::ReedMuller { r, rbar, m } => rm_code_pair(*r, *rbar, *m),
            CodeSpec::ParityCheck { path, prefix } => {
                pair_from_parity_check(&load_parity_check(path)?, *prefix)
            }
        }
    }

    /// Parses `"r,rbar,m"`.
    pub fn parse_rm(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let nums: Vec<usize> = parts
            .iter()
            .map(|p| p.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| {
                Error::Config(format!(
                    "expected r,rbar,m as three non-negative integers, got {s:?}"
                ))
            })?;
        match nums[..] {
            [r, rbar, m] => Ok(CodeSpec::ReedMuller { r, rbar, m }),
            _ => Err(Error::Config(format!(
                "expected r,rbar,m as three integers, got {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DecoderKind {
    /// Two-phase supercode decoder.
    #[default]
    Tpmlsd,
    /// Uniform-cost search over the code trellis.
    Ucs,
    /// Exhaustive enumeration of all codewords.
    Brute,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Monte-Carlo sweep configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimConfig {
    pub code: CodeSpec,
    pub snr_b_db: Vec<f64>,
    pub trials_per_point: u64,
    pub base_seed: u64,
    pub decoder: DecoderKind,
    pub output_format: OutputFormat,
    /// Send the all-zero codeword rather than a random one each trial.
    pub all_zero_codeword: bool,
    /// Noise standard deviation to use instead of the SNR-derived one.
    pub sigma_override: Option<f64>,
    pub trellis_mode: TrellisMode,
}

impl SimConfig {
    pub fn new(code: CodeSpec, snr_b_db: Vec<f64>, trials_per_point: u64) -> Self {
        Self {
            code,
            snr_b_db,
            trials_per_point,
            base_seed: 1,
            decoder: DecoderKind::Tpmlsd,
            output_format: OutputFormat::Csv,
            all_zero_codeword: false,
            sigma_override: None,
            trellis_mode: TrellisMode::Explicit,
        }
    }

    /// RM(2,6) inside RM(4,6) at SNR_b ∈ {3, 3.5, 4, 4.5, 5} dB.
    pub fn table1(trials_per_point: u64) -> Self {
        Self::new(
            CodeSpec::ReedMuller {
                r: 2,
                rbar: 4,
                m: 6,
            },
            TABLE1_SNR_DB.to_vec(),
            trials_per_point,
        )
    }

    pub fn preset(name: &str, trials_per_point: u64) -> Result<Self> {
        match name {
            "table1" => Ok(Self::table1(trials_per_point)),
            _ => Err(Error::Config(format!(
                "unknown preset {name:?} (available: table1)"
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials_per_point == 0 {
            return Err(Error::Config("trials per point must be at least 1".into()));
        }
        if self.snr_b_db.is_empty() {
            return Err(Error::Config("SNR list is empty".into()));
        }
        if let Some(bad) = self.snr_b_db.iter().find(|x| !x.is_finite()) {
            return Err(Error::Config(format!("SNR value {bad} is not finite")));
        }
        if let Some(s) = self.sigma_override {
            if !(s >= 0.0 && s.is_finite()) {
                return Err(Error::Config(format!(
                    "sigma override {s} must be finite and >= 0"
                )));
            }
        }
        Ok(())
    }
}

/// SNR_b grid of the reference complexity table, in dB.
pub const TABLE1_SNR_DB: [f64; 5] = [3.0, 3.5, 4.0, 4.5, 5.0];

/// Reference mean metric counts of the two-phase decoder on RM(2,6) with
/// supercode RM(4,6), at [`TABLE1_SNR_DB`].
pub const TABLE1_TPMLSD: [f64; 5] = [10078.0, 7863.0, 6602.0, 6010.0, 5695.0];

/// Reference metric count of recursive ML decoding on RM(2,6), constant over SNR.
pub const RMLD_METRICS: f64 = 78209.0;

/// Reference lower bound on list ML decoding on RM(2,6), constant over SNR.
pub const LMLD_METRICS_LOWER_BOUND: f64 = 2097152.0;

/// Parses a comma-separated list of reals.
pub fn parse_snr_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| Error::Config(format!("invalid SNR value {p:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rm_spec() {
        assert_eq!(
            CodeSpec::parse_rm("2,4,6").unwrap(),
            CodeSpec::ReedMuller {
                r: 2,
                rbar: 4,
                m: 6
            }
        );
        assert_eq!(
            CodeSpec::parse_rm(" 1, 2 ,4").unwrap(),
            CodeSpec::ReedMuller {
                r: 1,
                rbar: 2,
                m: 4
            }
        );
        assert!(CodeSpec::parse_rm("2,4").is_err());
        assert!(CodeSpec::parse_rm("a,b,c").is_err());
        assert!(CodeSpec::parse_rm("-1,2,4").is_err());
    }

    #[test]
    fn snr_list() {
        assert_eq!(parse_snr_list("3,3.5, 4").unwrap(), vec![3.0, 3.5, 4.0]);
        assert!(parse_snr_list("3,x").is_err());
    }

    #[test]
    fn validation() {
        let mut cfg = SimConfig::table1(10);
        assert!(cfg.validate().is_ok());
        cfg.trials_per_point = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = SimConfig::table1(10);
        cfg.snr_b_db.clear();
        assert!(cfg.validate().is_err());
        assert!(SimConfig::preset("nope", 1).is_err());
    }
}
