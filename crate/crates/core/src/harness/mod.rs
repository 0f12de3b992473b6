//! Monte-Carlo sweeps, file formats, and the operations behind the
//! command-line tool.

mod config;
mod io;
mod sweep;

use serde::Serialize;

pub use config::{
    parse_snr_list, CodeSpec, DecoderKind, OutputFormat, SimConfig, LMLD_METRICS_LOWER_BOUND,
    RMLD_METRICS, TABLE1_SNR_DB, TABLE1_TPMLSD,
};
pub use io::{
    load_parity_check, load_received, parse_parity_check, parse_received, write_csv, write_json,
};
pub use sweep::{
    run_point, run_sweep, run_sweep_with, run_trial, summarize, trial_codeword, Decoder, SimRow,
    TrialRecord,
};

use crate::codes::CodePair;
use crate::error::Result;
use crate::phase2::{DecodeReport, TrellisMode};
use crate::trellis::{LevelStats, Trellis};

/// Size profile of one trellis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrellisProfile {
    pub n: usize,
    pub dimension: usize,
    pub max_states: usize,
    pub total_states: usize,
    pub total_branches: usize,
    pub levels: Vec<LevelStats>,
}

impl TrellisProfile {
    pub fn of(t: &Trellis, dimension: usize) -> Self {
        Self {
            n: t.n(),
            dimension,
            max_states: t.max_states(),
            total_states: t.total_states(),
            total_branches: t.total_branches(),
            levels: t.level_stats(),
        }
    }
}

/// Profiles of the code trellis and the supertrellis of a pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairProfile {
    pub code: TrellisProfile,
    pub supercode: TrellisProfile,
}

pub fn profile_pair(pair: &CodePair) -> Result<PairProfile> {
    let code = Trellis::build(pair.code().parity_check())?;
    let sup = Trellis::build(pair.supercode().parity_check())?;
    Ok(PairProfile {
        code: TrellisProfile::of(&code, pair.code().k()),
        supercode: TrellisProfile::of(&sup, pair.supercode().k()),
    })
}

/// Decodes one received word with a freshly built decoder.
pub fn decode_once(pair: CodePair, kind: DecoderKind, received: &[f64]) -> Result<DecodeReport> {
    Decoder::new(pair, kind, TrellisMode::Explicit)?.decode_received(received)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::rm_code_pair;

    #[test]
    fn rm_profile() {
        let p = profile_pair(&rm_code_pair(1, 2, 4).unwrap()).unwrap();
        assert_eq!(p.code.n, 16);
        assert_eq!(p.code.dimension, 5);
        assert_eq!(p.supercode.dimension, 11);
        assert_eq!(p.code.levels.len(), 17);
        assert!(p.supercode.max_states <= 1 << 5);
        assert!(p.code.max_states <= 1 << 5);
    }

    #[test]
    fn decode_once_reports_json() {
        let mut r = vec![1.0; 16];
        r[3] = -0.2;
        let rep = decode_once(rm_code_pair(1, 2, 4).unwrap(), DecoderKind::Tpmlsd, &r).unwrap();
        assert!(rep.codeword.is_zero());
        assert!((rep.metric - 0.2).abs() < 1e-12);
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["codeword"], "0000000000000000");
        assert_eq!(json["error_pattern"], "0001000000000000");
    }
}
