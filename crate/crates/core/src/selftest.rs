//! A fast end-to-end sanity run over small codes.

use std::fmt;

use crate::channel::{snr_b_to_sigma, BitMetrics};
use crate::codes::{pair_from_parity_check, rm_code_pair};
use crate::error::Result;
use crate::gf2::{BinaryMatrix, BinaryVector};
use crate::harness::{run_point, run_sweep, CodeSpec, Decoder, DecoderKind, SimConfig};
use crate::phase2::TrellisMode;
use crate::rng::CounterRng;
use crate::trellis::Trellis;
use crate::verify::{check_pair, codeword_path_violations, random_code_pair, random_metrics};

/// Parity-check matrix of the (7,4) Hamming code.
pub const HAMMING74_H: [&str; 3] = ["1011100", "1101010", "0111001"];

#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

fn line(name: &'static str, outcome: Result<(bool, String)>) -> CheckLine {
    match outcome {
        Ok((passed, detail)) => CheckLine {
            name,
            passed,
            detail,
        },
        Err(e) => CheckLine {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn hamming_noiseless() -> Result<(bool, String)> {
    let pair = pair_from_parity_check(&BinaryMatrix::from_strs(&HAMMING74_H), 1)?;
    let dec = Decoder::new(pair, DecoderKind::Tpmlsd, TrellisMode::Explicit)?;
    let v = BinaryVector::parse01("1000110").expect("literal");
    let r: Vec<f64> = v.iter().map(|b| if b == 1 { -1.0 } else { 1.0 }).collect();
    let rep = dec.decode_received(&r)?;
    Ok((
        rep.codeword == v && rep.metric == 0.0,
        format!("decoded {} metric {}", rep.codeword, rep.metric),
    ))
}

fn metric_agreement() -> Result<(bool, String)> {
    let pair = rm_code_pair(1, 2, 4)?;
    let sigma = snr_b_to_sigma(2.0, 16, 5)?;
    let fast = Decoder::new(pair.clone(), DecoderKind::Tpmlsd, TrellisMode::Explicit)?;
    let brute = Decoder::new(pair, DecoderKind::Brute, TrellisMode::Explicit)?;
    let a = run_point(&fast, sigma, 500, 1, false)?;
    let b = run_point(&brute, sigma, 500, 1, false)?;
    let worst = a
        .iter()
        .zip(&b)
        .map(|(x, y)| (x.metric - y.metric).abs() / y.metric.abs().max(1.0))
        .fold(0.0, f64::max);
    Ok((
        worst <= 1e-9,
        format!("500 words on RM(1,4), worst relative gap {worst:.1e}"),
    ))
}

fn random_invariants() -> Result<(bool, String)> {
    let mut rng = CounterRng::new(2024);
    let mut failed = 0;
    for _ in 0..20 {
        let pair = random_code_pair(&mut rng, (4, 12), 8)?;
        let m: BitMetrics = random_metrics(&mut rng, pair.n());
        failed += !check_pair(&pair, &m, 1e-12)?.passed(1e-12) as usize;
    }
    Ok((
        failed == 0,
        format!("{failed} of 20 random pairs violate an invariant"),
    ))
}

fn trellis_paths() -> Result<(bool, String)> {
    let mut bad = 0;
    for h in [
        BinaryMatrix::from_strs(&HAMMING74_H),
        rm_code_pair(1, 2, 4)?.code().parity_check().clone(),
    ] {
        let code = crate::codes::LinearCode::from_parity_check(h)?;
        bad += codeword_path_violations(&Trellis::build(code.parity_check())?, &code)?;
    }
    Ok((bad == 0, format!("{bad} bad paths")))
}

fn determinism() -> Result<(bool, String)> {
    let mut cfg = SimConfig::new(
        CodeSpec::ReedMuller {
            r: 1,
            rbar: 2,
            m: 4,
        },
        vec![1.0, 3.0],
        200,
    );
    cfg.base_seed = 77;
    let a = run_sweep(&cfg)?;
    let b = run_sweep(&cfg)?;
    let same = a.iter().zip(&b).all(|(x, y)| x.same_results(y));
    Ok((same, "two identical sweeps".into()))
}

/// Runs every check; the overall result passes iff every line does.
pub fn run_selftest() -> Vec<CheckLine> {
    vec![
        line("hamming-noiseless", hamming_noiseless()),
        line("ml-agreement", metric_agreement()),
        line("random-invariants", random_invariants()),
        line("trellis-paths", trellis_paths()),
        line("determinism", determinism()),
    ]
}
