use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{snr_b_to_sigma, transmit, BitMetrics};
use crate::codes::CodePair;
use crate::error::{Error, Result};
use crate::gf2::BinaryVector;
use crate::harness::config::{DecoderKind, SimConfig};
use crate::oracle::{brute_force_ml, uniform_cost_decode};
use crate::phase2::{DecodeReport, TrellisMode, TwoPhaseDecoder};
use crate::rng::{CounterRng, CODEWORD_STREAM_SALT};
use crate::trellis::Trellis;

/// A ready-to-run decoder of any supported kind.
#[derive(Clone, Debug)]
pub enum Decoder {
    TwoPhase(TwoPhaseDecoder),
    UniformCost { pair: CodePair, trellis: Trellis },
    BruteForce(CodePair),
}

impl Decoder {
    pub fn new(pair: CodePair, kind: DecoderKind, mode: TrellisMode) -> Result<Self> {
        Ok(match kind {
            DecoderKind::Tpmlsd => Decoder::TwoPhase(TwoPhaseDecoder::with_mode(pair, mode)?),
            DecoderKind::Ucs => {
                let trellis = Trellis::build(pair.code().parity_check())?;
                Decoder::UniformCost { pair, trellis }
            }
            DecoderKind::Brute => Decoder::BruteForce(pair),
        })
    }

    pub fn kind(&self) -> DecoderKind {
        match self {
            Decoder::TwoPhase(_) => DecoderKind::Tpmlsd,
            Decoder::UniformCost { .. } => DecoderKind::Ucs,
            Decoder::BruteForce(_) => DecoderKind::Brute,
        }
    }

    pub fn pair(&self) -> &CodePair {
        match self {
            Decoder::TwoPhase(d) => d.pair(),
            Decoder::UniformCost { pair, .. } | Decoder::BruteForce(pair) => pair,
        }
    }

    /// Decodes one word. For the brute-force decoder every bit metric it
    /// sums is counted as a phase-2 evaluation.
    pub fn decode(&self, m: &BitMetrics) -> Result<DecodeReport> {
        match self {
            Decoder::TwoPhase(d) => d.decode(m),
            Decoder::UniformCost { pair, trellis } => uniform_cost_decode(pair.code(), trellis, m),
            Decoder::BruteForce(pair) => {
                let r = brute_force_ml(pair.code(), m)?;
                Ok(DecodeReport {
                    error_pattern: r.codeword.xor(m.hard_decision()),
                    codeword: r.codeword,
                    metric: r.metric,
                    metric_evals_phase1: 0,
                    metric_evals_phase2: r.metric_evals,
                    metric_evals_total: r.metric_evals,
                    open_stack_peak: 0,
                    expansions: 0,
                    incumbent_updates: 0,
                })
            }
        }
    }

    /// Decodes received channel reals.
    pub fn decode_received(&self, r: &[f64]) -> Result<DecodeReport> {
        let n = self.pair().n();
        if r.len() != n {
            return Err(Error::Dimension(format!(
                "received {} values for a code of length {n}",
                r.len()
            )));
        }
        if let Some(x) = r.iter().find(|x| !x.is_finite()) {
            return Err(Error::Dimension(format!(
                "received value {x} is not finite"
            )));
        }
        self.decode(&BitMetrics::from_received(r))
    }
}

/// One decoded transmission.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub seed: u64,
    #[serde(skip)]
    pub decoded: BinaryVector,
    pub metric: f64,
    pub bit_errors: u64,
    pub metric_evals_phase1: u64,
    pub metric_evals_phase2: u64,
    pub metric_evals_total: u64,
    pub expansions: u64,
    pub open_stack_peak: u64,
}

/// Aggregate over the trials at one SNR point. Field order is the CSV
/// column order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimRow {
    pub snr_b_db: f64,
    pub trials: u64,
    pub mean_metric_evals_total: f64,
    pub mean_metric_evals_phase1: f64,
    pub mean_metric_evals_phase2: f64,
    pub max_metric_evals_total: u64,
    pub mean_expansions: f64,
    pub mean_open_stack_peak: f64,
    pub bit_errors: u64,
    pub bits_sent: u64,
    pub ber: f64,
    pub word_errors: u64,
    pub wer: f64,
    pub wall_time_seconds: f64,
}

impl SimRow {
    /// Everything except the wall-clock time, for reproducibility checks.
    pub fn same_results(&self, other: &SimRow) -> bool {
        let strip = |r: &SimRow| SimRow {
            wall_time_seconds: 0.0,
            ..r.clone()
        };
        strip(self) == strip(other)
    }
}

/// The transmitted codeword of trial `seed`: zero, or `G^T u` for info bits
/// `u` drawn from the codeword stream.
pub fn trial_codeword(pair: &CodePair, seed: u64, all_zero: bool) -> Result<BinaryVector> {
    let code = pair.code();
    if all_zero {
        return Ok(BinaryVector::zeros(code.n()));
    }
    let mut rng = CounterRng::new(seed ^ CODEWORD_STREAM_SALT);
    let info: Vec<u8> = (0..code.k()).map(|_| rng.next_bit()).collect();
    code.encode(&BinaryVector::from_bits(&info))
}

/// Runs one trial: pick a codeword, transmit with the noise stream keyed
/// by `seed`, decode, and count bit errors over all `n` positions.
pub fn run_trial(decoder: &Decoder, sigma: f64, seed: u64, all_zero: bool) -> Result<TrialRecord> {
    let v = trial_codeword(decoder.pair(), seed, all_zero)?;
    let rx = transmit(&v, sigma, seed);
    let report = decoder.decode(&rx.metrics())?;
    Ok(TrialRecord {
        seed,
        decoded: report.codeword.clone(),
        metric: report.metric,
        bit_errors: report.codeword.xor(&v).count_ones() as u64,
        metric_evals_phase1: report.metric_evals_phase1,
        metric_evals_phase2: report.metric_evals_phase2,
        metric_evals_total: report.metric_evals_total,
        expansions: report.expansions,
        open_stack_peak: report.open_stack_peak,
    })
}

/// Trials `base_seed, base_seed + 1, ...` in parallel; records come back in
/// seed order regardless of scheduling.
pub fn run_point(
    decoder: &Decoder,
    sigma: f64,
    trials: u64,
    base_seed: u64,
    all_zero: bool,
) -> Result<Vec<TrialRecord>> {
    (0..trials)
        .into_par_iter()
        .map(|i| run_trial(decoder, sigma, base_seed.wrapping_add(i), all_zero))
        .collect()
}

/// Folds trial records into a row. Counter sums are exact in `u128`, so
/// the means do not depend on the order of the trials.
pub fn summarize(
    snr_b_db: f64,
    n: usize,
    records: &[TrialRecord],
    wall_time_seconds: f64,
) -> SimRow {
    let trials = records.len() as u64;
    let sum = |f: fn(&TrialRecord) -> u64| records.iter().map(|r| f(r) as u128).sum::<u128>();
    let mean = |s: u128| {
        if trials == 0 {
            0.0
        } else {
            s as f64 / trials as f64
        }
    };
    let bit_errors = sum(|r| r.bit_errors) as u64;
    let word_errors = records.iter().filter(|r| r.bit_errors > 0).count() as u64;
    let bits_sent = trials * n as u64;
    SimRow {
        snr_b_db,
        trials,
        mean_metric_evals_total: mean(sum(|r| r.metric_evals_total)),
        mean_metric_evals_phase1: mean(sum(|r| r.metric_evals_phase1)),
        mean_metric_evals_phase2: mean(sum(|r| r.metric_evals_phase2)),
        max_metric_evals_total: records
            .iter()
            .map(|r| r.metric_evals_total)
            .max()
            .unwrap_or(0),
        mean_expansions: mean(sum(|r| r.expansions)),
        mean_open_stack_peak: mean(sum(|r| r.open_stack_peak)),
        bit_errors,
        bits_sent,
        ber: if bits_sent == 0 {
            0.0
        } else {
            bit_errors as f64 / bits_sent as f64
        },
        word_errors,
        wer: if trials == 0 {
            0.0
        } else {
            word_errors as f64 / trials as f64
        },
        wall_time_seconds,
    }
}

/// Runs the whole sweep described by `cfg`, one row per SNR point. Each
/// point reuses the same trial seeds.
pub fn run_sweep(cfg: &SimConfig) -> Result<Vec<SimRow>> {
    cfg.validate()?;
    let decoder = Decoder::new(cfg.code.build()?, cfg.decoder, cfg.trellis_mode)?;
    run_sweep_with(&decoder, cfg)
}

/// [`run_sweep`] with a prebuilt decoder; `cfg.code` and `cfg.decoder` are
/// ignored.
pub fn run_sweep_with(decoder: &Decoder, cfg: &SimConfig) -> Result<Vec<SimRow>> {
    cfg.validate()?;
    let code = decoder.pair().code();
    cfg.snr_b_db
        .iter()
        .map(|&db| {
            let sigma = match cfg.sigma_override {
                Some(s) => s,
                None => snr_b_to_sigma(db, code.n(), code.k())?,
            };
            let start = Instant::now();
            let records = run_point(
                decoder,
                sigma,
                cfg.trials_per_point,
                cfg.base_seed,
                cfg.all_zero_codeword,
            )?;
            Ok(summarize(
                db,
                code.n(),
                &records,
                start.elapsed().as_secs_f64(),
            ))
        })
        .collect()
}
