//! The two-phase decoder, uniform-cost search and brute force return
//! codewords of the same metric; their work differs.

use tpmlsd::channel::snr_b_to_sigma;
use tpmlsd::codes::rm_code_pair;
use tpmlsd::harness::{run_point, Decoder, DecoderKind};
use tpmlsd::TrellisMode;

fn main() -> tpmlsd::Result<()> {
    let pair = rm_code_pair(1, 2, 4)?;
    let trials = 2000;
    for snr_db in [0.0, 2.0, 4.0] {
        let sigma = snr_b_to_sigma(snr_db, pair.n(), pair.code().k())?;
        let mut runs = Vec::new();
        for kind in [DecoderKind::Tpmlsd, DecoderKind::Ucs, DecoderKind::Brute] {
            let d = Decoder::new(pair.clone(), kind, TrellisMode::Explicit)?;
            runs.push((kind, run_point(&d, sigma, trials, 1, false)?));
        }
        let reference = &runs[2].1;
        println!("SNR_b = {snr_db} dB");
        for (kind, recs) in &runs {
            let mismatches = recs
                .iter()
                .zip(reference)
                .filter(|(a, b)| (a.metric - b.metric).abs() > 1e-9 * b.metric.max(1.0))
                .count();
            let evals: u64 = recs.iter().map(|r| r.metric_evals_total).sum();
            println!(
                "  {:<7} mean evals {:>8.1}  metric mismatches vs brute force: {mismatches}",
                format!("{kind:?}"),
                evals as f64 / trials as f64
            );
        }
    }
    Ok(())
}
