//! Explicit and on-the-fly code trellises give identical decodes; the lazy
//! one skips building the full code trellis.

use std::time::Instant;

use tpmlsd::channel::{snr_b_to_sigma, transmit};
use tpmlsd::codes::rm_code_pair;
use tpmlsd::{BinaryVector, TrellisMode, TwoPhaseDecoder};

fn main() -> tpmlsd::Result<()> {
    let pair = rm_code_pair(2, 4, 6)?;
    let sigma = snr_b_to_sigma(3.5, 64, pair.code().k())?;
    let mut decoders = Vec::new();
    for mode in [TrellisMode::Explicit, TrellisMode::Lazy] {
        let start = Instant::now();
        decoders.push(TwoPhaseDecoder::with_mode(pair.clone(), mode)?);
        println!("{mode:?} setup: {:.3} s", start.elapsed().as_secs_f64());
    }
    let mut times = [0.0; 2];
    let mut identical = 0;
    let trials = 300;
    for seed in 0..trials {
        let m = transmit(&BinaryVector::zeros(64), sigma, seed).metrics();
        let mut reports = Vec::new();
        for (d, t) in decoders.iter().zip(times.iter_mut()) {
            let start = Instant::now();
            reports.push(d.decode(&m)?);
            *t += start.elapsed().as_secs_f64();
        }
        identical += (reports[0] == reports[1]) as u64;
    }
    println!("identical reports: {identical}/{trials}");
    println!(
        "decode time explicit {:.3} s, lazy {:.3} s",
        times[0], times[1]
    );
    Ok(())
}
