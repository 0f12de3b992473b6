//! Sends one random codeword of RM(2,6) over AWGN and decodes it with the
//! two-phase decoder, printing the JSON report.
//!
//! cargo run --release --example decode_word -- 3.5 17

use tpmlsd::channel::{path_metric, snr_b_to_sigma, transmit};
use tpmlsd::codes::rm_code_pair;
use tpmlsd::harness::trial_codeword;
use tpmlsd::TwoPhaseDecoder;

fn main() -> tpmlsd::Result<()> {
    let mut args = std::env::args().skip(1);
    let snr_db: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(3.0);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);

    let pair = rm_code_pair(2, 4, 6)?;
    let sigma = snr_b_to_sigma(snr_db, pair.n(), pair.code().k())?;
    let sent = trial_codeword(&pair, seed, false)?;
    let rx = transmit(&sent, sigma, seed);
    let metrics = rx.metrics();

    let decoder = TwoPhaseDecoder::new(pair)?;
    let report = decoder.decode(&metrics)?;

    println!("sent      {sent}");
    println!("hard dec. {}", rx.y);
    println!("decoded   {}", report.codeword);
    println!(
        "metric of sent word {:.6}, of decoded word {:.6}",
        path_metric(&sent, &metrics)?,
        report.metric
    );
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
