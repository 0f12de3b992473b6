//! Average decoding work for RM(2,6) with supercode RM(4,6) against the
//! published reference counts.
//!
//! cargo run --release --example complexity_table -- 1000

use tpmlsd::harness::{run_sweep, SimConfig, RMLD_METRICS, TABLE1_TPMLSD};

fn main() -> tpmlsd::Result<()> {
    let trials = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(1000);
    let mut cfg = SimConfig::table1(trials);
    cfg.all_zero_codeword = true;
    let rows = run_sweep(&cfg)?;
    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>9} {:>10}",
        "dB", "mean", "reference", "max", "BER", "RMLD"
    );
    for (row, reference) in rows.iter().zip(TABLE1_TPMLSD) {
        println!(
            "{:>6.1} {:>10.1} {:>10.0} {:>10} {:>9.2e} {:>10.0}",
            row.snr_b_db,
            row.mean_metric_evals_total,
            reference,
            row.max_metric_evals_total,
            row.ber,
            RMLD_METRICS
        );
    }
    Ok(())
}
