//! Bit and word error rates of ML decoding of RM(1,5) over an SNR range,
//! written as CSV to stdout.

use tpmlsd::harness::{run_sweep, write_csv, CodeSpec, SimConfig};

fn main() -> tpmlsd::Result<()> {
    let mut cfg = SimConfig::new(
        CodeSpec::ReedMuller {
            r: 1,
            rbar: 3,
            m: 5,
        },
        vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0],
        20_000,
    );
    cfg.base_seed = 2024;
    let rows = run_sweep(&cfg)?;
    write_csv(&rows, std::io::stdout().lock())
}
