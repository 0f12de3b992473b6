//! Loads a code from a parity-check file and decodes a received word read
//! from disk.
//!
//! cargo run --example parity_check_file -- examples/data/hamming74.txt 1 examples/data/hamming74_received.txt

use std::path::PathBuf;

use tpmlsd::codes::pair_from_parity_check;
use tpmlsd::harness::{decode_once, load_parity_check, load_received, DecoderKind};

fn main() -> tpmlsd::Result<()> {
    let here = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let mut args = std::env::args().skip(1);
    let h_path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or(here.join("hamming74.txt"));
    let prefix: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    let r_path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or(here.join("hamming74_received.txt"));

    let h = load_parity_check(&h_path)?;
    let pair = pair_from_parity_check(&h, prefix)?;
    println!(
        "code ({}, {}) with supercode dimension {}",
        pair.n(),
        pair.code().k(),
        pair.supercode().k()
    );
    let r = load_received(&r_path)?;
    for kind in [DecoderKind::Tpmlsd, DecoderKind::Brute] {
        let rep = decode_once(pair.clone(), kind, &r)?;
        println!(
            "{kind:?}: {} metric {:.3} evals {}",
            rep.codeword, rep.metric, rep.metric_evals_total
        );
    }
    Ok(())
}
