//! Builds Reed-Muller code/supercode pairs and prints their shape.
//!
//! cargo run --example rm_code_pair -- 2 4 6

use tpmlsd::codes::{rm_code_pair, rm_dimension};

fn main() -> tpmlsd::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (r, rbar, m) = match args[..] {
        [r, rbar, m] => (r, rbar, m),
        _ => (1, 2, 4),
    };
    let pair = rm_code_pair(r, rbar, m)?;
    let (code, sup) = (pair.code(), pair.supercode());
    println!(
        "C  = RM({r},{m}): n = {}, k = {} (formula {})",
        code.n(),
        code.k(),
        rm_dimension(r, m)?
    );
    println!("C̄  = RM({rbar},{m}): k̄ = {}", sup.k());
    println!(
        "H̄ has {} rows, P has {} rows",
        pair.num_super_checks(),
        pair.p_rows().num_rows()
    );
    if code.n() <= 32 {
        println!("\nH = [H̄; P]:");
        for (i, row) in code.parity_check().rows().iter().enumerate() {
            let tag = if i < pair.num_super_checks() {
                "H̄"
            } else {
                "P"
            };
            println!("  {tag:2} {row}");
        }
    }
    let g = code.generator();
    let contained = g.mul_transpose(sup.parity_check())?.is_zero();
    println!("\nG·H̄ᵀ = 0: {contained}");
    Ok(())
}
