//! State and branch counts per level of the code trellis and supertrellis.
//!
//! cargo run --release --example trellis_profile -- 2 4 6

use tpmlsd::codes::rm_code_pair;
use tpmlsd::harness::profile_pair;

fn main() -> tpmlsd::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (r, rbar, m) = match args[..] {
        [r, rbar, m] => (r, rbar, m),
        _ => (2, 4, 6),
    };
    let p = profile_pair(&rm_code_pair(r, rbar, m)?)?;
    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10}",
        "level", "states", "branches", "sup-states", "sup-branch"
    );
    for (c, s) in p.code.levels.iter().zip(&p.supercode.levels) {
        println!(
            "{:>6} {:>10} {:>10} {:>10} {:>10}",
            c.level, c.states, c.branches, s.states, s.branches
        );
    }
    println!(
        "\ncode trellis: max {} states, {} states, {} branches",
        p.code.max_states, p.code.total_states, p.code.total_branches
    );
    println!(
        "supertrellis: max {} states, {} states, {} branches (= phase-1 metric evaluations)",
        p.supercode.max_states, p.supercode.total_states, p.supercode.total_branches
    );
    Ok(())
}
