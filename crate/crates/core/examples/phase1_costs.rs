//! The backward Viterbi cost-to-go table on a small supertrellis, checked
//! against exhaustive path enumeration.

use tpmlsd::channel::BitMetrics;
use tpmlsd::codes::rm_code_pair;
use tpmlsd::oracle::exhaustive_backward_costs;
use tpmlsd::phase1::{backward_viterbi, consistency_violations};
use tpmlsd::Trellis;

fn main() -> tpmlsd::Result<()> {
    let pair = rm_code_pair(1, 2, 4)?;
    let sup = Trellis::build(pair.supercode().parity_check())?;
    let r = [
        0.9, -0.2, 1.3, 0.4, -1.1, 0.7, 0.05, 1.6, -0.3, 0.8, 1.0, -0.6, 0.2, 1.2, 0.9, -1.4,
    ];
    let m = BitMetrics::from_received(&r);

    let table = backward_viterbi(&sup, &m)?;
    let oracle = exhaustive_backward_costs(&sup, &m)?;
    for level in -1..sup.n() as isize {
        let row: Vec<String> = table
            .level(level)
            .iter()
            .map(|c| format!("{c:.2}"))
            .collect();
        println!("level {level:>2}: {}", row.join(" "));
    }
    println!(
        "\nroot cost (least metric in the supercode): {:.4}",
        table.root_cost()
    );
    println!("phase-1 metric evaluations: {}", table.metric_evals());
    println!(
        "max |Viterbi - enumeration|: {:e}",
        table.max_abs_diff(&oracle)
    );
    println!(
        "consistency violations: {}",
        consistency_violations(&sup, &m, &table, 1e-12)
    );
    Ok(())
}
