//! Watches the priority-first search on random code pairs: `f` never
//! decreases along a path and states close in nondecreasing `f` order.

use tpmlsd::rng::CounterRng;
use tpmlsd::verify::{check_pair, random_code_pair, random_metrics};

fn main() -> tpmlsd::Result<()> {
    let mut rng = CounterRng::new(7);
    let mut failures = 0;
    for i in 0..25 {
        let pair = random_code_pair(&mut rng, (6, 16), 12)?;
        let m = random_metrics(&mut rng, pair.n());
        let c = check_pair(&pair, &m, 1e-12)?;
        failures += !c.passed(1e-12) as u32;
        println!(
            "#{i:<2} n={:<2} k={:<2} k̄={:<2} proj={} table={:.1e} cons={} mono={} order={}",
            c.n,
            c.k,
            c.kbar,
            c.projection_violations,
            c.table_max_abs_diff,
            c.consistency_violations,
            c.monotonicity_violations,
            c.close_order_violations
        );
    }
    println!("{failures} pairs with violations");
    Ok(())
}
