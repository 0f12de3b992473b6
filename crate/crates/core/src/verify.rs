//! Structural and numerical invariant checks over code pairs, used by the
//! self-test and the acceptance suite.

use serde::Serialize;

use crate::channel::BitMetrics;
use crate::codes::{pair_from_parity_check, CodePair, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BinaryVector};
use crate::oracle::exhaustive_backward_costs;
use crate::phase1::{backward_viterbi, consistency_violations};
use crate::phase2::{pfsa_decode_observed, InvariantRecorder};
use crate::rng::CounterRng;
use crate::trellis::{enumerate_paths, Trellis};

/// Code-trellis branches whose projection is not a supertrellis branch with
/// the same label.
pub fn projection_violations(code: &Trellis, sup: &Trellis) -> Result<u64> {
    if code.n() != sup.n() || sup.num_checks() > code.num_checks() {
        return Err(Error::Dimension("trellises cannot be paired".into()));
    }
    let t = sup.num_checks();
    let project =
        |level: isize, idx: u32| sup.state_index(level, &code.syndrome(level, idx).prefix(t));
    let mut bad = 0;
    for level in 0..code.n() {
        for b in code.branches(level) {
            let from = project(level as isize - 1, b.from);
            let to = project(level as isize, b.to);
            let ok = match (from, to) {
                (Some(f), Some(to)) => sup.successor(level as isize - 1, f, b.label) == Some(to),
                _ => false,
            };
            bad += !ok as u64;
        }
    }
    Ok(bad)
}

/// Checks that the trellis spells exactly the code: `2^k` distinct paths,
/// each with zero syndrome. Returns the number of offending paths, with a
/// count mismatch reported as an error.
pub fn codeword_path_violations(t: &Trellis, code: &LinearCode) -> Result<u64> {
    let paths = enumerate_paths(t)?;
    let expected = 1u64 << code.k();
    if paths.len() as u64 != expected {
        return Err(Error::InvalidCode(format!(
            "trellis has {} paths, code has {expected} codewords",
            paths.len()
        )));
    }
    let mut sorted: Vec<String> = paths.iter().map(|p| p.to_string()).collect();
    sorted.sort();
    sorted.dedup();
    let duplicates = paths.len() - sorted.len();
    let mut bad = duplicates as u64;
    for p in &paths {
        bad += !code.is_codeword(p)? as u64;
    }
    Ok(bad)
}

/// Outcome of every invariant check on one pair and one received word.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairCheck {
    pub n: usize,
    pub k: usize,
    pub kbar: usize,
    pub projection_violations: u64,
    pub table_max_abs_diff: f64,
    pub consistency_violations: u64,
    pub monotonicity_violations: u64,
    pub close_order_violations: u64,
    pub worst_f_decrease: f64,
}

impl PairCheck {
    /// Whether all checks hold at tolerance `tol` on the table difference.
    pub fn passed(&self, tol: f64) -> bool {
        self.projection_violations == 0
            && self.table_max_abs_diff <= tol
            && self.consistency_violations == 0
            && self.monotonicity_violations == 0
            && self.close_order_violations == 0
    }
}

/// Runs the projection, table, consistency and `f`-monotonicity checks.
pub fn check_pair(pair: &CodePair, m: &BitMetrics, slack: f64) -> Result<PairCheck> {
    let code_t = Trellis::build(pair.code().parity_check())?;
    let sup_t = Trellis::build(pair.supercode().parity_check())?;
    let table = backward_viterbi(&sup_t, m)?;
    let oracle = exhaustive_backward_costs(&sup_t, m)?;
    let mut rec = InvariantRecorder::new(slack);
    pfsa_decode_observed(pair, &code_t, &sup_t, m, &mut rec)?;
    Ok(PairCheck {
        n: pair.n(),
        k: pair.code().k(),
        kbar: pair.supercode().k(),
        projection_violations: projection_violations(&code_t, &sup_t)?,
        table_max_abs_diff: table.max_abs_diff(&oracle),
        consistency_violations: consistency_violations(&sup_t, m, &table, slack) as u64,
        monotonicity_violations: rec.monotonicity_violations,
        close_order_violations: rec.close_order_violations,
        worst_f_decrease: rec.worst_decrease,
    })
}

/// A uniformly random `rows × n` matrix of full row rank.
pub fn random_full_rank(rng: &mut CounterRng, rows: usize, n: usize) -> Result<BinaryMatrix> {
    if rows > n {
        return Err(Error::Dimension(format!(
            "cannot have rank {rows} with {n} columns"
        )));
    }
    loop {
        let vecs: Vec<BinaryVector> = (0..rows)
            .map(|_| BinaryVector::from_bits(&(0..n).map(|_| rng.next_bit()).collect::<Vec<_>>()))
            .collect();
        let h = BinaryMatrix::from_rows(n, vecs)?;
        if h.is_full_row_rank() {
            return Ok(h);
        }
    }
}

/// A random pair with `n` in `n_range`, supercode dimension at most
/// `max_kbar`, and `1 <= k < kbar <= n - 1`.
pub fn random_code_pair(
    rng: &mut CounterRng,
    n_range: (usize, usize),
    max_kbar: usize,
) -> Result<CodePair> {
    let (lo, hi) = n_range;
    if lo < 3 || hi < lo || max_kbar < 2 {
        return Err(Error::Config(
            "need n >= 3 and room for 1 <= k < kbar < n".into(),
        ));
    }
    let pick = |rng: &mut CounterRng, a: usize, b: usize| {
        a + (rng.next_u64() % (b - a + 1) as u64) as usize
    };
    let n = pick(rng, lo, hi);
    let kbar = pick(rng, 2, max_kbar.min(n - 1));
    let k = pick(rng, 1, kbar - 1);
    let h = random_full_rank(rng, n - k, n)?;
    pair_from_parity_check(&h, n - kbar)
}

/// Random soft-decision metrics: received values uniform on `(-2, 2)`.
pub fn random_metrics(rng: &mut CounterRng, n: usize) -> BitMetrics {
    let r: Vec<f64> = (0..n).map(|_| 4.0 * rng.next_f64() - 2.0).collect();
    BitMetrics::from_received(&r)
}
