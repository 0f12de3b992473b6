//! Brute-force references for checking the decoders.
//!
//! These are correctness anchors, not fast paths: exhaustive ML decoding by
//! listing every codeword, cost-to-go tables by listing every supertrellis
//! path, and a uniform-cost (`h ≡ 0`) search.

use crate::channel::BitMetrics;
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BinaryVector;
use crate::phase1::CostToGoTable;
use crate::phase2::{priority_first_search, DecodeReport, SearchObserver, ZeroHeuristic};
use crate::trellis::{enumerate_paths, Trellis};

/// Largest code dimension [`brute_force_ml`] will enumerate.
pub const MAX_BRUTE_FORCE_K: usize = 20;

/// Largest supercode dimension [`exhaustive_backward_costs`] will enumerate.
pub const MAX_EXHAUSTIVE_SUPER_K: usize = 12;

/// Two metrics closer than this (relative) count as a tie.
const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct BruteForceResult {
    pub codeword: BinaryVector,
    pub metric: f64,
    pub num_minimizers: u64,
    /// Bit metrics summed across all codewords.
    pub metric_evals: u64,
}

/// Exhaustive ML decoding over all `2^k` codewords, visited in Gray-code
/// order of the information bits. Among tied minimisers the first visited
/// is returned.
pub fn brute_force_ml(code: &LinearCode, m: &BitMetrics) -> Result<BruteForceResult> {
    let (n, k) = (code.n(), code.k());
    if k > MAX_BRUTE_FORCE_K {
        return Err(Error::EnumerationGuard {
            dimension: k,
            limit: MAX_BRUTE_FORCE_K,
        });
    }
    if m.len() != n {
        return Err(Error::Dimension(format!(
            "{} metrics for a code of length {n}",
            m.len()
        )));
    }
    let g = code.generator();
    let y = m.hard_decision();
    let weights = m.weights();
    let metric_of = |v: &BinaryVector| -> f64 {
        let mut diff = v.clone();
        diff.xor_assign(y);
        diff.ones().fold(0.0, |acc, j| acc + weights[j])
    };

    let mut v = BinaryVector::zeros(n);
    let mut best = (v.clone(), metric_of(&v));
    let mut ties = 1u64;
    for i in 1u64..(1u64 << k) {
        v.xor_assign(g.row(i.trailing_zeros() as usize));
        let metric = metric_of(&v);
        let scale = best.1.abs().max(metric.abs()).max(f64::MIN_POSITIVE);
        if (metric - best.1).abs() <= TIE_TOLERANCE * scale {
            ties += 1;
        } else if metric < best.1 {
            best = (v.clone(), metric);
            ties = 1;
        }
    }
    Ok(BruteForceResult {
        codeword: best.0,
        metric: best.1,
        num_minimizers: ties,
        metric_evals: (n as u64) << k,
    })
}

/// ML decoding by uniform-cost search over the code trellis.
pub fn uniform_cost_decode(code: &LinearCode, t: &Trellis, m: &BitMetrics) -> Result<DecodeReport> {
    uniform_cost_decode_observed(code, t, m, &mut ())
}

pub fn uniform_cost_decode_observed<O: SearchObserver>(
    code: &LinearCode,
    t: &Trellis,
    m: &BitMetrics,
    observer: &mut O,
) -> Result<DecodeReport> {
    if t.n() != code.n() || t.num_checks() != code.parity_check().num_rows() {
        return Err(Error::Dimension("trellis does not match the code".into()));
    }
    let outcome = priority_first_search(t, m, &ZeroHeuristic, observer)?;
    Ok(DecodeReport::from_search(outcome, m, 0))
}

/// Cost-to-go table computed by listing every root-to-sink path of `sup`
/// and taking, for each state it visits, the least suffix metric.
pub fn exhaustive_backward_costs(sup: &Trellis, m: &BitMetrics) -> Result<CostToGoTable> {
    let n = sup.n();
    if m.len() != n {
        return Err(Error::Dimension(format!(
            "{} metrics for a trellis of length {n}",
            m.len()
        )));
    }
    let paths = sup.count_paths();
    if paths > 1u64 << MAX_EXHAUSTIVE_SUPER_K {
        return Err(Error::EnumerationGuard {
            dimension: 63 - paths.leading_zeros() as usize,
            limit: MAX_EXHAUSTIVE_SUPER_K,
        });
    }
    let mut values: Vec<Vec<f64>> = (-1..n as isize)
        .map(|level| vec![f64::INFINITY; sup.num_states(level)])
        .collect();
    let mut evals = 0u64;
    for word in enumerate_paths(sup)? {
        // states along the path from the syndrome recursion, not the trellis links
        let mut states = Vec::with_capacity(n + 1);
        let mut s = BinaryVector::zeros(sup.num_checks());
        states.push(s.clone());
        for j in 0..n {
            if word.get(j) {
                s.xor_assign(sup.column(j));
            }
            states.push(s.clone());
        }
        let mut suffix = 0.0;
        for level in (-1..n as isize).rev() {
            let idx = sup
                .state_index(level, &states[(level + 1) as usize])
                .ok_or(Error::UnknownState { level })?;
            let slot = &mut values[(level + 1) as usize][idx as usize];
            if suffix < *slot {
                *slot = suffix;
            }
            if level >= 0 {
                suffix += m.cost(level as usize, word.bit(level as usize));
                evals += 1;
            }
        }
    }
    Ok(CostToGoTable::from_values(values, evals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::path_metric;
    use crate::gf2::BinaryMatrix;
    use crate::phase1::backward_viterbi;

    fn spc3() -> LinearCode {
        LinearCode::from_parity_check(BinaryMatrix::from_strs(&["111"])).unwrap()
    }

    #[test]
    fn hard_decision_codeword_has_zero_metric() {
        let code = spc3();
        let m = BitMetrics::new(BinaryVector::from_bits(&[1, 1, 0]), vec![0.5, 0.7, 0.2]).unwrap();
        let r = brute_force_ml(&code, &m).unwrap();
        assert_eq!(r.codeword.to_string(), "110");
        assert_eq!(r.metric, 0.0);
        assert!(r.num_minimizers >= 1);
    }

    #[test]
    fn spc_hand_enumeration() {
        // {000: 1, 011: 6, 101: 3, 110: 2}
        let code = spc3();
        let m = BitMetrics::new(BinaryVector::from_bits(&[1, 0, 0]), vec![1.0, 2.0, 3.0]).unwrap();
        let r = brute_force_ml(&code, &m).unwrap();
        assert_eq!(r.codeword.to_string(), "000");
        assert_eq!(r.metric, 1.0);
        assert_eq!(r.num_minimizers, 1);
        for (w, expect) in [("011", 6.0), ("101", 3.0), ("110", 2.0)] {
            assert_eq!(
                path_metric(&BinaryVector::parse01(w).unwrap(), &m).unwrap(),
                expect
            );
        }
    }

    #[test]
    fn zero_weights_tie_everything() {
        let code = LinearCode::from_parity_check(BinaryMatrix::from_strs(&[
            "1011100", "1101010", "0111001",
        ]))
        .unwrap();
        let m = BitMetrics::new(BinaryVector::zeros(7), vec![0.0; 7]).unwrap();
        let r = brute_force_ml(&code, &m).unwrap();
        assert_eq!(r.metric, 0.0);
        assert_eq!(r.num_minimizers, 16);
    }

    #[test]
    fn guard_is_a_hard_error() {
        let pair = crate::codes::rm_code_pair(2, 4, 6).unwrap();
        let m = BitMetrics::from_received(&[1.0; 64]);
        assert!(matches!(
            brute_force_ml(pair.code(), &m),
            Err(Error::EnumerationGuard { dimension: 22, .. })
        ));
        let sup = Trellis::build(pair.supercode().parity_check()).unwrap();
        assert!(matches!(
            exhaustive_backward_costs(&sup, &m),
            Err(Error::EnumerationGuard { .. })
        ));
    }

    #[test]
    fn exhaustive_costs_match_spc_example() {
        let sup = Trellis::build(&BinaryMatrix::from_strs(&["111"])).unwrap();
        let m = BitMetrics::new(BinaryVector::from_bits(&[1, 0, 0]), vec![1.0, 2.0, 3.0]).unwrap();
        let oracle = exhaustive_backward_costs(&sup, &m).unwrap();
        let dp = backward_viterbi(&sup, &m).unwrap();
        assert_eq!(oracle.max_abs_diff(&dp), 0.0);
        assert_eq!(oracle.root_cost(), 1.0);
    }

    #[test]
    fn exhaustive_costs_all_zero() {
        let sup = Trellis::build(&BinaryMatrix::from_strs(&[
            "11010010", "01101001", "10011100",
        ]))
        .unwrap();
        let m = BitMetrics::new(
            BinaryVector::zeros(8),
            vec![0.4, 1.2, 0.9, 2.2, 0.1, 0.3, 1.7, 0.8],
        )
        .unwrap();
        let oracle = exhaustive_backward_costs(&sup, &m).unwrap();
        let zero = BinaryVector::zeros(3);
        for level in -1..8isize {
            assert_eq!(oracle.lookup(&sup, level, &zero).unwrap(), 0.0);
        }
        assert_eq!(
            oracle.max_abs_diff(&backward_viterbi(&sup, &m).unwrap()),
            0.0
        );
    }

    #[test]
    fn uniform_cost_noiseless() {
        let code = LinearCode::from_parity_check(BinaryMatrix::from_strs(&[
            "1011100", "1101010", "0111001",
        ]))
        .unwrap();
        let t = Trellis::build(code.parity_check()).unwrap();
        let v = BinaryVector::parse01("1000110").unwrap();
        let r: Vec<f64> = v.iter().map(|b| if b == 1 { -1.0 } else { 1.0 }).collect();
        let report = uniform_cost_decode(&code, &t, &BitMetrics::from_received(&r)).unwrap();
        assert_eq!(report.codeword, v);
        assert_eq!(report.metric, 0.0);
        assert_eq!(report.metric_evals_phase1, 0);
    }
}
