//! Backward Viterbi over the supertrellis.
//!
//! `c(s̄_ℓ)` is the least metric of any backward path from the all-zero sink
//! at level `n − 1` down to `s̄_ℓ`, covering the labels at levels
//! `ℓ + 1 ..= n − 1`. The search in [`crate::phase2`] uses it as the exact
//! cost-to-go within the supercode.

use crate::channel::BitMetrics;
use crate::error::{Error, Result};
use crate::gf2::BinaryVector;
use crate::trellis::Trellis;

/// Cost-to-go values for every supertrellis state, indexed by level and
/// dense state index.
#[derive(Clone, Debug, PartialEq)]
pub struct CostToGoTable {
    /// `values[ℓ + 1][i]` is `c` of state `i` at level `ℓ`.
    values: Vec<Vec<f64>>,
    metric_evals: u64,
}

impl CostToGoTable {
    pub(crate) fn from_values(values: Vec<Vec<f64>>, metric_evals: u64) -> Self {
        Self {
            values,
            metric_evals,
        }
    }

    /// Number of branch-metric computations spent building the table.
    pub fn metric_evals(&self) -> u64 {
        self.metric_evals
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    #[inline]
    pub fn get(&self, level: isize, index: u32) -> f64 {
        self.values[(level + 1) as usize][index as usize]
    }

    pub fn level(&self, level: isize) -> &[f64] {
        &self.values[(level + 1) as usize]
    }

    /// Looks a state up by syndrome.
    pub fn lookup(&self, sup: &Trellis, level: isize, syndrome: &BinaryVector) -> Result<f64> {
        let i = sup
            .state_index(level, syndrome)
            .ok_or(Error::UnknownState { level })?;
        Ok(self.get(level, i))
    }

    /// Cost of the best supercode word: `c` at the root.
    pub fn root_cost(&self) -> f64 {
        self.values[0][0]
    }

    /// Largest absolute difference against another table over the same trellis.
    pub fn max_abs_diff(&self, other: &CostToGoTable) -> f64 {
        self.values
            .iter()
            .flatten()
            .zip(other.values.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Runs the backward Viterbi pass over `sup`, one metric evaluation per branch.
pub fn backward_viterbi(sup: &Trellis, m: &BitMetrics) -> Result<CostToGoTable> {
    let n = sup.n();
    if m.len() != n {
        return Err(Error::Dimension(format!(
            "{} metrics for a trellis of length {n}",
            m.len()
        )));
    }
    let mut values: Vec<Vec<f64>> = (-1..n as isize)
        .map(|level| vec![f64::INFINITY; sup.num_states(level)])
        .collect();
    // after expurgation the sink holds only the all-zero state
    values[n].fill(0.0);
    let mut evals = 0u64;
    for level in (0..n).rev() {
        let (lower, upper) = values.split_at_mut(level + 1);
        let (into, from) = (&upper[0], &mut lower[level]);
        let cost = [m.cost(level, 0), m.cost(level, 1)];
        for b in sup.branches(level) {
            let candidate = into[b.to as usize] + cost[b.label as usize];
            evals += 1;
            let slot = &mut from[b.from as usize];
            if candidate < *slot {
                *slot = candidate;
            }
        }
    }
    Ok(CostToGoTable {
        values,
        metric_evals: evals,
    })
}

/// Counts supertrellis branches violating `c(s̄_ℓ) ≤ c(s̄_{ℓ+1}) + M(x)`
/// beyond `slack`.
pub fn consistency_violations(
    sup: &Trellis,
    m: &BitMetrics,
    table: &CostToGoTable,
    slack: f64,
) -> usize {
    (0..sup.n())
        .map(|level| {
            sup.branches(level)
                .iter()
                .filter(|b| {
                    let here = table.get(level as isize - 1, b.from);
                    let there = table.get(level as isize, b.to) + m.cost(level, b.label);
                    here > there + slack
                })
                .count()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BinaryMatrix;

    fn spc3() -> Trellis {
        Trellis::build(&BinaryMatrix::from_strs(&["111"])).unwrap()
    }

    #[test]
    fn single_parity_check_costs() {
        // enumerated by hand from the four even-weight words and their suffixes
        let sup = spc3();
        let m = BitMetrics::new(BinaryVector::from_bits(&[1, 0, 0]), vec![1.0, 2.0, 3.0]).unwrap();
        let table = backward_viterbi(&sup, &m).unwrap();
        let c = |level: isize, s: u8| {
            table
                .lookup(&sup, level, &BinaryVector::from_bits(&[s]))
                .unwrap()
        };
        assert_eq!(c(2, 0), 0.0);
        assert_eq!((c(1, 0), c(1, 1)), (0.0, 3.0));
        assert_eq!((c(0, 0), c(0, 1)), (0.0, 2.0));
        assert_eq!(c(-1, 0), 1.0);
        assert_eq!(table.root_cost(), 1.0);
        assert_eq!(table.metric_evals(), sup.total_branches() as u64);
        assert_eq!(consistency_violations(&sup, &m, &table, 0.0), 0);
    }

    #[test]
    fn all_zero_hard_decision_is_free() {
        let sup = Trellis::build(&BinaryMatrix::from_strs(&["1011100", "1101010"])).unwrap();
        let m = BitMetrics::new(
            BinaryVector::zeros(7),
            vec![0.3, 1.0, 2.0, 0.1, 5.0, 0.7, 1.1],
        )
        .unwrap();
        let table = backward_viterbi(&sup, &m).unwrap();
        let zero = BinaryVector::zeros(2);
        for level in -1..7isize {
            assert_eq!(table.lookup(&sup, level, &zero).unwrap(), 0.0);
        }
    }

    #[test]
    fn length_mismatch() {
        let m = BitMetrics::from_received(&[1.0, 1.0]);
        assert!(backward_viterbi(&spc3(), &m).is_err());
    }

    #[test]
    fn unknown_state_lookup() {
        let sup = spc3();
        let table = backward_viterbi(&sup, &BitMetrics::from_received(&[1.0; 3])).unwrap();
        let err = table.lookup(&sup, 2, &BinaryVector::from_bits(&[1]));
        assert!(matches!(err, Err(Error::UnknownState { level: 2 })));
    }
}
