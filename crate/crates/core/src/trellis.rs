//! Expurgated syndrome trellises.
//!
//! Levels run from `-1` (the root) to `n - 1` (the sink). The state at level
//! `ℓ` of the path for codeword `v` is the partial syndrome
//! `s_ℓ = Σ_{j≤ℓ} v_j h_j`, and the branch entering level `ℓ` carries label
//! `v_ℓ`. Only states lying on some codeword path are kept.
//!
//! A state `s` at level `ℓ` lies on a codeword path exactly when it is
//! reachable from the root and `s ∈ span(h_{ℓ+1}, …, h_{n-1})`, so the
//! forward pass discards unreachable-to-sink states as it goes instead of
//! materialising the full reachable set (which for RM(2,6) would reach
//! 2^26 states at mid-length).

use std::collections::HashMap;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BinaryVector, EchelonBasis};

/// Upper bound on the number of states kept at any single level.
pub const MAX_STATES_PER_LEVEL: usize = 1 << 24;

/// Upper bound on the number of paths `enumerate_paths` will list.
pub const MAX_ENUMERATED_PATHS: u64 = 1 << 20;

const NONE: u32 = u32::MAX;

/// A syndrome state at a given level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrellisState {
    pub syndrome: BinaryVector,
    pub level: isize,
}

impl TrellisState {
    pub fn root(num_checks: usize) -> Self {
        Self {
            syndrome: BinaryVector::zeros(num_checks),
            level: -1,
        }
    }
}

/// A labelled branch between dense state indices of consecutive levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Branch {
    pub from: u32,
    pub to: u32,
    pub label: u8,
}

/// Per-level size summary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LevelStats {
    pub level: isize,
    pub states: usize,
    /// Branches entering this level (zero at level -1).
    pub branches: usize,
}

/// Spans of the column suffixes `h_{ℓ+1}, …, h_{n-1}`, used to decide
/// whether a partial syndrome can still be cancelled to zero.
#[derive(Clone, Debug)]
pub(crate) struct CompletionSpans {
    basis: EchelonBasis,
    /// `dims[ℓ + 1]` is the number of basis vectors spanning the suffix
    /// after level `ℓ`; they are the first ones inserted.
    dims: Vec<usize>,
}

impl CompletionSpans {
    pub(crate) fn new(columns: &[BinaryVector], num_checks: usize) -> Self {
        let n = columns.len();
        let mut basis = EchelonBasis::new(num_checks);
        let mut dims = vec![0; n + 1];
        for level in (-1..n as isize).rev() {
            dims[(level + 1) as usize] = basis.dim();
            if level >= 0 {
                basis.insert(&columns[level as usize]);
            }
        }
        Self { basis, dims }
    }

    #[inline]
    pub(crate) fn completable(&self, level: isize, syndrome: &BinaryVector) -> bool {
        self.basis
            .contains_with_prefix(syndrome, self.dims[(level + 1) as usize])
    }
}

/// An explicit expurgated syndrome trellis with dense per-level state indices.
#[derive(Clone, Debug)]
pub struct Trellis {
    n: usize,
    num_checks: usize,
    columns: Vec<BinaryVector>,
    /// `states[ℓ + 1]`: syndromes at level `ℓ`, in dense-index order.
    states: Vec<Vec<BinaryVector>>,
    index: Vec<HashMap<BinaryVector, u32>>,
    /// `branches[ℓ]`: branches from level `ℓ - 1` into level `ℓ`.
    branches: Vec<Vec<Branch>>,
    /// `next[ℓ + 1][s][label]`: successor index at level `ℓ + 1`, or `NONE`.
    next: Vec<Vec<[u32; 2]>>,
}

impl Trellis {
    /// Builds the expurgated trellis of the code with parity-check matrix `h`.
    pub fn build(h: &BinaryMatrix) -> Result<Self> {
        Self::build_with_limit(h, MAX_STATES_PER_LEVEL)
    }

    pub fn build_with_limit(h: &BinaryMatrix, limit: usize) -> Result<Self> {
        let n = h.num_cols();
        let num_checks = h.num_rows();
        if n == 0 || num_checks == 0 {
            return Err(Error::EmptyMatrix);
        }
        let columns = h.columns();
        let spans = CompletionSpans::new(&columns, num_checks);

        let root = BinaryVector::zeros(num_checks);
        let mut states = vec![vec![root.clone()]];
        let mut index = vec![HashMap::from([(root, 0u32)])];
        let mut branches = Vec::with_capacity(n);
        let mut next = Vec::with_capacity(n + 1);

        for level in 0..n {
            let prev = &states[level];
            let mut cur_states: Vec<BinaryVector> = Vec::new();
            let mut cur_index: HashMap<BinaryVector, u32> = HashMap::new();
            let mut level_branches = Vec::new();
            let mut level_next = vec![[NONE; 2]; prev.len()];
            for (from, s) in prev.iter().enumerate() {
                for label in 0..2u8 {
                    let mut to_syn = s.clone();
                    if label == 1 {
                        to_syn.xor_assign(&columns[level]);
                    }
                    if !spans.completable(level as isize, &to_syn) {
                        continue;
                    }
                    let to = match cur_index.get(&to_syn) {
                        Some(&i) => i,
                        None => {
                            if cur_states.len() >= limit {
                                return Err(Error::TrellisTooLarge {
                                    level: level as isize,
                                    limit,
                                });
                            }
                            let i = cur_states.len() as u32;
                            cur_index.insert(to_syn.clone(), i);
                            cur_states.push(to_syn);
                            i
                        }
                    };
                    level_next[from][label as usize] = to;
                    level_branches.push(Branch {
                        from: from as u32,
                        to,
                        label,
                    });
                }
            }
            next.push(level_next);
            branches.push(level_branches);
            states.push(cur_states);
            index.push(cur_index);
        }
        next.push(vec![[NONE; 2]; states[n].len()]);

        let mut trellis = Trellis {
            n,
            num_checks,
            columns,
            states,
            index,
            branches,
            next,
        };
        trellis.expurgate();
        Ok(trellis)
    }

    /// Backward sweep removing any state without a path to the all-zero sink.
    /// With completion-span pruning during the forward pass this normally
    /// removes nothing.
    fn expurgate(&mut self) {
        let n = self.n;
        let mut alive: Vec<Vec<bool>> = self.states.iter().map(|s| vec![false; s.len()]).collect();
        for (i, s) in self.states[n].iter().enumerate() {
            alive[n][i] = s.is_zero();
        }
        for level in (0..n).rev() {
            for b in &self.branches[level] {
                if alive[level + 1][b.to as usize] {
                    alive[level][b.from as usize] = true;
                }
            }
        }
        if alive.iter().all(|a| a.iter().all(|&x| x)) {
            return;
        }
        // remap every level to its surviving states
        let remap: Vec<Vec<u32>> = alive
            .iter()
            .map(|a| {
                let mut next_id = 0u32;
                a.iter()
                    .map(|&keep| {
                        if keep {
                            next_id += 1;
                            next_id - 1
                        } else {
                            NONE
                        }
                    })
                    .collect()
            })
            .collect();
        for (slot, alive) in alive.iter().enumerate() {
            let kept: Vec<BinaryVector> = self.states[slot]
                .iter()
                .zip(alive)
                .filter(|(_, &a)| a)
                .map(|(s, _)| s.clone())
                .collect();
            self.index[slot] = kept
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i as u32))
                .collect();
            self.states[slot] = kept;
        }
        for level in 0..n {
            let (from_map, to_map) = (&remap[level], &remap[level + 1]);
            self.branches[level] = self.branches[level]
                .iter()
                .filter(|b| from_map[b.from as usize] != NONE && to_map[b.to as usize] != NONE)
                .map(|b| Branch {
                    from: from_map[b.from as usize],
                    to: to_map[b.to as usize],
                    label: b.label,
                })
                .collect();
            let mut level_next = vec![[NONE; 2]; self.states[level].len()];
            for b in &self.branches[level] {
                level_next[b.from as usize][b.label as usize] = b.to;
            }
            self.next[level] = level_next;
        }
        self.next[n] = vec![[NONE; 2]; self.states[n].len()];
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_checks(&self) -> usize {
        self.num_checks
    }

    /// Column `h_j` of the defining parity-check matrix.
    pub fn column(&self, j: usize) -> &BinaryVector {
        &self.columns[j]
    }

    pub fn num_states(&self, level: isize) -> usize {
        self.states[slot(level)].len()
    }

    pub fn states(&self, level: isize) -> &[BinaryVector] {
        &self.states[slot(level)]
    }

    pub fn syndrome(&self, level: isize, index: u32) -> &BinaryVector {
        &self.states[slot(level)][index as usize]
    }

    pub fn state_index(&self, level: isize, syndrome: &BinaryVector) -> Option<u32> {
        self.index.get(slot(level))?.get(syndrome).copied()
    }

    /// Branches entering level `level` (`0 ≤ level ≤ n - 1`).
    pub fn branches(&self, level: usize) -> &[Branch] {
        &self.branches[level]
    }

    /// Successor of state `index` at `level` along `label`, if that branch exists.
    #[inline]
    pub fn successor(&self, level: isize, index: u32, label: u8) -> Option<u32> {
        let to = self.next[slot(level)][index as usize][label as usize];
        (to != NONE).then_some(to)
    }

    pub fn total_branches(&self) -> usize {
        self.branches.iter().map(Vec::len).sum()
    }

    pub fn total_states(&self) -> usize {
        self.states.iter().map(Vec::len).sum()
    }

    pub fn max_states(&self) -> usize {
        self.states.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn level_stats(&self) -> Vec<LevelStats> {
        (-1..self.n as isize)
            .map(|level| LevelStats {
                level,
                states: self.num_states(level),
                branches: if level < 0 {
                    0
                } else {
                    self.branches[level as usize].len()
                },
            })
            .collect()
    }

    /// Number of root-to-sink paths, counted by dynamic programming.
    /// Saturates at `u64::MAX`.
    pub fn count_paths(&self) -> u64 {
        let mut counts = vec![1u64];
        for level in 0..self.n {
            let mut cur = vec![0u64; self.states[level + 1].len()];
            for b in &self.branches[level] {
                cur[b.to as usize] = cur[b.to as usize].saturating_add(counts[b.from as usize]);
            }
            counts = cur;
        }
        counts.iter().fold(0u64, |a, &c| a.saturating_add(c))
    }

    /// For every state of this trellis, the dense index of its projection
    /// (syndrome prefix of length `sup.num_checks()`) in `sup` at the same
    /// level. Fails if a projection is missing from `sup`.
    pub fn project_onto(&self, sup: &Trellis) -> Result<Vec<Vec<u32>>> {
        if sup.n != self.n || sup.num_checks > self.num_checks {
            return Err(Error::Dimension(format!(
                "cannot project a trellis with {} checks over {} levels onto one with {} checks over {}",
                self.num_checks, self.n, sup.num_checks, sup.n
            )));
        }
        let t = sup.num_checks;
        (-1..self.n as isize)
            .map(|level| {
                self.states(level)
                    .iter()
                    .map(|s| {
                        sup.state_index(level, &s.prefix(t))
                            .ok_or(Error::UnknownState { level })
                    })
                    .collect()
            })
            .collect()
    }

    /// Writes one line per branch: `level from_syndrome label to_syndrome`.
    pub fn dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        for level in 0..self.n {
            for b in &self.branches[level] {
                writeln!(
                    out,
                    "{} {} {} {}",
                    level,
                    self.states[level][b.from as usize],
                    b.label,
                    self.states[level + 1][b.to as usize]
                )?;
            }
        }
        Ok(())
    }
}

#[inline]
fn slot(level: isize) -> usize {
    debug_assert!(level >= -1);
    (level + 1) as usize
}

/// A code trellis expanded on demand from the parity-check columns, for
/// codes whose explicit trellis would be too large to store.
#[derive(Clone, Debug)]
pub struct LazyTrellis {
    columns: Vec<BinaryVector>,
    num_checks: usize,
    spans: CompletionSpans,
}

impl LazyTrellis {
    pub fn new(h: &BinaryMatrix) -> Result<Self> {
        if h.num_cols() == 0 || h.num_rows() == 0 {
            return Err(Error::EmptyMatrix);
        }
        let columns = h.columns();
        let spans = CompletionSpans::new(&columns, h.num_rows());
        Ok(Self {
            columns,
            num_checks: h.num_rows(),
            spans,
        })
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn num_checks(&self) -> usize {
        self.num_checks
    }

    /// Successor syndrome at `level + 1`, or `None` when the branch would
    /// leave every codeword path.
    pub fn successor(
        &self,
        level: isize,
        syndrome: &BinaryVector,
        label: u8,
    ) -> Option<BinaryVector> {
        let child_level = level + 1;
        let mut s = syndrome.clone();
        if label == 1 {
            s.xor_assign(&self.columns[child_level as usize]);
        }
        self.spans.completable(child_level, &s).then_some(s)
    }
}

/// Builds the expurgated trellis of `h`.
pub fn build_trellis(h: &BinaryMatrix) -> Result<Trellis> {
    Trellis::build(h)
}

/// Projects a code-trellis state onto the first `t` syndrome components.
pub fn beta_project(s: &TrellisState, t: usize) -> Result<TrellisState> {
    if t > s.syndrome.len() {
        return Err(Error::Dimension(format!(
            "projection onto {t} components of a {}-component syndrome",
            s.syndrome.len()
        )));
    }
    Ok(TrellisState {
        syndrome: s.syndrome.prefix(t),
        level: s.level,
    })
}

/// Lists every root-to-sink label sequence. Refuses trellises with more
/// than [`MAX_ENUMERATED_PATHS`] paths.
pub fn enumerate_paths(t: &Trellis) -> Result<Vec<BinaryVector>> {
    let count = t.count_paths();
    if count > MAX_ENUMERATED_PATHS {
        return Err(Error::EnumerationGuard {
            dimension: 64 - count.leading_zeros() as usize - 1,
            limit: MAX_ENUMERATED_PATHS.trailing_zeros() as usize,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut labels = BinaryVector::zeros(t.n);
    fn walk(
        t: &Trellis,
        level: isize,
        state: u32,
        labels: &mut BinaryVector,
        out: &mut Vec<BinaryVector>,
    ) {
        if level == t.n as isize - 1 {
            out.push(labels.clone());
            return;
        }
        for label in 0..2u8 {
            if let Some(next) = t.successor(level, state, label) {
                labels.set((level + 1) as usize, label == 1);
                walk(t, level + 1, next, labels, out);
            }
        }
        labels.set((level + 1) as usize, false);
    }
    walk(t, -1, 0, &mut labels, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{pair_from_parity_check, rm_code_pair, rm_generator};

    fn hamming74() -> BinaryMatrix {
        BinaryMatrix::from_strs(&["1011100", "1101010", "0111001"])
    }

    /// All length-`n` words with zero syndrome, by exhaustive search.
    fn brute_codewords(h: &BinaryMatrix) -> Vec<BinaryVector> {
        let n = h.num_cols();
        (0u64..1 << n)
            .map(|x| {
                BinaryVector::from_bits(&(0..n).map(|i| ((x >> i) & 1) as u8).collect::<Vec<_>>())
            })
            .filter(|v| h.mat_vec_mul(v).unwrap().is_zero())
            .collect()
    }

    fn sorted(mut v: Vec<BinaryVector>) -> Vec<BinaryVector> {
        v.sort_by(|a, b| a.cmp_lex(b));
        v
    }

    #[test]
    fn single_parity_check_profile() {
        let t = build_trellis(&BinaryMatrix::from_strs(&["111"])).unwrap();
        let profile: Vec<usize> = (-1..3).map(|l| t.num_states(l)).collect();
        assert_eq!(profile, vec![1, 2, 2, 1]);
        assert_eq!(t.count_paths(), 4);
        let words: Vec<String> = sorted(enumerate_paths(&t).unwrap())
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(words, vec!["000", "011", "101", "110"]);
    }

    #[test]
    fn hamming_trellis() {
        let h = hamming74();
        let t = build_trellis(&h).unwrap();
        assert_eq!(t.count_paths(), 16);
        assert_eq!(t.max_states(), 8);
        // max states equals the number of distinct syndrome prefixes over codewords
        let codewords = brute_codewords(&h);
        let mut widest = 0;
        for level in 0..7 {
            let mut prefixes: Vec<BinaryVector> = codewords
                .iter()
                .map(|v| {
                    let mut s = BinaryVector::zeros(3);
                    for j in 0..=level {
                        if v.get(j) {
                            s.xor_assign(&h.column(j));
                        }
                    }
                    s
                })
                .collect();
            prefixes.sort_by(|a, b| a.cmp_lex(b));
            prefixes.dedup();
            assert_eq!(prefixes.len(), t.num_states(level as isize));
            widest = widest.max(prefixes.len());
        }
        assert_eq!(widest, 8);
        assert_eq!(sorted(enumerate_paths(&t).unwrap()), sorted(codewords));
    }

    #[test]
    fn rm13_paths_match_generator_span() {
        let pair = rm_code_pair(1, 2, 3).unwrap();
        let t = build_trellis(pair.code().parity_check()).unwrap();
        let g = rm_generator(1, 3).unwrap();
        let span: Vec<BinaryVector> = (0u8..16)
            .map(|u| {
                let mut v = BinaryVector::zeros(8);
                for i in 0..4 {
                    if (u >> i) & 1 == 1 {
                        v.xor_assign(g.row(i));
                    }
                }
                v
            })
            .collect();
        assert_eq!(sorted(enumerate_paths(&t).unwrap()), sorted(span));
    }

    #[test]
    fn empty_matrix_rejected() {
        assert!(matches!(
            build_trellis(&BinaryMatrix::zeros(0, 5)),
            Err(Error::EmptyMatrix)
        ));
    }

    #[test]
    fn memory_guard() {
        let err = Trellis::build_with_limit(&hamming74(), 4).unwrap_err();
        assert!(matches!(err, Error::TrellisTooLarge { limit: 4, .. }));
    }

    #[test]
    fn branch_consistency_and_expurgation() {
        let pair = rm_code_pair(2, 4, 6).unwrap();
        let t = build_trellis(pair.code().parity_check()).unwrap();
        assert_eq!(t.num_states(-1), 1);
        assert_eq!(t.num_states(63), 1);
        assert!(t.states(63)[0].is_zero());
        for level in 0..t.n() {
            for b in t.branches(level) {
                let mut expect = t.syndrome(level as isize - 1, b.from).clone();
                if b.label == 1 {
                    expect.xor_assign(t.column(level));
                }
                assert_eq!(&expect, t.syndrome(level as isize, b.to));
            }
        }
        assert_eq!(t.count_paths(), 1 << 22);
        // every state has an outgoing branch except at the sink
        for level in -1..63isize {
            for i in 0..t.num_states(level) as u32 {
                assert!(t.successor(level, i, 0).is_some() || t.successor(level, i, 1).is_some());
            }
        }
    }

    #[test]
    fn beta_projection() {
        let s = TrellisState {
            syndrome: BinaryVector::from_bits(&[1, 0, 1, 1, 0]),
            level: 3,
        };
        let p = beta_project(&s, 2).unwrap();
        assert_eq!(p.syndrome.to_bits(), vec![1, 0]);
        assert_eq!(p.level, 3);
        let zero = TrellisState::root(5);
        assert!(beta_project(&zero, 3).unwrap().syndrome.is_zero());
        assert!(beta_project(&s, 6).is_err());
    }

    #[test]
    fn projection_on_hamming_pair() {
        let pair = pair_from_parity_check(&hamming74(), 1).unwrap();
        let t = build_trellis(pair.code().parity_check()).unwrap();
        let sup = build_trellis(pair.supercode().parity_check()).unwrap();
        let hbar = pair.supercode().parity_check();
        for level in 0..t.n() {
            for b in t.branches(level) {
                let from = beta_project(
                    &TrellisState {
                        syndrome: t.syndrome(level as isize - 1, b.from).clone(),
                        level: level as isize - 1,
                    },
                    1,
                )
                .unwrap();
                let to = t.syndrome(level as isize, b.to).prefix(1);
                let mut expect = from.syndrome.clone();
                if b.label == 1 {
                    expect.xor_assign(&hbar.column(level));
                }
                assert_eq!(expect, to);
                // the projected branch exists in the supertrellis
                let fi = sup.state_index(level as isize - 1, &from.syndrome).unwrap();
                let ti = sup.state_index(level as isize, &to).unwrap();
                assert_eq!(sup.successor(level as isize - 1, fi, b.label), Some(ti));
            }
        }
        assert!(t.project_onto(&sup).is_ok());
    }

    #[test]
    fn lazy_matches_explicit() {
        let pair = rm_code_pair(1, 2, 4).unwrap();
        let h = pair.code().parity_check();
        let t = build_trellis(h).unwrap();
        let lazy = LazyTrellis::new(h).unwrap();
        for level in -1..(t.n() as isize - 1) {
            for (i, s) in t.states(level).iter().enumerate() {
                for label in 0..2 {
                    let explicit = t
                        .successor(level, i as u32, label)
                        .map(|j| t.syndrome(level + 1, j).clone());
                    assert_eq!(lazy.successor(level, s, label), explicit);
                }
            }
        }
    }

    #[test]
    fn dump_format() {
        let t = build_trellis(&BinaryMatrix::from_strs(&["111"])).unwrap();
        let mut buf = Vec::new();
        t.dump(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let first: Vec<&str> = text.lines().next().unwrap().split(' ').collect();
        assert_eq!(first, vec!["0", "0", "0", "0"]);
        assert_eq!(text.lines().count(), t.total_branches());
    }
}
