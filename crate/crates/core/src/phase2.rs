//! Priority-first search over the code trellis.
//!
//! Every open path carries `f = g + h`, where `g` is its accumulated metric
//! and `h` is a lower bound on the metric of any completion. With `h` taken
//! from the supercode cost-to-go table, `f` never decreases along a path,
//! so the search below returns a minimum-metric codeword.
//!
//! The loop, per popped path:
//! 1. skip it if its `(level, state)` was already closed, otherwise close it;
//! 2. evaluate `f` for each successor and drop those with `f ≥ ρ`;
//! 3. among full-length survivors keep the best as the new incumbent, `ρ`
//!    becoming its metric;
//! 4. push the rest.
//!
//! The search ends when the open stack is empty.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::hash::Hash;

use serde::Serialize;

use crate::channel::BitMetrics;
use crate::codes::CodePair;
use crate::error::{Error, Result};
use crate::gf2::BinaryVector;
use crate::phase1::{backward_viterbi, CostToGoTable};
use crate::trellis::{beta_project, LazyTrellis, Trellis, TrellisState};

/// Read-only successor access to a code trellis.
pub trait CodeTrellisView {
    type State: Clone + Eq + Hash;

    fn n(&self) -> usize;

    fn root(&self) -> Self::State;

    /// Successor of `state` at `level` along `label`, if the branch exists.
    fn successor(&self, level: isize, state: &Self::State, label: u8) -> Option<Self::State>;
}

impl CodeTrellisView for Trellis {
    type State = u32;

    fn n(&self) -> usize {
        Trellis::n(self)
    }

    fn root(&self) -> u32 {
        0
    }

    #[inline]
    fn successor(&self, level: isize, state: &u32, label: u8) -> Option<u32> {
        Trellis::successor(self, level, *state, label)
    }
}

impl CodeTrellisView for LazyTrellis {
    type State = BinaryVector;

    fn n(&self) -> usize {
        LazyTrellis::n(self)
    }

    fn root(&self) -> BinaryVector {
        BinaryVector::zeros(self.num_checks())
    }

    fn successor(&self, level: isize, state: &BinaryVector, label: u8) -> Option<BinaryVector> {
        LazyTrellis::successor(self, level, state, label)
    }
}

/// Lower bound on the completion metric of a path ending in `state`.
pub trait Heuristic<S> {
    /// `None` means the state is unknown to the heuristic, which indicates
    /// mismatched trellises.
    fn h(&self, level: isize, state: &S) -> Option<f64>;
}

/// `h ≡ 0`: plain uniform-cost search.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroHeuristic;

impl<S> Heuristic<S> for ZeroHeuristic {
    fn h(&self, _level: isize, _state: &S) -> Option<f64> {
        Some(0.0)
    }
}

/// `h = c(β(s))` for an explicit code trellis, through a precomputed
/// state-to-supertrellis projection.
pub struct ProjectedCost<'a> {
    pub table: &'a CostToGoTable,
    pub projection: &'a [Vec<u32>],
}

impl Heuristic<u32> for ProjectedCost<'_> {
    #[inline]
    fn h(&self, level: isize, state: &u32) -> Option<f64> {
        let sup = *self.projection[(level + 1) as usize].get(*state as usize)?;
        Some(self.table.get(level, sup))
    }
}

/// `h = c(β(s))` for syndromes expanded on the fly.
pub struct SyndromeProjectedCost<'a> {
    pub table: &'a CostToGoTable,
    pub supertrellis: &'a Trellis,
}

impl Heuristic<BinaryVector> for SyndromeProjectedCost<'_> {
    fn h(&self, level: isize, state: &BinaryVector) -> Option<f64> {
        let t = self.supertrellis.num_checks();
        let i = self.supertrellis.state_index(level, &state.prefix(t))?;
        Some(self.table.get(level, i))
    }
}

/// Hooks into the search, used to check its invariants.
pub trait SearchObserver {
    /// A successor was evaluated.
    fn on_extend(&mut self, _parent_level: isize, _parent_f: f64, _child_f: f64) {}

    /// A popped path was discarded because `(level, state)` was already
    /// closed by a visitor whose `f` was `recorded_f`.
    fn on_close_hit(&mut self, _level: isize, _recorded_f: f64, _discarded_f: f64) {}

    /// The incumbent bound dropped to `metric`.
    fn on_incumbent(&mut self, _metric: f64) {}
}

impl SearchObserver for () {}

/// Observer counting violations of the search invariants: `f` must not
/// decrease from parent to child, and a path discarded by the close table
/// must not beat the visitor that closed its state.
#[derive(Clone, Debug, Default)]
pub struct InvariantRecorder {
    pub slack: f64,
    pub extensions: u64,
    pub monotonicity_violations: u64,
    pub close_hits: u64,
    pub close_order_violations: u64,
    pub incumbent_updates: u64,
    pub worst_decrease: f64,
}

impl InvariantRecorder {
    pub fn new(slack: f64) -> Self {
        Self {
            slack,
            ..Self::default()
        }
    }

    pub fn violations(&self) -> u64 {
        self.monotonicity_violations + self.close_order_violations
    }
}

impl SearchObserver for InvariantRecorder {
    fn on_extend(&mut self, _parent_level: isize, parent_f: f64, child_f: f64) {
        self.extensions += 1;
        let decrease = parent_f - child_f;
        if decrease > self.slack {
            self.monotonicity_violations += 1;
        }
        self.worst_decrease = self.worst_decrease.max(decrease);
    }

    fn on_close_hit(&mut self, _level: isize, recorded_f: f64, discarded_f: f64) {
        self.close_hits += 1;
        if recorded_f > discarded_f + self.slack {
            self.close_order_violations += 1;
        }
    }

    fn on_incumbent(&mut self, _metric: f64) {
        self.incumbent_updates += 1;
    }
}

/// Result of one search.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub codeword: BinaryVector,
    pub metric: f64,
    pub metric_evals: u64,
    pub expansions: u64,
    pub open_stack_peak: u64,
    pub incumbent_updates: u64,
}

struct OpenEntry<S> {
    f: f64,
    g: f64,
    level: isize,
    labels: BinaryVector,
    state: S,
}

impl<S> OpenEntry<S> {
    /// Priority: smaller `f`, then deeper level, then lexicographically
    /// smaller labels. `Greater` means popped first.
    fn priority(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then(self.level.cmp(&other.level))
            .then_with(|| other.labels.cmp_lex(&self.labels))
    }
}

impl<S> PartialEq for OpenEntry<S> {
    fn eq(&self, other: &Self) -> bool {
        self.priority(other) == Ordering::Equal
    }
}

impl<S> Eq for OpenEntry<S> {}

impl<S> PartialOrd for OpenEntry<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S> Ord for OpenEntry<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.priority(other)
    }
}

/// Priority-first search for a minimum-metric path through `view`.
pub fn priority_first_search<V, H, O>(
    view: &V,
    m: &BitMetrics,
    heuristic: &H,
    observer: &mut O,
) -> Result<SearchOutcome>
where
    V: CodeTrellisView,
    H: Heuristic<V::State>,
    O: SearchObserver,
{
    let n = view.n();
    if m.len() != n {
        return Err(Error::Dimension(format!(
            "{} metrics for a code of length {n}",
            m.len()
        )));
    }
    let last = n as isize - 1;
    let root = view.root();
    let root_f = heuristic
        .h(-1, &root)
        .ok_or(Error::UnknownState { level: -1 })?;

    let mut rho = f64::INFINITY;
    let mut best: Option<(BinaryVector, f64)> = None;
    let mut open = BinaryHeap::new();
    let mut closed: HashMap<(isize, V::State), f64> = HashMap::new();
    let (mut evals, mut expansions, mut peak, mut updates) = (0u64, 0u64, 1u64, 0u64);

    open.push(OpenEntry {
        f: root_f,
        g: 0.0,
        level: -1,
        labels: BinaryVector::zeros(n),
        state: root,
    });

    while let Some(top) = open.pop() {
        match closed.entry((top.level, top.state.clone())) {
            std::collections::hash_map::Entry::Occupied(e) => {
                observer.on_close_hit(top.level, *e.get(), top.f);
                continue;
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(top.f);
            }
        }
        expansions += 1;

        let child_level = top.level + 1;
        let mut finished: Option<OpenEntry<V::State>> = None;
        for label in 0..2u8 {
            let Some(state) = view.successor(top.level, &top.state, label) else {
                continue;
            };
            let g = top.g + m.cost(child_level as usize, label);
            evals += 1;
            let h = heuristic
                .h(child_level, &state)
                .ok_or(Error::UnknownState { level: child_level })?;
            let f = g + h;
            observer.on_extend(top.level, top.f, f);
            if f >= rho {
                continue;
            }
            let mut labels = top.labels.clone();
            labels.set(child_level as usize, label == 1);
            let child = OpenEntry {
                f,
                g,
                level: child_level,
                labels,
                state,
            };
            if child_level == last {
                if finished.as_ref().is_none_or(|b| child.g < b.g) {
                    finished = Some(child);
                }
            } else {
                open.push(child);
            }
        }
        if let Some(done) = finished {
            rho = done.g;
            best = Some((done.labels, done.g));
            updates += 1;
            observer.on_incumbent(rho);
        }
        peak = peak.max(open.len() as u64);
    }

    let (codeword, metric) = best.ok_or(Error::SearchExhausted)?;
    Ok(SearchOutcome {
        codeword,
        metric,
        metric_evals: evals,
        expansions,
        open_stack_peak: peak,
        incumbent_updates: updates,
    })
}

/// A decoded word with its complexity counters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecodeReport {
    #[serde(serialize_with = "as_bit_string")]
    pub codeword: BinaryVector,
    pub metric: f64,
    #[serde(serialize_with = "as_bit_string")]
    pub error_pattern: BinaryVector,
    pub metric_evals_phase1: u64,
    pub metric_evals_phase2: u64,
    pub metric_evals_total: u64,
    pub open_stack_peak: u64,
    pub expansions: u64,
    pub incumbent_updates: u64,
}

fn as_bit_string<S: serde::Serializer>(
    v: &BinaryVector,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl DecodeReport {
    pub(crate) fn from_search(outcome: SearchOutcome, m: &BitMetrics, phase1_evals: u64) -> Self {
        let error_pattern = outcome.codeword.xor(m.hard_decision());
        Self {
            metric_evals_phase1: phase1_evals,
            metric_evals_phase2: outcome.metric_evals,
            metric_evals_total: phase1_evals + outcome.metric_evals,
            open_stack_peak: outcome.open_stack_peak,
            expansions: outcome.expansions,
            incumbent_updates: outcome.incumbent_updates,
            codeword: outcome.codeword,
            metric: outcome.metric,
            error_pattern,
        }
    }
}

/// How the code trellis is represented during the search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrellisMode {
    /// Materialised trellis with precomputed projections.
    #[default]
    Explicit,
    /// Successors computed from parity-check columns during the search.
    Lazy,
}

#[derive(Clone, Debug)]
enum CodeTrellis {
    Explicit {
        trellis: Trellis,
        projection: Vec<Vec<u32>>,
    },
    Lazy(LazyTrellis),
}

/// The two-phase decoder for one code pair: trellises are built once and
/// shared across decodes.
#[derive(Clone, Debug)]
pub struct TwoPhaseDecoder {
    pair: CodePair,
    supertrellis: Trellis,
    code_trellis: CodeTrellis,
}

impl TwoPhaseDecoder {
    pub fn new(pair: CodePair) -> Result<Self> {
        Self::with_mode(pair, TrellisMode::Explicit)
    }

    pub fn with_mode(pair: CodePair, mode: TrellisMode) -> Result<Self> {
        let supertrellis = Trellis::build(pair.supercode().parity_check())?;
        let code_trellis = match mode {
            TrellisMode::Explicit => {
                let trellis = Trellis::build(pair.code().parity_check())?;
                let projection = trellis.project_onto(&supertrellis)?;
                CodeTrellis::Explicit {
                    trellis,
                    projection,
                }
            }
            TrellisMode::Lazy => CodeTrellis::Lazy(LazyTrellis::new(pair.code().parity_check())?),
        };
        Ok(Self {
            pair,
            supertrellis,
            code_trellis,
        })
    }

    pub fn pair(&self) -> &CodePair {
        &self.pair
    }

    pub fn supertrellis(&self) -> &Trellis {
        &self.supertrellis
    }

    /// The explicit code trellis, when not running lazily.
    pub fn code_trellis(&self) -> Option<&Trellis> {
        match &self.code_trellis {
            CodeTrellis::Explicit { trellis, .. } => Some(trellis),
            CodeTrellis::Lazy(_) => None,
        }
    }

    pub fn mode(&self) -> TrellisMode {
        match self.code_trellis {
            CodeTrellis::Explicit { .. } => TrellisMode::Explicit,
            CodeTrellis::Lazy(_) => TrellisMode::Lazy,
        }
    }

    pub fn decode(&self, m: &BitMetrics) -> Result<DecodeReport> {
        self.decode_observed(m, &mut ())
    }

    pub fn decode_observed<O: SearchObserver>(
        &self,
        m: &BitMetrics,
        observer: &mut O,
    ) -> Result<DecodeReport> {
        let table = backward_viterbi(&self.supertrellis, m)?;
        self.search_with_table(m, &table, observer)
    }

    /// Phase 2 alone, against a caller-supplied cost table.
    pub fn search_with_table<O: SearchObserver>(
        &self,
        m: &BitMetrics,
        table: &CostToGoTable,
        observer: &mut O,
    ) -> Result<DecodeReport> {
        let outcome = match &self.code_trellis {
            CodeTrellis::Explicit {
                trellis,
                projection,
            } => {
                let h = ProjectedCost { table, projection };
                priority_first_search(trellis, m, &h, observer)?
            }
            CodeTrellis::Lazy(lazy) => {
                let h = SyndromeProjectedCost {
                    table,
                    supertrellis: &self.supertrellis,
                };
                priority_first_search(lazy, m, &h, observer)?
            }
        };
        Ok(DecodeReport::from_search(outcome, m, table.metric_evals()))
    }
}

/// Decodes `m` with the two-phase algorithm on prebuilt trellises: `code`
/// from `pair.code()`'s parity-check matrix, `sup` from the supercode's.
pub fn pfsa_decode(
    pair: &CodePair,
    code: &Trellis,
    sup: &Trellis,
    m: &BitMetrics,
) -> Result<DecodeReport> {
    pfsa_decode_observed(pair, code, sup, m, &mut ())
}

pub fn pfsa_decode_observed<O: SearchObserver>(
    pair: &CodePair,
    code: &Trellis,
    sup: &Trellis,
    m: &BitMetrics,
    observer: &mut O,
) -> Result<DecodeReport> {
    if code.n() != pair.n()
        || sup.n() != pair.n()
        || code.num_checks() != pair.code().parity_check().num_rows()
        || sup.num_checks() != pair.num_super_checks()
    {
        return Err(Error::Dimension(
            "trellises do not match the code pair".into(),
        ));
    }
    let table = backward_viterbi(sup, m)?;
    let projection = code.project_onto(sup)?;
    let h = ProjectedCost {
        table: &table,
        projection: &projection,
    };
    let outcome = priority_first_search(code, m, &h, observer)?;
    Ok(DecodeReport::from_search(outcome, m, table.metric_evals()))
}

/// A partial path with its evaluation-function values, addressed by
/// syndrome rather than dense index.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchPath {
    /// Labels for levels `0..=level`; positions past `level` are zero.
    pub labels: BinaryVector,
    pub level: isize,
    pub end_state: TrellisState,
    pub g: f64,
    pub f: f64,
}

impl SearchPath {
    /// The empty path at the root, with `f = c(β(root))`.
    pub fn initial(code: &Trellis, sup: &Trellis, table: &CostToGoTable) -> Result<Self> {
        let end_state = TrellisState::root(code.num_checks());
        let projected = beta_project(&end_state, sup.num_checks())?;
        Ok(Self {
            labels: BinaryVector::zeros(code.n()),
            level: -1,
            f: table.lookup(sup, -1, &projected.syndrome)?,
            g: 0.0,
            end_state,
        })
    }
}

/// Extends `parent` by one branch labelled `label`, computing
/// `g = g_parent + M(label)` and `f = g + c(β(end_state))`.
pub fn evaluate_f(
    parent: &SearchPath,
    label: u8,
    m: &BitMetrics,
    table: &CostToGoTable,
    code: &Trellis,
    sup: &Trellis,
) -> Result<SearchPath> {
    let level = parent.level;
    if level + 1 >= code.n() as isize {
        return Err(Error::NoSuchBranch { level, label });
    }
    let from = code
        .state_index(level, &parent.end_state.syndrome)
        .ok_or(Error::UnknownState { level })?;
    let to = code
        .successor(level, from, label)
        .ok_or(Error::NoSuchBranch { level, label })?;
    let child_level = level + 1;
    let end_state = TrellisState {
        syndrome: code.syndrome(child_level, to).clone(),
        level: child_level,
    };
    let g = parent.g + m.cost(child_level as usize, label);
    let projected = beta_project(&end_state, sup.num_checks())?;
    let h = table.lookup(sup, child_level, &projected.syndrome)?;
    let mut labels = parent.labels.clone();
    labels.set(child_level as usize, label == 1);
    Ok(SearchPath {
        labels,
        level: child_level,
        end_state,
        g,
        f: g + h,
    })
}
