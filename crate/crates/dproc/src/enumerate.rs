//! Generation of the unique traces of a declarative process.
//!
//! Two strategies are provided: `Brute` walks every permutation of every
//! subset of the alphabet, `Leaf` first peels dependent leaf activities off
//! the constraint set, brute-forces the smaller core and then re-inserts the
//! peeled activities. Both produce the same canonical trace set.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::logic::{satisfies, ConstraintTemplate};
use crate::model::{ActivityId, DeclarativeProcess, Trace, TraceSet};

/// Default cap on the brute-force alphabet size; override via
/// [`EnumerationConfig`] or, in the CLI, the `DPROC_MAX_ALPHABET` env var.
pub const DEFAULT_MAX_ALPHABET: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    Brute,
    Leaf,
    Auto,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "brute" => Ok(Strategy::Brute),
            "leaf" => Ok(Strategy::Leaf),
            "auto" => Ok(Strategy::Auto),
            other => Err(format!("unknown strategy `{}`", other)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_alphabet: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            max_alphabet: DEFAULT_MAX_ALPHABET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("alphabet of size {size} exceeds the brute-force limit {limit}")]
    AlphabetTooLarge { size: usize, limit: usize },
    #[error("workload for alphabet size {n} overflows")]
    WorkloadOverflow { n: usize },
}

/// One peel step: `leaf` occurs in exactly one constraint of the process at
/// that stage, as the dependent argument of resp/prec/succ with `anchor` as
/// the other argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafStep {
    pub constraint: ConstraintTemplate,
    pub leaf: ActivityId,
    pub anchor: ActivityId,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumerationResult {
    pub traces: TraceSet,
    /// Number of times a trace was checked against a constraint set.
    pub satisfies_calls: u64,
    pub strategy: UsedStrategy,
    /// Peel order; empty for brute force.
    pub peel_sequence: Vec<LeafStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UsedStrategy {
    Brute,
    Leaf,
}

/// Exact number of satisfaction checks the brute-force enumeration performs
/// for an alphabet of `n` activities: Σ_{k=0..n} n!/(n−k)!.
pub fn enumeration_workload(n: usize) -> Result<u128, EnumerateError> {
    let overflow = || EnumerateError::WorkloadOverflow { n };
    let mut total: u128 = 1; // the empty permutation
    let mut term: u128 = 1;
    for k in 1..=n {
        term = term
            .checked_mul((n - k + 1) as u128)
            .ok_or_else(overflow)?;
        total = total.checked_add(term).ok_or_else(overflow)?;
    }
    Ok(total)
}

/// Brute-force enumeration: every permutation of every subset of the
/// alphabet, checked against the full constraint set. Subsets are visited by
/// size then lexicographically, permutations lexicographically.
pub fn unique_traces_brute(
    process: &DeclarativeProcess,
    config: &EnumerationConfig,
) -> Result<EnumerationResult, EnumerateError> {
    let ids = process.alphabet();
    let n = ids.len();
    if n > config.max_alphabet {
        return Err(EnumerateError::AlphabetTooLarge {
            size: n,
            limit: config.max_alphabet,
        });
    }
    let subsets: Vec<Vec<ActivityId>> = (0..=n)
        .flat_map(|k| ids.iter().copied().combinations(k))
        .collect();

    let (found, calls) = subsets
        .par_iter()
        .map(|subset| {
            let mut local = Vec::new();
            let mut calls = 0u64;
            for perm in subset.iter().copied().permutations(subset.len()) {
                calls += 1;
                let t = Trace::new(perm);
                if satisfies(&t, process.constraints()) {
                    local.push(t);
                }
            }
            (local, calls)
        })
        .reduce(
            || (Vec::new(), 0u64),
            |(mut at, ac), (bt, bc)| {
                at.extend(bt);
                (at, ac + bc)
            },
        );

    Ok(EnumerationResult {
        traces: TraceSet::canonicalize(found),
        satisfies_calls: calls,
        strategy: UsedStrategy::Brute,
        peel_sequence: Vec::new(),
    })
}

/// Greedily peels leaf activities: a `j` whose only constraint occurrence is
/// as the dependent argument of a single resp/prec/succ. Each returned step
/// applies to the process with all earlier steps already removed.
pub fn find_leaves(process: &DeclarativeProcess) -> Vec<LeafStep> {
    let mut alphabet = process.alphabet();
    let mut constraints = process.constraints().to_vec();
    let mut steps = Vec::new();
    loop {
        let mut found = None;
        'scan: for &j in &alphabet {
            let mentioning: Vec<usize> = constraints
                .iter()
                .positions(|c| c.mentioned_activities().contains(&j))
                .collect();
            if let [only] = mentioning[..] {
                if let Some(anchor) = constraints[only].is_peelable_with_leaf(j) {
                    found = Some((only, j, anchor));
                    break 'scan;
                }
            }
        }
        let Some((idx, leaf, anchor)) = found else {
            break;
        };
        steps.push(LeafStep {
            constraint: constraints.remove(idx),
            leaf,
            anchor,
        });
        alphabet.retain(|&a| a != leaf);
    }
    steps
}

fn count_and_filter(
    candidates: impl IntoIterator<Item = Trace>,
    const_check: &[ConstraintTemplate],
    calls: &mut u64,
    out: &mut Vec<Trace>,
) {
    for t in candidates {
        *calls += 1;
        if satisfies(&t, const_check) {
            out.push(t);
        }
    }
}

/// Re-inserts the leaf of a resp(i,j) step into a base trace set. Traces
/// containing `i` must gain `j` somewhere strictly after `i`; traces without
/// `i` are kept and additionally spawn insertions at every slot.
pub fn reinsert_resp(
    base: &TraceSet,
    step: &LeafStep,
    const_check: &[ConstraintTemplate],
    calls: &mut u64,
) -> TraceSet {
    let (i, j) = (step.anchor, step.leaf);
    let mut out = Vec::new();
    for sigma in base {
        debug_assert!(!sigma.contains(j));
        match sigma.events().iter().position(|&e| e == i) {
            Some(p) => {
                // σ alone violates resp(i,j)
                let candidates = (p + 1..=sigma.len()).map(|k| sigma.with_inserted(k, j));
                count_and_filter(candidates, const_check, calls, &mut out);
            }
            None => {
                out.push(sigma.clone());
                let candidates = (0..=sigma.len()).map(|k| sigma.with_inserted(k, j));
                count_and_filter(candidates, const_check, calls, &mut out);
            }
        }
    }
    TraceSet::canonicalize(out)
}

/// Re-insertion for prec(i,j): every base trace stays valid, and traces
/// containing `i` additionally spawn insertions of `j` after `i`.
pub fn reinsert_prec(
    base: &TraceSet,
    step: &LeafStep,
    const_check: &[ConstraintTemplate],
    calls: &mut u64,
) -> TraceSet {
    let (i, j) = (step.anchor, step.leaf);
    let mut out = Vec::new();
    for sigma in base {
        debug_assert!(!sigma.contains(j));
        out.push(sigma.clone());
        if let Some(p) = sigma.events().iter().position(|&e| e == i) {
            let candidates = (p + 1..=sigma.len()).map(|k| sigma.with_inserted(k, j));
            count_and_filter(candidates, const_check, calls, &mut out);
        }
    }
    TraceSet::canonicalize(out)
}

/// Re-insertion for succ(i,j): traces containing `i` are only valid with `j`
/// inserted after `i`; traces without `i` are kept as they are.
pub fn reinsert_succ(
    base: &TraceSet,
    step: &LeafStep,
    const_check: &[ConstraintTemplate],
    calls: &mut u64,
) -> TraceSet {
    let (i, j) = (step.anchor, step.leaf);
    let mut out = Vec::new();
    for sigma in base {
        debug_assert!(!sigma.contains(j));
        match sigma.events().iter().position(|&e| e == i) {
            Some(p) => {
                let candidates = (p + 1..=sigma.len()).map(|k| sigma.with_inserted(k, j));
                count_and_filter(candidates, const_check, calls, &mut out);
            }
            None => out.push(sigma.clone()),
        }
    }
    TraceSet::canonicalize(out)
}

/// Enumerates the unique traces of `process` with the requested strategy.
/// `Auto` picks leaf peeling whenever at least one leaf exists.
pub fn unique_traces(
    process: &DeclarativeProcess,
    strategy: Strategy,
    config: &EnumerationConfig,
) -> Result<EnumerationResult, EnumerateError> {
    let steps = match strategy {
        Strategy::Brute => Vec::new(),
        Strategy::Leaf | Strategy::Auto => find_leaves(process),
    };
    if steps.is_empty() {
        return unique_traces_brute(process, config);
    }

    let peeled: Vec<ActivityId> = steps.iter().map(|s| s.leaf).collect();
    let core_activities = process
        .activities()
        .iter()
        .filter(|a| !peeled.contains(&a.id))
        .cloned()
        .collect();
    let peeled_constraints: Vec<&ConstraintTemplate> =
        steps.iter().map(|s| &s.constraint).collect();
    let mut constraints: Vec<ConstraintTemplate> = process
        .constraints()
        .iter()
        .filter(|c| !peeled_constraints.contains(c))
        .cloned()
        .collect();
    let core = DeclarativeProcess::new(process.name.clone(), core_activities, constraints.clone())
        .expect("peeled process stays well formed");

    let core_result = unique_traces_brute(&core, config)?;
    let mut traces = core_result.traces;
    let mut calls = core_result.satisfies_calls;

    // undo the peeling in reverse order, re-checking against the constraint
    // set of the process at each stage
    for step in steps.iter().rev() {
        constraints.push(step.constraint.clone());
        traces = match &step.constraint {
            ConstraintTemplate::Resp(..) => reinsert_resp(&traces, step, &constraints, &mut calls),
            ConstraintTemplate::Prec(..) => reinsert_prec(&traces, step, &constraints, &mut calls),
            ConstraintTemplate::Succ(..) => reinsert_succ(&traces, step, &constraints, &mut calls),
            other => unreachable!("non-peelable constraint {other} in peel sequence"),
        };
    }

    Ok(EnumerationResult {
        traces,
        satisfies_calls: calls,
        strategy: UsedStrategy::Leaf,
        peel_sequence: steps,
    })
}
