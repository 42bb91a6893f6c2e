//! Core domain vocabulary: activities, traces, processes and stakeholder systems.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::logic::{ConstraintTemplate, Preference};

/// Identifier of an activity as declared in the process alphabet.
pub type ActivityId = u32;

/// A named activity of a process alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Activity {
    pub id: ActivityId,
    /// Presentation label; falls back to the decimal id when absent.
    pub label: Option<String>,
}

impl Activity {
    pub fn new(id: ActivityId) -> Self {
        Activity { id, label: None }
    }

    pub fn labelled(id: ActivityId, label: impl Into<String>) -> Self {
        Activity {
            id,
            label: Some(label.into()),
        }
    }

    pub fn display_label(&self) -> String {
        self.label.clone().unwrap_or_else(|| self.id.to_string())
    }
}

/// A finite ordered sequence of activity ids. The empty trace is written ε.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Trace(pub Vec<ActivityId>);

impl Trace {
    pub fn empty() -> Self {
        Trace(Vec::new())
    }

    pub fn new(events: Vec<ActivityId>) -> Self {
        Trace(events)
    }

    pub fn events(&self) -> &[ActivityId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: ActivityId) -> bool {
        self.0.contains(&a)
    }

    /// True iff no activity id repeats.
    pub fn is_unique(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.0.iter().all(|e| seen.insert(*e))
    }

    /// Returns a copy with `a` inserted so that it lands at index `pos`.
    pub fn with_inserted(&self, pos: usize, a: ActivityId) -> Trace {
        let mut events = self.0.clone();
        events.insert(pos, a);
        Trace(events)
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

impl From<Vec<ActivityId>> for Trace {
    fn from(events: Vec<ActivityId>) -> Self {
        Trace(events)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("duplicate activity id {0}")]
    DuplicateActivityId(ActivityId),
    #[error("constraint references unknown activity {0}")]
    UnknownActivity(ActivityId),
    #[error("activity label must be non-empty")]
    EmptyLabel,
}

/// A declarative process: an alphabet of activities and a set of constraints.
/// Any sequence of activities is a trace of the process unless some constraint
/// rules it out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeclarativeProcess {
    pub name: String,
    activities: Vec<Activity>,
    constraints: Vec<ConstraintTemplate>,
}

impl DeclarativeProcess {
    /// Builds a validated process. Activities are stored sorted by id; every
    /// activity mentioned by a constraint must be declared.
    pub fn new(
        name: impl Into<String>,
        activities: Vec<Activity>,
        constraints: Vec<ConstraintTemplate>,
    ) -> Result<Self, ModelError> {
        let mut activities = activities;
        activities.sort_by_key(|a| a.id);
        for w in activities.windows(2) {
            if w[0].id == w[1].id {
                return Err(ModelError::DuplicateActivityId(w[0].id));
            }
        }
        for a in &activities {
            if matches!(&a.label, Some(l) if l.is_empty()) {
                return Err(ModelError::EmptyLabel);
            }
        }
        let known: BTreeSet<ActivityId> = activities.iter().map(|a| a.id).collect();
        for c in &constraints {
            for id in c.mentioned_activities() {
                if !known.contains(&id) {
                    return Err(ModelError::UnknownActivity(id));
                }
            }
        }
        Ok(DeclarativeProcess {
            name: name.into(),
            activities,
            constraints,
        })
    }

    /// Convenience constructor for an unlabelled alphabet {ids}.
    pub fn from_ids(
        name: impl Into<String>,
        ids: impl IntoIterator<Item = ActivityId>,
        constraints: Vec<ConstraintTemplate>,
    ) -> Result<Self, ModelError> {
        Self::new(
            name,
            ids.into_iter().map(Activity::new).collect(),
            constraints,
        )
    }

    pub fn activities(&self) -> &[Activity] {
        &self.activities
    }

    /// Alphabet ids in ascending order.
    pub fn alphabet(&self) -> Vec<ActivityId> {
        self.activities.iter().map(|a| a.id).collect()
    }

    pub fn alphabet_size(&self) -> usize {
        self.activities.len()
    }

    pub fn constraints(&self) -> &[ConstraintTemplate] {
        &self.constraints
    }

    pub fn has_activity(&self, id: ActivityId) -> bool {
        self.activities.binary_search_by_key(&id, |a| a.id).is_ok()
    }

    pub fn activity(&self, id: ActivityId) -> Option<&Activity> {
        self.activities
            .binary_search_by_key(&id, |a| a.id)
            .ok()
            .map(|i| &self.activities[i])
    }
}

/// A process together with an ordered list of stakeholders and their
/// preference formulas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StakeholderSystem {
    pub process: DeclarativeProcess,
    pub stakeholders: Vec<Stakeholder>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stakeholder {
    pub name: String,
    pub label: Option<String>,
    pub preference: Preference,
}

impl StakeholderSystem {
    pub fn new(
        process: DeclarativeProcess,
        stakeholders: Vec<Stakeholder>,
    ) -> Result<Self, ModelError> {
        for s in &stakeholders {
            for id in s.preference.mentioned_activities() {
                if !process.has_activity(id) {
                    return Err(ModelError::UnknownActivity(id));
                }
            }
        }
        Ok(StakeholderSystem {
            process,
            stakeholders,
        })
    }

    pub fn stakeholder_count(&self) -> usize {
        self.stakeholders.len()
    }
}

/// A duplicate-free, canonically ordered collection of traces.
///
/// Canonical order is by length ascending, then lexicographic on the id
/// sequences; this matches how the trace listings are grouped and keeps
/// parallel merges deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TraceSet {
    traces: Vec<Trace>,
}

fn canonical_cmp(a: &Trace, b: &Trace) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0))
}

impl TraceSet {
    pub fn empty() -> Self {
        TraceSet { traces: Vec::new() }
    }

    /// Removes duplicates and sorts into canonical order. Idempotent and
    /// insensitive to input order.
    pub fn canonicalize(traces: impl IntoIterator<Item = Trace>) -> Self {
        let mut traces: Vec<Trace> = traces.into_iter().collect();
        traces.sort_by(canonical_cmp);
        traces.dedup();
        TraceSet { traces }
    }

    pub fn traces(&self) -> &[Trace] {
        &self.traces
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    pub fn contains(&self, t: &Trace) -> bool {
        self.traces
            .binary_search_by(|probe| canonical_cmp(probe, t))
            .is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Trace> {
        self.traces.iter()
    }
}

impl<'a> IntoIterator for &'a TraceSet {
    type Item = &'a Trace;
    type IntoIter = std::slice::Iter<'a, Trace>;
    fn into_iter(self) -> Self::IntoIter {
        self.traces.iter()
    }
}

impl FromIterator<Trace> for TraceSet {
    fn from_iter<I: IntoIterator<Item = Trace>>(iter: I) -> Self {
        TraceSet::canonicalize(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::ConstraintTemplate as C;

    #[test]
    fn unique_trace_detection() {
        assert!(!Trace::new(vec![3, 3, 2, 4, 1, 4]).is_unique());
        assert!(Trace::empty().is_unique());
        assert!(Trace::new(vec![1, 2, 3, 5, 4]).is_unique());
    }

    #[test]
    fn canonical_order_and_dedup() {
        let ts = TraceSet::canonicalize(vec![
            Trace::new(vec![2]),
            Trace::empty(),
            Trace::new(vec![1, 2]),
        ]);
        assert_eq!(
            ts.traces(),
            &[Trace::empty(), Trace::new(vec![2]), Trace::new(vec![1, 2])]
        );

        let dup = TraceSet::canonicalize(vec![Trace::new(vec![2]), Trace::new(vec![2])]);
        assert_eq!(dup.len(), 1);
    }

    #[test]
    fn canonicalize_idempotent_and_order_insensitive() {
        let a = vec![
            Trace::new(vec![1, 2, 4]),
            Trace::new(vec![2, 3]),
            Trace::empty(),
            Trace::new(vec![2]),
        ];
        let mut b = a.clone();
        b.reverse();
        let ca = TraceSet::canonicalize(a);
        let cb = TraceSet::canonicalize(b);
        assert_eq!(ca, cb);
        let again = TraceSet::canonicalize(ca.traces().to_vec());
        assert_eq!(again, cb);
    }

    #[test]
    fn make_process_validates_references() {
        let p = DeclarativeProcess::from_ids(
            "ex",
            1..=5,
            vec![
                C::Resp(1, 2),
                C::Prec(2, 3),
                C::Prec(3, 5),
                C::Succ(1, 4),
                C::NotSucc(4, 2),
            ],
        );
        assert!(p.is_ok());

        let empty = DeclarativeProcess::from_ids("one", [1], vec![]);
        assert!(empty.is_ok());

        let bad = DeclarativeProcess::from_ids("bad", [1, 2], vec![C::Resp(1, 3)]);
        assert_eq!(bad.unwrap_err(), ModelError::UnknownActivity(3));

        let dup = DeclarativeProcess::from_ids("dup", [1, 1], vec![]);
        assert_eq!(dup.unwrap_err(), ModelError::DuplicateActivityId(1));
    }

    #[test]
    fn trace_display() {
        assert_eq!(Trace::empty().to_string(), "ε");
        assert_eq!(Trace::new(vec![1, 2, 4]).to_string(), "(1, 2, 4)");
    }
}
