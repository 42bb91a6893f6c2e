//! LTL formula tree and its evaluation over finite traces.

use serde::{Deserialize, Serialize};

use crate::model::{ActivityId, Trace};

/// A temporal formula interpreted over finite traces.
///
/// `Next` is strong: it is false at the last position and on the empty trace.
/// `Finally`, `Globally`, `Until` and `WeakUntil` follow the usual
/// finite-trace definitions, with `a W b ≡ (a U b) ∨ G a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Formula {
    True,
    False,
    Atom(ActivityId),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Finally(Box<Formula>),
    Globally(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    WeakUntil(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(a: ActivityId) -> Formula {
        Formula::Atom(a)
    }

    #[allow(clippy::should_implement_trait)] // prefix constructor, takes ownership
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn next(f: Formula) -> Formula {
        Formula::Next(Box::new(f))
    }

    pub fn finally(f: Formula) -> Formula {
        Formula::Finally(Box::new(f))
    }

    pub fn globally(f: Formula) -> Formula {
        Formula::Globally(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Formula {
        Formula::Until(Box::new(a), Box::new(b))
    }

    pub fn weak_until(a: Formula, b: Formula) -> Formula {
        Formula::WeakUntil(Box::new(a), Box::new(b))
    }

    /// Disjunction over an iterator; `False` when empty.
    pub fn any(fs: impl IntoIterator<Item = Formula>) -> Formula {
        let mut iter = fs.into_iter();
        match iter.next() {
            None => Formula::False,
            Some(first) => iter.fold(first, Formula::or),
        }
    }

    /// Conjunction over an iterator; `True` when empty.
    pub fn all(fs: impl IntoIterator<Item = Formula>) -> Formula {
        let mut iter = fs.into_iter();
        match iter.next() {
            None => Formula::True,
            Some(first) => iter.fold(first, Formula::and),
        }
    }

    /// Activity ids occurring as atoms, in no particular order.
    pub fn mentioned_activities(&self) -> Vec<ActivityId> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<ActivityId>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => out.push(*a),
            Formula::Not(f) | Formula::Next(f) | Formula::Finally(f) | Formula::Globally(f) => {
                f.collect_atoms(out)
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b)
            | Formula::Until(a, b)
            | Formula::WeakUntil(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Evaluates the formula on `trace` starting at position `pos`.
    ///
    /// `pos == trace.len()` denotes the empty suffix: atoms and `Finally` are
    /// false there, `Globally` is vacuously true.
    pub fn eval_at(&self, trace: &Trace, pos: usize) -> bool {
        let events = trace.events();
        debug_assert!(pos <= events.len());
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => pos < events.len() && events[pos] == *a,
            Formula::Not(f) => !f.eval_at(trace, pos),
            Formula::And(a, b) => a.eval_at(trace, pos) && b.eval_at(trace, pos),
            Formula::Or(a, b) => a.eval_at(trace, pos) || b.eval_at(trace, pos),
            Formula::Implies(a, b) => !a.eval_at(trace, pos) || b.eval_at(trace, pos),
            Formula::Iff(a, b) => a.eval_at(trace, pos) == b.eval_at(trace, pos),
            Formula::Next(f) => pos + 1 < events.len() && f.eval_at(trace, pos + 1),
            Formula::Finally(f) => (pos..events.len()).any(|i| f.eval_at(trace, i)),
            Formula::Globally(f) => (pos..events.len()).all(|i| f.eval_at(trace, i)),
            Formula::Until(a, b) => (pos..events.len()).any(|i| {
                b.eval_at(trace, i) && (pos..i).all(|j| a.eval_at(trace, j))
            }),
            Formula::WeakUntil(a, b) => {
                Formula::Until(a.clone(), b.clone()).eval_at(trace, pos)
                    || (pos..events.len()).all(|i| a.eval_at(trace, i))
            }
        }
    }

    /// Top-level evaluation at position 0.
    pub fn eval(&self, trace: &Trace) -> bool {
        self.eval_at(trace, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr(events: &[ActivityId]) -> Trace {
        Trace::new(events.to_vec())
    }

    #[test]
    fn finally_atom() {
        let f = Formula::finally(Formula::atom(1));
        assert!(f.eval(&tr(&[3, 3, 2, 4, 1, 4])));
        assert!(!f.eval(&Trace::empty()));
    }

    #[test]
    fn resp_as_formula() {
        // G(2 ⇒ F 1)
        let f = Formula::globally(Formula::implies(
            Formula::atom(2),
            Formula::finally(Formula::atom(1)),
        ));
        assert!(f.eval(&tr(&[3, 3, 2, 4, 1, 4])));
    }

    #[test]
    fn atom_false_on_empty() {
        assert!(!Formula::atom(1).eval(&Trace::empty()));
    }

    #[test]
    fn strong_next_false_at_end() {
        let f = Formula::next(Formula::True);
        assert!(!f.eval(&Trace::empty()));
        assert!(!f.eval_at(&tr(&[1]), 0));
        assert!(f.eval_at(&tr(&[1, 2]), 0));
        assert!(!f.eval_at(&tr(&[1, 2]), 1));
    }

    #[test]
    fn weak_until_on_empty_is_true() {
        let f = Formula::weak_until(Formula::not(Formula::atom(2)), Formula::atom(1));
        assert!(f.eval(&Trace::empty()));
    }

    #[test]
    fn until_needs_witness() {
        let f = Formula::until(Formula::not(Formula::atom(2)), Formula::atom(1));
        assert!(!f.eval(&Trace::empty()));
        assert!(f.eval(&tr(&[3, 1])));
        assert!(!f.eval(&tr(&[2, 1])));
    }
}
