//! Declare constraint templates: direct satisfaction semantics and expansion
//! into temporal formulas. The two routes must agree on every trace; the test
//! suite checks this exhaustively on small alphabets.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::formula::Formula;
use crate::model::{ActivityId, Trace};

/// A Declare constraint over the activities of a process.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstraintTemplate {
    /// a occurs at least once: F a
    Participation(ActivityId),
    /// a is the first event: a
    Initial(ActivityId),
    /// every a is followed (not necessarily immediately) by b: G(a ⇒ F b)
    Resp(ActivityId, ActivityId),
    /// every a is immediately followed by b: G(a ⇒ X b), strong next
    ChainResp(ActivityId, ActivityId),
    /// b occurs only after a has occurred: (¬b) W a
    Prec(ActivityId, ActivityId),
    /// a occurs iff followed by b: G(a ⇒ F b) ∧ (¬b) W a
    Succ(ActivityId, ActivityId),
    /// no b after any a: G(a ⇒ ¬F b)
    NotSucc(ActivityId, ActivityId),
    /// exactly one of a, b occurs: ¬(F a ⇔ F b)
    NotCoexist(ActivityId, ActivityId),
    /// a and b do not both occur: ¬(F a ∧ F b)
    NotCoexistWeak(ActivityId, ActivityId),
    /// b may occur only after a; occurrences of a need no b: (¬b) W a
    OptResp(ActivityId, ActivityId),
    /// at least k distinct members of the set occur
    Choice(u32, Vec<ActivityId>),
}

use ConstraintTemplate::*;

impl ConstraintTemplate {
    /// `choice(1, set)`: at least one member of the set occurs.
    pub fn choice1(set: Vec<ActivityId>) -> ConstraintTemplate {
        Choice(1, set)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Participation(_) => "participation",
            Initial(_) => "initial",
            Resp(..) => "resp",
            ChainResp(..) => "chainresp",
            Prec(..) => "prec",
            Succ(..) => "succ",
            NotSucc(..) => "notsucc",
            NotCoexist(..) => "notcoexist",
            NotCoexistWeak(..) => "notcoexist_weak",
            OptResp(..) => "optresp",
            Choice(1, _) => "choice1",
            Choice(..) => "choice",
        }
    }

    /// All activity ids appearing in the arguments.
    pub fn mentioned_activities(&self) -> Vec<ActivityId> {
        match self {
            Participation(a) | Initial(a) => vec![*a],
            Resp(a, b) | ChainResp(a, b) | Prec(a, b) | Succ(a, b) | NotSucc(a, b)
            | NotCoexist(a, b) | NotCoexistWeak(a, b) | OptResp(a, b) => vec![*a, *b],
            Choice(_, set) => set.clone(),
        }
    }

    /// True when `j` occurs in this constraint only as the dependent (second)
    /// argument of resp/prec/succ; the peel step of the enumeration relies on
    /// this.
    pub fn is_peelable_with_leaf(&self, j: ActivityId) -> Option<ActivityId> {
        match self {
            Resp(i, jj) | Prec(i, jj) | Succ(i, jj) if *jj == j && *i != j => Some(*i),
            _ => None,
        }
    }

    /// Expands the template into its temporal formula.
    pub fn expand(&self) -> Formula {
        let f = Formula::finally;
        let g = Formula::globally;
        let at = Formula::atom;
        match self {
            Participation(a) => f(at(*a)),
            Initial(a) => at(*a),
            Resp(a, b) => g(Formula::implies(at(*a), f(at(*b)))),
            ChainResp(a, b) => g(Formula::implies(at(*a), Formula::next(at(*b)))),
            Prec(a, b) | OptResp(a, b) => Formula::weak_until(Formula::not(at(*b)), at(*a)),
            Succ(a, b) => Formula::and(
                g(Formula::implies(at(*a), f(at(*b)))),
                Formula::weak_until(Formula::not(at(*b)), at(*a)),
            ),
            NotSucc(a, b) => g(Formula::implies(at(*a), Formula::not(f(at(*b))))),
            NotCoexist(a, b) => Formula::not(Formula::iff(f(at(*a)), f(at(*b)))),
            NotCoexistWeak(a, b) => Formula::not(Formula::and(f(at(*a)), f(at(*b)))),
            Choice(k, set) => {
                // disjunction over all k-subsets of conjunctions of F
                if *k == 0 {
                    return Formula::True;
                }
                Formula::any(
                    set.iter()
                        .combinations(*k as usize)
                        .map(|combo| Formula::all(combo.into_iter().map(|a| f(at(*a))))),
                )
            }
        }
    }

    /// Direct satisfaction check, bypassing formula expansion. Agrees with
    /// `self.expand().eval(t)` on every trace.
    pub fn satisfied_by(&self, t: &Trace) -> bool {
        let ev = t.events();
        match self {
            Participation(a) => ev.contains(a),
            Initial(a) => ev.first() == Some(a),
            Resp(a, b) => {
                // every a must see a b at its own position or later
                ev.iter()
                    .positions(|e| e == a)
                    .all(|i| ev[i..].contains(b))
            }
            ChainResp(a, b) => ev
                .iter()
                .positions(|e| e == a)
                .all(|i| i + 1 < ev.len() && ev[i + 1] == *b),
            Prec(a, b) | OptResp(a, b) => match ev.iter().position(|e| e == a) {
                Some(i) => !ev[..i].contains(b),
                None => !ev.contains(b),
            },
            Succ(a, b) => {
                Resp(*a, *b).satisfied_by(t) && Prec(*a, *b).satisfied_by(t)
            }
            NotSucc(a, b) => match ev.iter().position(|e| e == a) {
                Some(i) => !ev[i..].contains(b),
                None => true,
            },
            NotCoexist(a, b) => ev.contains(a) != ev.contains(b),
            NotCoexistWeak(a, b) => !(ev.contains(a) && ev.contains(b)),
            Choice(k, set) => {
                let hits = set.iter().unique().filter(|a| ev.contains(a)).count();
                hits as u32 >= *k
            }
        }
    }
}

impl fmt::Display for ConstraintTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Participation(a) | Initial(a) => write!(f, "{}({})", self.name(), a),
            Resp(a, b) | ChainResp(a, b) | Prec(a, b) | Succ(a, b) | NotSucc(a, b)
            | NotCoexist(a, b) | NotCoexistWeak(a, b) | OptResp(a, b) => {
                write!(f, "{}({},{})", self.name(), a, b)
            }
            Choice(k, set) => {
                if *k == 1 {
                    write!(f, "choice1({{{}}})", set.iter().join(","))
                } else {
                    write!(f, "choice({},{{{}}})", k, set.iter().join(","))
                }
            }
        }
    }
}

/// True iff `t` satisfies every constraint in `cs`; vacuously true for an
/// empty list.
pub fn satisfies(t: &Trace, cs: &[ConstraintTemplate]) -> bool {
    cs.iter().all(|c| c.satisfied_by(t))
}
