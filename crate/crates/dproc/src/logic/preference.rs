//! Stakeholder preferences: boolean combinations of constraint templates.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::formula::Formula;
use super::template::ConstraintTemplate;
use crate::model::{ActivityId, Trace};

/// A preference formula as written in the surface syntax: `not`/`and`/`or`
/// over constraint templates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preference {
    Constraint(ConstraintTemplate),
    Not(Box<Preference>),
    And(Box<Preference>, Box<Preference>),
    Or(Box<Preference>, Box<Preference>),
}

impl Preference {
    pub fn constraint(c: ConstraintTemplate) -> Preference {
        Preference::Constraint(c)
    }

    #[allow(clippy::should_implement_trait)] // prefix constructor, takes ownership
    pub fn not(p: Preference) -> Preference {
        Preference::Not(Box::new(p))
    }

    pub fn and(a: Preference, b: Preference) -> Preference {
        Preference::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Preference, b: Preference) -> Preference {
        Preference::Or(Box::new(a), Box::new(b))
    }

    pub fn to_formula(&self) -> Formula {
        match self {
            Preference::Constraint(c) => c.expand(),
            Preference::Not(p) => Formula::not(p.to_formula()),
            Preference::And(a, b) => Formula::and(a.to_formula(), b.to_formula()),
            Preference::Or(a, b) => Formula::or(a.to_formula(), b.to_formula()),
        }
    }

    /// Direct evaluation using the templates' fast path.
    pub fn satisfied_by(&self, t: &Trace) -> bool {
        match self {
            Preference::Constraint(c) => c.satisfied_by(t),
            Preference::Not(p) => !p.satisfied_by(t),
            Preference::And(a, b) => a.satisfied_by(t) && b.satisfied_by(t),
            Preference::Or(a, b) => a.satisfied_by(t) || b.satisfied_by(t),
        }
    }

    pub fn mentioned_activities(&self) -> Vec<ActivityId> {
        match self {
            Preference::Constraint(c) => c.mentioned_activities(),
            Preference::Not(p) => p.mentioned_activities(),
            Preference::And(a, b) | Preference::Or(a, b) => {
                let mut v = a.mentioned_activities();
                v.extend(b.mentioned_activities());
                v
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Preference::Constraint(_) => 3,
            Preference::Not(_) => 2,
            Preference::And(..) => 1,
            Preference::Or(..) => 0,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let needs_parens = self.precedence() < min;
        if needs_parens {
            write!(f, "(")?;
        }
        match self {
            Preference::Constraint(c) => write!(f, "{}", c)?,
            Preference::Not(p) => {
                write!(f, "not ")?;
                p.fmt_prec(f, 2)?;
            }
            Preference::And(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " and ")?;
                // left-associative: right operand binds one level tighter
                b.fmt_prec(f, 2)?;
            }
            Preference::Or(a, b) => {
                a.fmt_prec(f, 0)?;
                write!(f, " or ")?;
                b.fmt_prec(f, 1)?;
            }
        }
        if needs_parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl From<ConstraintTemplate> for Preference {
    fn from(c: ConstraintTemplate) -> Self {
        Preference::Constraint(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::ConstraintTemplate as C;

    #[test]
    fn negated_participation() {
        let p = Preference::not(C::Participation(5).into());
        assert!(p.satisfied_by(&Trace::empty()));
        assert!(!p.satisfied_by(&Trace::new(vec![1, 5])));
        assert_eq!(
            p.to_formula(),
            Formula::not(Formula::finally(Formula::atom(5)))
        );
    }

    #[test]
    fn display_respects_precedence() {
        let p = Preference::or(
            Preference::and(C::Participation(1).into(), C::Participation(2).into()),
            Preference::not(C::Participation(3).into()),
        );
        assert_eq!(
            p.to_string(),
            "participation(1) and participation(2) or not participation(3)"
        );

        let q = Preference::and(
            C::Participation(1).into(),
            Preference::or(C::Participation(2).into(), C::Participation(3).into()),
        );
        assert_eq!(
            q.to_string(),
            "participation(1) and (participation(2) or participation(3))"
        );
    }
}
