//! Stakeholder utilities: good-trace filtering and the log-ratio utility.

use serde::{Deserialize, Serialize};

use crate::logic::Preference;
use crate::model::{StakeholderSystem, TraceSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UtilityError {
    #[error("degenerate process: the unique trace set is empty")]
    DegenerateProcess,
    #[error("good count {good} exceeds total count {total}")]
    BadCounts { good: u64, total: u64 },
}

/// Per-stakeholder utilities together with the counts they derive from, so a
/// reader can re-check every value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UtilityVector {
    pub values: Vec<f64>,
    pub good_counts: Vec<u64>,
    pub total_count: u64,
}

/// The subset of `ut` satisfying preference `g`, in canonical order.
pub fn good_traces(ut: &TraceSet, g: &Preference) -> TraceSet {
    TraceSet::canonicalize(ut.iter().filter(|t| g.satisfied_by(t)).cloned())
}

/// The utility of `good` preferred outcomes among `total`:
/// ln(1 + good) / ln(1 + total). Ranges over [0, 1], is 0 exactly when
/// `good` is 0 and 1 exactly when `good` equals `total`.
pub fn utility(good: u64, total: u64) -> Result<f64, UtilityError> {
    if total == 0 {
        return Err(UtilityError::DegenerateProcess);
    }
    if good > total {
        return Err(UtilityError::BadCounts { good, total });
    }
    Ok((1.0 + good as f64).ln() / (1.0 + total as f64).ln())
}

/// Utility vector from externally supplied counts; used to reproduce
/// published results whose processes are not available for enumeration.
pub fn utility_vector_from_counts(
    good_counts: Vec<u64>,
    total_count: u64,
) -> Result<UtilityVector, UtilityError> {
    let values = good_counts
        .iter()
        .map(|&g| utility(g, total_count))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(UtilityVector {
        values,
        good_counts,
        total_count,
    })
}

/// Computes the stakeholder utility vector of `system` over its unique trace
/// set `ut`.
pub fn utility_vector(
    system: &StakeholderSystem,
    ut: &TraceSet,
) -> Result<UtilityVector, UtilityError> {
    let total = ut.len() as u64;
    let good_counts: Vec<u64> = system
        .stakeholders
        .iter()
        .map(|s| good_traces(ut, &s.preference).len() as u64)
        .collect();
    utility_vector_from_counts(good_counts, total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::ConstraintTemplate as C;

    fn close(a: f64, b: f64) {
        assert!((a - b).abs() < 5e-6, "{} vs {}", a, b);
    }

    #[test]
    fn published_utility_values() {
        close(utility(12, 16).unwrap(), 0.90531);
        close(utility(389, 459).unwrap(), 0.97308);
        close(utility(6, 8).unwrap(), 0.88562);
    }

    #[test]
    fn boundaries() {
        for n in [1u64, 5, 100] {
            assert_eq!(utility(0, n).unwrap(), 0.0);
            assert_eq!(utility(n, n).unwrap(), 1.0);
        }
        assert_eq!(utility(0, 0), Err(UtilityError::DegenerateProcess));
        assert_eq!(
            utility(3, 2),
            Err(UtilityError::BadCounts { good: 3, total: 2 })
        );
    }

    #[test]
    fn monotone_in_good_count() {
        for b in 1..60u64 {
            for a in 0..b {
                assert!(utility(a + 1, b).unwrap() > utility(a, b).unwrap());
            }
        }
    }

    #[test]
    fn scaling_invariance_under_squaring() {
        for b in 1..50u64 {
            for a in 1..=b {
                let lhs = utility((1 + a) * (1 + a) - 1, (1 + b) * (1 + b) - 1).unwrap();
                let rhs = utility(a, b).unwrap();
                assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn good_traces_filters_and_preserves_order() {
        use crate::model::Trace;
        let ut = TraceSet::canonicalize(vec![
            Trace::empty(),
            Trace::new(vec![2]),
            Trace::new(vec![1, 5]),
            Trace::new(vec![5, 2]),
        ]);
        let g = Preference::from(C::Participation(5));
        let good = good_traces(&ut, &g);
        assert_eq!(
            good.traces(),
            &[Trace::new(vec![1, 5]), Trace::new(vec![5, 2])]
        );
        // True keeps everything: use a vacuous template
        let all = good_traces(&ut, &Preference::not(C::Participation(99).into()));
        assert_eq!(all, ut);
    }
}
