//! Comparison of processes through their stakeholder utility vectors:
//! ℓ2-distance to the all-ones ideal, per-subset optima and the robustness
//! summary over subset strata.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::utility::UtilityVector;

/// Absolute tolerance within which two distances count as tied.
pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-12;

/// Cap on the stakeholder count for the 2^m − 1 subset scan.
pub const DEFAULT_MAX_STAKEHOLDERS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompareError {
    #[error("stakeholder subset must be non-empty")]
    EmptySubset,
    #[error("{m} stakeholders exceed the subset-scan limit {limit}")]
    TooManyStakeholders { m: usize, limit: usize },
    #[error("systems disagree on stakeholder count: {0:?}")]
    MismatchedStakeholders(Vec<usize>),
    #[error("need at least one system to compare")]
    NoSystems,
}

/// Euclidean distance from a utility vector to the all-ones ideal.
pub fn h_distance(u: &[f64]) -> f64 {
    u.iter().map(|v| (1.0 - v) * (1.0 - v)).sum::<f64>().sqrt()
}

/// The entries of `u` at the stakeholder indices of `subset` (0-based,
/// strictly increasing).
pub fn reduced(u: &UtilityVector, subset: &[usize]) -> Result<Vec<f64>, CompareError> {
    if subset.is_empty() {
        return Err(CompareError::EmptySubset);
    }
    Ok(subset.iter().map(|&i| u.values[i]).collect())
}

/// Index of the system minimizing the reduced distance, with every system
/// tied within `tol` of the minimum. Ties resolve to the smallest index.
pub fn optimal_for_subset(
    vectors: &[UtilityVector],
    subset: &[usize],
    tol: f64,
) -> Result<(usize, Vec<usize>), CompareError> {
    if vectors.is_empty() {
        return Err(CompareError::NoSystems);
    }
    let hs: Vec<f64> = vectors
        .iter()
        .map(|v| reduced(v, subset).map(|r| h_distance(&r)))
        .collect::<Result<_, _>>()?;
    let min = hs.iter().copied().fold(f64::INFINITY, f64::min);
    let ties: Vec<usize> = hs
        .iter()
        .positions(|&h| (h - min).abs() <= tol)
        .collect();
    Ok((ties[0], ties))
}

/// One row of the subset scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    /// Stakeholder indices of the subset, 0-based ascending.
    pub subset: Vec<usize>,
    /// Reduced distance per system.
    pub h: Vec<f64>,
    pub winner: usize,
    pub tied_systems: Vec<usize>,
    pub tie: bool,
}

/// Scans all 2^m − 1 non-empty stakeholder subsets in (size, lexicographic)
/// order.
pub fn subset_scan(
    vectors: &[UtilityVector],
    tol: f64,
    max_stakeholders: usize,
) -> Result<Vec<ComparisonRow>, CompareError> {
    if vectors.is_empty() {
        return Err(CompareError::NoSystems);
    }
    let m = vectors[0].values.len();
    if m > max_stakeholders {
        return Err(CompareError::TooManyStakeholders {
            m,
            limit: max_stakeholders,
        });
    }
    let mut rows = Vec::with_capacity((1usize << m) - 1);
    for size in 1..=m {
        for subset in (0..m).combinations(size) {
            let h: Vec<f64> = vectors
                .iter()
                .map(|v| reduced(v, &subset).map(|r| h_distance(&r)))
                .collect::<Result<_, _>>()?;
            let (winner, tied_systems) = optimal_for_subset(vectors, &subset, tol)?;
            let tie = tied_systems.len() > 1;
            rows.push(ComparisonRow {
                subset,
                h,
                winner,
                tied_systems,
                tie,
            });
        }
    }
    Ok(rows)
}

/// Winner-by-frequency over one family of subsets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumSummary {
    pub winner: usize,
    pub freq_num: u64,
    pub freq_den: u64,
    /// All systems reaching the maximum frequency.
    pub top_systems: Vec<usize>,
    pub tie: bool,
}

/// Decision-guidance codes derived from how the strata relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GuidanceNote {
    /// The full-set winner agrees with the almost-all stratum.
    AllEqAlmostall,
    /// The full-set winner and the almost-all stratum disagree; weigh the
    /// distance gap and whether every stakeholder is active.
    Divergent,
    /// The any-subset stratum disagrees with the full-set winner; relevant
    /// when the active stakeholder set is unknown.
    UnknownActiveSet,
}

impl GuidanceNote {
    pub fn code(self) -> &'static str {
        match self {
            GuidanceNote::AllEqAlmostall => "ALL_EQ_ALMOSTALL",
            GuidanceNote::Divergent => "DIVERGENT",
            GuidanceNote::UnknownActiveSet => "UNKNOWN_ACTIVE_SET",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessSummary {
    /// The full stakeholder set only.
    pub all: StratumSummary,
    /// Subsets of size ≥ m − 1.
    pub almostall: StratumSummary,
    /// Subsets of size ≥ m / 2.
    pub morethanhalf: StratumSummary,
    /// Every non-empty subset.
    pub any: StratumSummary,
    pub notes: Vec<GuidanceNote>,
}

fn stratum(rows: &[ComparisonRow], n_systems: usize, keep: impl Fn(usize) -> bool) -> StratumSummary {
    let mut freq = vec![0u64; n_systems];
    let mut den = 0u64;
    for row in rows {
        if keep(row.subset.len()) {
            freq[row.winner] += 1;
            den += 1;
        }
    }
    let best = freq.iter().copied().max().unwrap_or(0);
    let top_systems: Vec<usize> = freq.iter().positions(|&f| f == best).collect();
    StratumSummary {
        winner: top_systems[0],
        freq_num: best,
        freq_den: den,
        tie: top_systems.len() > 1,
        top_systems,
    }
}

/// Aggregates the subset scan into the four strata and guidance notes.
pub fn robustness_summary(rows: &[ComparisonRow], m: usize, n_systems: usize) -> RobustnessSummary {
    let all = stratum(rows, n_systems, |size| size == m);
    let almostall = stratum(rows, n_systems, |size| size + 1 >= m);
    // size ≥ m/2 with m/2 taken exactly (not rounded)
    let morethanhalf = stratum(rows, n_systems, |size| 2 * size >= m);
    let any = stratum(rows, n_systems, |_| true);

    let mut notes = Vec::new();
    if all.winner == almostall.winner {
        notes.push(GuidanceNote::AllEqAlmostall);
    } else {
        notes.push(GuidanceNote::Divergent);
    }
    if any.winner != all.winner {
        notes.push(GuidanceNote::UnknownActiveSet);
    }
    RobustnessSummary {
        all,
        almostall,
        morethanhalf,
        any,
        notes,
    }
}

/// A full comparison: utility vectors, overall distances, the subset scan and
/// its robustness summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub systems: Vec<String>,
    pub vectors: Vec<UtilityVector>,
    /// Preference texts per system, for audit; empty when vectors were
    /// supplied directly.
    pub preferences: Vec<Vec<String>>,
    /// Distance of each full utility vector to the ideal.
    pub overall_h: Vec<f64>,
    pub rows: Vec<ComparisonRow>,
    pub summary: RobustnessSummary,
    pub tie_tolerance: f64,
}

impl ComparisonReport {
    pub fn stakeholder_count(&self) -> usize {
        self.vectors.first().map_or(0, |v| v.values.len())
    }
}

/// Runs the comparison over labelled utility vectors. All vectors must have
/// the same stakeholder count.
pub fn compare(
    labels: Vec<String>,
    vectors: Vec<UtilityVector>,
    preferences: Vec<Vec<String>>,
    tol: f64,
) -> Result<ComparisonReport, CompareError> {
    if vectors.is_empty() {
        return Err(CompareError::NoSystems);
    }
    let lens: Vec<usize> = vectors.iter().map(|v| v.values.len()).collect();
    let m = lens[0];
    if m == 0 || lens.iter().any(|&l| l != m) {
        return Err(CompareError::MismatchedStakeholders(lens));
    }
    let overall_h: Vec<f64> = vectors.iter().map(|v| h_distance(&v.values)).collect();
    let rows = subset_scan(&vectors, tol, DEFAULT_MAX_STAKEHOLDERS)?;
    let summary = robustness_summary(&rows, m, vectors.len());
    Ok(ComparisonReport {
        systems: labels,
        vectors,
        preferences,
        overall_h,
        rows,
        summary,
        tie_tolerance: tol,
    })
}
