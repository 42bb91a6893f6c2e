//! Randomized invariant checks over traces, templates, the parser and the
//! comparison report.

use proptest::prelude::*;

use dproc::compare::{compare, h_distance, DEFAULT_TIE_TOLERANCE};
use dproc::logic::{parse_spec, print_spec, ConstraintTemplate};
use dproc::model::{Trace, TraceSet};
use dproc::utility::{utility, UtilityVector};

fn arb_trace() -> impl Strategy<Value = Trace> {
    prop::collection::vec(1u32..=6, 0..=6).prop_map(Trace::new)
}

fn arb_unique_trace() -> impl Strategy<Value = Trace> {
    prop::collection::vec(1u32..=8, 0..=8).prop_map(|mut events| {
        let mut seen = std::collections::HashSet::new();
        events.retain(|e| seen.insert(*e));
        Trace::new(events)
    })
}

fn arb_template() -> impl Strategy<Value = ConstraintTemplate> {
    use ConstraintTemplate::*;
    let a = 1u32..=6;
    let b = 1u32..=6;
    prop_oneof![
        a.clone().prop_map(Participation),
        a.clone().prop_map(Initial),
        (a.clone(), b.clone()).prop_map(|(x, y)| Resp(x, y)),
        (a.clone(), b.clone()).prop_map(|(x, y)| ChainResp(x, y)),
        (a.clone(), b.clone()).prop_map(|(x, y)| Prec(x, y)),
        (a.clone(), b.clone()).prop_map(|(x, y)| Succ(x, y)),
        (a.clone(), b.clone()).prop_map(|(x, y)| NotSucc(x, y)),
        (a.clone(), b.clone()).prop_map(|(x, y)| NotCoexist(x, y)),
        (a.clone(), b.clone()).prop_map(|(x, y)| NotCoexistWeak(x, y)),
        (a.clone(), b.clone()).prop_map(|(x, y)| OptResp(x, y)),
        (prop::collection::btree_set(1u32..=6, 1..=4), 1u32..=2).prop_map(|(set, k)| {
            let set: Vec<u32> = set.into_iter().collect();
            let k = k.min(set.len() as u32);
            Choice(k, set)
        }),
    ]
}

proptest! {
    #[test]
    fn canonicalize_is_idempotent(traces in prop::collection::vec(arb_trace(), 0..20)) {
        let once = TraceSet::canonicalize(traces);
        let twice = TraceSet::canonicalize(once.traces().to_vec());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn canonicalize_ignores_input_order(
        traces in prop::collection::vec(arb_trace(), 0..20),
        seed in any::<u64>(),
    ) {
        let mut shuffled = traces.clone();
        // cheap deterministic shuffle
        let mut state = seed | 1;
        for i in (1..shuffled.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (state >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(TraceSet::canonicalize(traces), TraceSet::canonicalize(shuffled));
    }

    #[test]
    fn canonical_order_is_by_length_then_lex(traces in prop::collection::vec(arb_trace(), 0..20)) {
        let set = TraceSet::canonicalize(traces);
        for pair in set.traces().windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            prop_assert!((a.len(), a.events()) < (b.len(), b.events()));
        }
    }

    #[test]
    fn template_matches_expansion(template in arb_template(), trace in arb_unique_trace()) {
        prop_assert_eq!(
            template.satisfied_by(&trace),
            template.expand().eval(&trace),
            "template {} on {}", template, trace
        );
    }

    #[test]
    fn utility_is_bounded_and_ordered(a in 0u64..=10_000, b in 1u64..=10_000) {
        let (a, b) = (a.min(b), b);
        let u = utility(a, b).unwrap();
        prop_assert!((0.0..=1.0).contains(&u));
        if a > 0 {
            prop_assert!(u > utility(a - 1, b).unwrap());
        }
    }

    #[test]
    fn h_distance_bounds(values in prop::collection::vec(0.0f64..=1.0, 1..=8)) {
        let m = values.len() as f64;
        let h = h_distance(&values);
        prop_assert!(h >= -1e-12);
        prop_assert!(h <= m.sqrt() + 1e-12);
    }

    #[test]
    fn comparison_winner_is_a_minimizer(
        vectors in prop::collection::vec(prop::collection::vec(0.0f64..=1.0, 3), 2..=4),
    ) {
        let labels: Vec<String> = (0..vectors.len()).map(|i| format!("P{i}")).collect();
        let vectors: Vec<UtilityVector> = vectors
            .into_iter()
            .map(|values| UtilityVector {
                good_counts: vec![0; values.len()],
                total_count: 0,
                values,
            })
            .collect();
        let report = compare(labels, vectors.clone(), vec![], DEFAULT_TIE_TOLERANCE).unwrap();
        prop_assert_eq!(report.rows.len(), 7);
        for row in &report.rows {
            let dist = |v: &UtilityVector| {
                h_distance(&row.subset.iter().map(|&i| v.values[i]).collect::<Vec<_>>())
            };
            let best = vectors.iter().map(&dist).fold(f64::INFINITY, f64::min);
            prop_assert!(dist(&vectors[row.winner]) <= best + DEFAULT_TIE_TOLERANCE);
            // winner is the lowest index among ties
            for (i, v) in vectors.iter().enumerate().take(row.winner) {
                prop_assert!(dist(v) > dist(&vectors[row.winner]) + DEFAULT_TIE_TOLERANCE, "index {i} should have won");
            }
        }
    }
}

#[test]
fn spec_print_parse_round_trip() {
    let text = std::fs::read_to_string(
        std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/ad2.dproc"),
    )
    .unwrap();
    let system = parse_spec(&text).unwrap();
    let printed = print_spec(&system);
    let reparsed = parse_spec(&printed).unwrap();
    assert_eq!(printed, print_spec(&reparsed));
}
