use privmst::bounds::{pamst_bound, pamst_trace_bound, BoundInputs};
use privmst::dp::{compose, BudgetLedger};
use privmst::graph::{approximation_error, erdos_renyi, is_spanning_tree, mst_weight, Graph};
use privmst::pamst::{pamst, release_weighted_tree, w_star, UtilityConfig};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn k3_first_step_matches_closed_form() {
    let g = Graph::new(3, vec![(0, 1), (0, 2), (1, 2)], vec![1.0, 2.0, 3.0]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for eps in [0.5, 2.0, 8.0] {
        let runs = 100_000;
        let hits = (0..runs)
            .filter(|_| {
                let (_, trace) = pamst(&g, eps, UtilityConfig::raw(), Some(0), &mut rng).unwrap();
                trace.steps[0].chosen_edge == 0
            })
            .count();
        let expected = 1.0 / (1.0 + (-eps / 4.0).exp());
        let sd = (expected * (1.0 - expected) / runs as f64).sqrt();
        assert!((hits as f64 / runs as f64 - expected).abs() < 5.0 * sd, "eps {eps}");
    }
}

#[test]
fn huge_epsilon_recovers_the_mst() {
    let mut exact = 0;
    for seed in 0..100u64 {
        let g = erdos_renyi(20, 0.4, 0.0, 10.0, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (t, _) = pamst(&g, 1e6, UtilityConfig::raw(), None, &mut rng).unwrap();
        if approximation_error(&g, &t).unwrap() == 0.0 {
            exact += 1;
        }
    }
    assert!(exact >= 99, "{exact}/100");
}

#[test]
fn pipeline_budget_composes_to_one() {
    let g = erdos_renyi(15, 0.5, 0.0, 10.0, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut ledger = BudgetLedger::new();
    let (t, trace) = pamst(&g, 0.5, UtilityConfig::raw(), None, &mut rng).unwrap();
    trace.record_into(&mut ledger);
    let release = release_weighted_tree(&g, &t, 0.5, &mut ledger, &mut rng).unwrap();
    assert_eq!(release.weights.len(), 14);
    let total = compose(&ledger).unwrap();
    assert_eq!((total.epsilon, total.delta), (1.0, 0.0));
}

fn graph_and_seed() -> impl Strategy<Value = (Graph, u64, f64, bool)> {
    (2usize..40, 0.1f64..1.0, any::<u64>(), -2.0f64..1.0, any::<bool>()).prop_map(|(n, p, seed, log_eps, norm)| {
        let p = p.max((3.0 * (n as f64).ln() / n as f64).min(1.0));
        (erdos_renyi(n, p, 0.0, 10.0, seed).unwrap(), seed, 10f64.powf(log_eps), norm)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trace_invariants((g, seed, eps, norm) in graph_and_seed()) {
        let cfg = if norm { UtilityConfig::normalized(&g) } else { UtilityConfig::raw() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (t, trace) = pamst(&g, eps, cfg, None, &mut rng).unwrap();
        let n = g.node_count();
        prop_assert!(is_spanning_tree(&g, t.edges()));
        prop_assert_eq!(trace.steps.len(), n - 1);
        prop_assert!((trace.per_step_epsilon - eps / (n - 1) as f64).abs() <= 1e-15 * eps);
        for (i, s) in trace.steps.iter().enumerate() {
            let k = i + 1;
            prop_assert!(s.range_size >= 1 && s.range_size <= k * (n - k));
            prop_assert!(s.range_min_weight <= s.chosen_weight);
        }
        prop_assert!(w_star(&trace) <= mst_weight(&g) + 1e-9);

        let b = BoundInputs::new(n, g.edge_count(), eps, 0.1).unwrap();
        let sharp = pamst_trace_bound(&trace, g.edge_count(), eps, 0.1).unwrap();
        prop_assert!(sharp <= pamst_bound(&b) * (1.0 + 1e-12));
    }

    #[test]
    fn tree_input_is_returned(parents in proptest::collection::vec(any::<prop::sample::Index>(), 1..30), seed in any::<u64>()) {
        let n = parents.len() + 1;
        let edges: Vec<_> = parents.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1)).collect();
        let weights = (0..n - 1).map(|i| (i * 37 % 11) as f64).collect();
        let g = Graph::new(n, edges, weights).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (t, trace) = pamst(&g, 0.1, UtilityConfig::raw(), None, &mut rng).unwrap();
        let all: Vec<usize> = (0..n - 1).collect();
        prop_assert_eq!(t.edges(), all.as_slice());
        prop_assert!(w_star(&trace) <= g.weights().iter().sum::<f64>());
    }
}
