//! Properties of queue layouts on random graphs.

use proptest::prelude::*;
use queuelab::layout::{exact_queue_number, exact_queue_number_with, heuristic_queue_number, SearchOptions};
use queuelab::{greedy_partition, max_rainbow_size, validate_assignment, Execution, LabelledGraph};

fn arb_simple(max_n: u32) -> impl Strategy<Value = LabelledGraph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len())
            .prop_map(move |edges| LabelledGraph::simple(n, edges).unwrap())
    })
}

fn relabel(g: &LabelledGraph, perm: &[u32]) -> LabelledGraph {
    let edges = g.edges().iter().map(|&(u, v)| (perm[u as usize - 1], perm[v as usize - 1]));
    LabelledGraph::simple(g.n(), edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_witness_is_consistent(g in arb_simple(7)) {
        let r = exact_queue_number(&g, u64::MAX).unwrap();
        prop_assert!(r.exact);
        let ordered = g.apply_order(&r.witness_order).unwrap();
        prop_assert_eq!(max_rainbow_size(&ordered), r.queue_number);
        prop_assert!(validate_assignment(&r.witness_assignment));
        prop_assert_eq!(greedy_partition(&ordered).k(), r.queue_number);
    }

    #[test]
    fn exact_at_most_heuristic(g in arb_simple(8), seed in any::<u64>()) {
        let exact = exact_queue_number(&g, u64::MAX).unwrap();
        let heuristic = heuristic_queue_number(&g, 20, seed).unwrap();
        prop_assert!(exact.queue_number <= heuristic.queue_number);
        let identity: Vec<u32> = (1..=g.n()).collect();
        prop_assert!(exact.queue_number <= max_rainbow_size(&g.apply_order(&identity).unwrap()));
    }

    #[test]
    fn invariant_under_relabelling(g in arb_simple(7), perm in Just((1..=7u32).collect::<Vec<_>>()).prop_shuffle()) {
        let perm: Vec<u32> = perm.into_iter().filter(|&v| v <= g.n()).collect();
        let h = relabel(&g, &perm);
        let a = exact_queue_number(&g, u64::MAX).unwrap().queue_number;
        let b = exact_queue_number(&h, u64::MAX).unwrap().queue_number;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn execution_modes_agree(g in arb_simple(8)) {
        let seq = SearchOptions { execution: Execution::Sequential, ..SearchOptions::default() };
        let par = SearchOptions { execution: Execution::Parallel, ..seq };
        let a = exact_queue_number_with(&g, &seq).unwrap();
        let b = exact_queue_number_with(&g, &par).unwrap();
        prop_assert_eq!(a.queue_number, b.queue_number);
        prop_assert_eq!(a.witness_order, b.witness_order);
    }

    #[test]
    fn upper_bound_holds(n in 4u32..=10, seed in any::<u64>()) {
        let delta = if n % 2 == 0 { 3 } else { 4 };
        let s = queuelab::gen_regular(n, delta, seed).unwrap();
        let q = exact_queue_number(&s.graph, u64::MAX).unwrap().queue_number;
        prop_assert!(q as f64 <= queuelab::bounds::universal_upper(n, delta).ceil());
    }
}

#[test]
fn monotone_under_edge_removal() {
    let k6 = LabelledGraph::complete(6);
    let full = exact_queue_number(&k6, u64::MAX).unwrap().queue_number;
    for skip in 0..k6.edge_count() {
        let edges = k6.edges().iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &e)| e);
        let g = LabelledGraph::simple(6, edges).unwrap();
        assert!(exact_queue_number(&g, u64::MAX).unwrap().queue_number <= full);
    }
}
