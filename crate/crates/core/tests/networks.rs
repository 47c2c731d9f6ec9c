use std::collections::{BTreeSet, HashSet};

use netgap::gf::FieldSpec;
use netgap::lincode::{
    extend_solution, node_space_dim, restrict_extended_solution, search_solution, solution_from_classical_code,
    split_to_parallel, verify_solution, NetworkCode, SearchOutcome,
};
use netgap::mds::rs_code;
use netgap::network::{
    butterfly, combination, extend_messages, is_minimal, kneser, min_cut, min_cuts, parallelize, Edge, EdgeId,
    KneserMode, Minimality, Network, NodeId,
};
use netgap::qkneser::qkneser;
use netgap::skeleton::reverse_skeleton;
use netgap::graph::UGraph;
use proptest::prelude::*;

const BUDGET: u64 = 5_000_000;

fn cycle(n: usize) -> UGraph {
    let mut g = UGraph::new(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n).unwrap();
    }
    g
}

fn builder_outputs() -> Vec<Network> {
    let mut out = vec![butterfly()];
    for (h, r, s) in [(2, 3, 2), (2, 4, 2), (2, 5, 2), (3, 4, 3), (2, 4, 3), (1, 3, 1), (3, 5, 2)] {
        out.push(combination(h, r, s).unwrap());
    }
    out.push(kneser(2, 1, 2, KneserMode::Materialized).unwrap().into_network().unwrap());
    out.push(kneser(3, 1, 2, KneserMode::Materialized).unwrap().into_network().unwrap());
    out.push(kneser(2, 2, 2, KneserMode::Materialized).unwrap().into_network().unwrap());
    out.push(extend_messages(&butterfly(), 3).unwrap());
    out.push(parallelize(&butterfly(), 2).unwrap());
    out.push(reverse_skeleton(&cycle(5)).unwrap());
    out
}

/// Nodes reachable from `start` along edges, forwards or backwards.
fn reach(net: &Network, start: &[NodeId], forward: bool) -> HashSet<NodeId> {
    let mut seen: HashSet<NodeId> = start.iter().copied().collect();
    let mut stack = start.to_vec();
    while let Some(v) = stack.pop() {
        for e in net.edges() {
            let (a, b) = if forward { (e.from, e.to) } else { (e.to, e.from) };
            if a == v && seen.insert(b) {
                stack.push(b);
            }
        }
    }
    seen
}

/// Smallest number of edges whose removal separates `tau` from the source,
/// by trying edge subsets in order of size.
fn brute_min_cut(net: &Network, tau: NodeId) -> usize {
    let m = net.edges().len();
    let mut best = m;
    for mask in 0u32..1 << m {
        let k = mask.count_ones() as usize;
        if k >= best {
            continue;
        }
        let mut seen = HashSet::from([net.source()]);
        let mut stack = vec![net.source()];
        while let Some(v) = stack.pop() {
            for (i, e) in net.edges().iter().enumerate() {
                if mask >> i & 1 == 0 && e.from == v && seen.insert(e.to) {
                    stack.push(e.to);
                }
            }
        }
        if !seen.contains(&tau) {
            best = k;
        }
    }
    best
}

fn random_network() -> impl Strategy<Value = Option<Network>> {
    (3..9u32, 1..4usize).prop_flat_map(|(n, h)| {
        prop::collection::vec((0..n, 0..n), 1..=50).prop_map(move |pairs| {
            let edges: Vec<Edge> = pairs
                .iter()
                .filter(|(a, b)| a != b)
                .enumerate()
                .map(|(i, &(a, b))| Edge {
                    id: EdgeId(i as u32),
                    from: NodeId(a.min(b)),
                    to: NodeId(a.max(b)),
                })
                .collect();
            let sinks: Vec<NodeId> = (1..n)
                .map(NodeId)
                .filter(|&v| edges.iter().any(|e| e.to == v) && !edges.iter().any(|e| e.from == v))
                .collect();
            Network::new_pruned((0..n).map(NodeId).collect(), edges, NodeId(0), sinks, h).ok()
        })
    })
}

fn solved_minimal_instances() -> Vec<(Network, NetworkCode)> {
    let mut out = Vec::new();
    let f2 = FieldSpec::new(2, 1).unwrap();
    let bf = butterfly();
    let SearchOutcome::Found(code) = search_solution(&bf, &f2, 1, BUDGET).unwrap().0 else {
        panic!("butterfly has a binary solution");
    };
    out.push((bf.clone(), code));
    let SearchOutcome::Found(code) = search_solution(&bf, &f2, 2, BUDGET).unwrap().0 else {
        panic!("butterfly has a (2,2) solution");
    };
    out.push((bf, code));
    for r in 2..=5 {
        let net = combination(2, r, 2).unwrap();
        let code = solution_from_classical_code(&net, rs_code(4, r, 2).unwrap().generator()).unwrap();
        out.push((net, code));
    }
    let k = kneser(2, 1, 2, KneserMode::Materialized).unwrap().into_network().unwrap();
    let SearchOutcome::Found(code) = search_solution(&k, &f2, 1, BUDGET).unwrap().0 else {
        panic!("K_(2,1;2) has a binary solution");
    };
    out.push((k, code));
    out
}

#[test]
fn builder_outputs_are_acyclic_and_essential() {
    for net in builder_outputs() {
        let order = net.topo_order();
        assert_eq!(order.len(), net.nodes().len());
        let pos: std::collections::HashMap<NodeId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        assert!(net.edges().iter().all(|e| pos[&e.from] < pos[&e.to]));
        let fwd = reach(&net, &[net.source()], true);
        let back = reach(&net, net.terminals(), false);
        for v in net.nodes() {
            assert!(fwd.contains(v) && back.contains(v), "node {v} is not essential");
        }
        assert_eq!(net.in_degree(net.source()), 0);
    }
}

#[test]
fn combination_minimal_iff_s_equals_h() {
    for h in 1..=3 {
        for s in 1..=3 {
            for r in s..=5 {
                let net = combination(h, r, s).unwrap();
                let m = is_minimal(&net).unwrap();
                assert_eq!(m.is_minimal(), s == h, "N_({h},{r},{s}): {m:?}");
                if s < h {
                    assert!(matches!(m, Minimality::Unsolvable { .. }));
                }
            }
        }
    }
}

#[test]
fn kneser_terminals_are_kneser_graph_edges() {
    for (q, t) in [(2u64, 1usize), (3, 1), (2, 2)] {
        let net = kneser(q, t, 2, KneserMode::Materialized).unwrap().into_network().unwrap();
        let g = qkneser(q, 2 * t, t).unwrap();
        let from_net: BTreeSet<(usize, usize)> = net
            .terminals()
            .iter()
            .map(|&tau| {
                let mut ends: Vec<usize> = net.in_edges(tau).map(|e| e.from.0 as usize - 1).collect();
                ends.sort_unstable();
                assert_eq!(ends.len(), 2);
                (ends[0], ends[1])
            })
            .collect();
        let from_graph: BTreeSet<(usize, usize)> = g.edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
        assert_eq!(from_net, from_graph, "q={q} t={t}");
        let labels = net.labels().unwrap();
        for (i, l) in g.labels().unwrap().iter().enumerate() {
            assert_eq!(&labels.map[&NodeId(i as u32 + 1)], l);
        }
    }
}

#[test]
fn minimal_solved_networks_have_small_in_degree_and_full_node_spaces() {
    for (net, code) in solved_minimal_instances() {
        assert!(is_minimal(&net).unwrap().is_minimal());
        assert!(verify_solution(&net, &code).unwrap().accepted());
        for &v in net.nodes() {
            if v == net.source() {
                continue;
            }
            assert!(net.in_degree(v) <= net.h());
            assert_eq!(node_space_dim(&net, &code, v).unwrap(), net.in_degree(v) * code.t());
        }
    }
}

#[test]
fn parallelization_preserves_minimality_and_solutions() {
    let f = FieldSpec::new(2, 1).unwrap();
    for net in [butterfly(), combination(2, 3, 2).unwrap()] {
        for m in 1..=3 {
            assert!(is_minimal(&parallelize(&net, m).unwrap()).unwrap().is_minimal());
        }
        let SearchOutcome::Found(code) = search_solution(&net, &f, 2, BUDGET).unwrap().0 else {
            panic!("a (2,2) solution exists");
        };
        let (par, scalar) = split_to_parallel(&net, &code).unwrap();
        assert_eq!(par.h(), 2 * net.h());
        assert_eq!(scalar.t(), 1);
        assert!(verify_solution(&par, &scalar).unwrap().accepted());
    }
}

#[test]
fn message_extension_transfers_solutions() {
    for q in [2u64, 3] {
        let f = FieldSpec::from_order(q).unwrap();
        for base in [butterfly()] {
            let (base_outcome, _) = search_solution(&base, &f, 1, BUDGET).unwrap();
            for new_h in [3, 4] {
                let ext = extend_messages(&base, new_h).unwrap();
                let (ext_outcome, _) = search_solution(&ext, &f, 1, BUDGET).unwrap();
                assert!(!matches!(base_outcome, SearchOutcome::Unknown));
                assert!(!matches!(ext_outcome, SearchOutcome::Unknown));
                assert_eq!(
                    matches!(base_outcome, SearchOutcome::Found(_)),
                    matches!(ext_outcome, SearchOutcome::Found(_)),
                    "q={q} h'={new_h}"
                );
                if let SearchOutcome::Found(code) = &base_outcome {
                    let (ext2, lifted) = extend_solution(&base, code, new_h).unwrap();
                    assert_eq!(ext2, ext);
                    assert!(verify_solution(&ext, &lifted).unwrap().accepted());
                }
                if let SearchOutcome::Found(code) = &ext_outcome {
                    let back = restrict_extended_solution(&base, &ext, code).unwrap();
                    assert!(verify_solution(&base, &back).unwrap().accepted());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_networks_are_essential(net in random_network()) {
        let Some(net) = net else { return Ok(()); };
        let fwd = reach(&net, &[net.source()], true);
        let back = reach(&net, net.terminals(), false);
        for v in net.nodes() {
            prop_assert!(fwd.contains(v) && back.contains(v));
        }
        prop_assert!(net.edges().len() <= 50);
    }

    #[test]
    fn min_cut_matches_brute_force(net in random_network()) {
        let Some(net) = net else { return Ok(()); };
        prop_assume!(net.edges().len() <= 14);
        let all = min_cuts(&net);
        for &(tau, c) in &all {
            prop_assert_eq!(c, brute_min_cut(&net, tau));
            prop_assert_eq!(c, min_cut(&net, tau).unwrap());
        }
    }

    #[test]
    fn search_results_verify(net in random_network(), q in prop::sample::select(vec![2u64, 3])) {
        let Some(net) = net else { return Ok(()); };
        prop_assume!(net.edges().len() <= 14);
        let f = FieldSpec::from_order(q).unwrap();
        let (outcome, _) = search_solution(&net, &f, 1, 200_000).unwrap();
        let solvable = min_cuts(&net).iter().all(|&(_, c)| c >= net.h());
        match outcome {
            SearchOutcome::Found(code) => {
                prop_assert!(solvable);
                prop_assert!(verify_solution(&net, &code).unwrap().accepted());
            }
            SearchOutcome::NoSolution => {}
            SearchOutcome::Unknown => {}
        }
    }
}
