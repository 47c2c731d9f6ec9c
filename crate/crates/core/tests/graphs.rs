use std::collections::BTreeSet;

use netgap::gf::FieldSpec;
use netgap::graph::{
    chromatic_number, find_homomorphism, hyper_chromatic_number, hyper_chromatic_number_direct, is_homomorphism,
    k_colorable, max_clique, HomResult, KColoring, UGraph,
};
use netgap::lincode::{search_solution, verify_solution, SearchOutcome};
use netgap::network::{butterfly, combination, extend_messages, kneser, parallelize, EdgeId, KneserMode, Network};
use netgap::qkneser::{qkneser, qkneser_hyper};
use netgap::skeleton::{
    homomorphism_from_solution, kneser_targets, reverse_skeleton, skeleton, solution_from_homomorphism,
};
use proptest::prelude::*;

const BUDGET: u64 = 10_000_000;

fn graph_from_bits(n: usize, bits: &[bool]) -> UGraph {
    let mut g = UGraph::new(n);
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                g.add_edge(u, v).unwrap();
            }
            k += 1;
        }
    }
    g
}

fn random_graph() -> impl Strategy<Value = UGraph> {
    (1..8usize).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |b| graph_from_bits(n, &b)))
}

/// Whether some map `0..n -> 0..k` is proper, by trying all of them.
fn brute_colorable(g: &UGraph, k: usize) -> bool {
    let n = g.len();
    let mut map = vec![0usize; n];
    loop {
        if g.edges().all(|(u, v)| map[u] != map[v]) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            map[i] += 1;
            if map[i] < k {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}

fn brute_clique(g: &UGraph) -> usize {
    let n = g.len();
    (0u32..1 << n)
        .filter(|m| {
            let vs: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            g.is_clique(&vs)
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn path(n: usize) -> UGraph {
    let mut g = UGraph::new(n);
    for i in 0..n - 1 {
        g.add_edge(i, i + 1).unwrap();
    }
    g
}

fn check_partition(net: &Network) {
    let sk = skeleton(net);
    let mut all: Vec<EdgeId> = sk.classes.values().flatten().copied().collect();
    let n = all.len();
    all.sort_unstable();
    all.dedup();
    assert_eq!(all.len(), n, "classes overlap");
    let edges: Vec<EdgeId> = {
        let mut v: Vec<EdgeId> = net.edges().iter().map(|e| e.id).collect();
        v.sort_unstable();
        v
    };
    assert_eq!(all, edges, "classes do not cover the edges");
    for (root, members) in &sk.classes {
        for e in members {
            assert_eq!(sk.class_of(*e), Some(*root));
        }
    }
    // every class has exactly one edge whose tail is not of in-degree one
    for members in sk.classes.values() {
        let roots = members.iter().filter(|&&e| net.in_degree(net.edge(e).unwrap().from) != 1).count();
        assert_eq!(roots, 1);
    }
}

#[test]
fn skeleton_partitions_builder_networks() {
    let mut nets = vec![butterfly(), extend_messages(&butterfly(), 4).unwrap(), parallelize(&butterfly(), 3).unwrap()];
    for (h, r, s) in [(2, 4, 2), (3, 5, 3), (2, 4, 3)] {
        nets.push(combination(h, r, s).unwrap());
    }
    nets.push(kneser(2, 2, 2, KneserMode::Materialized).unwrap().into_network().unwrap());
    nets.push(reverse_skeleton(&path(4)).unwrap());
    for net in &nets {
        check_partition(net);
    }
}

#[test]
fn source_edges_root_their_classes() {
    for net in [butterfly(), combination(3, 4, 3).unwrap(), extend_messages(&butterfly(), 3).unwrap()] {
        let sk = skeleton(&net);
        let roots: BTreeSet<EdgeId> = sk.classes.keys().copied().collect();
        for e in net.out_edges(net.source()) {
            assert!(roots.contains(&e.id), "source edge {} is not a class root", e.id);
        }
    }
}

#[test]
fn solutions_correspond_to_kneser_homomorphisms() {
    let nets = [
        butterfly(),
        reverse_skeleton(&UGraph::complete(3)).unwrap(),
        reverse_skeleton(&UGraph::complete(4)).unwrap(),
    ];
    for net in &nets {
        let sk = skeleton(net);
        for (q, t) in [(2u64, 1usize), (3, 1), (2, 2)] {
            let field = FieldSpec::from_order(q).unwrap();
            let target = qkneser(q, 2 * t, t).unwrap();
            let (hom, _) = find_homomorphism(&sk.graph, &target, BUDGET);
            let (sol, _) = search_solution(net, &field, t, BUDGET).unwrap();
            assert!(!matches!(hom, HomResult::Unknown));
            assert!(!matches!(sol, SearchOutcome::Unknown));
            assert_eq!(matches!(hom, HomResult::Found(_)), matches!(sol, SearchOutcome::Found(_)), "q={q} t={t}");
            let labels = kneser_targets(&field, t).unwrap();
            if let HomResult::Found(map) = hom {
                assert!(is_homomorphism(&sk.graph, &target, &map));
                let code = solution_from_homomorphism(net, &sk, &map, &labels, t).unwrap();
                assert!(verify_solution(net, &code).unwrap().accepted());
            }
            if let SearchOutcome::Found(code) = sol {
                let map = homomorphism_from_solution(&sk, &code, &labels).unwrap();
                assert!(is_homomorphism(&sk.graph, &target, &map));
            }
        }
    }
}

#[test]
fn hypergraph_chromatic_number_equals_graph_value() {
    for (h, want) in [(3usize, 7usize), (4, 15)] {
        let hg = qkneser_hyper(2, 1, h).unwrap();
        let g = qkneser(2, h, 1).unwrap();
        assert_eq!(g.edge_count(), g.len() * (g.len() - 1) / 2);
        let graph_chi = chromatic_number(&g, BUDGET).value().unwrap();
        let hyper = hyper_chromatic_number(&hg, BUDGET);
        assert_eq!(graph_chi, want);
        assert_eq!(hyper.value(), Some(want), "h={h}");
        assert!(hyper.witness.is_proper_hyper(&hg));
    }
    let direct = hyper_chromatic_number_direct(&qkneser_hyper(2, 1, 3).unwrap(), BUDGET);
    assert_eq!(direct.value(), Some(7));
}

#[test]
fn projective_line_kneser_graphs_are_complete() {
    for q in [2u64, 3, 4, 5] {
        let g = qkneser(q, 2, 1).unwrap();
        assert_eq!(g.len() as u64, q + 1);
        assert_eq!(g.edge_count() as u64, (q + 1) * q / 2);
        assert_eq!(chromatic_number(&g, BUDGET).value(), Some(q as usize + 1));
    }
}

#[test]
fn kneser_clique_bound_below_chromatic_number() {
    let g = qkneser(2, 4, 2).unwrap();
    let r = chromatic_number(&g, 1_000_000_000);
    assert_eq!(r.clique.len(), 5);
    assert!(g.is_clique(&r.clique));
    assert_eq!(r.value(), Some(6));
    assert!(r.witness.is_proper(&g));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn chromatic_number_matches_brute_force(g in random_graph()) {
        let r = chromatic_number(&g, BUDGET);
        let chi = r.value().unwrap();
        prop_assert!(r.witness.is_proper(&g));
        prop_assert!(r.witness.num_colors() <= chi);
        prop_assert!(r.clique.len() <= chi);
        prop_assert!(g.is_clique(&r.clique));
        prop_assert!(brute_colorable(&g, chi));
        prop_assert!(chi == 0 || chi == 1 && g.edge_count() == 0 || !brute_colorable(&g, chi - 1));
        let (clique, exact) = max_clique(&g, BUDGET);
        prop_assert!(exact);
        prop_assert_eq!(clique.len(), brute_clique(&g));
    }

    #[test]
    fn k_colorings_are_proper(g in random_graph(), k in 1..5usize) {
        match k_colorable(&g, k, BUDGET).0 {
            KColoring::Colorable(c) => {
                prop_assert!(c.is_proper(&g));
                prop_assert!(c.num_colors() <= k);
            }
            KColoring::NotColorable => prop_assert!(!brute_colorable(&g, k)),
            KColoring::Unknown => prop_assert!(false, "tiny search ran out"),
        }
    }

    #[test]
    fn homomorphisms_map_edges_to_edges(g in random_graph(), h in random_graph()) {
        match find_homomorphism(&g, &h, BUDGET).0 {
            HomResult::Found(map) => {
                prop_assert_eq!(map.len(), g.len());
                prop_assert!(map.iter().all(|&x| x < h.len()));
                for (u, v) in g.edges() {
                    prop_assert!(h.has_edge(map[u], map[v]));
                }
            }
            HomResult::None => {
                // into a complete graph a homomorphism is a coloring
                if h.edge_count() == h.len() * (h.len() - 1) / 2 {
                    prop_assert!(!brute_colorable(&g, h.len()));
                }
            }
            HomResult::Unknown => prop_assert!(false, "tiny search ran out"),
        }
    }
}

#[test]
fn skeleton_partition_on_reverse_paths_and_cycles() {
    for n in 2..=6 {
        check_partition(&reverse_skeleton(&path(n)).unwrap());
    }
}
