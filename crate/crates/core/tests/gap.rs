use netgap::gap::{
    gap_exact, gap_formula, prime_powers_up_to, psi, psi_ratio, qs_exact, qs_exhaustive, qv_exact, GapFormula, GapOptions,
    Method,
};
use netgap::graph::UGraph;
use netgap::network::{butterfly, combination, is_minimal, kneser, KneserMode, Network};
use netgap::skeleton::reverse_skeleton;

/// `next[n]` = smallest prime power `>= n`, from a sieve of prime powers.
fn next_prime_power_table(max: usize) -> Vec<u64> {
    let top = 2 * max + 2;
    let mut composite = vec![false; top + 1];
    let mut is_pp = vec![false; top + 1];
    for p in 2..=top {
        if composite[p] {
            continue;
        }
        let mut m = p * p;
        while m <= top {
            composite[m] = true;
            m += p;
        }
        let mut pk = p;
        while pk <= top {
            is_pp[pk] = true;
            pk = match pk.checked_mul(p) {
                Some(x) => x,
                None => break,
            };
        }
    }
    let mut next = vec![0u64; top + 1];
    let mut cur = 0u64;
    for n in (1..=top).rev() {
        if is_pp[n] {
            cur = n as u64;
        }
        next[n] = cur;
    }
    next.truncate(max + 1);
    next
}

fn cycle(n: usize) -> UGraph {
    let mut g = UGraph::new(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n).unwrap();
    }
    g
}

fn path(n: usize) -> UGraph {
    let mut g = UGraph::new(n);
    for i in 0..n - 1 {
        g.add_edge(i, i + 1).unwrap();
    }
    g
}

fn minimal_two_message_instances() -> Vec<(String, Network)> {
    let mut out = vec![("butterfly".to_string(), butterfly())];
    for r in 3..=5 {
        out.push((format!("N_(2,{r},2)"), combination(2, r, 2).unwrap()));
    }
    for (q, t) in [(2u64, 1usize), (3, 1), (2, 2)] {
        let net = kneser(q, t, 2, KneserMode::Materialized).unwrap().into_network().unwrap();
        out.push((format!("K_({q},{t};2)"), net));
    }
    for (name, g) in [("C5", cycle(5)), ("K3", UGraph::complete(3)), ("P4", path(4)), ("K4", UGraph::complete(4))] {
        out.push((format!("rev({name})"), reverse_skeleton(&g).unwrap()));
    }
    out
}

#[test]
fn psi_matches_a_prime_power_sieve() {
    let table = next_prime_power_table(200_000);
    for n in 1..=200_000u64 {
        assert_eq!(psi(n).unwrap(), table[n as usize], "n={n}");
    }
    for n in [500_000u64, 999_983, 999_984, 1_000_000] {
        let p = psi(n).unwrap();
        assert!(p >= n && p - n <= n);
        assert!(netgap::gf::is_prime_power(p));
        assert!((n..p).all(|m| !netgap::gf::is_prime_power(m)));
    }
    assert!(psi(0).is_err());
    assert_eq!(psi_ratio(19, 2).unwrap(), psi(10).unwrap());
    let pps: Vec<u64> = prime_powers_up_to(32).collect();
    assert_eq!(pps, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]);
}

#[test]
fn vector_value_never_exceeds_scalar_value() {
    let opts = GapOptions::default();
    for (name, net) in minimal_two_message_instances() {
        let r = gap_exact(&name, &net, &opts).unwrap();
        let (Some(qs), Some(qv)) = (r.qs.value.exact(), r.qv.value.exact()) else {
            panic!("{name} not resolved");
        };
        assert!(qv <= qs, "{name}");
        assert_eq!(r.gap.exact(), Some(qs - qv));
    }
    for (h, r) in [(3usize, 4usize), (3, 5)] {
        let net = combination(h, r, h).unwrap();
        let rep = gap_exact("comb", &net, &opts).unwrap();
        assert!(rep.qv.value.exact().unwrap() <= rep.qs.value.exact().unwrap());
    }
}

#[test]
fn skeleton_chromatic_method_agrees_with_exhaustive_search() {
    let opts = GapOptions::default();
    let graphs = [cycle(5), UGraph::complete(3), path(4)];
    let mut nets = vec![butterfly()];
    nets.extend(graphs.iter().map(|g| reverse_skeleton(g).unwrap()));
    for net in nets {
        assert!(is_minimal(&net).unwrap().is_minimal());
        let fast = qs_exact(&net, &opts).unwrap();
        assert_eq!(fast.method, Method::SkeletonChi);
        let slow = qs_exhaustive(&net, &opts).unwrap();
        assert_eq!(slow.method, Method::Exhaustive);
        assert!(fast.value.exact().is_some());
        assert_eq!(fast.value, slow.value);
    }
}

#[test]
fn minimal_networks_obey_the_gap_upper_bound() {
    let opts = GapOptions::default();
    for (name, net) in minimal_two_message_instances() {
        let r = gap_exact(&name, &net, &opts).unwrap();
        let gap = r.gap.exact().unwrap();
        let (q, t) = (r.qv.q.unwrap(), r.qv.t.unwrap());
        let bound = gap_formula(GapFormula::MinimalUpper { q, t: t as u32 }).unwrap().value;
        assert!(gap <= bound, "{name}: gap {gap} > bound {bound} at ({q},{t})");
    }
}

#[test]
fn kneser_gaps_match_the_closed_form() {
    let opts = GapOptions::default();
    for (q, t) in [(2u64, 1usize), (3, 1), (2, 2)] {
        let net = kneser(q, t, 2, KneserMode::Materialized).unwrap().into_network().unwrap();
        let r = gap_exact("kneser", &net, &opts).unwrap();
        let want = gap_formula(GapFormula::KneserExact { q, t: t as u32 }).unwrap();
        assert!(want.hypotheses_met);
        assert_eq!(r.gap.exact(), Some(want.value));
        assert_eq!(r.qv.value.exact(), Some(q.pow(t as u32)));
    }
}

#[test]
fn combination_gaps_vanish_for_two_messages() {
    let opts = GapOptions::default();
    for r in 3..=6u64 {
        let net = combination(2, r as usize, 2).unwrap();
        let rep = gap_exact("comb", &net, &opts).unwrap();
        let want = psi(r - 1).unwrap();
        assert_eq!(rep.qs.value.exact(), Some(want));
        assert_eq!(rep.qv.value.exact(), Some(want));
        assert_eq!(rep.gap.exact(), Some(0));
        assert_eq!(gap_formula(GapFormula::Combination { h: 2, r }).unwrap().value, 0);
    }
}

#[test]
fn vector_search_respects_a_value_cap() {
    let net = kneser(2, 2, 2, KneserMode::Materialized).unwrap().into_network().unwrap();
    let r = qv_exact(&net, &GapOptions::default(), Some(3)).unwrap();
    assert_eq!(r.value.exact(), None);
    assert_eq!(r.value.lower(), 4);
}
