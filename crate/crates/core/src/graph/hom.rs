use super::{Bits, UGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomResult {
    Found(Vec<usize>),
    /// Complete search: no homomorphism exists.
    None,
    Unknown,
}

/// Whether `map` sends every edge of `g1` to an edge of `g2`.
pub fn is_homomorphism(g1: &UGraph, g2: &UGraph, map: &[usize]) -> bool {
    map.len() == g1.len()
        && map.iter().all(|&v| v < g2.len())
        && g1.edges().all(|(u, v)| g2.has_edge(map[u], map[v]))
}

/// Backtracking search for a homomorphism `g1 -> g2`: smallest domain
/// first, forward checking of neighbor domains. Each tentative assignment
/// counts against `budget`. Returns the result and the nodes spent.
pub fn find_homomorphism(g1: &UGraph, g2: &UGraph, budget: u64) -> (HomResult, u64) {
    let n = g1.len();
    if n == 0 {
        return (HomResult::Found(Vec::new()), 0);
    }
    let full = Bits::full(g2.len());
    // a vertex with neighbors needs an image with neighbors
    let mut nonisolated = Bits::new(g2.len());
    for v in 0..g2.len() {
        if g2.degree(v) > 0 {
            nonisolated.insert(v);
        }
    }
    let domains: Vec<Bits> = (0..n)
        .map(|v| {
            if g1.degree(v) > 0 {
                nonisolated.clone()
            } else {
                full.clone()
            }
        })
        .collect();
    let mut s = HomSearch {
        g1,
        g2,
        map: vec![usize::MAX; n],
        left: budget,
        used: 0,
    };
    let r = match s.solve(domains, 0) {
        Some(true) => HomResult::Found(s.map),
        Some(false) => HomResult::None,
        None => HomResult::Unknown,
    };
    (r, s.used)
}

struct HomSearch<'a> {
    g1: &'a UGraph,
    g2: &'a UGraph,
    map: Vec<usize>,
    left: u64,
    used: u64,
}

impl HomSearch<'_> {
    fn solve(&mut self, domains: Vec<Bits>, assigned: usize) -> Option<bool> {
        let n = self.g1.len();
        if assigned == n {
            return Some(true);
        }
        let v = (0..n)
            .filter(|&v| self.map[v] == usize::MAX)
            .min_by_key(|&v| (domains[v].count(), std::cmp::Reverse(self.g1.degree(v)), v))
            .expect("an unassigned vertex remains");
        for c in domains[v].iter() {
            if self.left == 0 {
                return None;
            }
            self.left -= 1;
            self.used += 1;
            let mut next = domains.clone();
            let mut dead = false;
            for u in self.g1.neighbors(v).iter() {
                if self.map[u] == usize::MAX {
                    next[u].intersect_with(self.g2.neighbors(c));
                    if next[u].is_empty() {
                        dead = true;
                        break;
                    }
                }
            }
            if dead {
                continue;
            }
            self.map[v] = c;
            match self.solve(next, assigned + 1) {
                Some(false) => self.map[v] = usize::MAX,
                other => return other,
            }
        }
        Some(false)
    }
}
