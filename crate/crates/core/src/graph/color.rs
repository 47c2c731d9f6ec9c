use super::{Bits, Coloring, Hypergraph, UGraph};

/// Default number of search nodes for coloring and homomorphism searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KColoring {
    Colorable(Coloring),
    /// The complete search found no proper coloring.
    NotColorable,
    Unknown,
}

/// Outcome of an exact chromatic number computation. When `exact` is false
/// the true value lies in `[lower, upper]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticResult {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub witness: Coloring,
    pub clique: Vec<usize>,
    pub expansions: u64,
}

impl ChromaticResult {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.upper)
    }
}

struct Budget {
    left: u64,
    used: u64,
}

impl Budget {
    fn new(limit: u64) -> Budget {
        Budget { left: limit, used: 0 }
    }

    fn spend(&mut self) -> bool {
        if self.left == 0 {
            return false;
        }
        self.left -= 1;
        self.used += 1;
        true
    }
}

/// A maximal clique grown greedily from high-degree vertices.
pub fn greedy_clique(g: &UGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique.sort_unstable();
    clique
}

/// Maximum clique by branch and bound with a greedy-coloring bound.
/// Returns the best clique found and whether the search completed.
pub fn max_clique(g: &UGraph, budget: u64) -> (Vec<usize>, bool) {
    let mut best = greedy_clique(g);
    let mut b = Budget::new(budget);
    let mut cur = Vec::new();
    let complete = clique_expand(g, Bits::full(g.len()), &mut cur, &mut best, &mut b);
    best.sort_unstable();
    (best, complete)
}

fn clique_expand(g: &UGraph, cand: Bits, cur: &mut Vec<usize>, best: &mut Vec<usize>, b: &mut Budget) -> bool {
    // greedy color classes give an upper bound on the clique inside `cand`
    let mut order = Vec::new();
    let mut bound = Vec::new();
    let mut uncolored = cand.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            avail.difference_with(g.neighbors(v));
            uncolored.remove(v);
            order.push(v);
            bound.push(color);
        }
    }
    let mut cand = cand;
    for i in (0..order.len()).rev() {
        if cur.len() + bound[i] <= best.len() {
            return true;
        }
        if !b.spend() {
            return false;
        }
        let v = order[i];
        cur.push(v);
        let mut next = cand.clone();
        next.intersect_with(g.neighbors(v));
        if next.is_empty() {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
        } else if !clique_expand(g, next, cur, best, b) {
            cur.pop();
            return false;
        }
        cur.pop();
        cand.remove(v);
    }
    true
}

/// DSATUR greedy coloring.
fn dsatur_greedy(g: &UGraph) -> Coloring {
    let n = g.len();
    let mut color = vec![NONE; n];
    let mut seen: Vec<Bits> = vec![Bits::new(n + 1); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == NONE)
            .max_by_key(|&v| (seen[v].count(), g.degree(v), std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        let c = (0..).find(|&c| !seen[v].contains(c)).expect("a free color");
        color[v] = c;
        for u in g.neighbors(v).iter() {
            seen[u].insert(c);
        }
    }
    Coloring { colors: color }
}

struct KSearch<'a> {
    g: &'a UGraph,
    k: usize,
    color: Vec<usize>,
    forbid: Vec<Vec<u32>>,
    sat: Vec<usize>,
}

impl<'a> KSearch<'a> {
    fn new(g: &'a UGraph, k: usize) -> KSearch<'a> {
        let n = g.len();
        KSearch {
            g,
            k,
            color: vec![NONE; n],
            forbid: vec![vec![0; k]; n],
            sat: vec![0; n],
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for u in self.g.neighbors(v).iter() {
            if self.forbid[u][c] == 0 {
                self.sat[u] += 1;
            }
            self.forbid[u][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = NONE;
        for u in self.g.neighbors(v).iter() {
            self.forbid[u][c] -= 1;
            if self.forbid[u][c] == 0 {
                self.sat[u] -= 1;
            }
        }
    }

    /// `Some(true)`: colored; `Some(false)`: exhausted; `None`: budget.
    fn solve(&mut self, colored: usize, used: usize, b: &mut Budget) -> Option<bool> {
        let n = self.g.len();
        if colored == n {
            return Some(true);
        }
        let v = (0..n)
            .filter(|&v| self.color[v] == NONE)
            .max_by_key(|&v| (self.sat[v], self.g.degree(v), std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        if self.sat[v] >= self.k {
            return Some(false);
        }
        for c in 0..(used + 1).min(self.k) {
            if self.forbid[v][c] != 0 {
                continue;
            }
            if !b.spend() {
                return None;
            }
            self.assign(v, c);
            match self.solve(colored + 1, used.max(c + 1), b) {
                Some(false) => self.unassign(v, c),
                other => return other,
            }
        }
        Some(false)
    }
}

fn k_colorable_pinned(g: &UGraph, k: usize, clique: &[usize], b: &mut Budget) -> KColoring {
    if clique.len() > k {
        return KColoring::NotColorable;
    }
    let mut s = KSearch::new(g, k);
    for (c, &v) in clique.iter().enumerate() {
        s.assign(v, c);
    }
    match s.solve(clique.len(), clique.len(), b) {
        Some(true) => KColoring::Colorable(Coloring { colors: s.color }),
        Some(false) => KColoring::NotColorable,
        None => KColoring::Unknown,
    }
}

/// Decides `k`-colorability by DSATUR backtracking. Returns the verdict
/// and the number of search nodes spent.
pub fn k_colorable(g: &UGraph, k: usize, budget: u64) -> (KColoring, u64) {
    let mut b = Budget::new(budget);
    let clique = greedy_clique(g);
    let r = k_colorable_pinned(g, k, &clique, &mut b);
    (r, b.used)
}

/// Exact chromatic number: a clique gives the lower bound, DSATUR the
/// upper bound, and every value in between is decided by complete
/// search with the clique pinned to distinct colors.
pub fn chromatic_number(g: &UGraph, budget: u64) -> ChromaticResult {
    let mut b = Budget::new(budget);
    let (clique, _) = max_clique(g, budget.min(1_000_000));
    let mut witness = dsatur_greedy(g);
    let mut lower = clique.len();
    let mut upper = witness.num_colors();
    let mut exact = true;
    for k in lower..upper {
        match k_colorable_pinned(g, k, &clique, &mut b) {
            KColoring::Colorable(c) => {
                upper = k;
                witness = c;
                break;
            }
            KColoring::NotColorable => lower = k + 1,
            KColoring::Unknown => {
                exact = false;
                break;
            }
        }
    }
    if lower == upper {
        exact = true;
    }
    ChromaticResult {
        lower,
        upper,
        exact,
        witness,
        clique,
        expansions: b.used,
    }
}

/// Chromatic number of a hypergraph under the rule that no hyperedge holds
/// two vertices of one color, computed on the co-occurrence graph.
pub fn hyper_chromatic_number(h: &Hypergraph, budget: u64) -> ChromaticResult {
    chromatic_number(&h.co_occurrence_graph(), budget)
}

/// Decides `k`-colorability directly on the hyperedges, vertices in index
/// order, without building the co-occurrence graph.
pub fn hyper_k_colorable(h: &Hypergraph, k: usize, budget: u64) -> (KColoring, u64) {
    let n = h.len();
    let mut incident = vec![Vec::new(); n];
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let mut color = vec![NONE; n];
    let mut b = Budget::new(budget);
    fn go(
        v: usize,
        used: usize,
        k: usize,
        h: &Hypergraph,
        incident: &[Vec<usize>],
        color: &mut [usize],
        b: &mut Budget,
    ) -> Option<bool> {
        if v == color.len() {
            return Some(true);
        }
        for c in 0..(used + 1).min(k) {
            let clash = incident[v]
                .iter()
                .any(|&e| h.edges()[e].iter().any(|&u| u != v && color[u] == c));
            if clash {
                continue;
            }
            if !b.spend() {
                return None;
            }
            color[v] = c;
            match go(v + 1, used.max(c + 1), k, h, incident, color, b) {
                Some(false) => color[v] = NONE,
                other => return other,
            }
        }
        Some(false)
    }
    let r = match go(0, 0, k, h, &incident, &mut color, &mut b) {
        Some(true) => KColoring::Colorable(Coloring { colors: color }),
        Some(false) => KColoring::NotColorable,
        None => KColoring::Unknown,
    };
    (r, b.used)
}

/// Exact hypergraph chromatic number by [`hyper_k_colorable`] for
/// increasing `k`.
pub fn hyper_chromatic_number_direct(h: &Hypergraph, budget: u64) -> ChromaticResult {
    let n = h.len();
    let mut left = budget;
    let mut used = 0;
    let mut lower = if h.edges().is_empty() { n.min(1) } else { h.rank() };
    let trivial = Coloring {
        colors: (0..n).collect(),
    };
    for k in lower..=n {
        let (r, spent) = hyper_k_colorable(h, k, left);
        left -= spent;
        used += spent;
        match r {
            KColoring::Colorable(c) => {
                return ChromaticResult {
                    lower: k,
                    upper: k,
                    exact: true,
                    witness: c,
                    clique: Vec::new(),
                    expansions: used,
                }
            }
            KColoring::NotColorable => lower = k + 1,
            KColoring::Unknown => {
                return ChromaticResult {
                    lower,
                    upper: n,
                    exact: false,
                    witness: trivial,
                    clique: Vec::new(),
                    expansions: used,
                }
            }
        }
    }
    ChromaticResult {
        lower: n,
        upper: n,
        exact: true,
        witness: trivial,
        clique: Vec::new(),
        expansions: used,
    }
}
