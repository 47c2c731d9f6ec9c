use std::collections::BTreeMap;

use super::{Edge, EdgeId, Labels, Network, NodeId};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::subspace::{binomial, enumerate_subspaces, sum_dim, Combinations, Subspace};

/// Default cap on the number of candidate terminal sets a builder will scan.
pub const DEFAULT_TERMINAL_CANDIDATE_LIMIT: u128 = 1_000_000;

struct Builder {
    nodes: Vec<NodeId>,
    edges: Vec<Edge>,
    next_edge: u32,
}

impl Builder {
    fn new() -> Builder {
        Builder {
            nodes: Vec::new(),
            edges: Vec::new(),
            next_edge: 0,
        }
    }

    fn node(&mut self, id: u32) -> NodeId {
        self.nodes.push(NodeId(id));
        NodeId(id)
    }

    fn edge(&mut self, from: NodeId, to: NodeId) -> EdgeId {
        let id = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edges.push(Edge { id, from, to });
        id
    }
}

/// The butterfly network with the customary labelling: nodes `0` (source),
/// `1..=4` (the four relays) and `5`, `6` (terminals); edges `e1..e9`
/// carry ids `1..=9`.
pub fn butterfly() -> Network {
    let n = |i| NodeId(i);
    let e = |id, from, to| Edge {
        id: EdgeId(id),
        from: n(from),
        to: n(to),
    };
    let edges = vec![
        e(1, 0, 1),
        e(2, 0, 2),
        e(3, 1, 3),
        e(4, 2, 3),
        e(5, 1, 5),
        e(6, 3, 4),
        e(7, 2, 6),
        e(8, 4, 5),
        e(9, 4, 6),
    ];
    Network::new((0..7).map(n).collect(), edges, n(0), vec![n(5), n(6)], 2)
        .expect("butterfly is well formed")
}

/// The combination network `N_{h,r,s}`: source `0`, middle nodes `1..=r`,
/// then one terminal per `s`-subset of the middle layer (lexicographic).
/// Source edges get ids `0..r`, so source edge `i` feeds middle node `i+1`.
pub fn combination(h: usize, r: usize, s: usize) -> Result<Network> {
    combination_with_limit(h, r, s, DEFAULT_TERMINAL_CANDIDATE_LIMIT)
}

pub fn combination_with_limit(h: usize, r: usize, s: usize, limit: u128) -> Result<Network> {
    if s == 0 || s > r {
        return Err(Error::InvalidArgument(format!(
            "combination network needs 1 <= s <= r, got r = {r}, s = {s}"
        )));
    }
    if h == 0 {
        return Err(Error::InvalidArgument("h must be at least 1".into()));
    }
    let count = binomial(r as u128, s as u128);
    if count > limit {
        return Err(Error::LimitExceeded {
            what: "terminal count",
            value: count,
            limit,
        });
    }
    let mut b = Builder::new();
    let src = b.node(0);
    let middle: Vec<NodeId> = (1..=r as u32).map(|i| b.node(i)).collect();
    for &m in &middle {
        b.edge(src, m);
    }
    let mut terminals = Vec::new();
    let mut next = r as u32 + 1;
    for subset in Combinations::new(r, s) {
        let t = b.node(next);
        next += 1;
        for i in subset {
            b.edge(middle[i], t);
        }
        terminals.push(t);
    }
    Network::new(b.nodes, b.edges, src, terminals, h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KneserMode {
    /// List every terminal; fails past the candidate limit.
    Materialized,
    /// Keep only the terminal predicate.
    Implicit,
    /// Materialize when within limits, otherwise implicit.
    Auto,
}

/// The Kneser network `K_{q,t;h}` without its terminals listed: middle
/// nodes are the `t`-subspaces of `F_q^{ht}` and a set of `h` of them is a
/// terminal exactly when they span the whole space.
#[derive(Clone, Debug)]
pub struct ImplicitKneser {
    pub field: FieldSpec,
    pub t: usize,
    pub h: usize,
    pub middle_count: u128,
    middle: Option<Vec<Subspace>>,
}

impl ImplicitKneser {
    /// Middle-layer labels in canonical order, when they were enumerable.
    pub fn middle(&self) -> Option<&[Subspace]> {
        self.middle.as_deref()
    }

    pub fn is_terminal(&self, spaces: &[&Subspace]) -> Result<bool> {
        if spaces.len() != self.h {
            return Ok(false);
        }
        Ok(sum_dim(spaces)? == self.h * self.t)
    }

    /// Streams terminal index sets (into [`ImplicitKneser::middle`]) without
    /// storing them.
    pub fn terminal_sets(&self) -> Result<impl Iterator<Item = Vec<usize>> + '_> {
        let middle = self.middle.as_ref().ok_or(Error::LimitExceeded {
            what: "middle-layer size",
            value: self.middle_count,
            limit: crate::subspace::DEFAULT_SUBSPACE_LIMIT,
        })?;
        let full = self.h * self.t;
        Ok(Combinations::new(middle.len(), self.h).filter(move |set| {
            let spaces: Vec<&Subspace> = set.iter().map(|&i| &middle[i]).collect();
            sum_dim(&spaces).map_or(false, |d| d == full)
        }))
    }
}

#[derive(Clone, Debug)]
pub enum KneserNetwork {
    Materialized(Network),
    Implicit(ImplicitKneser),
}

impl KneserNetwork {
    pub fn network(&self) -> Option<&Network> {
        match self {
            KneserNetwork::Materialized(n) => Some(n),
            KneserNetwork::Implicit(_) => None,
        }
    }

    pub fn into_network(self) -> Option<Network> {
        match self {
            KneserNetwork::Materialized(n) => Some(n),
            KneserNetwork::Implicit(_) => None,
        }
    }
}

/// The Kneser network `K_{q,t;h}`. Node `0` is the source, node `i+1` the
/// middle node labelled by the `i`-th `t`-subspace in canonical order,
/// followed by the terminals in lexicographic order of their index sets.
pub fn kneser(q: u64, t: usize, h: usize, mode: KneserMode) -> Result<KneserNetwork> {
    kneser_with_limits(
        q,
        t,
        h,
        mode,
        crate::subspace::DEFAULT_SUBSPACE_LIMIT,
        DEFAULT_TERMINAL_CANDIDATE_LIMIT,
    )
}

pub fn kneser_with_limits(
    q: u64,
    t: usize,
    h: usize,
    mode: KneserMode,
    subspace_limit: u128,
    candidate_limit: u128,
) -> Result<KneserNetwork> {
    if h < 2 {
        return Err(Error::InvalidArgument("Kneser networks need h >= 2".into()));
    }
    if t == 0 {
        return Err(Error::InvalidArgument("Kneser networks need t >= 1".into()));
    }
    let field = FieldSpec::from_order(q)?;
    let n = h * t;
    let middle_count = crate::subspace::gaussian_coefficient(n as u32, t as u32, q)?;
    let candidates = binomial(middle_count, h as u128);
    let fits = middle_count <= subspace_limit && candidates <= candidate_limit;
    match mode {
        KneserMode::Materialized if !fits => {
            return Err(if middle_count > subspace_limit {
                Error::LimitExceeded {
                    what: "middle-layer size",
                    value: middle_count,
                    limit: subspace_limit,
                }
            } else {
                Error::LimitExceeded {
                    what: "terminal candidate count",
                    value: candidates,
                    limit: candidate_limit,
                }
            });
        }
        KneserMode::Implicit => {
            let middle = (middle_count <= subspace_limit)
                .then(|| enumerate_subspaces(&field, n, t, subspace_limit))
                .transpose()?;
            return Ok(KneserNetwork::Implicit(ImplicitKneser {
                field,
                t,
                h,
                middle_count,
                middle,
            }));
        }
        KneserMode::Auto if !fits => {
            return kneser_with_limits(q, t, h, KneserMode::Implicit, subspace_limit, candidate_limit)
        }
        _ => {}
    }
    let middle = enumerate_subspaces(&field, n, t, subspace_limit)?;
    let mut b = Builder::new();
    let src = b.node(0);
    let mids: Vec<NodeId> = (1..=middle.len() as u32).map(|i| b.node(i)).collect();
    for &m in &mids {
        b.edge(src, m);
    }
    let mut next = middle.len() as u32 + 1;
    let mut terminals = Vec::new();
    for set in Combinations::new(middle.len(), h) {
        let spaces: Vec<&Subspace> = set.iter().map(|&i| &middle[i]).collect();
        if sum_dim(&spaces)? != n {
            continue;
        }
        let term = b.node(next);
        next += 1;
        for &i in &set {
            b.edge(mids[i], term);
        }
        terminals.push(term);
    }
    let labels = Labels {
        field: field.clone(),
        map: mids.iter().copied().zip(middle).collect::<BTreeMap<_, _>>(),
    };
    let net = Network::new(b.nodes, b.edges, src, terminals, h)?.with_labels(labels)?;
    Ok(KneserNetwork::Materialized(net))
}

/// Raises the message count to `new_h` by putting a new source in front:
/// `h` parallel edges into the old source and `new_h - h` parallel edges
/// into every terminal. The new source takes the next free node id; new
/// edges take the next free edge ids in that order.
pub fn extend_messages(net: &Network, new_h: usize) -> Result<Network> {
    let h = net.h();
    if new_h <= h {
        return Err(Error::InvalidArgument(format!(
            "new message count {new_h} must exceed {h}"
        )));
    }
    let new_src = NodeId(net.max_node_id() + 1);
    let mut nodes = net.nodes().to_vec();
    nodes.push(new_src);
    let mut edges = net.edges().to_vec();
    let mut next = net.max_edge_id() + 1;
    let mut push = |to: NodeId, edges: &mut Vec<Edge>| {
        edges.push(Edge {
            id: EdgeId(next),
            from: new_src,
            to,
        });
        next += 1;
    };
    for _ in 0..h {
        push(net.source(), &mut edges);
    }
    for &t in net.terminals() {
        for _ in 0..new_h - h {
            push(t, &mut edges);
        }
    }
    let out = Network::new(nodes, edges, new_src, net.terminals().to_vec(), new_h)?;
    match net.labels() {
        Some(l) => out.with_labels(l.clone()),
        None => Ok(out),
    }
}

/// Id of the `j`-th copy of edge `id` in an `m`-fold parallelization.
pub fn parallel_copy_id(id: EdgeId, j: usize, m: usize) -> EdgeId {
    EdgeId(id.0 * m as u32 + j as u32)
}

/// Every edge replaced by `m` parallel copies; the message count becomes
/// `h * m`.
pub fn parallelize(net: &Network, m: usize) -> Result<Network> {
    if m == 0 {
        return Err(Error::InvalidArgument("parallelization factor must be at least 1".into()));
    }
    if (net.max_edge_id() as u64 + 1) * m as u64 > u32::MAX as u64 {
        return Err(Error::Overflow("parallelized edge ids"));
    }
    let edges = net
        .edges()
        .iter()
        .flat_map(|e| {
            (0..m).map(move |j| Edge {
                id: parallel_copy_id(e.id, j, m),
                ..*e
            })
        })
        .collect();
    let out = Network::new(
        net.nodes().to_vec(),
        edges,
        net.source(),
        net.terminals().to_vec(),
        net.h() * m,
    )?;
    match net.labels() {
        Some(l) => out.with_labels(l.clone()),
        None => Ok(out),
    }
}
