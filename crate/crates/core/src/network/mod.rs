//! Single-source acyclic multicast networks with parallel edges.

mod build;
mod flow;
mod io;

pub use build::{
    butterfly, combination, combination_with_limit, extend_messages, kneser, kneser_with_limits, parallel_copy_id,
    parallelize, ImplicitKneser,
    KneserMode, KneserNetwork, DEFAULT_TERMINAL_CANDIDATE_LIMIT,
};
pub use flow::{is_minimal, min_cut, min_cut_without, min_cuts, Minimality};
pub use io::{EdgeJson, FieldJson, NetworkJson, NodeJson};

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Source,
    Internal,
    Terminal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub from: NodeId,
    pub to: NodeId,
}

/// Subspace labels on nodes, all over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labels {
    pub field: FieldSpec,
    pub map: BTreeMap<NodeId, Subspace>,
}

/// A multicast network `(G, source, terminals, h)`.
///
/// Construction validates acyclicity, a unique in-degree-zero source,
/// nonempty terminals and that every node lies on a source-terminal path.
#[derive(Clone, Debug)]
pub struct Network {
    nodes: Vec<NodeId>,
    edges: Vec<Edge>,
    source: NodeId,
    terminals: Vec<NodeId>,
    h: usize,
    labels: Option<Labels>,
    node_index: HashMap<NodeId, usize>,
    edge_index: HashMap<EdgeId, usize>,
    in_edges: Vec<Vec<usize>>,
    out_edges: Vec<Vec<usize>>,
    topo: Vec<usize>,
}

impl PartialEq for Network {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
            && self.edges == other.edges
            && self.source == other.source
            && self.terminals == other.terminals
            && self.h == other.h
            && self.labels == other.labels
    }
}

impl Network {
    pub fn new(
        nodes: Vec<NodeId>,
        edges: Vec<Edge>,
        source: NodeId,
        terminals: Vec<NodeId>,
        h: usize,
    ) -> Result<Network> {
        let net = Network::assemble(nodes, edges, source, terminals, h)?;
        if let Some(bad) = net.nonessential_nodes().first() {
            return Err(Error::InvalidNetwork(format!(
                "node {bad} is not on any source-terminal path"
            )));
        }
        Ok(net)
    }

    /// Like [`Network::new`] but first drops nodes (and their edges) that lie
    /// on no source-terminal path.
    pub fn new_pruned(
        nodes: Vec<NodeId>,
        edges: Vec<Edge>,
        source: NodeId,
        terminals: Vec<NodeId>,
        h: usize,
    ) -> Result<Network> {
        let net = Network::assemble(nodes, edges, source, terminals, h)?;
        let dead = net.nonessential_nodes();
        if dead.is_empty() {
            return Ok(net);
        }
        let keep_node = |n: &NodeId| !dead.contains(n);
        let nodes = net.nodes.iter().copied().filter(keep_node).collect();
        let edges = net
            .edges
            .iter()
            .copied()
            .filter(|e| keep_node(&e.from) && keep_node(&e.to))
            .collect();
        let mut pruned = Network::new(nodes, edges, net.source, net.terminals.clone(), net.h)?;
        if let Some(mut labels) = net.labels {
            labels.map.retain(|n, _| keep_node(n));
            pruned.labels = Some(labels);
        }
        Ok(pruned)
    }

    fn assemble(
        nodes: Vec<NodeId>,
        edges: Vec<Edge>,
        source: NodeId,
        terminals: Vec<NodeId>,
        h: usize,
    ) -> Result<Network> {
        let bad = |msg: String| Err(Error::InvalidNetwork(msg));
        if h == 0 {
            return bad("message count h must be at least 1".into());
        }
        if terminals.is_empty() {
            return bad("no terminals".into());
        }
        let mut node_index = HashMap::with_capacity(nodes.len());
        for (i, &n) in nodes.iter().enumerate() {
            if node_index.insert(n, i).is_some() {
                return bad(format!("duplicate node {n}"));
            }
        }
        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut in_edges = vec![Vec::new(); nodes.len()];
        let mut out_edges = vec![Vec::new(); nodes.len()];
        for (i, e) in edges.iter().enumerate() {
            if edge_index.insert(e.id, i).is_some() {
                return bad(format!("duplicate edge {}", e.id));
            }
            let (Some(&a), Some(&b)) = (node_index.get(&e.from), node_index.get(&e.to)) else {
                return bad(format!("edge {} references an unknown node", e.id));
            };
            if a == b {
                return bad(format!("edge {} is a self-loop", e.id));
            }
            out_edges[a].push(i);
            in_edges[b].push(i);
        }
        let Some(&s) = node_index.get(&source) else {
            return bad(format!("source {source} is not a node"));
        };
        if !in_edges[s].is_empty() {
            return bad(format!("source {source} has incoming edges"));
        }
        let mut seen = std::collections::HashSet::new();
        for t in &terminals {
            if !node_index.contains_key(t) {
                return bad(format!("terminal {t} is not a node"));
            }
            if *t == source {
                return bad("the source cannot be a terminal".into());
            }
            if !seen.insert(*t) {
                return bad(format!("terminal {t} listed twice"));
            }
        }
        // Kahn's algorithm, smallest node position first for a stable order.
        let mut indeg: Vec<usize> = in_edges.iter().map(Vec::len).collect();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..nodes.len()).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(nodes.len());
        while let Some(i) = ready.pop_first() {
            topo.push(i);
            for &e in &out_edges[i] {
                let j = node_index[&edges[e].to];
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.insert(j);
                }
            }
        }
        if topo.len() != nodes.len() {
            return bad("the graph has a directed cycle".into());
        }
        Ok(Network {
            nodes,
            edges,
            source,
            terminals,
            h,
            labels: None,
            node_index,
            edge_index,
            in_edges,
            out_edges,
            topo,
        })
    }

    fn nonessential_nodes(&self) -> Vec<NodeId> {
        let n = self.nodes.len();
        let mut fwd = vec![false; n];
        let s = self.node_index[&self.source];
        let mut queue = VecDeque::from([s]);
        fwd[s] = true;
        while let Some(i) = queue.pop_front() {
            for &e in &self.out_edges[i] {
                let j = self.node_index[&self.edges[e].to];
                if !fwd[j] {
                    fwd[j] = true;
                    queue.push_back(j);
                }
            }
        }
        let mut back = vec![false; n];
        for t in &self.terminals {
            let i = self.node_index[t];
            back[i] = true;
            queue.push_back(i);
        }
        while let Some(i) = queue.pop_front() {
            for &e in &self.in_edges[i] {
                let j = self.node_index[&self.edges[e].from];
                if !back[j] {
                    back[j] = true;
                    queue.push_back(j);
                }
            }
        }
        (0..n)
            .filter(|&i| !(fwd[i] && back[i]))
            .map(|i| self.nodes[i])
            .collect()
    }

    pub fn with_labels(mut self, labels: Labels) -> Result<Network> {
        if let Some(n) = labels.map.keys().find(|n| !self.node_index.contains_key(n)) {
            return Err(Error::InvalidNetwork(format!("label on unknown node {n}")));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn terminals(&self) -> &[NodeId] {
        &self.terminals
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    pub fn contains_node(&self, n: NodeId) -> bool {
        self.node_index.contains_key(&n)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edge_index.get(&id).map(|&i| &self.edges[i])
    }

    pub fn role(&self, n: NodeId) -> Option<Role> {
        if !self.contains_node(n) {
            None
        } else if n == self.source {
            Some(Role::Source)
        } else if self.terminals.contains(&n) {
            Some(Role::Terminal)
        } else {
            Some(Role::Internal)
        }
    }

    pub fn is_terminal(&self, n: NodeId) -> bool {
        self.terminals.contains(&n)
    }

    /// Incoming edges of `n` in edge-list order (empty for unknown nodes).
    pub fn in_edges(&self, n: NodeId) -> impl Iterator<Item = &Edge> + '_ {
        self.node_index
            .get(&n)
            .map(|&i| self.in_edges[i].as_slice())
            .unwrap_or(&[])
            .iter()
            .map(move |&e| &self.edges[e])
    }

    pub fn out_edges(&self, n: NodeId) -> impl Iterator<Item = &Edge> + '_ {
        self.node_index
            .get(&n)
            .map(|&i| self.out_edges[i].as_slice())
            .unwrap_or(&[])
            .iter()
            .map(move |&e| &self.edges[e])
    }

    pub fn in_degree(&self, n: NodeId) -> usize {
        self.node_index.get(&n).map_or(0, |&i| self.in_edges[i].len())
    }

    pub fn out_degree(&self, n: NodeId) -> usize {
        self.node_index.get(&n).map_or(0, |&i| self.out_edges[i].len())
    }

    /// Nodes in a topological order (stable: ties broken by list position).
    pub fn topo_order(&self) -> Vec<NodeId> {
        self.topo.iter().map(|&i| self.nodes[i]).collect()
    }

    pub(crate) fn node_pos(&self, n: NodeId) -> Option<usize> {
        self.node_index.get(&n).copied()
    }

    pub(crate) fn edge_pos(&self, e: EdgeId) -> Option<usize> {
        self.edge_index.get(&e).copied()
    }

    pub fn max_node_id(&self) -> u32 {
        self.nodes.iter().map(|n| n.0).max().unwrap_or(0)
    }

    pub fn max_edge_id(&self) -> u32 {
        self.edges.iter().map(|e| e.id.0).max().unwrap_or(0)
    }
}
