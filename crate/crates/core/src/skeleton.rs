//! Skeleton graphs of acyclic networks and the reverse construction.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::graph::UGraph;
use crate::lincode::NetworkCode;
use crate::network::{Edge, EdgeId, Minimality, Network, NodeId};
use crate::subspace::{enumerate_subspaces, Subspace, DEFAULT_SUBSPACE_LIMIT};

/// The skeleton of a network: one vertex per edge class, two classes
/// adjacent when edges of both enter a common node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonGraph {
    /// Vertex `i` has id = the least edge id of class `i`.
    pub graph: UGraph,
    /// Class id to its edges, ascending.
    pub classes: BTreeMap<EdgeId, Vec<EdgeId>>,
    class_of: HashMap<EdgeId, EdgeId>,
}

impl SkeletonGraph {
    pub fn class_of(&self, e: EdgeId) -> Option<EdgeId> {
        self.class_of.get(&e).copied()
    }

    /// Vertex index of the class containing `e`.
    pub fn vertex_of(&self, e: EdgeId) -> Option<usize> {
        self.class_of(e).and_then(|c| self.graph.index_of(c.0))
    }
}

/// Edge classes: each edge leaving a node of in-degree other than one
/// roots a class, which extends through every node of in-degree one.
pub fn skeleton(net: &Network) -> SkeletonGraph {
    let mut class_of: HashMap<EdgeId, EdgeId> = HashMap::new();
    let mut members: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
    for node in net.topo_order() {
        if net.in_degree(node) == 1 {
            continue;
        }
        for root in net.out_edges(node) {
            let mut class = Vec::new();
            let mut stack: Vec<&Edge> = vec![root];
            while let Some(e) = stack.pop() {
                class.push(e.id);
                if net.in_degree(e.to) == 1 {
                    stack.extend(net.out_edges(e.to));
                }
            }
            class.sort_unstable();
            let id = class[0];
            for &e in &class {
                class_of.insert(e, id);
            }
            members.insert(id, class);
        }
    }
    let mut graph = UGraph::with_ids(members.keys().map(|c| c.0).collect()).expect("class ids are distinct");
    let index: HashMap<EdgeId, usize> = members.keys().enumerate().map(|(i, &c)| (c, i)).collect();
    for &node in net.nodes() {
        let mut cls: Vec<usize> = net.in_edges(node).map(|e| index[&class_of[&e.id]]).collect();
        cls.sort_unstable();
        cls.dedup();
        for (i, &a) in cls.iter().enumerate() {
            for &b in &cls[i + 1..] {
                graph.add_edge(a, b).expect("distinct classes");
            }
        }
    }
    SkeletonGraph {
        graph,
        classes: members,
        class_of,
    }
}

/// A two-message network whose skeleton is `g`: the source feeds one
/// middle node per vertex (source edge `i` into node `i + 1`), and each
/// edge of `g` becomes a terminal fed by its two endpoints.
pub fn reverse_skeleton(g: &UGraph) -> Result<Network> {
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(Error::InvalidArgument(format!("vertex {} is isolated", g.ids()[v])));
    }
    let n = g.len() as u32;
    let mut nodes: Vec<NodeId> = (0..=n).map(NodeId).collect();
    let mut edges: Vec<Edge> = (0..n)
        .map(|i| Edge {
            id: EdgeId(i),
            from: NodeId(0),
            to: NodeId(i + 1),
        })
        .collect();
    let mut terminals = Vec::new();
    let mut next_edge = n;
    for (j, (u, v)) in g.edges().enumerate() {
        let tau = NodeId(n + 1 + j as u32);
        nodes.push(tau);
        terminals.push(tau);
        for w in [u, v] {
            edges.push(Edge {
                id: EdgeId(next_edge),
                from: NodeId(w as u32 + 1),
                to: tau,
            });
            next_edge += 1;
        }
    }
    Network::new(nodes, edges, NodeId(0), terminals, 2)
}

/// Whether the skeleton of [`reverse_skeleton`]`(g)` is `g` under the
/// tracked correspondence (class of source edge `i` to vertex `i`).
pub fn skeleton_roundtrip_check(g: &UGraph) -> Result<bool> {
    let net = reverse_skeleton(g)?;
    let sk = skeleton(&net);
    if sk.graph.len() != g.len() {
        return Ok(false);
    }
    let idx: Vec<usize> = (0..g.len())
        .map(|i| sk.vertex_of(EdgeId(i as u32)).ok_or(Error::InvalidNetwork("missing class".into())))
        .collect::<Result<_>>()?;
    for u in 0..g.len() {
        for v in u + 1..g.len() {
            if g.has_edge(u, v) != sk.graph.has_edge(idx[u], idx[v]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Solutions over `(q, t)` correspond to homomorphisms into `qK_{2t:t}`
/// only for minimal networks with two messages.
pub fn homomorphism_equivalence_holds(net: &Network) -> Result<bool> {
    Ok(net.h() == 2 && crate::network::is_minimal(net)? == Minimality::Minimal)
}

/// Every edge of a class carries the `t`-subspace its class is mapped to.
/// `target` lists the vertices of `qK_{2t:t}` in the order `hom` uses.
pub fn solution_from_homomorphism(
    net: &Network,
    sk: &SkeletonGraph,
    hom: &[usize],
    target: &[Subspace],
    t: usize,
) -> Result<NetworkCode> {
    if hom.len() != sk.graph.len() {
        return Err(Error::DimensionMismatch(format!(
            "map covers {} of {} classes",
            hom.len(),
            sk.graph.len()
        )));
    }
    let Some(first) = target.first() else {
        return Err(Error::InvalidArgument("empty target".into()));
    };
    let field = first.field().clone();
    let mut code = NetworkCode::new(&field, t, net.h())?;
    for e in net.edges() {
        let v = sk.vertex_of(e.id).ok_or(Error::MissingAssignment(e.id.0))?;
        let s = target
            .get(hom[v])
            .ok_or_else(|| Error::InvalidArgument(format!("image {} out of range", hom[v])))?;
        if s.dim() != t || s.ambient() != net.h() * t {
            return Err(Error::DimensionMismatch("target labels must be t-subspaces of F_q^{ht}".into()));
        }
        code.insert(e.id, s.basis().clone())?;
    }
    Ok(code)
}

/// Maps each class to the index (in `target`) of the space its root edge
/// carries; fails if that space is not a `t`-space listed in `target`.
pub fn homomorphism_from_solution(
    sk: &SkeletonGraph,
    code: &NetworkCode,
    target: &[Subspace],
) -> Result<Vec<usize>> {
    sk.classes
        .keys()
        .map(|&c| {
            let g = code.get(c).ok_or(Error::MissingAssignment(c.0))?;
            let s = Subspace::canonicalize(g);
            target
                .binary_search(&s)
                .map_err(|_| Error::InvalidArgument(format!("class {c} carries a space of dimension {}", s.dim())))
        })
        .collect()
}

/// Vertex labels of `qK_{2t:t}` in canonical order.
pub fn kneser_targets(field: &FieldSpec, t: usize) -> Result<Vec<Subspace>> {
    enumerate_subspaces(field, 2 * t, t, DEFAULT_SUBSPACE_LIMIT)
}

/// Scalar code on `net` (two messages) from a proper coloring of its
/// skeleton with at most `q + 1` colors: color `c` picks the `c`-th line
/// of `F_q^2`.
pub fn solution_from_coloring(net: &Network, sk: &SkeletonGraph, colors: &[usize], field: &FieldSpec) -> Result<NetworkCode> {
    let lines = kneser_targets(field, 1)?;
    if let Some(&c) = colors.iter().find(|&&c| c >= lines.len()) {
        return Err(Error::InvalidArgument(format!(
            "color {c} exceeds the {} lines of the plane",
            lines.len()
        )));
    }
    solution_from_homomorphism(net, sk, colors, &lines, 1)
}
