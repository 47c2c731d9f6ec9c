//! Linear network codes stored as per-edge global coding matrices.

mod search;
mod transfer;

pub use search::{search_solution, SearchOutcome, SearchStats};
pub use transfer::{extend_solution, restrict_extended_solution, split_to_parallel};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Matrix};
use crate::network::{EdgeId, Network, NodeId};

/// A `(q, t)` linear code on a network with `h` messages: every edge
/// carries a `t x ht` global coding matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkCode {
    field: FieldSpec,
    t: usize,
    h: usize,
    assignment: BTreeMap<EdgeId, Matrix>,
}

impl NetworkCode {
    pub fn new(field: &FieldSpec, t: usize, h: usize) -> Result<NetworkCode> {
        if t == 0 || h == 0 {
            return Err(Error::InvalidArgument("t and h must be positive".into()));
        }
        Ok(NetworkCode {
            field: field.clone(),
            t,
            h,
            assignment: BTreeMap::new(),
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn width(&self) -> usize {
        self.h * self.t
    }

    pub fn insert(&mut self, edge: EdgeId, g: Matrix) -> Result<()> {
        if g.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if g.rows() != self.t || g.cols() != self.width() {
            return Err(Error::DimensionMismatch(format!(
                "edge {edge}: expected {}x{}, got {}x{}",
                self.t,
                self.width(),
                g.rows(),
                g.cols()
            )));
        }
        self.assignment.insert(edge, g);
        Ok(())
    }

    pub fn get(&self, edge: EdgeId) -> Option<&Matrix> {
        self.assignment.get(&edge)
    }

    pub fn assignments(&self) -> impl Iterator<Item = (EdgeId, &Matrix)> {
        self.assignment.iter().map(|(&e, m)| (e, m))
    }

    fn require(&self, edge: EdgeId) -> Result<&Matrix> {
        self.get(edge).ok_or(Error::MissingAssignment(edge.0))
    }

    /// `G_ν`: the incoming matrices of `node` stacked.
    pub fn node_matrix(&self, net: &Network, node: NodeId) -> Result<Matrix> {
        let parts: Vec<&Matrix> = net
            .in_edges(node)
            .map(|e| self.require(e.id))
            .collect::<Result<_>>()?;
        Matrix::stack_all(&self.field, self.width(), parts)
    }

    pub fn to_json(&self) -> CodeJson {
        CodeJson {
            q: self.field.q() as u64,
            p: self.field.p() as u64,
            m: self.field.m(),
            t: self.t,
            h: self.h,
            edges: self
                .assignment
                .iter()
                .map(|(e, g)| (e.0, g.to_codes()))
                .collect(),
        }
    }

    pub fn from_json(j: &CodeJson) -> Result<NetworkCode> {
        let field = FieldSpec::new(j.p, j.m)?;
        if field.q() as u64 != j.q {
            return Err(Error::InvalidArgument(format!(
                "q = {} does not match p^m = {}",
                j.q,
                field.q()
            )));
        }
        let mut code = NetworkCode::new(&field, j.t, j.h)?;
        for (&e, rows) in &j.edges {
            let g = Matrix::from_codes(&field, j.h * j.t, rows)?;
            code.insert(EdgeId(e), g)?;
        }
        Ok(code)
    }
}

/// Interchange form of a [`NetworkCode`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub q: u64,
    pub p: u64,
    pub m: u32,
    pub t: usize,
    pub h: usize,
    pub edges: BTreeMap<u32, Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The message on `edge` is not a function of what `node` receives.
    Local { node: NodeId, edge: EdgeId },
    /// `terminal` cannot decode: its incoming rank is short.
    TerminalRank { terminal: NodeId, rank: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub violation: Option<Violation>,
    pub required_rank: usize,
    pub terminal_ranks: Vec<(NodeId, usize)>,
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        self.violation.is_none()
    }
}

fn check_shape(net: &Network, code: &NetworkCode) -> Result<()> {
    if code.h != net.h() {
        return Err(Error::DimensionMismatch(format!(
            "code is for h = {}, network has h = {}",
            code.h,
            net.h()
        )));
    }
    if let Some(e) = code.assignment.keys().find(|e| net.edge(**e).is_none()) {
        return Err(Error::InvalidArgument(format!("assignment for unknown edge {e}")));
    }
    for e in net.edges() {
        code.require(e.id)?;
    }
    Ok(())
}

/// Checks local consistency at every non-source node (in topological
/// order) and full rank at every terminal. Reports the first violation.
pub fn verify_solution(net: &Network, code: &NetworkCode) -> Result<Verdict> {
    check_shape(net, code)?;
    let mut violation = None;
    for node in net.topo_order() {
        if node == net.source() || violation.is_some() {
            continue;
        }
        let g_node = code.node_matrix(net, node)?;
        for e in net.out_edges(node) {
            if !g_node.rowspace_contains(code.require(e.id)?)? {
                violation = Some(Violation::Local { node, edge: e.id });
                break;
            }
        }
    }
    let required_rank = code.width();
    let mut terminal_ranks = Vec::with_capacity(net.terminals().len());
    for &tau in net.terminals() {
        let rank = code.node_matrix(net, tau)?.rank();
        terminal_ranks.push((tau, rank));
        if violation.is_none() && rank < required_rank {
            violation = Some(Violation::TerminalRank { terminal: tau, rank });
        }
    }
    Ok(Verdict {
        violation,
        required_rank,
        terminal_ranks,
    })
}

/// `dim M(ν)`, the rank of the stacked incoming matrices.
pub fn node_space_dim(net: &Network, code: &NetworkCode, node: NodeId) -> Result<usize> {
    if node == net.source() {
        return Err(Error::InvalidArgument("the source has no incoming edges".into()));
    }
    if !net.contains_node(node) {
        return Err(Error::InvalidArgument(format!("unknown node {node}")));
    }
    Ok(code.node_matrix(net, node)?.rank())
}

/// Scalar code on a combination network from an `h x r` generator: source
/// edge `i` (in the source's edge order) carries column `i` of `g`, every
/// other node forwards its single input.
pub fn solution_from_classical_code(net: &Network, g: &Matrix) -> Result<NetworkCode> {
    let src_edges: Vec<EdgeId> = net.out_edges(net.source()).map(|e| e.id).collect();
    if g.rows() != net.h() || g.cols() != src_edges.len() {
        return Err(Error::DimensionMismatch(format!(
            "generator is {}x{}, network needs {}x{}",
            g.rows(),
            g.cols(),
            net.h(),
            src_edges.len()
        )));
    }
    let gt = g.transpose();
    let mut code = NetworkCode::new(g.field(), 1, net.h())?;
    for (i, &e) in src_edges.iter().enumerate() {
        code.insert(e, gt.select_rows(&[i]))?;
    }
    for node in net.topo_order() {
        if node == net.source() {
            continue;
        }
        let mut inc = net.in_edges(node);
        let (Some(first), None) = (inc.next(), inc.next()) else {
            if net.out_degree(node) == 0 {
                continue;
            }
            return Err(Error::InvalidNetwork(format!(
                "node {node} relays but does not have in-degree 1"
            )));
        };
        let g_in = code.require(first.id)?.clone();
        for e in net.out_edges(node) {
            code.insert(e.id, g_in.clone())?;
        }
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{butterfly, combination};

    fn f2() -> FieldSpec {
        FieldSpec::new(2, 1).unwrap()
    }

    fn row(f: &FieldSpec, v: &[u32]) -> Matrix {
        Matrix::from_codes(f, v.len(), &[v.to_vec()]).unwrap()
    }

    pub(crate) fn classic_butterfly(middle: &[u32]) -> NetworkCode {
        let f = f2();
        let mut c = NetworkCode::new(&f, 1, 2).unwrap();
        for (e, v) in [
            (1, [1, 0]),
            (2, [0, 1]),
            (3, [1, 0]),
            (4, [0, 1]),
            (5, [1, 0]),
            (7, [0, 1]),
        ] {
            c.insert(EdgeId(e), row(&f, &v)).unwrap();
        }
        for e in [6, 8, 9] {
            c.insert(EdgeId(e), row(&f, middle)).unwrap();
        }
        c
    }

    #[test]
    fn butterfly_classic_solution() {
        let b = butterfly();
        let v = verify_solution(&b, &classic_butterfly(&[1, 1])).unwrap();
        assert!(v.accepted());
        assert_eq!(v.terminal_ranks, vec![(NodeId(5), 2), (NodeId(6), 2)]);
        let c = classic_butterfly(&[1, 1]);
        assert_eq!(node_space_dim(&b, &c, NodeId(3)).unwrap(), 2);
        assert!(node_space_dim(&b, &c, NodeId(0)).is_err());
    }

    #[test]
    fn butterfly_bad_middle() {
        let v = verify_solution(&butterfly(), &classic_butterfly(&[1, 0])).unwrap();
        assert_eq!(
            v.violation,
            Some(Violation::TerminalRank {
                terminal: NodeId(5),
                rank: 1
            })
        );
    }

    #[test]
    fn all_zero_rejected_and_missing_edges_error() {
        let b = butterfly();
        let f = f2();
        let mut c = NetworkCode::new(&f, 1, 2).unwrap();
        assert!(matches!(verify_solution(&b, &c), Err(Error::MissingAssignment(_))));
        for e in b.edges() {
            c.insert(e.id, Matrix::zeros(&f, 1, 2)).unwrap();
        }
        let v = verify_solution(&b, &c).unwrap();
        assert!(!v.accepted());
        assert!(v.terminal_ranks.iter().all(|&(_, r)| r == 0));
    }

    #[test]
    fn local_violation_is_named() {
        let mut c = classic_butterfly(&[1, 1]);
        c.insert(EdgeId(5), row(&f2(), &[0, 1])).unwrap();
        let v = verify_solution(&butterfly(), &c).unwrap();
        assert_eq!(
            v.violation,
            Some(Violation::Local {
                node: NodeId(1),
                edge: EdgeId(5)
            })
        );
    }

    #[test]
    fn classical_codes_on_combination_networks() {
        let f = f2();
        let n = combination(2, 3, 2).unwrap();
        let g = Matrix::from_codes(&f, 3, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let c = solution_from_classical_code(&n, &g).unwrap();
        assert!(verify_solution(&n, &c).unwrap().accepted());
        let n4 = combination(2, 4, 2).unwrap();
        let g = Matrix::from_codes(&f, 4, &[vec![1, 0, 1, 1], vec![0, 1, 1, 0]]).unwrap();
        let c = solution_from_classical_code(&n4, &g).unwrap();
        let v = verify_solution(&n4, &c).unwrap();
        // columns 0 and 3 coincide
        assert!(matches!(v.violation, Some(Violation::TerminalRank { .. })));
        let n3 = combination(3, 3, 3).unwrap();
        let c = solution_from_classical_code(&n3, &Matrix::identity(&f, 3)).unwrap();
        assert!(verify_solution(&n3, &c).unwrap().accepted());
        assert!(solution_from_classical_code(&n3, &g).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let c = classic_butterfly(&[1, 1]);
        let s = serde_json::to_string(&c.to_json()).unwrap();
        let back = NetworkCode::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
