use std::collections::HashMap;

use super::NetworkCode;
use crate::error::Result;
use crate::gf::{FieldSpec, Matrix};
use crate::network::Network;
use crate::subspace::{enumerate_subspaces, Subspace, DEFAULT_SUBSPACE_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(NetworkCode),
    /// The complete search space was explored without a solution.
    NoSolution,
    /// The expansion budget ran out first.
    Unknown,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub expansions: u64,
}

/// Exhaustive backtracking for a `(q, t)` linear solution.
///
/// Edges are assigned in topological order of their tails. The edge space
/// of every edge leaving `ν` is taken of dimension `min(t, dim M(ν))`
/// inside `M(ν)`, and the first source edge is fixed to the first `t`
/// coordinate vectors. After each assignment a cut bound is checked for
/// every terminal. Each candidate tried counts as one expansion.
pub fn search_solution(
    net: &Network,
    field: &FieldSpec,
    t: usize,
    budget: u64,
) -> Result<(SearchOutcome, SearchStats)> {
    let mut s = Searcher::new(net, field, t, budget)?;
    let outcome = match s.run(0)? {
        Step::Found => {
            let mut code = NetworkCode::new(field, t, net.h())?;
            for (pos, e) in net.edges().iter().enumerate() {
                let g = s.assigned[pos].as_ref().expect("all edges assigned");
                code.insert(e.id, g.pad_rows(t))?;
            }
            debug_assert!(super::verify_solution(net, &code)?.accepted());
            SearchOutcome::Found(code)
        }
        Step::Exhausted => SearchOutcome::NoSolution,
        Step::OutOfBudget => SearchOutcome::Unknown,
    };
    Ok((
        outcome,
        SearchStats {
            expansions: s.expansions,
        },
    ))
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Searcher<'a> {
    net: &'a Network,
    field: FieldSpec,
    t: usize,
    width: usize,
    budget: u64,
    expansions: u64,
    /// Edge positions in processing order.
    order: Vec<usize>,
    /// Topological rank of every node position.
    rank_of: Vec<usize>,
    head: Vec<usize>,
    tail: Vec<usize>,
    /// `reach[node][k]`: the node reaches terminal `k` (or is it).
    reach: Vec<Vec<bool>>,
    terminals: Vec<usize>,
    node_space: Vec<Option<Matrix>>,
    assigned: Vec<Option<Matrix>>,
    bases: HashMap<(usize, usize), Vec<Matrix>>,
}

impl<'a> Searcher<'a> {
    fn new(net: &'a Network, field: &FieldSpec, t: usize, budget: u64) -> Result<Searcher<'a>> {
        if t == 0 {
            return crate::error::invalid("t must be positive");
        }
        let topo = net.topo_order();
        let n = topo.len();
        let pos = |id| net.node_pos(id).expect("node of this network");
        let mut rank_of = vec![0; n];
        for (r, &id) in topo.iter().enumerate() {
            rank_of[pos(id)] = r;
        }
        let head: Vec<usize> = net.edges().iter().map(|e| pos(e.to)).collect();
        let tail: Vec<usize> = net.edges().iter().map(|e| pos(e.from)).collect();
        let mut order = Vec::with_capacity(net.edges().len());
        for &id in &topo {
            order.extend(net.out_edges(id).map(|e| net.edge_pos(e.id).expect("edge")));
        }
        let terminals: Vec<usize> = net.terminals().iter().map(|&t| pos(t)).collect();
        let mut reach = vec![vec![false; terminals.len()]; n];
        for &id in topo.iter().rev() {
            let i = pos(id);
            for (k, &tp) in terminals.iter().enumerate() {
                reach[i][k] = i == tp || net.out_edges(id).any(|e| reach[pos(e.to)][k]);
            }
        }
        Ok(Searcher {
            net,
            field: field.clone(),
            t,
            width: net.h() * t,
            budget,
            expansions: 0,
            order,
            rank_of,
            head,
            tail,
            reach,
            terminals,
            node_space: vec![None; n],
            assigned: vec![None; net.edges().len()],
            bases: HashMap::new(),
        })
    }

    fn space_of(&mut self, node: usize) -> Result<Matrix> {
        if let Some(m) = &self.node_space[node] {
            return Ok(m.clone());
        }
        let id = self.net.nodes()[node];
        let m = if id == self.net.source() {
            Matrix::identity(&self.field, self.width)
        } else {
            let parts: Vec<&Matrix> = self
                .net
                .in_edges(id)
                .map(|e| {
                    self.assigned[self.net.edge_pos(e.id).expect("edge")]
                        .as_ref()
                        .expect("in-edges precede out-edges")
                })
                .collect();
            Matrix::stack_all(&self.field, self.width, parts)?.row_basis()
        };
        self.node_space[node] = Some(m.clone());
        Ok(m)
    }

    fn candidate_bases(&mut self, d: usize, k: usize) -> Result<&[Matrix]> {
        if !self.bases.contains_key(&(d, k)) {
            let list = enumerate_subspaces(&self.field, d, k, DEFAULT_SUBSPACE_LIMIT)?
                .into_iter()
                .map(|s: Subspace| s.basis().clone())
                .collect();
            self.bases.insert((d, k), list);
        }
        Ok(&self.bases[&(d, k)])
    }

    fn run(&mut self, i: usize) -> Result<Step> {
        if i == self.order.len() {
            return Ok(Step::Found);
        }
        let e = self.order[i];
        let node = self.tail[e];
        let space = self.space_of(node)?;
        let d = space.rows();
        let k = self.t.min(d);
        let candidates: Vec<Matrix> = if i == 0 && self.net.nodes()[node] == self.net.source() {
            vec![Subspace::coordinate_block(&self.field, self.width, 0, k).basis().clone()]
        } else {
            self.candidate_bases(d, k)?
                .iter()
                .map(|u| u.mul(&space))
                .collect::<Result<_>>()?
        };
        for g in candidates {
            if self.expansions >= self.budget {
                return Ok(Step::OutOfBudget);
            }
            self.expansions += 1;
            self.assigned[e] = Some(g);
            self.node_space[self.head[e]] = None;
            if self.feasible(i)? {
                match self.run(i + 1)? {
                    Step::Exhausted => {}
                    other => return Ok(other),
                }
            }
        }
        self.assigned[e] = None;
        self.node_space[self.head[e]] = None;
        Ok(Step::Exhausted)
    }

    /// Cut bound after edges `order[..=i]` are assigned: every path to a
    /// terminal crosses an assigned edge leaving the processed prefix, an
    /// edge into the terminal, or an unassigned out-edge of the current node.
    fn feasible(&self, i: usize) -> Result<bool> {
        let e_cur = self.order[i];
        let cur = self.tail[e_cur];
        let cur_rank = self.rank_of[cur];
        let node_done = i + 1 == self.order.len() || self.tail[self.order[i + 1]] != cur;
        for (k, &tp) in self.terminals.iter().enumerate() {
            let mut parts: Vec<&Matrix> = Vec::new();
            for &e in &self.order[..=i] {
                let hd = self.head[e];
                if hd == tp || (self.rank_of[hd] > cur_rank && self.reach[hd][k]) {
                    parts.push(self.assigned[e].as_ref().expect("assigned"));
                }
            }
            if !node_done {
                let pending = self.order[i + 1..]
                    .iter()
                    .take_while(|&&e| self.tail[e] == cur)
                    .any(|&e| self.reach[self.head[e]][k]);
                if pending {
                    parts.push(self.node_space[cur].as_ref().expect("current node space"));
                }
            }
            if Matrix::stack_all(&self.field, self.width, parts)?.rank() < self.width {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincode::verify_solution;
    use crate::network::{butterfly, combination, Edge, EdgeId, NodeId};

    fn f(q: u64) -> FieldSpec {
        FieldSpec::from_order(q).unwrap()
    }

    #[test]
    fn butterfly_binary_scalar() {
        let b = butterfly();
        let (out, _) = search_solution(&b, &f(2), 1, 1_000_000).unwrap();
        let SearchOutcome::Found(code) = out else {
            panic!("expected a solution")
        };
        assert!(verify_solution(&b, &code).unwrap().accepted());
    }

    #[test]
    fn n242_binary_has_no_solution() {
        let n = combination(2, 4, 2).unwrap();
        let (out, _) = search_solution(&n, &f(2), 1, 1_000_000).unwrap();
        assert_eq!(out, SearchOutcome::NoSolution);
        let (out, _) = search_solution(&n, &f(3), 1, 1_000_000).unwrap();
        assert!(matches!(out, SearchOutcome::Found(_)));
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let n = combination(2, 4, 2).unwrap();
        let (out, stats) = search_solution(&n, &f(2), 1, 3).unwrap();
        assert_eq!(out, SearchOutcome::Unknown);
        assert_eq!(stats.expansions, 3);
    }

    #[test]
    fn direct_paths_get_identity_like_code() {
        let e = |id, a, b| Edge {
            id: EdgeId(id),
            from: NodeId(a),
            to: NodeId(b),
        };
        let net = Network::new(
            vec![NodeId(0), NodeId(1)],
            vec![e(0, 0, 1), e(1, 0, 1), e(2, 0, 1)],
            NodeId(0),
            vec![NodeId(1)],
            3,
        )
        .unwrap();
        let (out, _) = search_solution(&net, &f(2), 1, 1000).unwrap();
        let SearchOutcome::Found(code) = out else {
            panic!("expected a solution")
        };
        let stacked = code.node_matrix(&net, NodeId(1)).unwrap();
        assert_eq!(stacked.rank(), 3);
        assert_eq!(code.get(EdgeId(0)).unwrap().to_codes(), vec![vec![1, 0, 0]]);
    }

    #[test]
    fn vector_butterfly() {
        let b = butterfly();
        let (out, _) = search_solution(&b, &f(2), 2, 1_000_000).unwrap();
        let SearchOutcome::Found(code) = out else {
            panic!("expected a solution")
        };
        assert_eq!(code.t(), 2);
        assert!(verify_solution(&b, &code).unwrap().accepted());
    }
}
