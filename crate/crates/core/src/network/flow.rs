use std::collections::VecDeque;

use super::{EdgeId, Network, NodeId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Minimality {
    Minimal,
    /// Deleting `edge` leaves every terminal with min-cut at least `h`.
    NotMinimal { edge: EdgeId },
    /// Some terminal already has min-cut below `h`; minimality is undefined.
    Unsolvable { terminal: NodeId, cut: usize },
}

impl Minimality {
    pub fn is_minimal(&self) -> bool {
        matches!(self, Minimality::Minimal)
    }
}

/// Buffers for repeated unit-capacity max-flow runs on one network.
struct FlowWork<'a> {
    net: &'a Network,
    src: usize,
    head: Vec<usize>,
    tail: Vec<usize>,
    used: Vec<bool>,
    // parent[v] = (edge position, traversed forward?)
    parent: Vec<Option<(usize, bool)>>,
    seen: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> FlowWork<'a> {
    fn new(net: &'a Network) -> FlowWork<'a> {
        let n = net.nodes.len();
        let m = net.edges.len();
        FlowWork {
            net,
            src: net.node_index[&net.source],
            head: net.edges.iter().map(|e| net.node_index[&e.to]).collect(),
            tail: net.edges.iter().map(|e| net.node_index[&e.from]).collect(),
            used: vec![false; m],
            parent: vec![None; n],
            seen: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    /// Max flow from the source to `sink`, ignoring edge positions flagged
    /// in `skip`, stopping once `cap` units are routed.
    fn max_flow(&mut self, sink: usize, skip: &[bool], cap: usize) -> usize {
        let net = self.net;
        self.used.iter_mut().for_each(|u| *u = false);
        let mut flow = 0;
        while flow < cap {
            self.parent.iter_mut().for_each(|p| *p = None);
            self.seen.iter_mut().for_each(|s| *s = false);
            self.seen[self.src] = true;
            self.queue.clear();
            self.queue.push_back(self.src);
            'bfs: while let Some(v) = self.queue.pop_front() {
                for &e in &net.out_edges[v] {
                    let w = self.head[e];
                    if !skip[e] && !self.used[e] && !self.seen[w] {
                        self.seen[w] = true;
                        self.parent[w] = Some((e, true));
                        if w == sink {
                            break 'bfs;
                        }
                        self.queue.push_back(w);
                    }
                }
                for &e in &net.in_edges[v] {
                    let w = self.tail[e];
                    if self.used[e] && !self.seen[w] {
                        self.seen[w] = true;
                        self.parent[w] = Some((e, false));
                        self.queue.push_back(w);
                    }
                }
            }
            if !self.seen[sink] {
                break;
            }
            let mut v = sink;
            while v != self.src {
                let (e, fwd) = self.parent[v].expect("path back to the source");
                self.used[e] = fwd;
                v = if fwd { self.tail[e] } else { self.head[e] };
            }
            flow += 1;
        }
        flow
    }
}

fn terminal_pos(net: &Network, tau: NodeId) -> Result<usize> {
    if !net.is_terminal(tau) {
        return Err(Error::NotTerminal(tau.0));
    }
    Ok(net.node_index[&tau])
}

/// Minimum number of edges separating the source from terminal `tau`.
pub fn min_cut(net: &Network, tau: NodeId) -> Result<usize> {
    min_cut_without(net, tau, &[])
}

/// [`min_cut`] of every terminal, in terminal order.
pub fn min_cuts(net: &Network) -> Vec<(NodeId, usize)> {
    let mut work = FlowWork::new(net);
    let skip = vec![false; net.edges.len()];
    net.terminals
        .iter()
        .map(|&t| (t, work.max_flow(net.node_index[&t], &skip, usize::MAX)))
        .collect()
}

/// [`min_cut`] in the network with the given edges deleted.
pub fn min_cut_without(net: &Network, tau: NodeId, removed: &[EdgeId]) -> Result<usize> {
    let sink = terminal_pos(net, tau)?;
    let mut skip = vec![false; net.edges.len()];
    for id in removed {
        let pos = net
            .edge_pos(*id)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown edge {id}")))?;
        skip[pos] = true;
    }
    Ok(FlowWork::new(net).max_flow(sink, &skip, usize::MAX))
}

/// Checks solvability (every terminal has min-cut at least `h`) and then
/// whether every single-edge deletion breaks it.
pub fn is_minimal(net: &Network) -> Result<Minimality> {
    let h = net.h;
    let mut work = FlowWork::new(net);
    let mut skip = vec![false; net.edges.len()];
    let sinks: Vec<usize> = net.terminals.iter().map(|t| net.node_index[t]).collect();
    for (&tau, &sink) in net.terminals.iter().zip(&sinks) {
        let cut = work.max_flow(sink, &skip, h);
        if cut < h {
            return Ok(Minimality::Unsolvable {
                terminal: tau,
                cut: work.max_flow(sink, &skip, usize::MAX),
            });
        }
    }
    // terminals reachable from each node; deleting an edge affects no others
    let words = sinks.len().div_ceil(64);
    let mut reach = vec![vec![0u64; words]; net.nodes.len()];
    for (i, &s) in sinks.iter().enumerate() {
        reach[s][i / 64] |= 1 << (i % 64);
    }
    for node in net.topo_order().into_iter().rev() {
        let v = net.node_index[&node];
        for &e in &net.out_edges[v] {
            let w = net.node_index[&net.edges[e].to];
            if w != v {
                let (a, b) = if v < w {
                    let (x, y) = reach.split_at_mut(w);
                    (&mut x[v], &y[0])
                } else {
                    let (x, y) = reach.split_at_mut(v);
                    (&mut y[0], &x[w])
                };
                a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
            }
        }
    }
    for pos in 0..net.edges.len() {
        skip[pos] = true;
        let below = &reach[net.node_index[&net.edges[pos].to]];
        let breaks = sinks
            .iter()
            .enumerate()
            .filter(|(i, _)| below[i / 64] >> (i % 64) & 1 == 1)
            .any(|(_, &s)| work.max_flow(s, &skip, h) < h);
        skip[pos] = false;
        if !breaks {
            return Ok(Minimality::NotMinimal {
                edge: net.edges[pos].id,
            });
        }
    }
    Ok(Minimality::Minimal)
}
