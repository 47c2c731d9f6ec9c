use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Edge, EdgeId, Labels, Network, NodeId, Role};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: u32,
    pub from: u32,
    pub to: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u64,
    pub m: u32,
}

impl FieldJson {
    pub fn of(field: &FieldSpec) -> FieldJson {
        FieldJson {
            p: field.p() as u64,
            m: field.m(),
        }
    }

    pub fn field(&self) -> Result<FieldSpec> {
        FieldSpec::new(self.p, self.m)
    }
}

/// Interchange form of a [`Network`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkJson {
    pub h: usize,
    pub source: u32,
    pub terminals: Vec<u32>,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
    /// Node id to the rows of a basis of its label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<u32, Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_field: Option<FieldJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_ambient: Option<usize>,
}

impl NetworkJson {
    fn parts(&self) -> (Vec<NodeId>, Vec<Edge>, NodeId, Vec<NodeId>) {
        let nodes = self.nodes.iter().map(|n| NodeId(n.id)).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                id: EdgeId(e.id),
                from: NodeId(e.from),
                to: NodeId(e.to),
            })
            .collect();
        let terminals = self.terminals.iter().map(|&t| NodeId(t)).collect();
        (nodes, edges, NodeId(self.source), terminals)
    }

    fn labels(&self) -> Result<Option<Labels>> {
        let Some(raw) = &self.labels else {
            return Ok(None);
        };
        let field = self
            .label_field
            .as_ref()
            .ok_or_else(|| Error::InvalidNetwork("labels given without label_field".into()))?
            .field()?;
        let ambient = match self.label_ambient {
            Some(a) => a,
            None => raw
                .values()
                .find_map(|rows| rows.first().map(Vec::len))
                .ok_or_else(|| Error::InvalidNetwork("cannot infer label ambient dimension".into()))?,
        };
        let mut map = BTreeMap::new();
        for (&id, rows) in raw {
            map.insert(NodeId(id), Subspace::from_codes(&field, ambient, rows)?);
        }
        Ok(Some(Labels { field, map }))
    }

    /// Strict conversion: every node must be essential.
    pub fn to_network(&self) -> Result<Network> {
        let (nodes, edges, source, terminals) = self.parts();
        let net = Network::new(nodes, edges, source, terminals, self.h)?;
        match self.labels()? {
            Some(l) => net.with_labels(l),
            None => Ok(net),
        }
    }

    /// Conversion that drops non-essential nodes first.
    pub fn to_network_pruned(&self) -> Result<Network> {
        let (nodes, edges, source, terminals) = self.parts();
        let net = Network::new_pruned(nodes, edges, source, terminals, self.h)?;
        match self.labels()? {
            Some(mut l) => {
                l.map.retain(|n, _| net.contains_node(*n));
                net.with_labels(l)
            }
            None => Ok(net),
        }
    }
}

impl Network {
    pub fn to_json(&self) -> NetworkJson {
        let labels = self.labels().map(|l| {
            l.map
                .iter()
                .map(|(n, s)| (n.0, s.basis().to_codes()))
                .collect()
        });
        NetworkJson {
            h: self.h(),
            source: self.source().0,
            terminals: self.terminals().iter().map(|t| t.0).collect(),
            nodes: self.nodes().iter().map(|n| NodeJson { id: n.0 }).collect(),
            edges: self
                .edges()
                .iter()
                .map(|e| EdgeJson {
                    id: e.id.0,
                    from: e.from.0,
                    to: e.to.0,
                })
                .collect(),
            label_field: self.labels().map(|l| FieldJson::of(&l.field)),
            label_ambient: self
                .labels()
                .and_then(|l| l.map.values().next().map(Subspace::ambient)),
            labels,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("network JSON is serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Network> {
        serde_json::from_str::<NetworkJson>(s)?.to_network()
    }

    /// Graphviz rendering; the source is a box, terminals are double circles.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph network {\n  rankdir=TB;\n");
        for &n in self.nodes() {
            let shape = match self.role(n) {
                Some(Role::Source) => "box",
                Some(Role::Terminal) => "doublecircle",
                _ => "circle",
            };
            let _ = writeln!(out, "  {n} [shape={shape}];");
        }
        for e in self.edges() {
            let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", e.from, e.to, e.id);
        }
        out.push_str("}\n");
        out
    }
}
