//! Self-contained certificates and their checker.
//!
//! The checker rebuilds every object it needs from field and subspace
//! primitives, so a certificate can be trusted without the searches that
//! produced it.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Matrix};
use crate::graph::UGraphJson;
use crate::lincode::CodeJson;
use crate::network::NetworkJson;
use crate::subspace::{enumerate_subspaces, sum_dim, Combinations, Subspace, DEFAULT_SUBSPACE_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GraphSpec {
    /// `qK_{n:m}` with vertices in canonical subspace order.
    Qkneser { q: u64, n: usize, m: usize },
    /// Complete graph on `n` vertices.
    Complete { n: usize },
    Explicit(UGraphJson),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Coloring {
        graph: GraphSpec,
        colors: Vec<usize>,
    },
    /// Coloring of `qK^h_{ht:t}` with no monochromatic hyperedge.
    HyperColoring {
        q: u64,
        t: usize,
        h: usize,
        colors: Vec<usize>,
    },
    Clique {
        graph: GraphSpec,
        vertices: Vec<usize>,
    },
    Homomorphism {
        source: GraphSpec,
        target: GraphSpec,
        map: Vec<usize>,
    },
    Solution {
        network: NetworkJson,
        code: CodeJson,
    },
    Ic {
        q: u64,
        t: usize,
        h: usize,
        alpha: usize,
        members: Vec<Vec<Vec<u32>>>,
    },
}

// Internally tagged enums buffer their content, which loses integer map
// keys (edge ids); decoding goes through an externally tagged mirror.
#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum Repr {
    Coloring {
        graph: GraphSpec,
        colors: Vec<usize>,
    },
    HyperColoring {
        q: u64,
        t: usize,
        h: usize,
        colors: Vec<usize>,
    },
    Clique {
        graph: GraphSpec,
        vertices: Vec<usize>,
    },
    Homomorphism {
        source: GraphSpec,
        target: GraphSpec,
        map: Vec<usize>,
    },
    Solution {
        network: NetworkJson,
        code: CodeJson,
    },
    Ic {
        q: u64,
        t: usize,
        h: usize,
        alpha: usize,
        members: Vec<Vec<Vec<u32>>>,
    },
}

impl From<Repr> for Certificate {
    fn from(r: Repr) -> Certificate {
        match r {
            Repr::Coloring { graph, colors } => Certificate::Coloring { graph, colors },
            Repr::HyperColoring { q, t, h, colors } => Certificate::HyperColoring { q, t, h, colors },
            Repr::Clique { graph, vertices } => Certificate::Clique { graph, vertices },
            Repr::Homomorphism { source, target, map } => Certificate::Homomorphism { source, target, map },
            Repr::Solution { network, code } => Certificate::Solution { network, code },
            Repr::Ic {
                q,
                t,
                h,
                alpha,
                members,
            } => Certificate::Ic {
                q,
                t,
                h,
                alpha,
                members,
            },
        }
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let mut v = serde_json::Value::deserialize(d)?;
        let obj = v.as_object_mut().ok_or_else(|| D::Error::custom("certificate must be an object"))?;
        let kind = match obj.remove("kind") {
            Some(serde_json::Value::String(k)) => k,
            _ => return Err(D::Error::missing_field("kind")),
        };
        let wrapped = serde_json::json!({ kind: v });
        serde_json::from_value::<Repr>(wrapped).map(Certificate::from).map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertCheck {
    pub ok: bool,
    pub summary: String,
}

impl CertCheck {
    fn pass(summary: String) -> Result<CertCheck> {
        Ok(CertCheck { ok: true, summary })
    }

    fn fail(summary: String) -> Result<CertCheck> {
        Ok(CertCheck { ok: false, summary })
    }
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Coloring { .. } => "coloring",
            Certificate::HyperColoring { .. } => "hyper_coloring",
            Certificate::Clique { .. } => "clique",
            Certificate::Homomorphism { .. } => "homomorphism",
            Certificate::Solution { .. } => "solution",
            Certificate::Ic { .. } => "ic",
        }
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json_str(s: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Adjacency lists indexed by vertex position.
struct Adjacency {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Adjacency {
    fn has(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }
}

fn adjacency(g: &GraphSpec) -> Result<Adjacency> {
    let mut edges = BTreeSet::new();
    let n = match g {
        GraphSpec::Qkneser { q, n, m } => {
            let field = FieldSpec::from_order(*q)?;
            let verts = enumerate_subspaces(&field, *n, *m, DEFAULT_SUBSPACE_LIMIT)?;
            for i in 0..verts.len() {
                for j in i + 1..verts.len() {
                    if sum_dim(&[&verts[i], &verts[j]])? == 2 * m {
                        edges.insert((i, j));
                    }
                }
            }
            verts.len()
        }
        GraphSpec::Complete { n } => {
            for i in 0..*n {
                for j in i + 1..*n {
                    edges.insert((i, j));
                }
            }
            *n
        }
        GraphSpec::Explicit(j) => {
            let pos: HashMap<u32, usize> = j.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            if pos.len() != j.vertices.len() {
                return Err(Error::InvalidArgument("repeated vertex id".into()));
            }
            for &[a, b] in &j.edges {
                let (Some(&u), Some(&v)) = (pos.get(&a), pos.get(&b)) else {
                    return Err(Error::InvalidArgument(format!("edge {a}-{b} names an unknown vertex")));
                };
                if u == v {
                    return Err(Error::InvalidArgument(format!("loop at {a}")));
                }
                edges.insert((u.min(v), u.max(v)));
            }
            j.vertices.len()
        }
    };
    Ok(Adjacency { n, edges })
}

/// Re-verifies a certificate from scratch.
pub fn check_certificate(c: &Certificate) -> Result<CertCheck> {
    match c {
        Certificate::Coloring { graph, colors } => {
            let g = adjacency(graph)?;
            if colors.len() != g.n {
                return CertCheck::fail(format!("{} colors for {} vertices", colors.len(), g.n));
            }
            if let Some(&(u, v)) = g.edges.iter().find(|&&(u, v)| colors[u] == colors[v]) {
                return CertCheck::fail(format!("edge {u}-{v} is monochromatic"));
            }
            let used: BTreeSet<_> = colors.iter().collect();
            CertCheck::pass(format!("proper coloring of {} vertices with {} colors", g.n, used.len()))
        }
        Certificate::HyperColoring { q, t, h, colors } => {
            let field = FieldSpec::from_order(*q)?;
            let verts = enumerate_subspaces(&field, h * t, *t, DEFAULT_SUBSPACE_LIMIT)?;
            if colors.len() != verts.len() {
                return CertCheck::fail(format!("{} colors for {} vertices", colors.len(), verts.len()));
            }
            for set in Combinations::new(verts.len(), *h) {
                if set.iter().all(|&i| colors[i] == colors[set[0]]) {
                    let spaces: Vec<&Subspace> = set.iter().map(|&i| &verts[i]).collect();
                    if sum_dim(&spaces)? == h * t {
                        return CertCheck::fail(format!("hyperedge {set:?} is monochromatic"));
                    }
                }
            }
            let used: BTreeSet<_> = colors.iter().collect();
            CertCheck::pass(format!(
                "proper hypergraph coloring of {} vertices with {} colors",
                verts.len(),
                used.len()
            ))
        }
        Certificate::Clique { graph, vertices } => {
            let g = adjacency(graph)?;
            if vertices.iter().any(|&v| v >= g.n) {
                return CertCheck::fail("clique vertex out of range".into());
            }
            for (i, &u) in vertices.iter().enumerate() {
                for &v in &vertices[i + 1..] {
                    if !g.has(u, v) {
                        return CertCheck::fail(format!("{u} and {v} are not adjacent"));
                    }
                }
            }
            CertCheck::pass(format!("clique of size {}", vertices.len()))
        }
        Certificate::Homomorphism { source, target, map } => {
            let s = adjacency(source)?;
            let t = adjacency(target)?;
            if map.len() != s.n || map.iter().any(|&v| v >= t.n) {
                return CertCheck::fail("map has the wrong shape".into());
            }
            if let Some(&(u, v)) = s.edges.iter().find(|&&(u, v)| !t.has(map[u], map[v])) {
                return CertCheck::fail(format!("edge {u}-{v} is not preserved"));
            }
            CertCheck::pass(format!("homomorphism from {} to {} vertices", s.n, t.n))
        }
        Certificate::Solution { network, code } => check_solution(network, code),
        Certificate::Ic {
            q,
            t,
            h,
            alpha,
            members,
        } => {
            let field = FieldSpec::from_order(*q)?;
            if *alpha == 0 || alpha > h {
                return CertCheck::fail(format!("alpha = {alpha} outside 1..={h}"));
            }
            let spaces = members
                .iter()
                .map(|rows| Subspace::from_codes(&field, h * t, rows))
                .collect::<Result<Vec<_>>>()?;
            if let Some(i) = spaces.iter().position(|s| s.dim() != *t) {
                return CertCheck::fail(format!("member {i} has dimension {}", spaces[i].dim()));
            }
            let distinct: BTreeSet<_> = spaces.iter().collect();
            if distinct.len() != spaces.len() && *alpha >= 2 {
                return CertCheck::fail("repeated member".into());
            }
            for set in Combinations::new(spaces.len(), *alpha) {
                let sel: Vec<&Subspace> = set.iter().map(|&i| &spaces[i]).collect();
                if sum_dim(&sel)? != alpha * t {
                    return CertCheck::fail(format!("members {set:?} are dependent"));
                }
            }
            CertCheck::pass(format!("independent configuration of size {}", spaces.len()))
        }
    }
}

fn check_solution(net: &NetworkJson, code: &CodeJson) -> Result<CertCheck> {
    let field = FieldSpec::new(code.p, code.m)?;
    if field.q() as u64 != code.q {
        return CertCheck::fail("q does not match p^m".into());
    }
    if code.h != net.h {
        return CertCheck::fail(format!("code has h = {}, network h = {}", code.h, net.h));
    }
    let width = code.h * code.t;
    let nodes: BTreeSet<u32> = net.nodes.iter().map(|n| n.id).collect();
    let mut g: BTreeMap<u32, Matrix> = BTreeMap::new();
    let mut into: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for e in &net.edges {
        if !nodes.contains(&e.from) || !nodes.contains(&e.to) {
            return CertCheck::fail(format!("edge {} names an unknown node", e.id));
        }
        let Some(rows) = code.edges.get(&e.id) else {
            return CertCheck::fail(format!("edge {} has no coding matrix", e.id));
        };
        let m = Matrix::from_codes(&field, width, rows)?;
        if m.rows() != code.t {
            return CertCheck::fail(format!("edge {} carries {} rows, expected {}", e.id, m.rows(), code.t));
        }
        g.insert(e.id, m);
        into.entry(e.to).or_default().push(e.id);
    }
    let received = |node: u32| -> Result<Matrix> {
        let mut m = Matrix::zeros(&field, 0, width);
        for id in into.get(&node).into_iter().flatten() {
            m = m.stack(&g[id])?;
        }
        Ok(m)
    };
    for e in &net.edges {
        if e.from == net.source {
            continue;
        }
        if !received(e.from)?.rowspace_contains(&g[&e.id])? {
            return CertCheck::fail(format!("edge {} is not computable at node {}", e.id, e.from));
        }
    }
    for &tau in &net.terminals {
        let rank = received(tau)?.rank();
        if rank != width {
            return CertCheck::fail(format!("terminal {tau} receives rank {rank} of {width}"));
        }
    }
    CertCheck::pass(format!(
        "({}, {})-linear solution, {} terminals decode",
        code.q,
        code.t,
        net.terminals.len()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::butterfly;

    fn xor_code() -> CodeJson {
        let rows = |v: &[u32]| vec![v.to_vec()];
        let mut edges = BTreeMap::new();
        for (e, v) in [
            (1, [1, 0]),
            (2, [0, 1]),
            (3, [1, 0]),
            (4, [0, 1]),
            (5, [1, 0]),
            (6, [1, 1]),
            (7, [0, 1]),
            (8, [1, 1]),
            (9, [1, 1]),
        ] {
            edges.insert(e, rows(&v));
        }
        CodeJson {
            q: 2,
            p: 2,
            m: 1,
            t: 1,
            h: 2,
            edges,
        }
    }

    #[test]
    fn butterfly_solution_certificate() {
        let c = Certificate::Solution {
            network: butterfly().to_json(),
            code: xor_code(),
        };
        assert!(check_certificate(&c).unwrap().ok);
        let back = Certificate::from_json_str(&c.to_json_string().unwrap()).unwrap();
        assert_eq!(back, c);
        let mut bad = xor_code();
        bad.edges.insert(6, vec![vec![1, 0]]);
        let c = Certificate::Solution {
            network: butterfly().to_json(),
            code: bad,
        };
        assert!(!check_certificate(&c).unwrap().ok);
    }

    #[test]
    fn graph_certificates() {
        let k3 = GraphSpec::Qkneser { q: 2, n: 2, m: 1 };
        let ok = Certificate::Coloring {
            graph: k3.clone(),
            colors: vec![0, 1, 2],
        };
        assert!(check_certificate(&ok).unwrap().ok);
        let bad = Certificate::Coloring {
            graph: k3.clone(),
            colors: vec![0, 1, 1],
        };
        assert!(!check_certificate(&bad).unwrap().ok);
        let hom = Certificate::Homomorphism {
            source: k3.clone(),
            target: GraphSpec::Complete { n: 4 },
            map: vec![3, 0, 1],
        };
        assert!(check_certificate(&hom).unwrap().ok);
        let clique = Certificate::Clique {
            graph: GraphSpec::Qkneser { q: 2, n: 4, m: 2 },
            vertices: crate::qkneser::spread_clique(2, 2).unwrap(),
        };
        assert!(check_certificate(&clique).unwrap().ok);
        let not_clique = Certificate::Clique {
            graph: GraphSpec::Complete { n: 3 },
            vertices: vec![0, 0],
        };
        assert!(!check_certificate(&not_clique).unwrap().ok);
    }

    #[test]
    fn json_round_trip() {
        let c = Certificate::Ic {
            q: 2,
            t: 1,
            h: 2,
            alpha: 2,
            members: vec![vec![vec![1, 0]], vec![vec![0, 1]], vec![vec![1, 1]]],
        };
        let s = c.to_json_string().unwrap();
        assert!(s.contains("\"kind\": \"ic\""));
        assert_eq!(Certificate::from_json_str(&s).unwrap(), c);
        assert!(check_certificate(&c).unwrap().ok);
        let g = Certificate::Coloring {
            graph: GraphSpec::Explicit(UGraphJson {
                vertices: vec![4, 9],
                edges: vec![[4, 9]],
            }),
            colors: vec![0, 0],
        };
        let s = g.to_json_string().unwrap();
        assert_eq!(Certificate::from_json_str(&s).unwrap(), g);
        assert!(!check_certificate(&g).unwrap().ok);
    }

    #[test]
    fn hyper_coloring_certificate() {
        let c = Certificate::HyperColoring {
            q: 2,
            t: 1,
            h: 3,
            colors: (0..7).collect(),
        };
        assert!(check_certificate(&c).unwrap().ok);
        let c = Certificate::HyperColoring {
            q: 2,
            t: 1,
            h: 3,
            colors: vec![0; 7],
        };
        assert!(!check_certificate(&c).unwrap().ok);
    }
}
