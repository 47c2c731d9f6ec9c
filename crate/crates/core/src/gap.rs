//! Prime-power rounding, exact `q_s` / `q_v` / gap computation on small
//! networks, and the closed-form gap bounds.

use std::time::Instant;

use serde::Serialize;

use crate::cert::{Certificate, GraphSpec};
use crate::error::{Error, Result};
use crate::gf::{is_prime_power, FieldSpec};
use crate::graph::{chromatic_number, find_homomorphism, max_clique, HomResult};
use crate::ic::{ic_bound, ic_search, ic_to_solution};
use crate::lincode::{search_solution, verify_solution, NetworkCode, SearchOutcome};
use crate::network::{is_minimal, min_cuts, Minimality, Network, NodeId};
use crate::qkneser::qkneser_with_limit;
use crate::skeleton::{skeleton, solution_from_coloring, solution_from_homomorphism, SkeletonGraph};
use crate::subspace::{binomial, Subspace, DEFAULT_SUBSPACE_LIMIT};

/// Smallest prime power `>= n`.
pub fn psi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("psi needs a positive argument".into()));
    }
    let mut q = n.max(2);
    while !is_prime_power(q) {
        q = q.checked_add(1).ok_or(Error::Overflow("psi"))?;
    }
    Ok(q)
}

/// Smallest prime power `>= num / den`.
pub fn psi_ratio(num: u64, den: u64) -> Result<u64> {
    if num == 0 || den == 0 {
        return Err(Error::InvalidArgument("psi needs a positive argument".into()));
    }
    psi(num.div_ceil(den))
}

/// Prime powers in `[2, max]`, ascending.
pub fn prime_powers_up_to(max: u64) -> impl Iterator<Item = u64> {
    (2..=max).filter(|&q| is_prime_power(q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SkeletonChi,
    Homomorphism,
    Ic,
    Exhaustive,
    Formula,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::SkeletonChi => "skeleton-chi",
            Method::Homomorphism => "homomorphism",
            Method::Ic => "IC",
            Method::Exhaustive => "exhaustive",
            Method::Formula => "formula",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Value {
    Exact { value: u64 },
    /// The true value lies in `[lower, upper]`; no upper bound when `None`.
    Bracket { lower: u64, upper: Option<u64> },
}

impl Value {
    pub fn exact(&self) -> Option<u64> {
        match *self {
            Value::Exact { value } => Some(value),
            Value::Bracket { .. } => None,
        }
    }

    pub fn lower(&self) -> u64 {
        match *self {
            Value::Exact { value } => value,
            Value::Bracket { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> Option<u64> {
        match *self {
            Value::Exact { value } => Some(value),
            Value::Bracket { upper, .. } => upper,
        }
    }

    fn from_bounds(lower: u64, upper: Option<u64>) -> Value {
        match upper {
            Some(u) if u == lower => Value::Exact { value: u },
            _ => Value::Bracket { lower, upper },
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Value::Exact { value } => write!(f, "{value}"),
            Value::Bracket { lower, upper: Some(u) } => write!(f, "[{lower}, {u}]"),
            Value::Bracket { lower, upper: None } => write!(f, "[{lower}, ?]"),
        }
    }
}

/// One of `q_s` or `q_v` with the evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QReport {
    pub value: Value,
    pub method: Method,
    /// Field size and vector length of the witness solution.
    pub q: Option<u64>,
    pub t: Option<usize>,
    #[serde(skip)]
    pub solution: Option<NetworkCode>,
    pub certificates: Vec<Certificate>,
    pub notes: Vec<String>,
    pub expansions: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub network: String,
    pub qs: QReport,
    pub qv: QReport,
    pub gap: Value,
}

/// Search limits shared by the gap computations.
#[derive(Clone, Copy, Debug)]
pub struct GapOptions {
    /// Node budget of each individual search.
    pub budget: u64,
    pub max_subspaces: u128,
    /// Probes stop once this instant has passed; later candidates stay
    /// undecided.
    pub deadline: Option<Instant>,
}

impl Default for GapOptions {
    fn default() -> Self {
        GapOptions {
            budget: crate::graph::DEFAULT_SEARCH_BUDGET,
            max_subspaces: DEFAULT_SUBSPACE_LIMIT,
            deadline: None,
        }
    }
}

impl GapOptions {
    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// `(h, r, s)` when `net` is the full combination network `N_{h,r,s}`
/// up to node and edge ids.
pub fn combination_shape(net: &Network) -> Option<(usize, usize, usize)> {
    let src = net.source();
    let middles: Vec<NodeId> = net.out_edges(src).map(|e| e.to).collect();
    let r = middles.len();
    let mut sorted = middles.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != r || middles.iter().any(|&m| net.in_degree(m) != 1 || net.is_terminal(m)) {
        return None;
    }
    let mut s = None;
    let mut sets = Vec::new();
    for &tau in net.terminals() {
        let mut set: Vec<usize> = Vec::new();
        for e in net.in_edges(tau) {
            set.push(sorted.binary_search(&e.from).ok()?);
        }
        set.sort_unstable();
        if set.windows(2).any(|w| w[0] == w[1]) || *s.get_or_insert(set.len()) != set.len() {
            return None;
        }
        sets.push(set);
    }
    let s = s?;
    sets.sort();
    sets.dedup();
    let full = binomial(r as u128, s as u128);
    let expected_nodes = 1 + r as u128 + full;
    let edges = r as u128 + full * s as u128;
    if sets.len() as u128 != full
        || net.nodes().len() as u128 != expected_nodes
        || net.edges().len() as u128 != edges
        || net.out_degree(src) != r
    {
        return None;
    }
    Some((net.h(), r, s))
}

fn require_solvable(net: &Network) -> Result<()> {
    for (tau, cut) in min_cuts(net) {
        if cut < net.h() {
            return Err(Error::InvalidNetwork(format!(
                "terminal {tau} has min-cut {cut} < h = {}, so no solution exists",
                net.h()
            )));
        }
    }
    Ok(())
}

fn solution_cert(net: &Network, code: &NetworkCode) -> Certificate {
    Certificate::Solution {
        network: net.to_json(),
        code: code.to_json(),
    }
}

/// Above this field size every solvable network has a scalar solution.
fn scalar_ceiling(net: &Network) -> Result<u64> {
    psi(net.terminals().len().max(2) as u64)
}

/// Smallest field size with a scalar linear solution. Minimal networks
/// with two messages use the skeleton chromatic number, full combination
/// networks an IC search with `t = 1`, anything else exhaustive search.
pub fn qs_exact(net: &Network, opts: &GapOptions) -> Result<QReport> {
    require_solvable(net)?;
    if net.h() == 2 && is_minimal(net)? == Minimality::Minimal {
        return qs_by_chi(net, opts);
    }
    qs_scan(net, opts, combination_shape(net).filter(|&(h, _, s)| h == s).is_some())
}

/// Ascending field sizes with the generic solution search only.
pub fn qs_exhaustive(net: &Network, opts: &GapOptions) -> Result<QReport> {
    require_solvable(net)?;
    qs_scan(net, opts, false)
}

fn qs_by_chi(net: &Network, opts: &GapOptions) -> Result<QReport> {
    let sk = skeleton(net);
    let chi = chromatic_number(&sk.graph, opts.budget);
    let graph = GraphSpec::Explicit(sk.graph.to_json());
    let q_up = psi(chi.upper.saturating_sub(1).max(1) as u64)?;
    let q_low = psi(chi.lower.saturating_sub(1).max(1) as u64)?;
    let field = FieldSpec::from_order(q_up)?;
    let code = solution_from_coloring(net, &sk, &chi.witness.colors, &field)?;
    if !verify_solution(net, &code)?.accepted() {
        return Err(Error::InvalidNetwork("coloring did not yield a solution".into()));
    }
    let mut notes = vec![format!(
        "chi(skeleton) {} with a clique of {}",
        if chi.exact {
            format!("= {}", chi.upper)
        } else {
            format!("in [{}, {}]", chi.lower, chi.upper)
        },
        chi.clique.len()
    )];
    if chi.exact && chi.lower > chi.clique.len() {
        notes.push(format!("{}-colorings excluded by complete search", chi.lower - 1));
    }
    Ok(QReport {
        value: Value::from_bounds(q_low, Some(q_up)),
        method: Method::SkeletonChi,
        q: Some(q_up),
        t: Some(1),
        certificates: vec![
            Certificate::Coloring {
                graph: graph.clone(),
                colors: chi.witness.colors.clone(),
            },
            Certificate::Clique {
                graph,
                vertices: chi.clique.clone(),
            },
            solution_cert(net, &code),
        ],
        solution: Some(code),
        notes,
        expansions: chi.expansions,
    })
}

fn qs_scan(net: &Network, opts: &GapOptions, use_ic: bool) -> Result<QReport> {
    let max_q = scalar_ceiling(net)?;
    let method = if use_ic { Method::Ic } else { Method::Exhaustive };
    let mut lower: Option<u64> = None;
    let mut notes = Vec::new();
    let mut expansions = 0;
    for q in prime_powers_up_to(max_q) {
        if opts.expired() {
            notes.push(format!("deadline reached before q = {q}"));
            lower.get_or_insert(q);
            break;
        }
        let probe = probe(net, q, 1, opts, &Shape::of(net, use_ic), &mut expansions)?;
        match probe {
            Probe::Found { code, certs, .. } => {
                let mut certificates = certs;
                certificates.push(solution_cert(net, &code));
                return Ok(QReport {
                    value: Value::from_bounds(lower.unwrap_or(q), Some(q)),
                    method,
                    q: Some(q),
                    t: Some(1),
                    solution: Some(code),
                    certificates,
                    notes,
                    expansions,
                });
            }
            Probe::None(m) => notes.push(format!("q = {q}: no scalar solution ({m})")),
            Probe::Unknown(why) => {
                notes.push(format!("q = {q}: undecided ({why})"));
                lower.get_or_insert(q);
            }
        }
    }
    Ok(QReport {
        value: Value::Bracket {
            lower: lower.unwrap_or(max_q),
            upper: None,
        },
        method,
        q: None,
        t: None,
        solution: None,
        certificates: Vec::new(),
        notes,
        expansions,
    })
}

/// Facts about the network reused across probes.
struct Shape {
    combination: Option<(usize, usize)>,
    /// Skeleton and one of its cliques, for minimal two-message networks.
    skeleton: Option<(SkeletonGraph, Vec<usize>)>,
}

impl Shape {
    fn of(net: &Network, use_ic: bool) -> Shape {
        Shape {
            combination: combination_shape(net)
                .filter(|&(h, _, s)| use_ic && h == s)
                .map(|(h, r, _)| (h, r)),
            skeleton: None,
        }
    }
}

enum Probe {
    Found {
        code: NetworkCode,
        method: Method,
        certs: Vec<Certificate>,
    },
    None(Method),
    Unknown(String),
}

fn probe(net: &Network, q: u64, t: usize, opts: &GapOptions, shape: &Shape, spent: &mut u64) -> Result<Probe> {
    let field = FieldSpec::from_order(q)?;
    if let Some(code) = labeled_solution(net, &field, t)? {
        return Ok(Probe::Found {
            code,
            method: Method::Homomorphism,
            certs: Vec::new(),
        });
    }
    let h = net.h();
    if let Some((_, r)) = shape.combination {
        if r as u128 > ic_bound(q, t, h, h)? {
            return Ok(Probe::None(Method::Ic));
        }
    }
    if let Some((sk, clique)) = &shape.skeleton {
        // pairwise trivially intersecting t-subspaces of F_q^{2t} share no
        // nonzero vector, so at most (q^{2t}-1)/(q^t-1) = q^t + 1 of them
        let max = (q as u128).pow(t as u32) + 1;
        if clique.len() as u128 > max {
            return Ok(Probe::None(Method::Homomorphism));
        }
        match qkneser_with_limit(q, 2 * t, t, opts.max_subspaces) {
            Ok(target) => {
                let (res, used) = find_homomorphism(&sk.graph, &target, opts.budget);
                *spent += used;
                match res {
                    HomResult::Found(map) => {
                        let labels = target.labels().expect("q-Kneser graphs are labeled");
                        let code = solution_from_homomorphism(net, sk, &map, labels, t)?;
                        return Ok(Probe::Found {
                            code,
                            method: Method::Homomorphism,
                            certs: vec![Certificate::Homomorphism {
                                source: GraphSpec::Explicit(sk.graph.to_json()),
                                target: GraphSpec::Qkneser { q, n: 2 * t, m: t },
                                map,
                            }],
                        });
                    }
                    HomResult::None => return Ok(Probe::None(Method::Homomorphism)),
                    HomResult::Unknown => return Ok(Probe::Unknown("homomorphism budget".into())),
                }
            }
            Err(Error::LimitExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if let Some((_, r)) = shape.combination {
        return match ic_search(q, t, h, h, Some(r), opts.budget, opts.max_subspaces) {
            Ok(res) => {
                *spent += res.expansions;
                if res.size >= r {
                    let (_, code) = ic_to_solution(&res.witness)?;
                    let code = relabel_combination(net, &code)?;
                    let members = res.witness.members().iter().map(|m| m.basis().to_codes()).collect();
                    Ok(Probe::Found {
                        code,
                        method: Method::Ic,
                        certs: vec![Certificate::Ic {
                            q,
                            t,
                            h,
                            alpha: h,
                            members,
                        }],
                    })
                } else if res.exact {
                    Ok(Probe::None(Method::Ic))
                } else {
                    Ok(Probe::Unknown("IC search budget".into()))
                }
            }
            Err(Error::LimitExceeded { what, .. }) => Ok(Probe::Unknown(format!("{what} limit"))),
            Err(e) => Err(e),
        };
    }
    let (outcome, stats) = match search_solution(net, &field, t, opts.budget) {
        Ok(x) => x,
        Err(Error::LimitExceeded { what, .. }) => return Ok(Probe::Unknown(format!("{what} limit"))),
        Err(e) => return Err(e),
    };
    *spent += stats.expansions;
    Ok(match outcome {
        SearchOutcome::Found(code) => Probe::Found {
            code,
            method: Method::Exhaustive,
            certs: Vec::new(),
        },
        SearchOutcome::NoSolution => Probe::None(Method::Exhaustive),
        SearchOutcome::Unknown => Probe::Unknown("search budget".into()),
    })
}

/// Moves a code built on the standard `N_{h,r,h}` onto `net`, which has
/// the same shape with other ids: source edges match in order, middle
/// out-edges by the position of their middle node.
fn relabel_combination(net: &Network, code: &NetworkCode) -> Result<NetworkCode> {
    let src_edges: Vec<_> = net.out_edges(net.source()).collect();
    let (h, r) = (code.h(), src_edges.len());
    let std = crate::network::combination(h, r, h)?;
    let std_src: Vec<_> = std.out_edges(std.source()).collect();
    let mut out = NetworkCode::new(code.field(), code.t(), h)?;
    for (e, se) in src_edges.iter().zip(&std_src) {
        let g = code.get(se.id).ok_or(Error::MissingAssignment(se.id.0))?.clone();
        for o in net.out_edges(e.to) {
            out.insert(o.id, g.clone())?;
        }
        out.insert(e.id, g)?;
    }
    Ok(out)
}

/// Forwarding code read off node labels over `(field, t)`: a source edge
/// carries the label of its head, any other edge the label of its tail.
fn labeled_solution(net: &Network, field: &FieldSpec, t: usize) -> Result<Option<NetworkCode>> {
    let Some(labels) = net.labels() else {
        return Ok(None);
    };
    let fits = |s: &Subspace| s.field() == field && s.dim() == t && s.ambient() == net.h() * t;
    if &labels.field != field || !labels.map.values().all(fits) {
        return Ok(None);
    }
    let mut code = NetworkCode::new(field, t, net.h())?;
    for e in net.edges() {
        let node = if e.from == net.source() { e.to } else { e.from };
        let Some(s) = labels.map.get(&node) else {
            return Ok(None);
        };
        code.insert(e.id, s.basis().clone())?;
    }
    Ok(verify_solution(net, &code)?.accepted().then_some(code))
}

/// Candidate `(q, t)` pairs with `q^t <= max`, by value then by `q`.
pub fn vector_candidates(max: u64) -> Vec<(u64, usize, u64)> {
    let mut out = Vec::new();
    for q in prime_powers_up_to(max) {
        let mut v = q;
        let mut t = 1;
        while v <= max {
            out.push((v, t, q));
            match v.checked_mul(q) {
                Some(n) => v = n,
                None => break,
            }
            t += 1;
        }
    }
    out.sort_by_key(|&(v, _, q)| (v, q));
    out
}

/// Smallest `q^t` with a `(q, t)` linear solution. Candidates run in
/// ascending order up to `max_value` (by default the scalar ceiling).
pub fn qv_exact(net: &Network, opts: &GapOptions, max_value: Option<u64>) -> Result<QReport> {
    require_solvable(net)?;
    let cap = match max_value {
        Some(v) => v,
        None => scalar_ceiling(net)?,
    };
    let mut notes = Vec::new();
    let mut shape = Shape::of(net, true);
    if net.h() == 2 && is_minimal(net)? == Minimality::Minimal {
        let sk = skeleton(net);
        let (clique, _) = max_clique(&sk.graph, opts.budget);
        notes.push(format!("skeleton clique of size {}", clique.len()));
        shape.skeleton = Some((sk, clique));
    }
    let mut lower: Option<u64> = None;
    let mut expansions = 0;
    for (v, t, q) in vector_candidates(cap) {
        if opts.expired() {
            notes.push(format!("deadline reached before q^t = {v}"));
            lower.get_or_insert(v);
            break;
        }
        match probe(net, q, t, opts, &shape, &mut expansions)? {
            Probe::Found { code, method, certs } => {
                let mut certificates = certs;
                certificates.push(solution_cert(net, &code));
                return Ok(QReport {
                    value: Value::from_bounds(lower.unwrap_or(v), Some(v)),
                    method,
                    q: Some(q),
                    t: Some(t),
                    solution: Some(code),
                    certificates,
                    notes,
                    expansions,
                });
            }
            Probe::None(m) => notes.push(format!("(q, t) = ({q}, {t}): no solution ({m})")),
            Probe::Unknown(why) => {
                notes.push(format!("(q, t) = ({q}, {t}): undecided ({why})"));
                lower.get_or_insert(v);
            }
        }
    }
    Ok(QReport {
        value: Value::Bracket {
            lower: lower.unwrap_or(cap + 1),
            upper: None,
        },
        method: Method::Exhaustive,
        q: None,
        t: None,
        solution: None,
        certificates: Vec::new(),
        notes,
        expansions,
    })
}

/// `q_s - q_v`, exact when both are.
pub fn gap_exact(name: &str, net: &Network, opts: &GapOptions) -> Result<GapReport> {
    let qs = qs_exact(net, opts)?;
    let mut qv = qv_exact(net, opts, qs.value.upper())?;
    if qv.value.upper().is_none() {
        // nothing below the scalar witness: it is vector optimal as well
        if let (Some(u), Some(code)) = (qs.value.upper(), &qs.solution) {
            qv.value = Value::from_bounds(qv.value.lower().min(u), Some(u));
            qv.q = qs.q;
            qv.t = Some(1);
            qv.solution = Some(code.clone());
            qv.certificates.push(solution_cert(net, code));
        }
    }
    let gap = match (qs.value.exact(), qv.value.exact()) {
        (Some(s), Some(v)) => Value::Exact {
            value: s.saturating_sub(v),
        },
        _ => Value::Bracket {
            lower: qv.value.upper().map_or(0, |u| qs.value.lower().saturating_sub(u)),
            upper: qs.value.upper().map(|u| u.saturating_sub(qv.value.lower())),
        },
    };
    Ok(GapReport {
        network: name.to_string(),
        qs,
        qv,
        gap,
    })
}

/// The closed-form gap bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GapFormula {
    /// `ψ(q^t + q^{t-1} - 1) - q^t`, the gap of `K_{q,t;2}` when `q >= 5`
    /// or `t <= 3`.
    KneserExact { q: u64, t: u32 },
    /// Same expression as an upper bound for minimal two-message networks
    /// whose vector-optimal solution is over `(q, t)`.
    MinimalUpper { q: u64, t: u32 },
    /// `ψ(q^t + 1) - q^t`, a lower bound on the gap of `K_{q,t;2}`, `t >= 2`.
    KneserLower { q: u64, t: u32 },
    /// `ψ(q^t + q^{t-1}/(h-1)) - q^t` for `t >= h`, otherwise with
    /// `(h-1)^2`; a lower bound for `K_{q,t;h}`, `t >= 2`, `h >= 3`.
    ManyMessages { q: u64, t: u32, h: u32 },
    /// `ψ(r-1) - ψ(r-h+1)`, an upper bound for `N_{h,r,h}`, `r >= h >= 2`.
    Combination { h: u64, r: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaValue {
    pub formula: GapFormula,
    pub value: u64,
    pub hypotheses_met: bool,
    pub note: Option<String>,
}

fn pow(q: u64, e: u32) -> Result<u64> {
    q.checked_pow(e).ok_or(Error::Overflow("formula power"))
}

pub fn gap_formula(f: GapFormula) -> Result<FormulaValue> {
    let positive = |x: u64, what: &str| -> Result<()> {
        if x == 0 {
            return Err(Error::InvalidArgument(format!("{what} must be positive")));
        }
        Ok(())
    };
    let (value, mut ok, mut note) = match f {
        GapFormula::KneserExact { q, t } | GapFormula::MinimalUpper { q, t } => {
            positive(t as u64, "t")?;
            positive(q, "q")?;
            let qt = pow(q, t)?;
            let v = psi(qt + pow(q, t - 1)? - 1)? - qt;
            let ok = !matches!(f, GapFormula::KneserExact { .. }) || q >= 5 || t <= 3;
            (v, ok, (!ok).then(|| "equality needs q >= 5 or t <= 3".to_string()))
        }
        GapFormula::KneserLower { q, t } => {
            positive(t as u64, "t")?;
            let qt = pow(q, t)?;
            (psi(qt + 1)? - qt, t >= 2, (t < 2).then(|| "needs t >= 2".to_string()))
        }
        GapFormula::ManyMessages { q, t, h } => {
            positive(t as u64, "t")?;
            if h < 2 {
                return Err(Error::InvalidArgument("h must be at least 2".into()));
            }
            let qt = pow(q, t)?;
            let d = if t >= h { (h - 1) as u64 } else { ((h - 1) * (h - 1)) as u64 };
            let num = qt
                .checked_mul(d)
                .and_then(|x| x.checked_add(pow(q, t - 1).ok()?))
                .ok_or(Error::Overflow("formula"))?;
            let ok = t >= 2 && h >= 3;
            (psi_ratio(num, d)? - qt, ok, (!ok).then(|| "needs t >= 2 and h >= 3".to_string()))
        }
        GapFormula::Combination { h, r } => {
            if h < 1 || r < h || r < 2 {
                return Err(Error::InvalidArgument(format!("need 1 <= h <= r and r >= 2, got h = {h}, r = {r}")));
            }
            let v = psi(r - 1)?.saturating_sub(psi(r - h + 1)?);
            (v, h >= 2, (h < 2).then(|| "needs h >= 2".to_string()))
        }
    };
    let q = match f {
        GapFormula::KneserExact { q, .. }
        | GapFormula::MinimalUpper { q, .. }
        | GapFormula::KneserLower { q, .. }
        | GapFormula::ManyMessages { q, .. } => Some(q),
        GapFormula::Combination { .. } => None,
    };
    if let Some(q) = q.filter(|&q| !is_prime_power(q)) {
        ok = false;
        note = Some(format!("{q} is not a prime power"));
    }
    if !ok {
        note = note.map(|n| format!("outside stated hypotheses: {n}"));
    }
    Ok(FormulaValue {
        formula: f,
        value,
        hypotheses_met: ok,
        note,
    })
}
