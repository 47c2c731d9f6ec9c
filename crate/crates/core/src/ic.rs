//! Independent configurations: families of `t`-subspaces of `F_q^{ht}`
//! in which any `α` members span a space of dimension `αt`.

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::lincode::{verify_solution, NetworkCode};
use crate::network::{combination, Network};
use crate::subspace::{enumerate_subspaces, sum_dim, Combinations, Subspace, DEFAULT_SUBSPACE_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentConfiguration {
    field: FieldSpec,
    t: usize,
    h: usize,
    members: Vec<Subspace>,
}

impl IndependentConfiguration {
    /// Checks shapes only; use [`ic_is_valid`] for the independence test.
    pub fn new(field: &FieldSpec, t: usize, h: usize, members: Vec<Subspace>) -> Result<Self> {
        for m in &members {
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
            if m.ambient() != h * t || m.dim() != t {
                return Err(Error::DimensionMismatch(format!(
                    "member of dimension {} in F^{}, expected {t} in F^{}",
                    m.dim(),
                    m.ambient(),
                    h * t
                )));
            }
        }
        Ok(IndependentConfiguration {
            field: field.clone(),
            t,
            h,
            members,
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

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn check_alpha(h: usize, alpha: usize) -> Result<()> {
    if alpha == 0 || alpha > h {
        return Err(Error::InvalidArgument(format!("need 1 <= alpha <= h, got alpha = {alpha}, h = {h}")));
    }
    Ok(())
}

/// Every `alpha`-subset of members spans dimension `alpha * t`. Families
/// with fewer than `alpha` members are vacuously valid.
pub fn ic_is_valid(c: &IndependentConfiguration, alpha: usize) -> Result<bool> {
    check_alpha(c.h, alpha)?;
    for set in Combinations::new(c.len(), alpha) {
        let spaces: Vec<&Subspace> = set.iter().map(|&i| &c.members[i]).collect();
        if sum_dim(&spaces)? != alpha * c.t {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Size ceiling `(q^{(h-α+2)t} - 1)/(q^t - 1) + α - 2`.
pub fn ic_bound(q: u64, t: usize, h: usize, alpha: usize) -> Result<u128> {
    check_alpha(h, alpha)?;
    if t == 0 {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    let q = q as u128;
    let e = ((h - alpha + 2) * t) as u32;
    let top = q.checked_pow(e).ok_or(Error::Overflow("IC bound"))?;
    Ok((top - 1) / (q.pow(t as u32) - 1) + alpha as u128 - 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IcSearchResult {
    pub size: usize,
    pub witness: IndependentConfiguration,
    /// False when the budget ran out first: `size` is then a lower bound.
    pub exact: bool,
    pub bound: u128,
    pub expansions: u64,
}

/// Largest `(t; h, α)_q` configuration, by branch and bound over the
/// canonical order of `t`-subspaces.
pub fn ic_max_size(q: u64, t: usize, h: usize, alpha: usize, budget: u64) -> Result<IcSearchResult> {
    ic_search(q, t, h, alpha, None, budget, DEFAULT_SUBSPACE_LIMIT)
}

/// As [`ic_max_size`], stopping once a configuration of `target` members
/// is found. With `exact` set and `size < target` none exists.
pub fn ic_search(
    q: u64,
    t: usize,
    h: usize,
    alpha: usize,
    target: Option<usize>,
    budget: u64,
    subspace_limit: u128,
) -> Result<IcSearchResult> {
    check_alpha(h, alpha)?;
    let bound = ic_bound(q, t, h, alpha)?;
    let field = FieldSpec::from_order(q)?;
    let universe = enumerate_subspaces(&field, h * t, t, subspace_limit)?;
    if alpha == 1 {
        let take = target.map_or(universe.len(), |k| k.min(universe.len()));
        let members: Vec<Subspace> = universe.into_iter().take(take).collect();
        return Ok(IcSearchResult {
            size: members.len(),
            witness: IndependentConfiguration::new(&field, t, h, members)?,
            exact: true,
            bound,
            expansions: 0,
        });
    }
    let ceiling = (bound.min(universe.len() as u128) as usize).min(target.unwrap_or(usize::MAX));
    // the general linear group is transitive on independent pairs
    let first = Subspace::coordinate_block(&field, h * t, 0, t);
    let second = Subspace::coordinate_block(&field, h * t, t, t);
    let i1 = universe.binary_search(&first).map_err(|_| Error::Overflow("missing first block"))?;
    let i2 = universe.binary_search(&second).map_err(|_| Error::Overflow("missing second block"))?;
    let mut s = IcSearch {
        universe: &universe,
        t,
        alpha,
        chosen: Vec::new(),
        best: Vec::new(),
        ceiling,
        left: budget,
        used: 0,
    };
    let all: Vec<usize> = (0..universe.len()).collect();
    let mut cands = all;
    let mut complete = true;
    for fixed in [i1, i2] {
        if s.best.len() >= ceiling {
            break;
        }
        cands = s.push_filter(fixed, &cands)?;
        s.record();
    }
    if s.best.len() < ceiling {
        cands.retain(|&c| c != i1 && c != i2);
        complete = s.go(&cands)?;
    }
    let members: Vec<Subspace> = s.best.iter().map(|&i| universe[i].clone()).collect();
    Ok(IcSearchResult {
        size: members.len(),
        witness: IndependentConfiguration::new(&field, t, h, members)?,
        exact: complete,
        bound,
        expansions: s.used,
    })
}

struct IcSearch<'a> {
    universe: &'a [Subspace],
    t: usize,
    alpha: usize,
    chosen: Vec<usize>,
    best: Vec<usize>,
    ceiling: usize,
    left: u64,
    used: u64,
}

impl IcSearch<'_> {
    fn record(&mut self) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
    }

    /// Adds `v` and keeps the candidates still compatible with every
    /// subset of size below `alpha` that contains `v`.
    fn push_filter(&mut self, v: usize, cands: &[usize]) -> Result<Vec<usize>> {
        let others = self.chosen.clone();
        self.chosen.push(v);
        let mut out = Vec::new();
        'cand: for &c in cands {
            if c == v {
                continue;
            }
            for k in 0..self.alpha.saturating_sub(1).min(others.len() + 1) {
                for sub in Combinations::new(others.len(), k) {
                    let mut spaces: Vec<&Subspace> = sub.iter().map(|&i| &self.universe[others[i]]).collect();
                    spaces.push(&self.universe[v]);
                    spaces.push(&self.universe[c]);
                    if sum_dim(&spaces)? != spaces.len() * self.t {
                        continue 'cand;
                    }
                }
            }
            out.push(c);
        }
        Ok(out)
    }

    /// Returns false when the budget ran out.
    fn go(&mut self, cands: &[usize]) -> Result<bool> {
        for (i, &c) in cands.iter().enumerate() {
            if self.best.len() >= self.ceiling || self.chosen.len() + cands.len() - i <= self.best.len() {
                return Ok(true);
            }
            if self.left == 0 {
                return Ok(false);
            }
            self.left -= 1;
            self.used += 1;
            let next = self.push_filter(c, &cands[i + 1..])?;
            self.record();
            let done = self.go(&next)?;
            self.chosen.pop();
            if !done {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Sends member `i` on source edge `i` of `N_{h,r,h}` and forwards it
/// through the middle layer.
pub fn ic_to_solution(c: &IndependentConfiguration) -> Result<(Network, NetworkCode)> {
    if !ic_is_valid(c, c.h)? {
        return Err(Error::InvalidArgument("not an independent configuration for alpha = h".into()));
    }
    let net = combination(c.h, c.len(), c.h)?;
    let mut code = NetworkCode::new(&c.field, c.t, c.h)?;
    let src_edges: Vec<_> = net.out_edges(net.source()).copied().collect();
    for (e, v) in src_edges.iter().zip(&c.members) {
        code.insert(e.id, v.basis().clone())?;
        for out in net.out_edges(e.to) {
            code.insert(out.id, v.basis().clone())?;
        }
    }
    Ok((net, code))
}

/// Reads the middle-node spaces of an accepted solution of `N_{h,r,h}`.
pub fn solution_to_ic(net: &Network, code: &NetworkCode) -> Result<IndependentConfiguration> {
    if !verify_solution(net, code)?.accepted() {
        return Err(Error::InvalidArgument("code is not a solution".into()));
    }
    let mut members = Vec::new();
    for e in net.out_edges(net.source()) {
        members.push(Subspace::canonicalize(&code.node_matrix(net, e.to)?));
    }
    let c = IndependentConfiguration::new(code.field(), code.t(), code.h(), members)?;
    if !ic_is_valid(&c, code.h())? {
        return Err(Error::InvalidNetwork("not a full combination network".into()));
    }
    Ok(c)
}
