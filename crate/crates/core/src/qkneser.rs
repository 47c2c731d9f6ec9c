//! q-Kneser graphs `qK_{n:m}` and hypergraphs `qK^h_{ht:t}`.

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::graph::{Coloring, Hypergraph, UGraph};
use crate::network::DEFAULT_TERMINAL_CANDIDATE_LIMIT;
use crate::subspace::{binomial, enumerate_subspaces, spread, sum_dim, Combinations, Subspace, DEFAULT_SUBSPACE_LIMIT};

/// `qK_{n:m}`: the `m`-subspaces of `F_q^n` in canonical order, adjacent
/// when they intersect trivially.
pub fn qkneser(q: u64, n: usize, m: usize) -> Result<UGraph> {
    qkneser_with_limit(q, n, m, DEFAULT_SUBSPACE_LIMIT)
}

pub fn qkneser_with_limit(q: u64, n: usize, m: usize, limit: u128) -> Result<UGraph> {
    let field = FieldSpec::from_order(q)?;
    let verts = enumerate_subspaces(&field, n, m, limit)?;
    let mut g = UGraph::new(verts.len());
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if sum_dim(&[&verts[i], &verts[j]])? == 2 * m {
                g.add_edge(i, j)?;
            }
        }
    }
    g.with_labels(verts)
}

/// `qK^h_{ht:t}`: hyperedges are the `h`-sets of `t`-subspaces of
/// `F_q^{ht}` whose sum is the whole space.
pub fn qkneser_hyper(q: u64, t: usize, h: usize) -> Result<Hypergraph> {
    qkneser_hyper_with_limits(q, t, h, DEFAULT_SUBSPACE_LIMIT, DEFAULT_TERMINAL_CANDIDATE_LIMIT)
}

pub fn qkneser_hyper_with_limits(
    q: u64,
    t: usize,
    h: usize,
    subspace_limit: u128,
    candidate_limit: u128,
) -> Result<Hypergraph> {
    if h < 2 {
        return Err(Error::InvalidArgument("q-Kneser hypergraphs need h >= 2".into()));
    }
    let field = FieldSpec::from_order(q)?;
    let n = h * t;
    let verts = enumerate_subspaces(&field, n, t, subspace_limit)?;
    let candidates = binomial(verts.len() as u128, h as u128);
    if candidates > candidate_limit {
        return Err(Error::LimitExceeded {
            what: "hyperedge candidate count",
            value: candidates,
            limit: candidate_limit,
        });
    }
    let mut hg = Hypergraph::new(verts.len(), h);
    for set in Combinations::new(verts.len(), h) {
        let spaces: Vec<&Subspace> = set.iter().map(|&i| &verts[i]).collect();
        if sum_dim(&spaces)? == n {
            hg.add_edge(set)?;
        }
    }
    hg.with_labels(verts)
}

/// Known value of `χ(qK_{n:m})` where one is established: `q^m + q^{m-1}`
/// for `n = 2m` with `q >= 5` or `m <= 3`, and `[n-m+1 over 1]_q` for
/// `n >= 2m+1` except `n = 2m+1, q = 2`.
pub fn known_chromatic_number(q: u64, n: usize, m: usize) -> Option<u128> {
    let q128 = q as u128;
    if m == 0 || n < 2 * m {
        return None;
    }
    if n == 2 * m {
        return (q >= 5 || m <= 3).then(|| q128.pow(m as u32) + q128.pow(m as u32 - 1));
    }
    if n == 2 * m + 1 && q == 2 && m >= 2 {
        return None;
    }
    Some((q128.pow((n - m + 1) as u32) - 1) / (q128 - 1))
}

/// Colors each `m`-subspace of `F_q^n` (vertex order of [`qkneser`]) by
/// the index of the first point of `S = span(e_1, ..., e_{n-m+1})` it
/// contains, points taken in canonical order. Every vertex meets `S`, so
/// at most `[n-m+1 over 1]_q` colors are used.
pub fn canonical_coloring(q: u64, n: usize, m: usize) -> Result<Coloring> {
    if n < 2 * m || m == 0 {
        return Err(Error::InvalidArgument(format!(
            "canonical coloring needs 1 <= m and n >= 2m, got n = {n}, m = {m}"
        )));
    }
    let field = FieldSpec::from_order(q)?;
    let s_dim = n - m + 1;
    let points: Vec<Subspace> = enumerate_subspaces(&field, s_dim, 1, DEFAULT_SUBSPACE_LIMIT)?
        .into_iter()
        .map(|p| Subspace::canonicalize(&p.basis().widen(n, 0)))
        .collect();
    let verts = enumerate_subspaces(&field, n, m, DEFAULT_SUBSPACE_LIMIT)?;
    let mut colors = Vec::with_capacity(verts.len());
    for v in &verts {
        let mut found = None;
        for (i, p) in points.iter().enumerate() {
            if v.contains_subspace(p)? {
                found = Some(i);
                break;
            }
        }
        colors.push(found.ok_or(Error::Overflow("vertex missed the coloring subspace"))?);
    }
    Ok(Coloring { colors })
}

/// Vertex indices of `qK_{2t:t}` (canonical order) forming the
/// `(q^t + 1)`-clique of a spread.
pub fn spread_clique(q: u64, t: usize) -> Result<Vec<usize>> {
    let field = FieldSpec::from_order(q)?;
    let verts = enumerate_subspaces(&field, 2 * t, t, DEFAULT_SUBSPACE_LIMIT)?;
    let mut out = Vec::new();
    for s in spread(&field, t)? {
        let i = verts
            .binary_search(&s)
            .map_err(|_| Error::InvalidArgument("spread member missing from enumeration".into()))?;
        out.push(i);
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chromatic_number, find_homomorphism, HomResult};

    #[test]
    fn small_qkneser_graphs_are_complete() {
        for q in [2, 3, 4, 5] {
            let g = qkneser(q, 2, 1).unwrap();
            assert_eq!(g, UGraph::complete(q as usize + 1).with_labels(g.labels().unwrap().to_vec()).unwrap());
            assert_eq!(chromatic_number(&g, 10_000).value(), Some(q as usize + 1));
        }
    }

    #[test]
    fn qk42_is_16_regular() {
        let g = qkneser(2, 4, 2).unwrap();
        assert_eq!(g.len(), 35);
        assert!((0..35).all(|v| g.degree(v) == 16));
    }

    #[test]
    fn hypergraph_small_cases() {
        let h = qkneser_hyper(2, 1, 2).unwrap();
        let g = qkneser(2, 2, 1).unwrap();
        let pairs: Vec<Vec<usize>> = g.edges().map(|(u, v)| vec![u, v]).collect();
        assert_eq!(h.edges(), &pairs[..]);
        let h = qkneser_hyper(2, 1, 3).unwrap();
        assert_eq!(h.len(), 7);
        assert_eq!(h.edges().len(), 28);
        assert!(qkneser_hyper(2, 1, 1).is_err());
    }

    #[test]
    fn canonical_colorings() {
        let c = canonical_coloring(2, 5, 2).unwrap();
        assert!(c.is_proper(&qkneser(2, 5, 2).unwrap()));
        assert!(c.num_colors() <= 15);
        let c = canonical_coloring(3, 3, 1).unwrap();
        assert_eq!(c.distinct_colors(), 13);
        assert!(c.is_proper(&qkneser(3, 3, 1).unwrap()));
        let c = canonical_coloring(2, 4, 2).unwrap();
        assert!(c.is_proper(&qkneser(2, 4, 2).unwrap()));
        assert!(c.num_colors() <= 7);
        assert!(canonical_coloring(2, 3, 2).is_err());
    }

    #[test]
    fn spread_cliques() {
        for (q, t, size) in [(2, 1, 3), (2, 2, 5), (3, 1, 4)] {
            let g = qkneser(q, 2 * t, t).unwrap();
            let c = spread_clique(q, t).unwrap();
            assert_eq!(c.len(), size);
            assert!(g.is_clique(&c));
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(known_chromatic_number(2, 4, 2), Some(6));
        assert_eq!(known_chromatic_number(2, 5, 2), None);
        assert_eq!(known_chromatic_number(2, 6, 2), Some(31));
        assert_eq!(known_chromatic_number(3, 2, 1), Some(4));
        assert_eq!(known_chromatic_number(2, 8, 4), None);
    }

    #[test]
    fn qk42_homomorphisms() {
        let g = qkneser(2, 4, 2).unwrap();
        assert_eq!(find_homomorphism(&g, &UGraph::complete(4), 1_000_000).0, HomResult::None);
        assert!(matches!(
            find_homomorphism(&g, &UGraph::complete(6), 1_000_000).0,
            HomResult::Found(_)
        ));
    }

    #[test]
    fn chi_of_qk42_is_six() {
        let g = qkneser(2, 4, 2).unwrap();
        let r = chromatic_number(&g, 100_000_000);
        assert_eq!(r.clique.len(), 5);
        assert_eq!(r.value(), Some(6));
        assert!(r.witness.is_proper(&g));
    }
}
