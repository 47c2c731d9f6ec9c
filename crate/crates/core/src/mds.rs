//! Classical block codes, Reed-Solomon generators and code-based
//! solutions of combination networks.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::gf::{Felt, FieldSpec, Matrix};
use crate::lincode::{solution_from_classical_code, NetworkCode};
use crate::network::Network;
use crate::subspace::Combinations;

/// Brute-force limit on codebook sizes.
pub const DEFAULT_CODEWORD_LIMIT: u128 = 1_000_000;

/// Largest `size * length` handled by [`find_codebook`].
pub const MAX_CODEBOOK_SEARCH: usize = 24;

/// A linear `[r, h]_q` code given by an `h x r` generator of rank `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    generator: Matrix,
}

impl LinearCode {
    pub fn new(generator: Matrix) -> Result<LinearCode> {
        if generator.rank() != generator.rows() {
            return Err(Error::InvalidArgument("generator does not have full row rank".into()));
        }
        Ok(LinearCode { generator })
    }

    pub fn field(&self) -> &FieldSpec {
        self.generator.field()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    /// All `q^h` codewords, messages in base-`q` counting order.
    pub fn codewords(&self, limit: u128) -> Result<Vec<Vec<Felt>>> {
        let f = self.field();
        let q = f.q() as u128;
        let h = self.dimension();
        let count = q.checked_pow(h as u32).unwrap_or(u128::MAX);
        if count > limit {
            return Err(Error::LimitExceeded {
                what: "codeword count",
                value: count,
                limit,
            });
        }
        Ok((0..count)
            .map(|mut idx| {
                let mut w = vec![Felt::ZERO; self.length()];
                for r in 0..h {
                    let c = Felt((idx % q) as u32);
                    idx /= q;
                    for (j, x) in w.iter_mut().enumerate() {
                        *x = f.add(*x, f.mul(c, self.generator.get(r, j)));
                    }
                }
                w
            })
            .collect())
    }

    /// Minimum nonzero weight.
    pub fn min_distance(&self, limit: u128) -> Result<usize> {
        Ok(self
            .codewords(limit)?
            .iter()
            .map(|w| w.iter().filter(|x| !x.is_zero()).count())
            .filter(|&wt| wt > 0)
            .min()
            .unwrap_or(0))
    }

    pub fn to_codebook(&self, limit: u128) -> Result<Codebook> {
        Codebook::new(self.field(), self.length(), self.codewords(limit)?)
    }
}

/// An arbitrary block code: distinct words of a common length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codebook {
    field: FieldSpec,
    length: usize,
    words: Vec<Vec<Felt>>,
}

impl Codebook {
    pub fn new(field: &FieldSpec, length: usize, words: Vec<Vec<Felt>>) -> Result<Codebook> {
        let mut seen = HashSet::new();
        for w in &words {
            if w.len() != length {
                return Err(Error::DimensionMismatch(format!("word of length {} in a length-{length} code", w.len())));
            }
            if let Some(x) = w.iter().find(|x| x.0 >= field.q()) {
                return Err(Error::InvalidElement { code: x.0, q: field.q() });
            }
            if !seen.insert(w.clone()) {
                return Err(Error::InvalidArgument("repeated codeword".into()));
            }
        }
        Ok(Codebook {
            field: field.clone(),
            length,
            words,
        })
    }

    pub fn from_codes(field: &FieldSpec, words: &[Vec<u32>]) -> Result<Codebook> {
        let length = words.first().map_or(0, Vec::len);
        Codebook::new(field, length, words.iter().map(|w| w.iter().map(|&c| Felt(c)).collect()).collect())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn words(&self) -> &[Vec<Felt>] {
        &self.words
    }

    pub fn min_distance(&self, limit: u128) -> Result<usize> {
        let n = self.words.len() as u128;
        if n > limit {
            return Err(Error::LimitExceeded {
                what: "codebook size",
                value: n,
                limit,
            });
        }
        let mut best = self.length;
        for (i, a) in self.words.iter().enumerate() {
            for b in &self.words[i + 1..] {
                best = best.min(hamming(a, b));
            }
        }
        Ok(best)
    }

    /// Whether the projection onto the coordinates `coords` is injective.
    pub fn separates(&self, coords: &[usize]) -> bool {
        let mut seen = HashSet::new();
        self.words
            .iter()
            .all(|w| seen.insert(coords.iter().map(|&c| w[c]).collect::<Vec<_>>()))
    }
}

fn hamming(a: &[Felt], b: &[Felt]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Generator of the `[r, h, r-h+1]_q` Reed-Solomon code evaluated at the
/// field elements `0, 1, ...` in code order, with the point at infinity
/// as last column when `r = q + 1`.
pub fn rs_code(q: u64, r: usize, h: usize) -> Result<LinearCode> {
    let field = FieldSpec::from_order(q)?;
    if h == 0 || h > r {
        return Err(Error::InvalidArgument(format!("need 1 <= h <= r, got h = {h}, r = {r}")));
    }
    if r as u64 > q + 1 {
        return Err(Error::InvalidArgument(format!("length {r} exceeds q + 1 = {}", q + 1)));
    }
    let mut g = Matrix::zeros(&field, h, r);
    for j in 0..r.min(q as usize) {
        let a = Felt(j as u32);
        for i in 0..h {
            g.set(i, j, field.pow(a, i as u64));
        }
    }
    if r as u64 == q + 1 {
        g.set(h - 1, r - 1, Felt::ONE);
    }
    LinearCode::new(g)
}

/// A code offered as a solution of `N_{h,r,s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeInput {
    Linear(LinearCode),
    Book(Codebook),
}

/// Outcome of the distance test on `N_{h,r,s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeSolvability {
    /// Linear code: the induced scalar solution.
    Linear(NetworkCode),
    /// Nonlinear code: message `i` is sent as codeword `i`, middle nodes
    /// forward their symbol, every terminal decodes by projection.
    Forwarding(Codebook),
    TooClose { distance: usize, required: usize },
}

/// Tests whether `code` solves `net = N_{h,r,s}`: it needs `q^h` words
/// and minimum distance at least `r - s + 1`.
pub fn solvability_by_code(net: &Network, h: usize, r: usize, s: usize, code: &CodeInput) -> Result<CodeSolvability> {
    let (field, length, size) = match code {
        CodeInput::Linear(c) => (c.field().clone(), c.length(), (c.field().q() as u128).pow(c.dimension() as u32)),
        CodeInput::Book(b) => (b.field().clone(), b.length(), b.words().len() as u128),
    };
    let want = (field.q() as u128).checked_pow(h as u32).unwrap_or(u128::MAX);
    if length != r || size != want || net.h() != h {
        return Err(Error::DimensionMismatch(format!(
            "need a length-{r} code with {want} words for h = {h}"
        )));
    }
    let required = r + 1 - s;
    let distance = match code {
        CodeInput::Linear(c) => c.min_distance(DEFAULT_CODEWORD_LIMIT)?,
        CodeInput::Book(b) => b.min_distance(DEFAULT_CODEWORD_LIMIT)?,
    };
    if distance < required {
        return Ok(CodeSolvability::TooClose { distance, required });
    }
    Ok(match code {
        CodeInput::Linear(c) => CodeSolvability::Linear(solution_from_classical_code(net, c.generator())?),
        CodeInput::Book(b) => CodeSolvability::Forwarding(b.clone()),
    })
}

/// Whether a forwarding codebook solution decodes at every terminal of a
/// combination network: each terminal sees the coordinates of its middle
/// nodes (source edge order) and must tell all codewords apart.
pub fn forwarding_decodes(net: &Network, book: &Codebook) -> Result<bool> {
    let middles: Vec<_> = net.out_edges(net.source()).map(|e| e.to).collect();
    if middles.len() != book.length() {
        return Err(Error::DimensionMismatch("codebook length differs from the middle layer".into()));
    }
    for &tau in net.terminals() {
        let mut coords = Vec::new();
        for e in net.in_edges(tau) {
            let i = middles
                .iter()
                .position(|&m| m == e.from)
                .ok_or_else(|| Error::InvalidNetwork("terminal not fed by the middle layer".into()))?;
            coords.push(i);
        }
        if !book.separates(&coords) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive search for a codebook of `size` words in `F_q^r` with
/// minimum distance at least `d`. Translating a code keeps distances, so
/// the zero word is always taken; the rest are chosen in increasing order.
/// Only tiny instances with `size * r <= 24` are accepted.
pub fn find_codebook(q: u64, r: usize, size: usize, d: usize, budget: u64) -> Result<Option<Option<Codebook>>> {
    let field = FieldSpec::from_order(q)?;
    if (size as u128) * (r as u128) > MAX_CODEBOOK_SEARCH as u128 {
        return Err(Error::LimitExceeded {
            what: "codebook search size times length",
            value: size as u128 * r as u128,
            limit: MAX_CODEBOOK_SEARCH as u128,
        });
    }
    let total = (q as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if total > DEFAULT_CODEWORD_LIMIT {
        return Err(Error::LimitExceeded {
            what: "ambient word count",
            value: total,
            limit: DEFAULT_CODEWORD_LIMIT,
        });
    }
    let words: Vec<Vec<Felt>> = (0..total)
        .map(|mut idx| {
            (0..r)
                .map(|_| {
                    let c = Felt((idx % q as u128) as u32);
                    idx /= q as u128;
                    c
                })
                .collect()
        })
        .collect();
    if size == 0 {
        return Ok(Some(Some(Codebook::new(&field, r, Vec::new())?)));
    }
    let mut chosen = vec![0usize];
    let mut left = budget;
    fn go(words: &[Vec<Felt>], chosen: &mut Vec<usize>, size: usize, d: usize, left: &mut u64) -> Option<bool> {
        if chosen.len() == size {
            return Some(true);
        }
        let start = chosen.last().map_or(0, |&c| c + 1);
        for i in start..words.len() {
            if words.len() - i < size - chosen.len() {
                break;
            }
            if chosen.iter().all(|&c| hamming(&words[c], &words[i]) >= d) {
                if *left == 0 {
                    return None;
                }
                *left -= 1;
                chosen.push(i);
                match go(words, chosen, size, d, left) {
                    Some(false) => {
                        chosen.pop();
                    }
                    other => return other,
                }
            }
        }
        Some(false)
    }
    Ok(match go(&words, &mut chosen, size, d, &mut left) {
        Some(true) => Some(Some(Codebook::new(&field, r, chosen.iter().map(|&i| words[i].clone()).collect())?)),
        Some(false) => Some(None),
        None => None,
    })
}

/// All `s`-subsets of the `r` coordinates separate `book`.
pub fn separates_all(book: &Codebook, s: usize) -> bool {
    Combinations::new(book.length(), s).all(|c| book.separates(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincode::verify_solution;
    use crate::network::combination;

    #[test]
    fn reed_solomon_distances() {
        let c = rs_code(2, 3, 2).unwrap();
        assert_eq!(c.min_distance(1000).unwrap(), 2);
        let c = rs_code(4, 5, 2).unwrap();
        assert_eq!(c.codewords(1000).unwrap().len(), 16);
        assert_eq!(c.min_distance(1000).unwrap(), 4);
        assert!(rs_code(2, 4, 2).is_err());
        for (q, r, h) in [(3, 4, 2), (5, 6, 3), (7, 5, 3), (8, 9, 2)] {
            assert_eq!(rs_code(q, r, h).unwrap().min_distance(1_000_000).unwrap(), r - h + 1);
        }
    }

    #[test]
    fn distances_of_small_codes() {
        let f = FieldSpec::new(2, 1).unwrap();
        let rep = LinearCode::new(Matrix::from_codes(&f, 3, &[vec![1, 1, 1]]).unwrap()).unwrap();
        assert_eq!(rep.min_distance(100).unwrap(), 3);
        let b = Codebook::from_codes(&f, &[vec![0, 0, 0], vec![1, 1, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(b.min_distance(100).unwrap(), 1);
        assert!(Codebook::from_codes(&f, &[vec![0, 1], vec![0, 1]]).is_err());
    }

    #[test]
    fn code_solvability() {
        let n = combination(2, 3, 2).unwrap();
        let r = solvability_by_code(&n, 2, 3, 2, &CodeInput::Linear(rs_code(2, 3, 2).unwrap())).unwrap();
        let CodeSolvability::Linear(code) = r else {
            panic!("expected a linear solution")
        };
        assert!(verify_solution(&n, &code).unwrap().accepted());
        let f = FieldSpec::new(2, 1).unwrap();
        let n3 = combination(3, 3, 3).unwrap();
        let id = LinearCode::new(Matrix::identity(&f, 3)).unwrap();
        assert!(matches!(
            solvability_by_code(&n3, 3, 3, 3, &CodeInput::Linear(id)).unwrap(),
            CodeSolvability::Linear(_)
        ));
    }

    #[test]
    fn no_binary_length_four_code_with_distance_three() {
        assert_eq!(find_codebook(2, 4, 4, 3, 1_000_000).unwrap(), Some(None));
        let book = find_codebook(2, 3, 4, 2, 1_000_000).unwrap().unwrap().unwrap();
        let n = combination(2, 3, 2).unwrap();
        assert!(forwarding_decodes(&n, &book).unwrap());
        assert!(separates_all(&book, 2));
        assert!(matches!(
            solvability_by_code(&n, 2, 3, 2, &CodeInput::Book(book)).unwrap(),
            CodeSolvability::Forwarding(_)
        ));
    }

    #[test]
    fn codebook_search_is_tiny_only() {
        assert!(find_codebook(3, 4, 9, 3, 1_000_000).is_err());
    }
}
