//! Subspaces of `F_q^n` in canonical (RREF) form, Gaussian coefficients,
//! enumeration of Grassmannians and spreads.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::gf::{poly::Extension, Felt, FieldSpec, Matrix};

/// Default cap on the number of subspaces a single enumeration may produce.
pub const DEFAULT_SUBSPACE_LIMIT: u128 = 1_000_000;

/// A subspace stored by its reduced-row-echelon basis, so equality of
/// subspaces is equality of bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis.data().hash(state);
    }
}

impl Ord for Subspace {
    /// Ambient dimension, then dimension, then pivot columns, then entries.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.pivots.cmp(&other.pivots))
            .then_with(|| self.basis.data().cmp(other.basis.data()))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subspace {
    /// The span of the rows of `vectors`.
    pub fn canonicalize(vectors: &Matrix) -> Subspace {
        let rr = vectors.rref();
        let idx: Vec<usize> = (0..rr.rank).collect();
        Subspace {
            ambient: vectors.cols(),
            basis: rr.matrix.select_rows(&idx),
            pivots: rr.pivots,
        }
    }

    pub fn from_codes(field: &FieldSpec, ambient: usize, rows: &[Vec<u32>]) -> Result<Subspace> {
        Ok(Subspace::canonicalize(&Matrix::from_codes(field, ambient, rows)?))
    }

    pub fn zero(field: &FieldSpec, ambient: usize) -> Subspace {
        Subspace::canonicalize(&Matrix::zeros(field, 0, ambient))
    }

    pub fn full(field: &FieldSpec, ambient: usize) -> Subspace {
        Subspace::canonicalize(&Matrix::identity(field, ambient))
    }

    /// Span of the standard basis vectors `e_start, ..., e_{start+len-1}`.
    pub fn coordinate_block(field: &FieldSpec, ambient: usize, start: usize, len: usize) -> Subspace {
        let mut m = Matrix::zeros(field, len, ambient);
        for i in 0..len {
            m.set(i, start + i, Felt::ONE);
        }
        Subspace::canonicalize(&m)
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, vectors: &Matrix) -> Result<bool> {
        self.basis.rowspace_contains(vectors)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.contains(&other.basis)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        Ok(Subspace::canonicalize(&self.basis.stack(&other.basis)?))
    }

    /// All `q^dim` vectors of the subspace.
    pub fn vectors(&self) -> Vec<Vec<Felt>> {
        let f = self.field();
        let q = f.q() as u64;
        let d = self.dim();
        let n = self.ambient;
        (0..q.pow(d as u32))
            .map(|mut idx| {
                let mut v = vec![Felt::ZERO; n];
                for r in 0..d {
                    let c = Felt((idx % q) as u32);
                    idx /= q;
                    if c.is_zero() {
                        continue;
                    }
                    for (j, x) in v.iter_mut().enumerate() {
                        *x = f.add(*x, f.mul(c, self.basis.get(r, j)));
                    }
                }
                v
            })
            .collect()
    }
}

/// Dimension of `W_1 + ... + W_k`.
pub fn sum_dim(spaces: &[&Subspace]) -> Result<usize> {
    let Some(first) = spaces.first() else {
        return Ok(0);
    };
    let n = first.ambient;
    if let Some(bad) = spaces.iter().find(|s| s.ambient != n) {
        return Err(Error::DimensionMismatch(format!(
            "subspaces of F^{} and F^{}",
            n, bad.ambient
        )));
    }
    let stacked = Matrix::stack_all(first.field(), n, spaces.iter().map(|s| &s.basis))?;
    Ok(stacked.rank())
}

/// Number of `t`-dimensional subspaces of `F_q^n`.
pub fn gaussian_coefficient(n: u32, t: u32, q: u64) -> Result<u128> {
    if t > n {
        return Err(Error::InvalidArgument(format!("t = {t} exceeds n = {n}")));
    }
    if q < 2 {
        return Err(Error::InvalidArgument(format!("field size {q} is below 2")));
    }
    let q = q as u128;
    let pow = |e: u32| q.checked_pow(e).ok_or(Error::Overflow("gaussian coefficient"));
    let mut g: u128 = 1;
    // [n, k+1] = [n, k] (q^{n-k} - 1) / (q^{k+1} - 1), exact at each step.
    for k in 0..t {
        let num = pow(n - k)? - 1;
        let den = pow(k + 1)? - 1;
        g = g
            .checked_mul(num)
            .ok_or(Error::Overflow("gaussian coefficient"))?
            / den;
    }
    Ok(g)
}

/// Odometer step, last digit fastest; false once it wraps around.
fn advance(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// `k`-subsets of `0..n` in lexicographic order, produced lazily.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Combinations {
        Combinations {
            n,
            cur: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let n = self.n;
        let cur = self.cur.as_mut().unwrap();
        match (0..k).rev().find(|&i| cur[i] != i + n - k) {
            Some(i) => {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
            }
            None => self.cur = None,
        }
        Some(out)
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All `t`-subspaces of `F_q^n`, each once, in canonical order.
///
/// Walks RREF profiles directly: for each pivot set, every assignment of
/// the free entries yields a distinct subspace.
pub fn enumerate_subspaces(field: &FieldSpec, n: usize, t: usize, limit: u128) -> Result<Vec<Subspace>> {
    let count = gaussian_coefficient(n as u32, t as u32, field.q() as u64)?;
    if count > limit {
        return Err(Error::LimitExceeded {
            what: "subspace count",
            value: count,
            limit,
        });
    }
    let q = field.q();
    let mut out = Vec::with_capacity(count as usize);
    for pivots in Combinations::new(n, t) {
        let free: Vec<(usize, usize)> = (0..t)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut m = Matrix::zeros(field, t, n);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, Felt::ONE);
            }
            for (&(r, c), &d) in free.iter().zip(&digits) {
                m.set(r, c, Felt(d));
            }
            out.push(Subspace {
                ambient: n,
                basis: m,
                pivots: pivots.clone(),
            });
            if !advance(&mut digits, q) {
                break;
            }
        }
    }
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

/// A Desarguesian `t`-spread of `F_q^{2t}`: the `q^t + 1` lines of
/// `F_{q^t}^2`, each read as a `t`-subspace over `F_q`. Sorted canonically.
pub fn spread(field: &FieldSpec, t: usize) -> Result<Vec<Subspace>> {
    if t == 0 {
        return Err(Error::InvalidArgument("spread dimension must be positive".into()));
    }
    let size = (field.q() as u128)
        .checked_pow(t as u32)
        .ok_or(Error::Overflow("spread size"))?
        + 1;
    if size > DEFAULT_SUBSPACE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "spread size",
            value: size,
            limit: DEFAULT_SUBSPACE_LIMIT,
        });
    }
    let ext = Extension::new(field, t);
    let monomials: Vec<Vec<Felt>> = (0..t).map(|i| ext.monomial(i)).collect();
    let mut out = Vec::with_capacity(size as usize);
    // the line through (1, a): {(x, a x)}
    for a in ext.elements() {
        let mut m = Matrix::zeros(field, t, 2 * t);
        for (r, xi) in monomials.iter().enumerate() {
            let axi = ext.mul(&a, xi);
            for c in 0..t {
                m.set(r, c, xi[c]);
                m.set(r, t + c, axi[c]);
            }
        }
        out.push(Subspace::canonicalize(&m));
    }
    // the line through (0, 1)
    out.push(Subspace::coordinate_block(field, 2 * t, t, t));
    out.sort();
    Ok(out)
}
