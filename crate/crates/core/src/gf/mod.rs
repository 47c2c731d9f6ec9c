//! Finite fields `F_{p^m}` in the polynomial basis.
//!
//! An element is stored as its coefficient vector packed in base `p`
//! (`code = c_0 + c_1 p + ... + c_{m-1} p^{m-1}`), so codes run over
//! `0..q` and compare in a fixed, representation-independent order.

mod matrix;
pub mod poly;

pub use matrix::{Matrix, Rref};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the field size accepted by [`FieldSpec::new`].
pub const DEFAULT_FIELD_LIMIT: u64 = 1 << 20;

/// Fields up to this size multiply through log/antilog tables.
const TABLE_LIMIT: u32 = 1 << 16;

/// A field element, `0 <= code < q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Felt(pub u32);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    log: Vec<u32>,
    // exp[i] = g^i for i in 0..2(q-1), so sums of two logs need no reduction.
    exp: Vec<u32>,
}

struct FieldData {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// Descriptor of `F_{p^m}`; cheap to clone, immutable.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldData>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)?;
        if self.0.m > 1 {
            write!(f, "[modulus {:?}]", self.0.modulus)?;
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q = p^m` with `p` prime, or `None` if `q` is not a prime power.
pub fn prime_power_parts(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    let mut found = q;
    while p.saturating_mul(p) <= q {
        if q % p == 0 {
            found = p;
            break;
        }
        p += 1;
    }
    let mut rest = q;
    let mut m = 0;
    while rest % found == 0 {
        rest /= found;
        m += 1;
    }
    (rest == 1).then_some((found, m))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power_parts(q).is_some()
}

/// Distinct prime factors of `n`, ascending.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldSpec {
    /// `F_{p^m}` with the lexicographically smallest monic irreducible modulus
    /// (coefficients compared from the constant term up).
    pub fn new(p: u64, m: u32) -> Result<Self> {
        Self::with_limit(p, m, DEFAULT_FIELD_LIMIT)
    }

    pub fn with_limit(p: u64, m: u32, limit: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if q > limit as u128 {
            return Err(Error::LimitExceeded {
                what: "field size",
                value: q,
                limit: limit as u128,
            });
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = poly::smallest_irreducible_mod_p(p, m);
        let mut data = FieldData {
            p,
            m,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            data.tables = Some(build_tables(&data));
        }
        Ok(FieldSpec(Arc::new(data)))
    }

    /// The field of order `q`, which must be a prime power.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, m) = prime_power_parts(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, m)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, coefficients low-to-high (length `m + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Felt> {
        (0..self.0.q).map(Felt)
    }

    pub fn element(&self, code: u32) -> Result<Felt> {
        if code < self.0.q {
            Ok(Felt(code))
        } else {
            Err(Error::InvalidElement { code, q: self.0.q })
        }
    }

    /// The image of the integer `n` under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Felt {
        Felt(n.rem_euclid(self.0.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        let d = &*self.0;
        if d.p == 2 {
            return Felt(a.0 ^ b.0);
        }
        if d.m == 1 {
            let s = a.0 + b.0;
            return Felt(if s >= d.p { s - d.p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        for _ in 0..d.m {
            out += ((x % d.p + y % d.p) % d.p) * place;
            x /= d.p;
            y /= d.p;
            place *= d.p;
        }
        Felt(out)
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        let d = &*self.0;
        if d.p == 2 {
            return a;
        }
        if d.m == 1 {
            return Felt(if a.0 == 0 { 0 } else { d.p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        for _ in 0..d.m {
            out += ((d.p - x % d.p) % d.p) * place;
            x /= d.p;
            place *= d.p;
        }
        Felt(out)
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.0 == 0 || b.0 == 0 {
            return Felt::ZERO;
        }
        match &self.0.tables {
            Some(t) => Felt(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => Felt(schoolbook_mul(&self.0, a.0, b.0)),
        }
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.0.tables {
            Some(t) => {
                let order = self.0.q - 1;
                Felt(t.exp[((order - t.log[a.0 as usize]) % order) as usize])
            }
            None => self.pow(a, (self.0.q - 2) as u64),
        })
    }

    pub fn pow(&self, a: Felt, mut e: u64) -> Felt {
        let (mut base, mut acc) = (a, Felt::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

fn unpack(d: &FieldData, mut code: u32) -> Vec<u32> {
    let mut out = vec![0; d.m as usize];
    for c in out.iter_mut() {
        *c = code % d.p;
        code /= d.p;
    }
    out
}

fn pack(d: &FieldData, coeffs: &[u32]) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * d.p + c)
}

fn schoolbook_mul(d: &FieldData, a: u32, b: u32) -> u32 {
    let (x, y) = (unpack(d, a), unpack(d, b));
    let p = d.p as u64;
    let mut prod = vec![0u64; 2 * d.m as usize - 1];
    for (i, &xi) in x.iter().enumerate() {
        for (j, &yj) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
        }
    }
    let m = d.m as usize;
    for k in (m..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        // x^k = x^{k-m} * x^m and x^m = -(modulus without its leading term)
        for (i, &mc) in d.modulus[..m].iter().enumerate() {
            let idx = k - m + i;
            prod[idx] = (prod[idx] + (p - c) * mc as u64) % p;
        }
        prod[k] = 0;
    }
    let coeffs: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
    pack(d, &coeffs)
}

fn build_tables(d: &FieldData) -> Tables {
    let q = d.q;
    let order = (q - 1) as u64;
    let factors = prime_factors(order);
    let pow = |g: u32, mut e: u64| {
        let (mut base, mut acc) = (g, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = schoolbook_mul(d, acc, base);
            }
            base = schoolbook_mul(d, base, base);
            e >>= 1;
        }
        acc
    };
    let generator = (1..q)
        .find(|&g| factors.iter().all(|&r| pow(g, order / r) != 1))
        .expect("the multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u32; 2 * (q as usize - 1).max(1)];
    let mut log = vec![0u32; q as usize];
    let mut cur = 1u32;
    for i in 0..(q - 1) as usize {
        exp[i] = cur;
        log[cur as usize] = i as u32;
        cur = schoolbook_mul(d, cur, generator);
    }
    for i in (q - 1) as usize..exp.len() {
        exp[i] = exp[i - (q - 1) as usize];
    }
    Tables { log, exp }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_moduli() {
        assert_eq!(FieldSpec::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FieldSpec::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldSpec::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        // (1,0,1) precedes (1,1,0) when the constant term is compared first
        assert_eq!(FieldSpec::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FieldSpec::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(FieldSpec::new(2, 0), Err(Error::ZeroDegree)));
        assert!(matches!(
            FieldSpec::new(2, 21),
            Err(Error::LimitExceeded { .. })
        ));
        assert!(matches!(FieldSpec::from_order(6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn small_products() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f2.mul(Felt(1), Felt(1)), Felt(1));
        let f4 = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f4.mul(Felt(2), Felt(2)), Felt(3));
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f3.mul(Felt(2), Felt(2)), Felt(1));
        assert!(matches!(f3.inv(Felt(0)), Err(Error::ZeroInverse)));
    }

    #[test]
    fn deterministic_modulus() {
        let a = FieldSpec::new(3, 3).unwrap();
        let b = FieldSpec::new(3, 3).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a, b);
    }

    #[test]
    fn prime_power_parsing() {
        assert_eq!(prime_power_parts(8), Some((2, 3)));
        assert_eq!(prime_power_parts(9), Some((3, 2)));
        assert_eq!(prime_power_parts(7), Some((7, 1)));
        assert_eq!(prime_power_parts(12), None);
        assert_eq!(prime_power_parts(1), None);
    }

    fn check_axioms(f: &FieldSpec) {
        let els: Vec<Felt> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, f.neg(a)), Felt::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Felt::ONE, "{f:?} a={a}");
            }
            for &b in &els {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(a, b), f.add(b, a));
                for &c in &els {
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            check_axioms(&FieldSpec::from_order(q).unwrap());
        }
    }

    #[test]
    fn schoolbook_agrees_with_tables() {
        for q in [9u64, 16, 25, 27, 49, 64, 81, 121, 128] {
            let f = FieldSpec::from_order(q).unwrap();
            for a in 1..f.q() {
                for b in 1..f.q() {
                    assert_eq!(f.mul(Felt(a), Felt(b)).0, schoolbook_mul(&f.0, a, b));
                }
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = FieldSpec::new(2, 17).unwrap();
        assert!(f.0.tables.is_none());
        let a = Felt(12345);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), Felt::ONE);
        assert_eq!(f.pow(a, (f.q() - 1) as u64), Felt::ONE);
    }
}
