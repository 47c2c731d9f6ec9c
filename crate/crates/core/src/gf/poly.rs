//! Dense univariate polynomials, coefficients low-to-high.
//!
//! Two flavours: raw `u32` coefficients mod a prime (used while the field
//! itself is being built) and [`Felt`] coefficients over a [`FieldSpec`].

use super::{FieldSpec, Felt};

fn trim(v: &mut Vec<u32>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `b`, coefficients mod `p`.
fn rem_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let p64 = p as u64;
    while r.len() > db && r.len() > 1 {
        let lead = *r.last().unwrap() as u64;
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let idx = shift + i;
                r[idx] = ((r[idx] as u64 + (p64 - lead) * bc as u64) % p64) as u32;
            }
        }
        r.pop();
    }
    trim(&mut r);
    r
}

/// Monic polynomials of degree `d` over `F_p` in lexicographic order of
/// their non-leading coefficients, constant term most significant.
fn monic_of_degree(p: u32, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(d);
    (0..count).map(move |mut idx| {
        let mut coeffs = vec![0u32; d as usize + 1];
        for i in (0..d as usize).rev() {
            coeffs[i] = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        coeffs[d as usize] = 1;
        coeffs
    })
}

pub fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let deg = f.len() as u32 - 1;
    if deg == 0 {
        return false;
    }
    (1..=deg / 2).all(|d| {
        monic_of_degree(p, d).all(|g| {
            let r = rem_mod_p(f, &g, p);
            !(r.len() == 1 && r[0] == 0)
        })
    })
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`
/// over `F_p`, comparing coefficients from the constant term upward.
pub fn smallest_irreducible_mod_p(p: u32, m: u32) -> Vec<u32> {
    monic_of_degree(p, m)
        .find(|f| is_irreducible_mod_p(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Polynomial over a [`FieldSpec`]; coefficients low-to-high, never empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<Felt>);

impl Poly {
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    fn normalized(mut v: Vec<Felt>) -> Poly {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
        if v.is_empty() {
            v.push(Felt::ZERO);
        }
        Poly(v)
    }

    pub fn mul(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let mut out = vec![Felt::ZERO; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::normalized(out)
    }

    /// Remainder modulo a monic `modulus`.
    pub fn rem(&self, modulus: &Poly, f: &FieldSpec) -> Poly {
        let dm = modulus.degree().expect("nonzero modulus");
        let mut r = self.0.clone();
        while r.len() > dm {
            let lead = r.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let shift = r.len() - dm;
            for (i, &mc) in modulus.0[..dm].iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(lead, mc));
            }
        }
        Poly::normalized(r)
    }
}

/// `F_{q^t}` realised as `F_q[x]/(g)`: elements are length-`t` coefficient
/// vectors over the base field, which is exactly their coordinate vector
/// when the extension is viewed as `F_q^t`.
pub struct Extension {
    base: FieldSpec,
    modulus: Poly,
    degree: usize,
}

impl Extension {
    /// Uses the lexicographically smallest monic irreducible of degree `t`
    /// over the base field.
    pub fn new(base: &FieldSpec, t: usize) -> Extension {
        let q = base.q() as u64;
        let count = q.pow(t as u32);
        let modulus = (0..count)
            .map(|mut idx| {
                let mut coeffs = vec![Felt::ZERO; t + 1];
                for i in (0..t).rev() {
                    coeffs[i] = Felt((idx % q) as u32);
                    idx /= q;
                }
                coeffs[t] = Felt::ONE;
                Poly(coeffs)
            })
            .find(|g| is_irreducible_over(g, base))
            .expect("irreducible polynomials exist in every degree");
        Extension {
            base: base.clone(),
            modulus,
            degree: t,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// All `q^t` elements as coordinate vectors, in base-`q` counting order.
    pub fn elements(&self) -> Vec<Vec<Felt>> {
        let q = self.base.q() as u64;
        let count = q.pow(self.degree as u32);
        (0..count)
            .map(|mut idx| {
                (0..self.degree)
                    .map(|_| {
                        let c = Felt((idx % q) as u32);
                        idx /= q;
                        c
                    })
                    .collect()
            })
            .collect()
    }

    pub fn mul(&self, a: &[Felt], b: &[Felt]) -> Vec<Felt> {
        let prod = Poly(a.to_vec()).mul(&Poly(b.to_vec()), &self.base);
        let mut r = prod.rem(&self.modulus, &self.base).0;
        r.resize(self.degree, Felt::ZERO);
        r
    }

    /// Coordinates of `x^i`.
    pub fn monomial(&self, i: usize) -> Vec<Felt> {
        let mut v = vec![Felt::ZERO; i + 1];
        v[i] = Felt::ONE;
        let mut r = Poly(v).rem(&self.modulus, &self.base).0;
        r.resize(self.degree, Felt::ZERO);
        r
    }
}

fn is_irreducible_over(g: &Poly, f: &FieldSpec) -> bool {
    let deg = match g.degree() {
        Some(d) if d > 0 => d,
        _ => return false,
    };
    let q = f.q() as u64;
    for d in 1..=deg / 2 {
        for mut idx in 0..q.pow(d as u32) {
            let mut coeffs = vec![Felt::ZERO; d + 1];
            for c in coeffs.iter_mut().take(d) {
                *c = Felt((idx % q) as u32);
                idx /= q;
            }
            coeffs[d] = Felt::ONE;
            let r = g.rem(&Poly(coeffs), f);
            if r.degree().is_none() {
                return false;
            }
        }
    }
    true
}
