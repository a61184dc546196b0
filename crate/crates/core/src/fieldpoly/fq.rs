use std::fmt;
use std::sync::Arc;

use crate::error::{CarlitzError, Result};

/// An element of F_q, encoded as the integer Σ c_i p^i of its coordinates over F_p.
pub type Fe = u32;

/// Description of the constant field F_q = F_p[x]/(modulus).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldDesc {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    /// Monic irreducible of degree `e` over F_p, low coefficient first. Empty when e = 1.
    pub modulus: Vec<u32>,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
    generator: Fe,
}

/// Shared handle to a finite field. Cheap to clone.
#[derive(Clone)]
pub struct Fq(Arc<FieldDesc>);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.q == other.0.q
    }
}
impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

// Dense polynomials over F_p used only to build the tables.
fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = fp_inv(m[dm], p);
    while a.len() > dm {
        let c = (a[a.len() - 1] * lead_inv) % p;
        let shift = a.len() - 1 - dm;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - (c * mi) % p) % p;
            }
        }
        a.pop();
    }
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn fp_irreducible(m: &[u32], p: u32) -> bool {
    let d = m.len() - 1;
    // Trial division by every monic polynomial of degree 1..=d/2.
    for k in 1..=d / 2 {
        let count = (p as u64).pow(k as u32);
        for code in 0..count {
            let mut f = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                f.push((c % p as u64) as u32);
                c /= p as u64;
            }
            f.push(1);
            if fp_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `e` over F_p, ordering by the
/// integer Σ c_i p^i of the non-leading coefficients.
pub fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for code in 0..count {
        let mut f = Vec::with_capacity(e as usize + 1);
        let mut c = code;
        for _ in 0..e {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if fp_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Fq {
    /// Build F_q. Supports prime powers q ≤ 256.
    pub fn new(q: u32) -> Result<Fq> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| CarlitzError::Domain(format!("{q} is not a prime power")))?;
        if q > 256 {
            return Err(CarlitzError::Domain(format!("field size {q} above table limit 256")));
        }
        let modulus = if e > 1 { least_irreducible(p, e) } else { Vec::new() };
        let qs = q as usize;
        let digits = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(e as usize);
            let mut x = x;
            for _ in 0..e {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = encode(&s);
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = if e > 1 {
                    fp_rem(&prod, &modulus, p)
                } else {
                    vec![prod[0]]
                };
                let mut r = r;
                r.resize(e as usize, 0);
                mul[a as usize * qs + b as usize] = encode(&r);
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..qs {
            for b in 0..qs {
                if add[a * qs + b] == 0 {
                    neg[a] = b as Fe;
                }
                if mul[a * qs + b] == 1 {
                    inv[a] = b as Fe;
                }
            }
        }
        // Least element generating F_q^×.
        let mut generator = 1;
        for g in 1..q {
            let mut x = 1u32;
            let mut order = 0;
            loop {
                x = mul[x as usize * qs + g as usize];
                order += 1;
                if x == 1 {
                    break;
                }
            }
            if order == q - 1 {
                generator = g;
                break;
            }
        }
        Ok(Fq(Arc::new(FieldDesc { p, e, q, modulus, add, mul, neg, inv, generator })))
    }

    pub fn desc(&self) -> &FieldDesc {
        &self.0
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }
    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.0.neg[a as usize]
    }
    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }
    /// Multiplicative inverse; 0 maps to 0.
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        self.0.inv[a as usize]
    }
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let (mut r, mut b) = (1, a);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }
    /// The least generator of the cyclic group F_q^×.
    pub fn generator(&self) -> Fe {
        self.0.generator
    }
    /// Image of the integer n under Z → F_p ⊆ F_q.
    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.0.p as i64) as Fe
    }
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.0.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SIZES: [u32; 8] = [2, 3, 4, 5, 7, 8, 9, 16];

    #[test]
    fn rejects_non_prime_powers() {
        for q in [0, 1, 6, 12, 100] {
            assert!(Fq::new(q).is_err(), "{q}");
        }
        assert!(Fq::new(257).is_err());
    }

    #[test]
    fn generator_has_full_order() {
        for q in SIZES {
            let f = Fq::new(q).unwrap();
            let g = f.generator();
            let powers: std::collections::HashSet<Fe> = (0..q as u64 - 1).map(|k| f.pow(g, k)).collect();
            assert_eq!(powers.len(), q as usize - 1, "q={q}");
        }
    }

    #[test]
    fn characteristic_kills_one() {
        for q in SIZES {
            let f = Fq::new(q).unwrap();
            assert_eq!(f.from_int(f.p() as i64), 0);
            assert_eq!(f.from_int(-1), f.neg(1));
        }
    }

    proptest! {
        #[test]
        fn field_axioms(qi in 0usize..8, a in 0u32..256, b in 0u32..256, c in 0u32..256) {
            let q = SIZES[qi];
            let f = Fq::new(q).unwrap();
            let (a, b, c) = (a % q, b % q, c % q);
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            // Frobenius is additive
            let p = f.p() as u64;
            prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
        }
    }
}
