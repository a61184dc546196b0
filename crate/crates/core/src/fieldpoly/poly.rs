use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use super::fq::{Fe, Fq};
use crate::error::{CarlitzError, Result};

/// Polynomial in T over F_q. Coefficients are stored low degree first with no
/// trailing zeros, so the zero polynomial has an empty coefficient vector.
#[derive(Clone)]
pub struct Poly {
    field: Fq,
    c: Vec<Fe>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}
impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

/// Degree first, then the integer code Σ c_i q^i. Within a fixed degree this is the
/// lexicographic order used by every enumeration in the crate.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, a) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "T")?,
                (1, a) => write!(f, "{a}T")?,
                (i, 1) => write!(f, "T^{i}")?,
                (i, a) => write!(f, "{a}T^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn from_coeffs(field: &Fq, mut c: Vec<Fe>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { field: field.clone(), c }
    }
    pub fn zero(field: &Fq) -> Poly {
        Poly { field: field.clone(), c: Vec::new() }
    }
    pub fn one(field: &Fq) -> Poly {
        Poly::constant(field, 1)
    }
    pub fn constant(field: &Fq, a: Fe) -> Poly {
        Poly::from_coeffs(field, vec![a])
    }
    /// The variable T.
    pub fn t(field: &Fq) -> Poly {
        Poly::from_coeffs(field, vec![0, 1])
    }
    pub fn monomial(field: &Fq, a: Fe, d: usize) -> Poly {
        let mut c = vec![0; d + 1];
        c[d] = a;
        Poly::from_coeffs(field, c)
    }
    /// Decode Σ c_i q^i.
    pub fn from_code(field: &Fq, mut code: u64) -> Poly {
        let q = field.q() as u64;
        let mut c = Vec::new();
        while code > 0 {
            c.push((code % q) as Fe);
            code /= q;
        }
        Poly::from_coeffs(field, c)
    }
    /// Monic polynomial T^d + (low part encoded by `code`).
    pub fn monic_from_code(field: &Fq, d: usize, code: u64) -> Poly {
        let mut p = Poly::from_code(field, code);
        p.c.resize(d, 0);
        p.c.push(1);
        p
    }
    /// Parse a little-endian coefficient string such as "1,1,1" (= T^2 + T + 1).
    /// Entries are integers read in the prime field, or field codes when q is not prime.
    pub fn parse(field: &Fq, s: &str) -> Result<Poly> {
        let mut c = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let v: i64 = tok
                .parse()
                .map_err(|_| CarlitzError::Domain(format!("bad coefficient {tok:?}")))?;
            if field.desc().e == 1 {
                c.push(field.from_int(v));
            } else if (0..field.q() as i64).contains(&v) {
                c.push(v as Fe);
            } else {
                return Err(CarlitzError::Domain(format!("field code {v} out of range")));
            }
        }
        Ok(Poly::from_coeffs(field, c))
    }
    /// Inverse of [`Poly::parse`].
    pub fn encode(&self) -> String {
        if self.c.is_empty() {
            return "0".into();
        }
        self.c.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
    }
    pub fn code(&self) -> u64 {
        let q = self.field.q() as u64;
        self.c.iter().rev().fold(0u64, |acc, &a| acc * q + a as u64)
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }
    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.c == [1]
    }
    /// Degree; the zero polynomial reports 0 (callers exclude it where it matters).
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }
    pub fn degree(&self) -> Option<usize> {
        (!self.c.is_empty()).then(|| self.c.len() - 1)
    }
    pub fn lead(&self) -> Fe {
        self.c.last().copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn scale(&self, a: Fe) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.c.iter().map(|&x| f.mul(x, a)).collect())
    }
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }
    pub fn shift(&self, d: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; d];
        c.extend_from_slice(&self.c);
        Poly { field: self.field.clone(), c }
    }
    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }

    pub fn div_rem(&self, m: &Poly) -> (Poly, Poly) {
        assert!(!m.is_zero(), "division by zero polynomial");
        let f = &self.field;
        if self.c.len() < m.c.len() {
            return (Poly::zero(f), self.clone());
        }
        let mut r = self.c.clone();
        let dm = m.c.len() - 1;
        let li = f.inv(m.lead());
        let mut quo = vec![0; r.len() - dm];
        for k in (0..quo.len()).rev() {
            let a = f.mul(r[k + dm], li);
            quo[k] = a;
            if a != 0 {
                for (i, &mi) in m.c.iter().enumerate() {
                    r[k + i] = f.sub(r[k + i], f.mul(a, mi));
                }
            }
        }
        r.truncate(dm);
        (Poly::from_coeffs(f, quo), Poly::from_coeffs(f, r))
    }
    pub fn rem(&self, m: &Poly) -> Poly {
        if self.c.len() < m.c.len() {
            return self.clone();
        }
        self.div_rem(m).1
    }
    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }
    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, m: &Poly) -> Poly {
        let (q, r) = self.div_rem(m);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }
    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
    /// Returns (g, s, t) with s·self + t·other = g monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (qt, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&qt * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&qt * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        let li = f.inv(r0.lead());
        (r0.scale(li), s0.scale(li), t0.scale(li))
    }
    pub fn coprime(&self, other: &Poly) -> bool {
        self.gcd(other).is_one()
    }
    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).xgcd(m);
        g.is_one().then(|| s.rem(m))
    }
    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m)
    }
    pub fn pow(&self, mut e: u64) -> Poly {
        let mut r = Poly::one(&self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut r = Poly::one(&self.field).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul_mod(&b, m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_mod(&b, m);
            }
        }
        r
    }
    pub fn pow_mod_big(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut r = Poly::one(&self.field).rem(m);
        let b = self.rem(m);
        for i in (0..e.bits()).rev() {
            r = r.mul_mod(&r, m);
            if e.bit(i) {
                r = r.mul_mod(&b, m);
            }
        }
        r
    }
    /// self^q, computed coefficientwise through the Frobenius of F_q.
    pub fn frobenius(&self) -> Poly {
        let f = &self.field;
        let q = f.q() as usize;
        let mut c = vec![0; self.c.len().saturating_sub(1) * q + 1];
        for (i, &a) in self.c.iter().enumerate() {
            c[i * q] = f.pow(a, q as u64);
        }
        Poly::from_coeffs(f, c)
    }
    /// self^q mod m.
    pub fn frobenius_mod(&self, m: &Poly) -> Poly {
        self.frobenius().rem(m)
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let t = Poly::t(&self.field);
        let primes = prime_factors(n as u64);
        // powers[k] = T^{q^k} mod f
        let mut x = t.clone();
        let mut checkpoints = std::collections::HashMap::new();
        let wanted: Vec<usize> = primes.iter().map(|&l| n / l as usize).collect();
        for k in 1..=n {
            x = x.frobenius_mod(&f);
            if wanted.contains(&k) {
                checkpoints.insert(k, x.clone());
            }
        }
        if x != t {
            return false;
        }
        for k in wanted {
            let h = &checkpoints[&k] - &t;
            if !h.gcd(&f).is_one() {
                return false;
            }
        }
        true
    }

    /// Factorisation into monic irreducibles with multiplicity, sorted.
    /// Trial division; meant for the small moduli handled by the library.
    pub fn factor(&self) -> Vec<(Poly, u32)> {
        let mut rest = self.monic();
        let f = &self.field;
        let mut out = Vec::new();
        let mut d = 1;
        while rest.deg() >= 2 * d {
            let count = (f.q() as u64).pow(d as u32);
            for code in 0..count {
                let cand = Poly::monic_from_code(f, d, code);
                if rest.deg() < 2 * d {
                    break;
                }
                let mut k = 0;
                loop {
                    let (qt, r) = rest.div_rem(&cand);
                    if !r.is_zero() {
                        break;
                    }
                    rest = qt;
                    k += 1;
                }
                if k > 0 {
                    out.push((cand, k));
                }
            }
            d += 1;
        }
        if rest.deg() >= 1 {
            match out.iter_mut().find(|(p, _)| *p == rest) {
                Some(e) => e.1 += 1,
                None => out.push((rest, 1)),
            }
        }
        out.sort();
        out
    }
    pub fn is_squarefree(&self) -> bool {
        self.factor().iter().all(|&(_, k)| k == 1)
    }
    /// All monic divisors, sorted.
    pub fn divisors(&self) -> Vec<Poly> {
        let mut out = vec![Poly::one(&self.field)];
        for (p, k) in self.factor() {
            let mut next = Vec::new();
            for d in &out {
                let mut x = d.clone();
                next.push(x.clone());
                for _ in 0..k {
                    x = &x * &p;
                    next.push(x.clone());
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect();
        Poly::from_coeffs(f, c)
    }
}
impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect();
        Poly::from_coeffs(f, c)
    }
}
impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.c.iter().map(|&a| f.neg(a)).collect())
    }
}
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let f = &self.field;
        if self.c.is_empty() || o.c.is_empty() {
            return Poly::zero(f);
        }
        let mut c = vec![0; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, c)
    }
}

/// All monic polynomials of degree exactly `d` coprime to `m`, in lexicographic order.
pub fn monic_enumerate(field: &Fq, d: usize, m: &Poly) -> Vec<Poly> {
    let count = (field.q() as u64).pow(d as u32);
    (0..count)
        .map(|code| Poly::monic_from_code(field, d, code))
        .filter(|a| m.is_constant() || a.coprime(m))
        .collect()
}

/// Monic irreducibles of degree exactly `d`, in lexicographic order.
pub fn monic_irreducibles(field: &Fq, d: usize) -> Vec<Poly> {
    let count = (field.q() as u64).pow(d as u32);
    (0..count)
        .map(|code| Poly::monic_from_code(field, d, code))
        .filter(|a| a.is_irreducible())
        .collect()
}
