use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::One;

use super::fq::{Fe, Fq};
use super::poly::{prime_factors, Poly};
use crate::error::{CarlitzError, Result};

/// A finite field containing F_q together with a distinguished image θ of T.
pub trait FiniteField: Clone + Send + Sync {
    type E: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn base(&self) -> &Fq;
    /// e with |F| = q^e.
    fn degree(&self) -> u64;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn constant(&self, c: Fe) -> Self::E;
    /// Image of T.
    fn theta(&self) -> Self::E;
    fn add(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn sub(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn neg(&self, x: &Self::E) -> Self::E;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn inv(&self, x: &Self::E) -> Option<Self::E>;
    /// The k-th element of a fixed deterministic enumeration, used for searches.
    fn element(&self, k: u64) -> Self::E;

    fn is_zero(&self, x: &Self::E) -> bool {
        *x == self.zero()
    }
    fn order(&self) -> BigUint {
        BigUint::from(self.base().q()).pow(self.degree() as u32)
    }
    fn pow(&self, x: &Self::E, n: &BigUint) -> Self::E {
        let mut r = self.one();
        for i in (0..n.bits()).rev() {
            r = self.mul(&r, &r);
            if n.bit(i) {
                r = self.mul(&r, x);
            }
        }
        r
    }
    fn pow_u64(&self, x: &Self::E, n: u64) -> Self::E {
        self.pow(x, &BigUint::from(n))
    }
    /// x^q.
    fn frob(&self, x: &Self::E) -> Self::E {
        self.pow_u64(x, self.base().q() as u64)
    }
    /// Image of a polynomial in T.
    fn embed(&self, p: &Poly) -> Self::E {
        let th = self.theta();
        let mut r = self.zero();
        for &c in p.coeffs().iter().rev() {
            r = self.add(&self.mul(&r, &th), &self.constant(c));
        }
        r
    }
}

/// F_q[T]/Q for a monic irreducible Q; θ = T mod Q.
#[derive(Clone, Debug)]
pub struct ResidueField {
    modulus: Poly,
}

impl ResidueField {
    pub fn new(q_poly: &Poly) -> Result<ResidueField> {
        if q_poly.deg() == 0 || !q_poly.is_irreducible() {
            return Err(CarlitzError::Domain(format!("{q_poly} is not a prime")));
        }
        Ok(ResidueField { modulus: q_poly.monic() })
    }
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }
}

impl FiniteField for ResidueField {
    type E = Poly;
    fn base(&self) -> &Fq {
        self.modulus.field()
    }
    fn degree(&self) -> u64 {
        self.modulus.deg() as u64
    }
    fn zero(&self) -> Poly {
        Poly::zero(self.base())
    }
    fn one(&self) -> Poly {
        Poly::one(self.base())
    }
    fn constant(&self, c: Fe) -> Poly {
        Poly::constant(self.base(), c)
    }
    fn theta(&self) -> Poly {
        Poly::t(self.base()).rem(&self.modulus)
    }
    fn add(&self, x: &Poly, y: &Poly) -> Poly {
        x + y
    }
    fn sub(&self, x: &Poly, y: &Poly) -> Poly {
        x - y
    }
    fn neg(&self, x: &Poly) -> Poly {
        -x
    }
    fn mul(&self, x: &Poly, y: &Poly) -> Poly {
        x.mul_mod(y, &self.modulus)
    }
    fn inv(&self, x: &Poly) -> Option<Poly> {
        x.inv_mod(&self.modulus)
    }
    fn element(&self, k: u64) -> Poly {
        Poly::from_code(self.base(), k).rem(&self.modulus)
    }
    fn embed(&self, p: &Poly) -> Poly {
        p.rem(&self.modulus)
    }
}

/// Dense polynomials over a [`FiniteField`], little-endian, trimmed.
pub(crate) mod upoly {
    use super::FiniteField;

    pub fn trim<F: FiniteField>(k: &F, mut a: Vec<F::E>) -> Vec<F::E> {
        while a.last().is_some_and(|c| k.is_zero(c)) {
            a.pop();
        }
        a
    }
    pub fn add<F: FiniteField>(k: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
        let n = a.len().max(b.len());
        let z = k.zero();
        let v = (0..n)
            .map(|i| k.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        trim(k, v)
    }
    pub fn sub<F: FiniteField>(k: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
        let n = a.len().max(b.len());
        let z = k.zero();
        let v = (0..n)
            .map(|i| k.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        trim(k, v)
    }
    pub fn mul<F: FiniteField>(k: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![k.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                r[i + j] = k.add(&r[i + j], &k.mul(x, y));
            }
        }
        trim(k, r)
    }
    /// (quotient, remainder); `b` nonzero.
    pub fn div_rem<F: FiniteField>(k: &F, a: &[F::E], b: &[F::E]) -> (Vec<F::E>, Vec<F::E>) {
        let db = b.len() - 1;
        let li = k.inv(&b[db]).expect("nonzero leading coefficient");
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), trim(k, r));
        }
        let mut quo = vec![k.zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            if k.is_zero(&r[i]) {
                continue;
            }
            let c = k.mul(&r[i], &li);
            for (j, bj) in b.iter().enumerate() {
                let idx = i - db + j;
                r[idx] = k.sub(&r[idx], &k.mul(&c, bj));
            }
            quo[i - db] = c;
        }
        r.truncate(db);
        (trim(k, quo), trim(k, r))
    }
    pub fn rem<F: FiniteField>(k: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
        div_rem(k, a, b).1
    }
    pub fn mul_mod<F: FiniteField>(k: &F, a: &[F::E], b: &[F::E], g: &[F::E]) -> Vec<F::E> {
        rem(k, &mul(k, a, b), g)
    }
    pub fn monic<F: FiniteField>(k: &F, a: &[F::E]) -> Vec<F::E> {
        match a.last() {
            None => Vec::new(),
            Some(l) => {
                let li = k.inv(l).unwrap();
                a.iter().map(|c| k.mul(c, &li)).collect()
            }
        }
    }
    pub fn gcd<F: FiniteField>(k: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
        let (mut a, mut b) = (trim(k, a.to_vec()), trim(k, b.to_vec()));
        while !b.is_empty() {
            let r = rem(k, &a, &b);
            a = b;
            b = r;
        }
        monic(k, &a)
    }
    /// Inverse of `a` modulo `g`, if coprime.
    pub fn inv_mod<F: FiniteField>(k: &F, a: &[F::E], g: &[F::E]) -> Option<Vec<F::E>> {
        let (mut r0, mut r1) = (g.to_vec(), rem(k, a, g));
        let (mut s0, mut s1): (Vec<F::E>, Vec<F::E>) = (Vec::new(), vec![k.one()]);
        while !r1.is_empty() {
            let (qt, r) = div_rem(k, &r0, &r1);
            let s = sub(k, &s0, &mul(k, &qt, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = k.inv(&r0[0])?;
        Some(rem(k, &s0.iter().map(|x| k.mul(x, &c)).collect::<Vec<_>>(), g))
    }
    /// a^q mod g.
    pub fn frob_mod<F: FiniteField>(k: &F, a: &[F::E], g: &[F::E]) -> Vec<F::E> {
        let q = k.base().q() as u64;
        let mut r = vec![k.one()];
        for i in (0..64 - q.leading_zeros()).rev() {
            r = mul_mod(k, &r, &r, g);
            if (q >> i) & 1 == 1 {
                r = mul_mod(k, &r, a, g);
            }
        }
        r
    }
    /// p(h) mod g.
    pub fn compose_mod<F: FiniteField>(k: &F, p: &[F::E], h: &[F::E], g: &[F::E]) -> Vec<F::E> {
        let mut r = Vec::new();
        for c in p.iter().rev() {
            r = add(k, &mul_mod(k, &r, h, g), std::slice::from_ref(c));
        }
        r
    }
}

/// Rabin's test for a monic `g` over `k`.
pub fn is_irreducible_over<F: FiniteField>(k: &F, g: &[F::E]) -> bool {
    let f = g.len() as u64 - 1;
    if f <= 1 {
        return f == 1;
    }
    let x = vec![k.zero(), k.one()];
    // h = X^{|k|} mod g
    let mut h = x.clone();
    for _ in 0..k.degree() {
        h = upoly::frob_mod(k, &h, g);
    }
    let divisors: Vec<u64> = prime_factors(f).into_iter().map(|r| f / r).collect();
    let mut cur = h.clone();
    for i in 1..=f {
        if i > 1 {
            cur = upoly::compose_mod(k, &cur, &h, g);
        }
        if i < f && (i == 1 || divisors.contains(&i)) {
            let d = upoly::gcd(k, &upoly::sub(k, &cur, &x), g);
            if d.len() > 1 {
                return false;
            }
        }
    }
    cur == x
}

fn digit_width<B: FiniteField>(base: &B) -> u64 {
    base.order().min(BigUint::from(1u64 << 16)).try_into().unwrap()
}

/// Degree-`f` extension B[X]/g of a finite field B; θ is that of B.
#[derive(Clone, Debug)]
pub struct ExtField<B: FiniteField> {
    base: B,
    g: Vec<B::E>,
}

impl<B: FiniteField> ExtField<B> {
    /// Uses the first irreducible X^f + Σ c_i X^i with (c_0, c_1, …) read as the digits of
    /// 1, 2, 3, … in base min(|B|, 2^16), each digit mapped through the base enumeration.
    pub fn new(base: B, f: u64) -> Result<ExtField<B>> {
        if f == 0 {
            return Err(CarlitzError::Domain("extension degree must be positive".into()));
        }
        if f == 1 {
            let g = vec![base.zero(), base.one()];
            return Ok(ExtField { base, g });
        }
        let width = digit_width(&base);
        for code in 1..1u64 << 24 {
            let mut g = vec![base.zero(); f as usize + 1];
            g[f as usize] = base.one();
            let mut c = code;
            for slot in g.iter_mut().take(f as usize) {
                if c == 0 {
                    break;
                }
                *slot = base.element(c % width);
                c /= width;
            }
            if c > 0 || base.is_zero(&g[0]) {
                continue;
            }
            if is_irreducible_over(&base, &g) {
                return Ok(ExtField { base, g });
            }
        }
        Err(CarlitzError::Domain(format!("no irreducible of degree {f} found")))
    }
    pub fn ext_degree(&self) -> u64 {
        self.g.len() as u64 - 1
    }
    pub fn base_field(&self) -> &B {
        &self.base
    }
    /// Embedding of the base field.
    pub fn lift(&self, x: &B::E) -> Vec<B::E> {
        let mut v = vec![self.base.zero(); self.ext_degree() as usize];
        v[0] = x.clone();
        v
    }
    /// The base-field value of `x`, if it lies in the base field.
    pub fn project(&self, x: &[B::E]) -> Option<B::E> {
        x[1..].iter().all(|c| self.base.is_zero(c)).then(|| x[0].clone())
    }
    fn pad(&self, mut v: Vec<B::E>) -> Vec<B::E> {
        v.resize(self.ext_degree() as usize, self.base.zero());
        v
    }
}

impl<B: FiniteField> FiniteField for ExtField<B> {
    type E = Vec<B::E>;
    fn base(&self) -> &Fq {
        self.base.base()
    }
    fn degree(&self) -> u64 {
        self.base.degree() * self.ext_degree()
    }
    fn zero(&self) -> Self::E {
        self.pad(Vec::new())
    }
    fn one(&self) -> Self::E {
        self.lift(&self.base.one())
    }
    fn constant(&self, c: Fe) -> Self::E {
        self.lift(&self.base.constant(c))
    }
    fn theta(&self) -> Self::E {
        self.lift(&self.base.theta())
    }
    fn add(&self, x: &Self::E, y: &Self::E) -> Self::E {
        x.iter().zip(y).map(|(a, b)| self.base.add(a, b)).collect()
    }
    fn sub(&self, x: &Self::E, y: &Self::E) -> Self::E {
        x.iter().zip(y).map(|(a, b)| self.base.sub(a, b)).collect()
    }
    fn neg(&self, x: &Self::E) -> Self::E {
        x.iter().map(|a| self.base.neg(a)).collect()
    }
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E {
        let k = &self.base;
        self.pad(upoly::mul_mod(k, &upoly::trim(k, x.clone()), &upoly::trim(k, y.clone()), &self.g))
    }
    fn inv(&self, x: &Self::E) -> Option<Self::E> {
        let k = &self.base;
        let a = upoly::trim(k, x.clone());
        if a.is_empty() {
            return None;
        }
        upoly::inv_mod(k, &a, &self.g).map(|v| self.pad(v))
    }
    fn element(&self, k: u64) -> Self::E {
        let width = digit_width(&self.base);
        let mut c = k;
        (0..self.ext_degree())
            .map(|_| {
                let d = c % width;
                c /= width;
                self.base.element(d)
            })
            .collect()
    }
    fn frob(&self, x: &Self::E) -> Self::E {
        let k = &self.base;
        self.pad(upoly::frob_mod(k, &upoly::trim(k, x.clone()), &self.g))
    }
}

/// Multiplicative order of `x` given a multiple `n` of it.
pub fn element_order<F: FiniteField>(k: &F, x: &F::E, n: &BigUint) -> BigUint {
    let mut ord = n.clone();
    let one = k.one();
    for r in big_prime_factors(n) {
        while (&ord % &r).is_zero_big() && k.pow(x, &(&ord / &r)) == one {
            ord /= &r;
        }
    }
    ord
}

trait IsZeroBig {
    fn is_zero_big(&self) -> bool;
}
impl IsZeroBig for BigUint {
    fn is_zero_big(&self) -> bool {
        self.bits() == 0
    }
}

/// Prime factors of a BigUint by trial division; only used on small orders.
fn big_prime_factors(n: &BigUint) -> Vec<BigUint> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        if (&n % &d).is_zero_big() {
            out.push(d.clone());
            while (&n % &d).is_zero_big() {
                n /= &d;
            }
        }
        d += BigUint::one();
    }
    if n > BigUint::one() {
        out.push(n);
    }
    out
}
