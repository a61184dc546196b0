use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Q(ζ_e) = Q[x]/Φ_e, elements stored as coefficient vectors of length φ(e).
#[derive(Clone, PartialEq, Eq)]
pub struct CyclotomicField {
    e: u64,
    /// Φ_e, monic, low coefficient first.
    phi: Vec<BigInt>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(ζ_{})", self.e)
    }
}

/// An element of some Q(ζ_e); only meaningful together with its field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclo(pub Vec<BigRational>);

fn int_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // b monic
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

/// Φ_e by dividing x^e − 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_polynomial(e: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); e as usize + 1];
    p[0] = -BigInt::one();
    p[e as usize] = BigInt::one();
    for d in (1..e).filter(|d| e.is_multiple_of(*d)) {
        p = int_div_exact(&p, &cyclotomic_polynomial(d));
    }
    p
}

impl CyclotomicField {
    pub fn new(e: u64) -> CyclotomicField {
        assert!(e >= 1);
        CyclotomicField { e, phi: cyclotomic_polynomial(e) }
    }
    pub fn order(&self) -> u64 {
        self.e
    }
    /// φ(e) = [Q(ζ_e) : Q].
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }
    fn reduce(&self, mut c: Vec<BigRational>) -> Cyclo {
        let n = self.degree();
        for i in (n..c.len()).rev() {
            let t = std::mem::replace(&mut c[i], BigRational::zero());
            if t.is_zero() {
                continue;
            }
            for (j, pj) in self.phi.iter().enumerate().take(n) {
                c[i - n + j] -= &t * BigRational::from_integer(pj.clone());
            }
        }
        c.resize(n, BigRational::zero());
        Cyclo(c)
    }
    pub fn zero(&self) -> Cyclo {
        Cyclo(vec![BigRational::zero(); self.degree()])
    }
    pub fn from_rational(&self, r: BigRational) -> Cyclo {
        let mut c = vec![BigRational::zero(); self.degree()];
        c[0] = r;
        Cyclo(c)
    }
    pub fn one(&self) -> Cyclo {
        self.from_rational(BigRational::one())
    }
    /// ζ_e^k.
    pub fn zeta(&self, k: u64) -> Cyclo {
        let k = (k % self.e) as usize;
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        self.reduce(c)
    }
    pub fn add(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        Cyclo(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }
    pub fn sub(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        Cyclo(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }
    pub fn neg(&self, a: &Cyclo) -> Cyclo {
        Cyclo(a.0.iter().map(|x| -x).collect())
    }
    pub fn scale(&self, a: &Cyclo, r: &BigRational) -> Cyclo {
        Cyclo(a.0.iter().map(|x| x * r).collect())
    }
    pub fn mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        if a.0.iter().all(|x| x.is_zero()) || b.0.iter().all(|x| x.is_zero()) {
            return self.zero();
        }
        let mut c = vec![BigRational::zero(); a.0.len() + b.0.len()];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        self.reduce(c)
    }
    /// a·ζ^k.
    pub fn mul_zeta(&self, a: &Cyclo, k: u64) -> Cyclo {
        let k = (k % self.e) as usize;
        let mut c = vec![BigRational::zero(); k];
        c.extend(a.0.iter().cloned());
        self.reduce(c)
    }
    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self, a: &Cyclo) -> Cyclo {
        let mut c = vec![BigRational::zero(); self.e as usize];
        for (i, x) in a.0.iter().enumerate() {
            c[(self.e as usize - i) % self.e as usize] += x;
        }
        self.reduce(c)
    }
    pub fn is_zero(&self, a: &Cyclo) -> bool {
        a.0.iter().all(|x| x.is_zero())
    }
    /// The rational value, if `a` lies in Q.
    pub fn to_rational(&self, a: &Cyclo) -> Option<BigRational> {
        a.0[1..].iter().all(|x| x.is_zero()).then(|| a.0[0].clone())
    }
    /// N_{Q(ζ)/Q}(a) as the product over all Galois conjugates ζ ↦ ζ^j, gcd(j, e) = 1.
    pub fn norm(&self, a: &Cyclo) -> BigRational {
        let mut acc = self.one();
        for j in (1..=self.e).filter(|&j| num_integer::gcd(j, self.e) == 1) {
            acc = self.mul(&acc, &self.galois(a, j));
        }
        self.to_rational(&acc).expect("norm is rational")
    }
    /// The automorphism ζ ↦ ζ^j.
    pub fn galois(&self, a: &Cyclo, j: u64) -> Cyclo {
        let mut c = vec![BigRational::zero(); self.e as usize];
        for (i, x) in a.0.iter().enumerate() {
            c[(i as u64 * j % self.e) as usize] += x;
        }
        self.reduce(c)
    }
    pub fn display(&self, a: &Cyclo) -> String {
        let terms: Vec<String> = a
            .0
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| match i {
                0 => x.to_string(),
                1 => format!("{x}·ζ"),
                _ => format!("{x}·ζ^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
    /// Whether `a` is a positive rational.
    pub fn is_positive_rational(&self, a: &Cyclo) -> bool {
        self.to_rational(a).is_some_and(|r| r.is_positive())
    }
}
