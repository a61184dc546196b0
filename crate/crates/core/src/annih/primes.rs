//! The p-power modulus m, the primes of Q_m and the auxiliary primes l.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{is_mth_power, CyclicSetting};
use crate::error::{CarlitzError, Result};
use crate::fieldpoly::{FiniteField, Poly, ResidueField};
use crate::report::{Check, Report};

/// q^d − 1 = b·m with d the order of q modulo m and p ∤ b, and f the order of q modulo m².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusChoice {
    pub m: u64,
    pub d: u64,
    pub f: u64,
    pub b: BigUint,
    /// The normalizing factor p^i applied to p^{ks}.
    pub normalized_by: u64,
    pub m_divides_f_over_d: bool,
}

fn mult_order(q: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let (q, n128) = (q as u128 % n as u128, n as u128);
    let mut x = q;
    let mut e = 1;
    while x != 1 {
        x = x * q % n128;
        e += 1;
    }
    e
}

fn pow_mod(b: u64, mut e: u64, n: u64) -> u64 {
    let n = n as u128;
    let (mut r, mut b) = (1u128 % n, b as u128 % n);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    r as u64
}

/// Starts from p^{ks}, absorbs the p-part of (q^d − 1)/p^{ks} into m, then checks m | f/d.
pub fn choose_modulus_m(q: u64, p: u64, k: u32, s: usize) -> Result<ModulusChoice> {
    if q.is_multiple_of(p) || p < 3 {
        return Err(CarlitzError::Hypothesis(format!("p = {p} must be odd and prime to q")));
    }
    let m0 = p
        .checked_pow(k * s as u32)
        .filter(|&m0| m0.checked_mul(m0).is_some())
        .ok_or_else(|| CarlitzError::PrecisionCap { cap: 64, what: "bits for m^2".into() })?;
    let d = mult_order(q, m0);
    let mut b = (BigUint::from(q).pow(d as u32) - 1u32) / m0;
    let mut pi = 1u64;
    while (&b % p).is_zero() {
        b /= p;
        pi *= p;
    }
    let m = m0 * pi;
    let m2 = m.checked_mul(m).ok_or_else(|| CarlitzError::PrecisionCap { cap: 64, what: "bits for m^2".into() })?;
    let f = mult_order(q, m2);
    Ok(ModulusChoice { m, d, f, b, normalized_by: pi, m_divides_f_over_d: f.is_multiple_of(d) && (f / d).is_multiple_of(m) })
}

/// Degrees up to `cap` with q^deg ≡ 1 + m (mod m²).
pub fn qm_degrees(q: u64, m: u64, cap: usize) -> Vec<usize> {
    let m2 = m * m;
    (1..=cap).filter(|&d| pow_mod(q, d as u64, m2) == (1 + m) % m2).collect()
}

/// Limits on the prime searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchCaps {
    pub degree_cap: usize,
    /// Stop after this many primes.
    pub count: usize,
    /// Monic polynomials tried per degree.
    pub scan_limit: u64,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps { degree_cap: 30, count: 1, scan_limit: 1 << 22 }
    }
}

/// A prime of Q_m with the outcome of each defining condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QmCertificate {
    pub prime: Poly,
    pub m: u64,
    pub norm_congruence: bool,
    pub splits_completely: bool,
    /// x_j is an m-th power modulo the prime, in profile order.
    pub power_residues: Vec<bool>,
}

impl QmCertificate {
    pub fn holds(&self) -> bool {
        self.norm_congruence && self.splits_completely && self.power_residues.iter().all(|&b| b)
    }
}

fn ramified_generators(s: &CyclicSetting) -> Vec<Poly> {
    s.tower.profile.entries.iter().map(|e| e.prime.clone()).collect()
}

/// Monic primes of degree d in code order passing `keep`; cheap filters go inside `keep`
/// so irreducibility is tested last.
fn scan<F: FnMut(&Poly) -> bool>(s: &CyclicSetting, d: usize, limit: u64, want: usize, mut keep: F) -> Vec<Poly> {
    let field = s.field.field();
    let total = (field.q() as u64).checked_pow(d as u32).unwrap_or(u64::MAX).min(limit);
    let mut out = Vec::new();
    for code in 0..total {
        let c = Poly::monic_from_code(field, d, code);
        if keep(&c) && c.is_irreducible() {
            out.push(c);
            if out.len() == want {
                break;
            }
        }
    }
    out
}

/// Searches Q_m in (degree, code) order; degrees are pre-filtered by the norm congruence.
pub fn qm_search(s: &CyclicSetting, m: u64, caps: SearchCaps) -> Vec<QmCertificate> {
    let q = s.field.field().q() as u64;
    let mi = s.m_i();
    let gens = ramified_generators(s);
    let mut out = Vec::new();
    for d in qm_degrees(q, m, caps.degree_cap) {
        let want = caps.count - out.len();
        let found = scan(s, d, caps.scan_limit, want, |c| {
            c.coprime(&mi) && s.field.artin(c).is_ok_and(|a| a == 0) && gens.iter().all(|x| is_mth_power(x, c, m))
        });
        out.extend(found.into_iter().map(|prime| QmCertificate {
            power_residues: vec![true; gens.len()],
            prime,
            m,
            norm_congruence: true,
            splits_completely: true,
        }));
        if out.len() >= caps.count {
            break;
        }
    }
    out
}

/// Recomputes a certificate through separate arithmetic: the norm from a big integer, primality
/// from the factorization, splitting from kernel membership and residues in the residue field.
pub fn verify_qm(s: &CyclicSetting, cert: &QmCertificate) -> Result<Report> {
    let q = s.field.field().q();
    let c = &cert.prime;
    let m = BigUint::from(cert.m);
    let norm = BigUint::from(q).pow(c.deg() as u32);
    let mut r = Report::default();
    let inputs = format!("prime={} m={}", c.encode(), cert.m);
    r.push(Check::equal(
        "qm.norm_congruence",
        &inputs,
        (BigUint::one() + &m).to_string(),
        (&norm % (&m * &m)).to_string(),
    ));
    let fac = c.factor();
    r.push(Check::new("qm.prime", &inputs, "irreducible", format!("{fac:?}"), fac.len() == 1 && fac[0].1 == 1));
    let unram = c.coprime(s.field.modulus());
    r.push(Check::new("qm.unramified", &inputs, "coprime to the conductor", unram.to_string(), unram));
    if !unram {
        return Ok(r);
    }
    let class = s.field.ray().class_of(&c.rem(s.field.modulus()))?;
    let split = s.field.kernel().binary_search(&class).is_ok();
    r.push(Check::new("qm.splits_completely", &inputs, "class in Gal(H/L)", class.to_string(), split));
    let k = ResidueField::new(c)?;
    let e = (norm - 1u32) / &m;
    for x in ramified_generators(s) {
        let v = k.pow(&k.embed(&x), &e);
        r.push(Check::new(
            "qm.power_residue",
            format!("{inputs} x={}", x.encode()),
            "1",
            format!("{v:?}"),
            v == k.one(),
        ));
    }
    Ok(r)
}

/// An auxiliary prime l for a prime of Q_m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxCertificate {
    pub prime: Poly,
    pub q_prime: Poly,
    pub m: u64,
    /// |O_K/l| ≡ 1 mod m.
    pub norm_congruence: bool,
    /// (l, L/K) = σ^{-1} and l is an m-th power modulo q, so its Frobenius on K[q] is trivial.
    pub frobenius: bool,
    /// The class of q has order m in (O_K/l)^×/m.
    pub q_inert: bool,
}

/// Searches l with q^{deg l} ≡ 1 mod m, Frobenius σ^{-1} on L[q] and q inert in K[l].
pub fn auxiliary_l_search(s: &CyclicSetting, cert: &QmCertificate, caps: SearchCaps) -> Option<AuxCertificate> {
    let field = s.field.field();
    let q = field.q() as u64;
    let m = cert.m;
    let step = mult_order(q, m) as usize;
    let bad = &s.m_i() * &cert.prime;
    let target = s.sigma_pow(-1);
    let p = s.ram.p;
    let big_q = BigUint::from(q).pow(cert.prime.deg() as u32);
    let e_q = (&big_q - 1u32) / m;
    for d in (step..=caps.degree_cap).step_by(step) {
        let e_l = (BigUint::from(q).pow(d as u32) - 1u32) / p;
        let found = scan(s, d, caps.scan_limit, 1, |c| {
            c.coprime(&bad)
                && s.field.artin(c).is_ok_and(|a| a == target)
                && c.pow_mod_big(&e_q, &cert.prime).is_one()
                && !cert.prime.pow_mod_big(&e_l, c).is_one()
        });
        if let Some(l) = found.into_iter().next() {
            return Some(AuxCertificate {
                prime: l,
                q_prime: cert.prime.clone(),
                m,
                norm_congruence: true,
                frobenius: true,
                q_inert: true,
            });
        }
    }
    None
}

/// Re-checks the three conditions with the local data Frobenius, residue-field powers and
/// the multiplicative order of q^{(|l|−1)/m} found by repeated multiplication.
pub fn verify_aux(s: &CyclicSetting, aux: &AuxCertificate) -> Result<Report> {
    let q = s.field.field().q();
    let l = &aux.prime;
    let m = BigUint::from(aux.m);
    let inputs = format!("l={} q={} m={}", l.encode(), aux.q_prime.encode(), aux.m);
    let norm_l = BigUint::from(q).pow(l.deg() as u32);
    let mut r = Report::default();
    r.push(Check::equal("aux.norm_congruence", &inputs, "1".into(), (&norm_l % &m).to_string()));
    let fac = l.factor();
    r.push(Check::new("aux.prime", &inputs, "irreducible", format!("{fac:?}"), fac.len() == 1 && fac[0].1 == 1));
    let unram = l.coprime(&s.m_i()) && l.coprime(&aux.q_prime);
    r.push(Check::new("aux.unramified", &inputs, "coprime to m_I·q", unram.to_string(), unram));
    let frob = s.field.local_data(l)?.frobenius;
    let want = s.sigma_pow(-1);
    r.push(Check::equal("aux.frobenius_on_L", &inputs, want.to_string(), frob.to_string()));
    let kq = ResidueField::new(&aux.q_prime)?;
    let big_q = BigUint::from(q).pow(aux.q_prime.deg() as u32);
    let v = kq.pow(&kq.embed(l), &((big_q - 1u32) / &m));
    r.push(Check::new("aux.frobenius_on_Kq", &inputs, "1", format!("{v:?}"), v == kq.one()));
    let kl = ResidueField::new(l)?;
    let z = kl.pow(&kl.embed(&aux.q_prime), &((norm_l - 1u32) / &m));
    let mut order = 1u64;
    let mut acc = z.clone();
    while acc != kl.one() && order <= aux.m {
        acc = kl.mul(&acc, &z);
        order += 1;
    }
    r.push(Check::equal("aux.q_inert", &inputs, aux.m.to_string(), order.to_string()));
    Ok(r)
}

