//! The congruence η̂^{Q(1−σ)} ≡ η^{(1−σ)(Q−1)/m} between the top generators of L and L[q],
//! checked in the residue field of one prime above q in H_{m_I}.
//!
//! With 1 = u·m_I + v·q, the conjugate λ_{q m_I}^{σ_c} reduces to ρ_{cv}(λ_{m_I}) because the
//! q-torsion reduces to 0. The kernel of A_{q m_I} → Γ × Gal(K[q]/K) is S × ((A/q)^×)^m up to
//! F_q^×, so every class of S contributes (Q − 1)/m equal factors to η̂.

use num_bigint::BigUint;

use super::{CyclicSetting, QmCertificate};
use crate::carlitz::torsion_in_residue_field;
use crate::error::{CarlitzError, Result};
use crate::fieldpoly::{FiniteField, Poly};

/// Outcome of the congruence over every labeling of λ_{m_I} in the residue field.
#[derive(Clone, Debug)]
pub struct CongruenceReport {
    pub q_prime: Poly,
    pub m: u64,
    /// Residue degree of q in H_{m_I}; the torsion lives in F_{Q^f}.
    pub f: u64,
    /// One component per element of Γ.
    pub components: usize,
    pub labelings: usize,
    pub passing: usize,
    /// Every η^τ reduces into F_Q, as it must when q splits completely in L.
    pub eta_in_residue_field: bool,
    /// Π_τ η^τ ≡ 1, the reduction of N_{H_{m_I}/K}(α_{m_I}) = 1 when m_I is not a prime power.
    pub norm_is_one: bool,
}

impl CongruenceReport {
    pub fn pass(&self) -> bool {
        self.passing > 0 && self.eta_in_residue_field && self.norm_is_one
    }
}

fn order_mod(x: &Poly, m: &Poly, cap: u64) -> Result<u64> {
    let mut acc = x.rem(m);
    for e in 1..=cap {
        if acc.is_one() {
            return Ok(e);
        }
        acc = acc.mul_mod(x, m);
    }
    Err(CarlitzError::Unsplit(format!("{x} has no order modulo {m} below {cap}")))
}

/// Checks the congruence for the prime of `cert` on the top generators of L and L[q].
pub fn verify_congruence_prop21(s: &CyclicSetting, cert: &QmCertificate) -> Result<CongruenceReport> {
    let mi = s.m_i();
    if s.field.modulus() != &mi {
        return verify_congruence_prop21(&CyclicSetting::new(&s.field.restrict_to(&mi)?)?, cert);
    }
    let field = s.field.field();
    let qp = cert.prime.monic();
    let ray = s.field.ray();
    let g = s.galois();
    let f = order_mod(&qp, &mi, crate::fieldpoly::unit_group_order(&mi))?;
    let sp = torsion_in_residue_field(&mi, &qp, f)?;
    let k = &sp.field;
    let big_q = BigUint::from(field.q()).pow(qp.deg() as u32);
    let e_m = (&big_q - 1u32) / cert.m;
    let v = qp.inv_mod(&mi).ok_or_else(|| CarlitzError::Domain(format!("{qp} divides {mi}")))?;
    let w = field.q() as u64 - 1;
    let root = |a: &Poly| k.pow_u64(&sp.roots[a.rem(&mi).code() as usize].1, w);
    let kernel = s.field.kernel();
    let lift: Vec<&Poly> = (0..g.order())
        .map(|tau| ray.rep((0..ray.order()).find(|&c| s.field.to_g(c) == tau).unwrap()))
        .collect();
    let sigma = s.sigma();
    let mut passing = 0;
    let mut in_field = true;
    let mut norm_one = true;
    for b in 0..ray.order() {
        let b = ray.rep(b);
        // η^τ and η̂^τ with c_τ ≡ 1 mod q, so only the m_I-part of c_τ enters
        let top = |tau: usize, extra: &Poly| {
            kernel.iter().fold(k.one(), |acc, &c| {
                let a = &(&(ray.rep(c) * lift[tau]) * b) * extra;
                k.mul(&acc, &root(&a))
            })
        };
        let one = Poly::one(field);
        let eta: Vec<_> = (0..g.order()).map(|t| top(t, &one)).collect();
        let eta_hat: Vec<_> = (0..g.order()).map(|t| k.pow(&top(t, &v), &e_m)).collect();
        in_field &= eta.iter().all(|x| k.pow(x, &big_q) == *x);
        norm_one &= eta.iter().fold(k.one(), |a, x| k.mul(&a, x)) == k.one();
        let ok = (0..g.order()).all(|t| {
            let ts = g.add(t, sigma);
            let lhs = k.pow(&k.mul(&eta_hat[t], &k.inv(&eta_hat[ts]).unwrap()), &big_q);
            let rhs = k.pow(&k.mul(&eta[t], &k.inv(&eta[ts]).unwrap()), &e_m);
            lhs == rhs
        });
        passing += usize::from(ok);
    }
    Ok(CongruenceReport {
        q_prime: qp,
        m: cert.m,
        f,
        components: g.order(),
        labelings: ray.order(),
        passing,
        eta_in_residue_field: in_field,
        norm_is_one: norm_one,
    })
}
