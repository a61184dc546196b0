//! The subfield tower of a cyclic extension of odd prime-power degree p^k.

use std::sync::Arc;

use super::{field_from_kernel, ray_class_group, AbelianFieldDatum, RamEntry, RamProfile};
use crate::error::{CarlitzError, Result};
use crate::fieldpoly::Poly;

/// K = L_0 ⊂ … ⊂ L_k = L together with the ramification bookkeeping driven by the t_j.
#[derive(Clone, Debug)]
pub struct CyclicTower {
    pub p: u64,
    pub k: u32,
    /// Generator of Γ, as an element index.
    pub sigma: usize,
    /// Sorted by (n_j, t_j descending, prime), so the first prime is totally ramified.
    pub profile: RamProfile,
    /// L_i = fixed field of ⟨σ^{p^i}⟩, i = 0..=k.
    pub levels: Vec<AbelianFieldDatum>,
    /// M_i = {j : t_j > p^{k−i}} as 1-based positions in `profile`, i = 0..=k.
    pub m_sets: Vec<Vec<usize>>,
    /// μ_0 = 0 and μ_i = n_{max M_i}.
    pub mu: Vec<u64>,
    /// Jumps in increasing order, always containing 0 and k.
    pub jumps: Vec<u32>,
    /// L̃ = L_i for i = max{i : |M_i| ≤ 1}.
    pub tilde_level: u32,
    /// L̃ read off the tower: the largest L_i with at most one ramified prime.
    pub tilde_level_galois: u32,
    /// L′ = L_i with p^i = n_s.
    pub l_prime_level: u32,
}

fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

impl CyclicTower {
    pub fn s(&self) -> usize {
        self.profile.s()
    }
    /// 1-based access to the sorted profile.
    pub fn entry(&self, j: usize) -> &RamEntry {
        &self.profile.entries[j - 1]
    }
    /// ⟨σ^e⟩ ≤ Γ.
    pub fn subgroup(&self, e: u64) -> Vec<usize> {
        let g = self.levels[self.k as usize].galois();
        g.span(&[g.mul(self.sigma, e as i64)])
    }
}

/// Builds the tower and the M_i, μ_i, jump data for a cyclic L of odd prime-power degree
/// with p ∤ q(q − 1).
pub fn subfield_lattice(l: &AbelianFieldDatum) -> Result<CyclicTower> {
    let g = l.galois();
    let q = l.field().q() as u64;
    let (p, k) = prime_power(l.degree() as u64)
        .filter(|_| g.is_cyclic())
        .ok_or_else(|| CarlitzError::Hypothesis("Γ is not cyclic of prime-power order".into()))?;
    if p == 2 || q.is_multiple_of(p) || (q - 1).is_multiple_of(p) {
        return Err(CarlitzError::Hypothesis(format!("p = {p} must be odd and prime to q(q−1)")));
    }
    let pk = p.pow(k);
    let sigma = g.gen(0);
    let mut profile = l.ram_profile()?;
    profile.entries.sort_by(|a, b| a.n.cmp(&b.n).then(b.t.cmp(&a.t)).then(a.prime.cmp(&b.prime)));
    if profile.entries.first().map(|e| e.t) != Some(pk) {
        return Err(CarlitzError::Hypothesis("no totally ramified prime".into()));
    }
    let levels: Vec<AbelianFieldDatum> = (0..=k)
        .map(|i| l.fixed_field(&g.span(&[g.mul(sigma, p.pow(i) as i64)])))
        .collect();
    let m_sets: Vec<Vec<usize>> = (0..=k)
        .map(|i| {
            (1..=profile.s()).filter(|&j| profile.entries[j - 1].t > p.pow(k - i)).collect()
        })
        .collect();
    let mu: Vec<u64> = m_sets
        .iter()
        .enumerate()
        .map(|(i, mi)| match (i, mi.last()) {
            (0, _) | (_, None) => 0,
            (_, Some(&j)) => profile.entries[j - 1].n,
        })
        .collect();
    let mut jumps = vec![0];
    jumps.extend((1..k).filter(|&i| mu[i as usize] < mu[i as usize + 1]));
    jumps.push(k);
    let tilde_level = (0..=k).filter(|&i| m_sets[i as usize].len() <= 1).max().unwrap();
    let tilde_level_galois = (0..=k)
        .filter(|&i| levels[i as usize].ramified_primes().len() <= 1)
        .max()
        .unwrap();
    let n_s = profile.entries.last().unwrap().n;
    let l_prime_level = prime_power(n_s).map_or(0, |(_, e)| e);
    Ok(CyclicTower {
        p,
        k,
        sigma,
        profile,
        levels,
        m_sets,
        mu,
        jumps,
        tilde_level,
        tilde_level_galois,
        l_prime_level,
    })
}

/// The cyclic field of degree ℓ^k inside H_{p_1⋯p_s} cut out by the character
/// c ↦ Σ_j a_j·h_j(c mod p_j) ∈ Z/ℓ^k, where h_j is a surjection A_{p_j} → Z/ℓ^k.
/// The prime p_j is totally ramified exactly when ℓ ∤ a_j.
pub fn cyclic_subfield(primes: &[Poly], ell: u64, k: u32, weights: &[u64]) -> Result<AbelianFieldDatum> {
    if primes.is_empty() || primes.len() != weights.len() {
        return Err(CarlitzError::Domain("one weight per prime is required".into()));
    }
    let field = primes[0].field();
    let modulus = primes.iter().fold(Poly::one(field), |a, p| &a * &p.monic());
    if !modulus.is_squarefree() || primes.iter().any(|p| !p.is_irreducible()) {
        return Err(CarlitzError::Domain("the primes must be distinct".into()));
    }
    let ek = ell.pow(k);
    let ray = Arc::new(ray_class_group(&modulus)?);
    let mut value = vec![0u64; ray.order()];
    for (p, &a) in primes.iter().zip(weights) {
        let rp = ray_class_group(&p.monic())?;
        let coord = rp.group().invariants().iter().position(|d| d % ek == 0).ok_or_else(|| {
            CarlitzError::Hypothesis(format!("{ek} does not divide |A_{p}| = {}", rp.order()))
        })?;
        let proj = ray.projection(&rp)?;
        for (c, &x) in proj.iter().enumerate() {
            value[c] = (value[c] + a % ek * (rp.group().elem(x)[coord] % ek)) % ek;
        }
    }
    let kernel: Vec<usize> = (0..ray.order()).filter(|&c| value[c] == 0).collect();
    let l = field_from_kernel(ray, &kernel);
    if l.degree() as u64 != ek {
        return Err(CarlitzError::Hypothesis(format!("the weights cut out degree {}", l.degree())));
    }
    Ok(l)
}

/// The fixed field in H_{p_1 p_2} of the class of (T mod p_1, T^{-1} mod p_2); for two
/// cubics over F_2 this is the anti-diagonal septic field with both primes totally ramified.
pub fn antidiagonal_subfield(p1: &Poly, p2: &Poly) -> Result<AbelianFieldDatum> {
    let (p1, p2) = (p1.monic(), p2.monic());
    let f = p1.field();
    let t = Poly::t(f);
    let n = &p1 * &p2;
    let t2_inv = match t.inv_mod(&p2) {
        Some(b) if p1 != p2 && t.coprime(&p1) => b,
        _ => return Err(CarlitzError::Domain(format!("{p1} and {p2} must be distinct primes other than T"))),
    };
    let e1 = &p2 * &p2.inv_mod(&p1).expect("distinct primes");
    let e2 = &p1 * &p1.inv_mod(&p2).expect("distinct primes");
    let x = (&(&t * &e1) + &(&t2_inv * &e2)).rem(&n);
    let ray = Arc::new(ray_class_group(&n)?);
    let c = ray.class_of(&x)?;
    Ok(field_from_kernel(ray, &[c]))
}
