//! Cyclic extensions of odd prime-power degree: ramification combinatorics, the y-element
//! and the root of the top generator at the logarithmic level, the auxiliary primes, and
//! the residue-field congruence for the top generators.

mod congruence;
mod primes;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::classfield::{subfield_lattice, AbelianFieldDatum, CyclicTower};
use crate::error::{CarlitzError, Result};
use crate::fieldpoly::Poly;
use crate::group::AbGroup;
use crate::groupring::{rat, OrdVector, QElt, ZElt};
use crate::units::elliptic_log;

pub use congruence::{verify_congruence_prop21, CongruenceReport};
pub use primes::{
    auxiliary_l_search, choose_modulus_m, qm_degrees, qm_search, verify_aux, verify_qm, AuxCertificate,
    ModulusChoice, QmCertificate, SearchCaps,
};

/// The ramification data (t_j, n_j) of a cyclic extension of degree p^k, sorted by n
/// ascending and then t descending, so entry 1 is totally ramified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ramification {
    pub p: u64,
    pub k: u32,
    pub t: Vec<u64>,
    pub n: Vec<u64>,
}

fn is_power_of(x: u64, p: u64) -> bool {
    let mut x = x;
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

impl Ramification {
    /// Validates t_j ∈ {p, …, p^k}, n_j·t_j | p^k and the existence of a totally
    /// ramified prime.
    pub fn new(p: u64, k: u32, pairs: &[(u64, u64)]) -> Result<Ramification> {
        let pk = p.pow(k);
        let ok = |&(t, n): &(u64, u64)| {
            t > 1 && is_power_of(t, p) && is_power_of(n, p) && pk.is_multiple_of(t * n)
        };
        if k == 0 || pairs.is_empty() || !pairs.iter().all(ok) {
            return Err(CarlitzError::Hypothesis(format!("inadmissible profile {pairs:?}")));
        }
        if !pairs.iter().any(|&(t, _)| t == pk) {
            return Err(CarlitzError::Hypothesis("no totally ramified prime".into()));
        }
        let mut v = pairs.to_vec();
        v.sort_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)));
        Ok(Ramification { p, k, t: v.iter().map(|x| x.0).collect(), n: v.iter().map(|x| x.1).collect() })
    }
    pub fn from_tower(tower: &CyclicTower) -> Result<Ramification> {
        let pairs: Vec<(u64, u64)> = tower.profile.entries.iter().map(|e| (e.t, e.n)).collect();
        Ramification::new(tower.p, tower.k, &pairs)
    }
    pub fn s(&self) -> usize {
        self.t.len()
    }
    /// M_i = {j : t_j > p^{k−i}}, 1-based.
    pub fn m_set(&self, i: u32) -> Vec<usize> {
        let bound = self.p.pow(self.k - i);
        (1..=self.s()).filter(|&j| self.t[j - 1] > bound).collect()
    }
    /// μ_0 = 0, μ_i = n_{max M_i}.
    pub fn mu(&self, i: u32) -> u64 {
        match (i, self.m_set(i).last()) {
            (0, _) | (_, None) => 0,
            (_, Some(&j)) => self.n[j - 1],
        }
    }
    /// 0, k and every i in 1..k with μ_i < μ_{i+1}.
    pub fn jumps(&self) -> Vec<u32> {
        let mut j = vec![0];
        j.extend((1..self.k).filter(|&i| self.mu(i) < self.mu(i + 1)));
        j.push(self.k);
        j
    }
    /// ν = Σ_{i=1}^k Σ_{j ∈ M_i, 1 < j < max M_i} n_j.
    pub fn nu(&self) -> u64 {
        (1..=self.k)
            .map(|i| {
                let m = self.m_set(i);
                let top = *m.last().unwrap();
                m.iter().filter(|&&j| j > 1 && j < top).map(|&j| self.n[j - 1]).sum::<u64>()
            })
            .sum()
    }
    /// φ_L = Π_j t_j^{n_j} · Π_{i=1}^k p^{−μ_i}.
    pub fn phi(&self) -> BigRational {
        let num: BigInt = self.t.iter().zip(&self.n).map(|(&t, &n)| BigInt::from(t).pow(n as u32)).product();
        let e: u64 = (1..=self.k).map(|i| self.mu(i)).sum();
        BigRational::new(num, BigInt::from(self.p).pow(e as u32))
    }
    /// [L : L̃] = p^{k−i} for the largest i with |M_i| ≤ 1.
    pub fn l_over_tilde(&self) -> u64 {
        let i = (0..=self.k).filter(|&i| self.m_set(i).len() <= 1).max().unwrap();
        self.p.pow(self.k - i)
    }
    /// Σ_t (p^{s_t} − p^{s_{t−1}}) over consecutive jumps, the size of the Z-basis of the
    /// extended elliptic units modulo μ(K).
    pub fn zbasis_count(&self) -> u64 {
        self.jumps().windows(2).map(|w| self.p.pow(w[1]) - self.p.pow(w[0])).sum()
    }
    /// The highest jump below k.
    pub fn r_from_jumps(&self) -> u32 {
        *self.jumps().iter().rev().find(|&&j| j < self.k).unwrap()
    }
    /// r with p^{k−r} = max{t_j : n_j = n_s}.
    pub fn r_closed_form(&self) -> u32 {
        let ns = *self.n.last().unwrap();
        let tmax = (0..self.s()).filter(|&j| self.n[j] == ns).map(|j| self.t[j]).max().unwrap();
        let mut e = 0;
        while self.p.pow(e) < tmax {
            e += 1;
        }
        self.k - e
    }
}

/// ν, φ_L and [L:L̃] with the verdict on p^ν·[L:L̃] = φ_L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuPhi {
    pub nu: u64,
    pub phi: BigRational,
    pub l_over_tilde: u64,
    pub identity_holds: bool,
    /// [O_L^× : C̄_L] = w_∞^{p^k−1}·h_L·φ_L^{-1}, as its coefficient of h_L.
    pub extended_index_coefficient: Option<BigRational>,
}

pub fn nu_phi(r: &Ramification, w: Option<u64>) -> NuPhi {
    let nu = r.nu();
    let phi = r.phi();
    let lt = r.l_over_tilde();
    let lhs = BigRational::from_integer(BigInt::from(r.p).pow(nu as u32) * BigInt::from(lt));
    let pk = r.p.pow(r.k);
    NuPhi {
        nu,
        identity_holds: lhs == phi,
        extended_index_coefficient: w.map(|w| {
            BigRational::from_integer(BigInt::from(w).pow((pk - 1) as u32)) / &phi
        }),
        phi,
        l_over_tilde: lt,
    }
}

/// Every admissible profile with 1 ≤ k ≤ k_max and 1 ≤ s ≤ s_max, as sorted multisets.
pub fn enumerate_profiles(p: u64, k_max: u32, s_max: usize) -> Vec<Ramification> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        let pk = p.pow(k);
        let pairs: Vec<(u64, u64)> = (1..=k)
            .flat_map(|a| (0..=k - a).map(move |b| (p.pow(a), p.pow(b))))
            .filter(|&(t, n)| pk % (t * n) == 0)
            .collect();
        for s in 1..=s_max {
            // nondecreasing index sequences give each multiset once
            let mut idx = vec![0usize; s];
            loop {
                let chosen: Vec<(u64, u64)> = idx.iter().map(|&i| pairs[i]).collect();
                if let Ok(r) = Ramification::new(p, k, &chosen) {
                    out.push(r);
                }
                let mut pos = s;
                while pos > 0 && idx[pos - 1] == pairs.len() - 1 {
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
                idx[pos - 1] += 1;
                let v = idx[pos - 1];
                for x in idx[pos..].iter_mut() {
                    *x = v;
                }
            }
        }
    }
    out
}

/// Which factors enter y.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentRange {
    /// Π_{i=2}^{s−1}(1 − σ^{n_i}), the root α of the top generator.
    ThroughSMinusOne,
    /// Π_{i=2}^{s}(1 − σ^{n_i}), the further root γ with α = γ^{1−σ^{n_s}}.
    ThroughS,
}

/// A cyclic L of degree p^k with p odd and p ∤ q(q − 1), its tower and sorted profile.
#[derive(Clone, Debug)]
pub struct CyclicSetting {
    pub field: AbelianFieldDatum,
    pub tower: CyclicTower,
    pub ram: Ramification,
    /// c_j, 1-based like the profile.
    pub c: Vec<u64>,
}

impl CyclicSetting {
    pub fn new(l: &AbelianFieldDatum) -> Result<CyclicSetting> {
        let tower = subfield_lattice(l)?;
        let ram = Ramification::from_tower(&tower)?;
        let mut setting = CyclicSetting { field: l.clone(), tower, ram, c: Vec::new() };
        setting.c = (1..=setting.ram.s()).map(|j| setting.c_j(j)).collect::<Result<_>>()?;
        Ok(setting)
    }
    pub fn galois(&self) -> &AbGroup {
        self.field.galois()
    }
    pub fn sigma(&self) -> usize {
        self.tower.sigma
    }
    pub fn degree(&self) -> u64 {
        self.field.degree() as u64
    }
    /// σ^e.
    pub fn sigma_pow(&self, e: i64) -> usize {
        self.galois().mul(self.sigma(), e)
    }
    /// The smallest c ≥ 1 with σ^{−c n_j} = σ_j on L^{T_j}; p ∤ c is checked.
    fn c_j(&self, j: usize) -> Result<u64> {
        let g = self.galois();
        let (t, n) = (self.ram.t[j - 1], self.ram.n[j - 1]);
        let prime = &self.tower.entry(j).prime;
        let frob = self.field.local_data(prime)?.frobenius;
        let below = self.tower.subgroup(self.degree() / t);
        let c = (1..=self.degree())
            .find(|&c| below.contains(&g.sub(self.sigma_pow(-((c * n) as i64)), frob)))
            .ok_or_else(|| CarlitzError::Hypothesis(format!("no c_{j}")))?;
        if c % self.ram.p == 0 {
            return Err(CarlitzError::Hypothesis(format!("p divides c_{j} = {c}")));
        }
        Ok(c)
    }
    /// The product of ramified primes m_I, where the top generator lives.
    pub fn m_i(&self) -> Poly {
        let f = self.field.field();
        self.tower.profile.entries.iter().fold(Poly::one(f), |a, e| &a * &e.prime)
    }
    /// [L′ : K] = n_s.
    pub fn l_prime_degree(&self) -> u64 {
        *self.ram.n.last().unwrap()
    }
}

fn one_minus(g: &AbGroup, x: usize) -> ZElt {
    ZElt::one(g).sub(&ZElt::basis(g, x))
}

/// y = Π(1 − σ^{n_i}) over the chosen range, or with the c_i n_i exponents when `decorated`.
pub fn y_element(s: &CyclicSetting, range: ExponentRange, decorated: bool) -> ZElt {
    let g = s.galois();
    let top = match range {
        ExponentRange::ThroughSMinusOne => s.ram.s().saturating_sub(1),
        ExponentRange::ThroughS => s.ram.s(),
    };
    (2..=top).fold(ZElt::one(g), |acc, i| {
        let e = s.ram.n[i - 1] * if decorated { s.c[i - 1] } else { 1 };
        acc.mul(&one_minus(g, s.sigma_pow(e as i64)))
    })
}

/// 1 − σ^{c n} and 1 − σ^{n} divide each other in Z[Γ] when p ∤ c; returns the two
/// cofactors after checking both products.
pub fn associate_witnesses(s: &CyclicSetting, n: u64, c: u64) -> Option<(ZElt, ZElt)> {
    let g = s.galois();
    let order = s.degree() / n;
    let c_inv = (1..=order).find(|&x| (x * c) % order == 1 % order)?;
    let geo = |base: u64, len: u64| {
        (0..len).fold(ZElt::zero(g), |acc, i| acc.add(&ZElt::basis(g, s.sigma_pow((i * base) as i64))))
    };
    let a = one_minus(g, s.sigma_pow(n as i64));
    let b = one_minus(g, s.sigma_pow((c * n) as i64));
    let u = geo(n, c);
    let v = geo(c * n, c_inv);
    (a.mul(&u) == b && b.mul(&v) == a).then_some((u, v))
}

/// The solve of y·x = l(η) subject to s(Gal(L/L′))·x = 0 in Q[Γ].
#[derive(Clone, Debug)]
pub struct RootReport {
    pub range: ExponentRange,
    pub y: ZElt,
    /// l(η) as an ord-vector on Γ.
    pub eta: OrdVector,
    /// l(α) as a group-ring element, when the system is consistent.
    pub root: Option<QElt>,
    /// Rank of the stacked system; uniqueness means rank = p^k.
    pub rank: usize,
    pub unique: bool,
    /// Entries of the root lie in (1/(q−1))Z.
    pub in_lattice: bool,
    pub integral: bool,
}

/// Exact rational row reduction of [a | b]; returns (a solution if consistent, rank).
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> (Option<Vec<BigRational>>, usize) {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> =
        a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][c].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pr = m[row].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    let rank = pivots.len();
    if m[rank..].iter().any(|r| !r[cols].is_zero()) {
        return (None, rank);
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    (Some(x), rank)
}

/// Solves y·x = l(η) for the top generator η = φ_{L, m_I} under the L′-norm constraint.
pub fn root_divisibility(s: &CyclicSetting, range: ExponentRange) -> Result<RootReport> {
    let g = s.galois();
    let n = g.order();
    let eta = elliptic_log(&s.field, &s.m_i())?;
    let target = eta.to_group_ring();
    let y = QElt::from_int(&y_element(s, range, false));
    let norm = QElt::norm_element(g, &s.tower.subgroup(s.l_prime_degree()));
    let mut rows = vec![vec![BigRational::zero(); n]; 2 * n];
    for t in 0..n {
        let (ya, na) = (y.translate(t), norm.translate(t));
        for r in 0..n {
            rows[r][t] = ya.coeff(r).clone();
            rows[n + r][t] = na.coeff(r).clone();
        }
    }
    let rhs: Vec<BigRational> =
        target.coeffs().iter().cloned().chain(std::iter::repeat_n(BigRational::zero(), n)).collect();
    let (sol, rank) = solve_rational(&rows, &rhs);
    let w = rat(s.field.field().q() as i64 - 1);
    let root = sol.map(|x| QElt::from_coeffs(g, x));
    let in_lattice = root.as_ref().is_some_and(|x| x.coeffs().iter().all(|c| (c * &w).is_integer()));
    let integral = root.as_ref().is_some_and(|x| x.coeffs().iter().all(BigRational::is_integer));
    Ok(RootReport {
        range,
        y: y_element(s, range, false),
        eta,
        root,
        rank,
        unique: rank == n,
        in_lattice,
        integral,
    })
}

/// r computed as the highest jump below k and from p^{k−r} = max{t_j : n_j = n_s}.
pub fn jump_r(r: &Ramification) -> (u32, u32) {
    (r.r_from_jumps(), r.r_closed_form())
}

/// The m-th power residue test x^{(Q−1)/m} = 1 in F_q[T]/(ℓ) for a prime ℓ.
pub(crate) fn is_mth_power(x: &Poly, ell: &Poly, m: u64) -> bool {
    let big_q = num_bigint::BigUint::from(ell.field().q()).pow(ell.deg() as u32);
    let e = (big_q - 1u32) / m;
    x.pow_mod_big(&e, ell).is_one()
}
