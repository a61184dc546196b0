//! Sinnott's module U′ ⊆ Q[G], its augmentation-free part U′_0, the index [Z[G]:U′], and the
//! assembly of the unit index [O_L^× : C_L].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::classfield::{subfield_lattice, AbelianFieldDatum};
use crate::error::{CarlitzError, Result};
use crate::fieldpoly::Poly;
use crate::group::AbGroup;
use crate::groupring::{rat, QElt};
use crate::lattice::{lattice_index, LatticeBasis};
use crate::lfun::LFunctions;
use crate::report::{Check, Report};

/// The largest |G| for which the full lattices are built.
pub const GROUP_CAP: usize = 512;

fn check_cap(l: &AbelianFieldDatum) -> Result<()> {
    if l.degree() > GROUP_CAP {
        return Err(CarlitzError::GroupCap { order: l.degree(), cap: GROUP_CAP });
    }
    Ok(())
}

/// Gal(L/L_n) for any n, using L ∩ H_n = L ∩ H_{gcd(n, m)}.
fn gal_over(l: &AbelianFieldDatum, n: &Poly) -> Vec<usize> {
    l.gal_over_ln(&n.gcd(l.modulus()))
}

/// τ_p = σ_p^{-1} e_{T_p}; independent of the lift σ_p since e_{T_p} absorbs T_p.
pub fn tau(l: &AbelianFieldDatum, p: &Poly) -> Result<QElt> {
    let g = l.galois();
    let ld = l.local_data(p)?;
    Ok(QElt::idempotent(g, &ld.inertia).translate(g.neg(ld.frobenius)))
}

/// ρ′_n = s(Gal(L/L_n)) Π_{p | n}(1 − τ_p).
pub fn rho_prime(l: &AbelianFieldDatum, n: &Poly) -> Result<QElt> {
    let g = l.galois();
    let mut x = QElt::norm_element(g, &gal_over(l, n));
    for (p, _) in n.monic().factor() {
        x = x.sub(&x.mul(&tau(l, &p)?));
    }
    Ok(x)
}

/// One element from each coset of `h` in `g`.
pub fn coset_reps(g: &AbGroup, h: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for s in 0..g.order() {
        if !seen[s] {
            reps.push(s);
            for &t in h {
                seen[g.add(s, t)] = true;
            }
        }
    }
    reps
}

/// The Z-generators x·σ of the Z[G]-module generated by ρ′_n, σ running over G/Gal(L/L_n)
/// (ρ′_n is Gal(L/L_n)-invariant).
fn orbit(l: &AbelianFieldDatum, n: &Poly, x: &QElt) -> Vec<Vec<BigRational>> {
    coset_reps(l.galois(), &gal_over(l, n))
        .into_iter()
        .map(|s| x.translate(s).coeffs().to_vec())
        .collect()
}

/// U′ and U′_0 together with the data they were built from.
#[derive(Clone, Debug)]
pub struct SinnottModule {
    pub u: LatticeBasis,
    pub u0: LatticeBasis,
    /// (n, ρ′_n) for n | f, f the conductor, in divisor order.
    pub rho: Vec<(Poly, QElt)>,
}

/// U′ = ⟨ρ′_n : n | f⟩ and U′_0 = ker(s(G)) ∩ U′, generated by the ρ′_n·σ with n ≠ 1
/// and ρ′_(1)(1 − σ).
pub fn sinnott_module(l: &AbelianFieldDatum) -> Result<SinnottModule> {
    check_cap(l)?;
    let g = l.galois();
    let dim = g.order();
    let f = l.conductor();
    let rho: Vec<(Poly, QElt)> =
        f.divisors().into_iter().map(|n| rho_prime(l, &n).map(|x| (n, x))).collect::<Result<_>>()?;
    let mut gens = Vec::new();
    let mut gens0 = Vec::new();
    for (n, x) in &rho {
        let o = orbit(l, n, x);
        if n.is_one() {
            // ρ′_(1) = s(G), so ρ′_(1)(1 − σ) = 0 and nothing enters U′_0
            for s in coset_reps(g, &gal_over(l, n)) {
                gens0.push(x.sub(&x.translate(s)).coeffs().to_vec());
            }
        } else {
            gens0.extend(o.iter().cloned());
        }
        gens.extend(o);
    }
    Ok(SinnottModule {
        u: LatticeBasis::from_rational(dim, &gens),
        u0: LatticeBasis::from_rational(dim, &gens0),
        rho,
    })
}

/// R_0 = ker(s(G)) ⊆ Z[G], spanned by 1 − σ.
pub fn augmentation_kernel(g: &AbGroup) -> LatticeBasis {
    let one = QElt::one(g);
    let gens: Vec<Vec<BigRational>> =
        (1..g.order()).map(|s| one.sub(&QElt::basis(g, s)).coeffs().to_vec()).collect();
    LatticeBasis::from_rational(g.order(), &gens)
}

/// [Z[G] : U′] and [R_0 : U′_0].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SinnottIndices {
    pub r_index: BigRational,
    pub r0_index: BigRational,
}

pub fn sinnott_indices(l: &AbelianFieldDatum, m: &SinnottModule) -> Result<SinnottIndices> {
    let g = l.galois();
    Ok(SinnottIndices {
        r_index: lattice_index(&LatticeBasis::standard(g.order()), &m.u)?,
        r0_index: lattice_index(&augmentation_kernel(g), &m.u0)?,
    })
}

fn primes_of(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut n = n.clone();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Whether a positive rational is an integer all of whose prime factors divide `n`.
pub fn supported_on_divisors(x: &BigRational, n: usize) -> bool {
    x.is_integer() && primes_of(&x.to_integer()).iter().all(|p| (BigInt::from(n) % p).is_zero())
}

/// d(L) with the condition that certified it. Every mechanically checkable condition is
/// evaluated; the value is known as soon as one holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlValue {
    pub value: Option<u64>,
    pub conditions: Vec<(&'static str, bool)>,
}

/// d(L) via the sufficient conditions for d(L) = 1: L ⊆ H, H ⊆ L, ([H:L_(1)], [L:K]) = 1,
/// Γ cyclic, Γ the direct product of its inertia groups, at most two ramified primes.
/// With H = K the second one always holds.
pub fn dl_value(l: &AbelianFieldDatum) -> Result<DlValue> {
    let g = l.galois();
    let n = l.degree();
    let ramified = l.ramified_primes();
    let inertia: Vec<Vec<usize>> =
        ramified.iter().map(|p| Ok(l.local_data(p)?.inertia)).collect::<Result<_>>()?;
    let gens: Vec<usize> = inertia.iter().flatten().copied().collect();
    let direct = inertia.iter().map(Vec::len).product::<usize>() == n && g.span(&gens).len() == n;
    let conditions = vec![
        ("L ⊆ H", n == 1),
        ("H ⊆ L", true),
        ("([H:L_(1)], [L:K]) = 1", true),
        ("Γ cyclic", g.is_cyclic()),
        ("Γ is the direct product of its inertia groups", direct),
        ("at most two ramified primes", ramified.len() <= 2),
    ];
    let value = conditions.iter().any(|c| c.1).then_some(1);
    Ok(DlValue { value, conditions })
}

/// The factors of [O_L^× : C_L] = coefficient · h_L with h = 1, w_∞ = w_K = w_L = q − 1
/// and L_(1) = K. The class number h_L only enters through h_L·R_L = Π L(χ̄, 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexFormula {
    pub degree: usize,
    /// w_∞^{[L:K]−1}
    pub w_power: BigInt,
    /// Π_{p | f} [L ∩ H_{p^∞} : K]
    pub local_product: BigInt,
    /// [Z[G] : U′]
    pub ru_index: BigRational,
    pub d_l: DlValue,
    /// [O_L^× : C_L] / h_L, when d(L) is known.
    pub h_coefficient: Option<BigRational>,
    /// Π_{χ≠1} L(χ̄, 0) = h_L·R_L
    pub hr_product: BigRational,
}

/// [L ∩ H_{p^∞} : K] = [L_{p^k} : K] for p^k ∥ m.
pub fn local_degree(l: &AbelianFieldDatum, p: &Poly) -> usize {
    let mut pk = Poly::one(l.field());
    while (&pk * p).divides(l.modulus()) {
        pk = &pk * p;
    }
    l.degree() / l.gal_over_ln(&pk).len()
}

pub fn index_formula_rhs(l: &AbelianFieldDatum) -> Result<IndexFormula> {
    let n = l.degree();
    let w = BigInt::from(l.field().q() - 1);
    let w_power = num_traits::pow(w, n - 1);
    let local_product: BigInt = l.ramified_primes().iter().map(|p| BigInt::from(local_degree(l, p))).product();
    let module = sinnott_module(l)?;
    let ru_index = lattice_index(&LatticeBasis::standard(n), &module.u)?;
    let d_l = dl_value(l)?;
    let h_coefficient = d_l.value.map(|d| {
        BigRational::from_integer(w_power.clone())
            * BigRational::new(local_product.clone(), BigInt::from(n))
            * &ru_index
            / rat(d as i64)
    });
    let hr_product = LFunctions::new(l, None)?.hr_product()?;
    Ok(IndexFormula { degree: n, w_power, local_product, ru_index, d_l, h_coefficient, hr_product })
}

/// w_∞^{[L:K]−1}/[L:L̃] for cyclic L of odd prime-power degree p^k with p ∤ q(q − 1),
/// L̃ the largest subfield ramified at no more than one prime.
pub fn cyclic_index_coefficient(l: &AbelianFieldDatum) -> Result<BigRational> {
    let tower = subfield_lattice(l)?;
    let w = BigInt::from(l.field().q() - 1);
    let l_over_tilde = BigInt::from(tower.p).pow(tower.k - tower.tilde_level);
    Ok(BigRational::new(num_traits::pow(w, l.degree() - 1), l_over_tilde))
}

/// [U′_0 : l_L^*(P_L)] from the Carlitz-series lattice against w_∞^{[L:K]−1}·Π_{χ≠1} L(χ̄, 0),
/// and [U′_0 : ωU′_0] against the same determinant.
pub fn verify_index_consistency(l: &AbelianFieldDatum) -> Result<Report> {
    let module = sinnott_module(l)?;
    let logs = crate::units::p_l_log_lattice(l)?;
    let w = rat(l.field().q() as i64 - 1);
    let rhs = num_traits::pow(w, l.degree() - 1) * LFunctions::new(l, None)?.hr_product()?;
    let inputs = format!("m = {}, kernel = {:?}", l.modulus(), l.kernel());
    let mut report = Report::default();
    report.push(Check::equal(
        "[U′_0 : l*(P_L)] = w^{n−1}·Π L(χ̄,0)",
        inputs.clone(),
        rhs.to_string(),
        lattice_index(&module.u0, &logs.direct)?.to_string(),
    ));
    report.push(Check::equal(
        "[U′_0 : ωU′_0] = |det ω|",
        inputs,
        rhs.to_string(),
        lattice_index(&module.u0, &logs.formula)?.to_string(),
    ));
    Ok(report)
}
