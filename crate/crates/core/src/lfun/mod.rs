//! Characters of Gal(L/K), Dirichlet L-polynomials in u = q^{-s}, values at s = 0,
//! the element ω and the product of the L-values.

mod cyclo;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::classfield::{AbelianFieldDatum, LocalData};
use crate::error::{CarlitzError, Result};
use crate::fieldpoly::{monic_enumerate, monic_irreducibles, Poly};
use crate::group::AbGroup;
use crate::groupring::QElt;

pub use cyclo::{cyclotomic_polynomial, Cyclo, CyclotomicField};

/// χ_k(x) = ζ_e^{Σ k_i x_i e/d_i} with e the exponent of G; characters are indexed by
/// the elements k of G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    group: AbGroup,
    index: usize,
    /// χ(σ) = ζ_e^{exps[σ]}.
    exps: Vec<u64>,
}

impl Character {
    pub fn group(&self) -> &AbGroup {
        &self.group
    }
    pub fn index(&self) -> usize {
        self.index
    }
    /// The exponent j with χ(σ) = ζ_e^j.
    pub fn exp_at(&self, sigma: usize) -> u64 {
        self.exps[sigma]
    }
    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }
    pub fn conj(&self) -> Character {
        character(&self.group, self.group.neg(self.index))
    }
    pub fn order(&self) -> u64 {
        self.group.element_order(self.index)
    }
    pub fn is_real(&self) -> bool {
        self.order() <= 2
    }
    /// Whether H ⊆ ker χ.
    pub fn trivial_on(&self, h: &[usize]) -> bool {
        h.iter().all(|&x| self.exps[x] == 0)
    }
}

pub fn character(g: &AbGroup, k: usize) -> Character {
    let e = g.exponent();
    let kv = g.elem(k);
    let weights: Vec<u64> = g.invariants().iter().zip(&kv).map(|(&d, &ki)| ki * (e / d)).collect();
    let exps = (0..g.order())
        .map(|x| g.elem(x).iter().zip(&weights).map(|(xi, w)| xi * w % e).sum::<u64>() % e)
        .collect();
    Character { group: g.clone(), index: k, exps }
}

/// All |G| characters, the trivial one first.
pub fn characters(g: &AbGroup) -> Vec<Character> {
    (0..g.order()).map(|k| character(g, k)).collect()
}

/// A character of Gal(L/K) with its conductor.
#[derive(Clone, Debug)]
pub struct CharacterData {
    pub chi: Character,
    pub conductor: Poly,
}

/// A set S of primes of K: finitely many finite primes and possibly ∞.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimeSet {
    pub finite: Vec<Poly>,
    pub infinity: bool,
}

impl PrimeSet {
    pub fn empty() -> PrimeSet {
        PrimeSet::default()
    }
    /// S_n = {p | n}.
    pub fn support(n: &Poly) -> PrimeSet {
        PrimeSet { finite: n.factor().into_iter().map(|(p, _)| p).collect(), infinity: false }
    }
    pub fn with_infinity(mut self) -> PrimeSet {
        self.infinity = true;
        self
    }
    pub fn contains(&self, p: &Poly) -> bool {
        self.finite.iter().any(|x| x == p)
    }
}

/// Σ_d c_d u^d with coefficients in Q(ζ_e).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    pub coeffs: Vec<Cyclo>,
}

impl LPolynomial {
    pub fn degree(&self, k: &CyclotomicField) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !k.is_zero(c))
    }
    pub fn eval_one(&self, k: &CyclotomicField) -> Cyclo {
        self.coeffs.iter().fold(k.zero(), |acc, c| k.add(&acc, c))
    }
}

fn trim(k: &CyclotomicField, mut c: Vec<Cyclo>) -> Vec<Cyclo> {
    while c.last().is_some_and(|x| k.is_zero(x)) {
        c.pop();
    }
    c
}

/// a·(1 − c·u^d).
fn mul_euler(k: &CyclotomicField, a: &[Cyclo], c: &Cyclo, d: usize) -> Vec<Cyclo> {
    let mut out: Vec<Cyclo> = a.to_vec();
    out.resize(a.len() + d, k.zero());
    for (i, x) in a.iter().enumerate() {
        out[i + d] = k.sub(&out[i + d], &k.mul(c, x));
    }
    trim(k, out)
}

/// a/(1 − c·u^d), which must be exact.
fn div_euler(k: &CyclotomicField, a: &[Cyclo], c: &Cyclo, d: usize) -> Result<Vec<Cyclo>> {
    let a = trim(k, a.to_vec());
    if a.is_empty() {
        return Ok(a);
    }
    if a.len() <= d {
        return Err(CarlitzError::Domain("Euler factor does not divide the L-polynomial".into()));
    }
    let n = a.len() - d;
    let mut q: Vec<Cyclo> = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = a[i].clone();
        if i >= d {
            x = k.add(&x, &k.mul(c, &q[i - d]));
        }
        q.push(x);
    }
    if mul_euler(k, &q, c, d) != a {
        return Err(CarlitzError::Domain("Euler factor does not divide the L-polynomial".into()));
    }
    Ok(trim(k, q))
}

/// Everything the L-functions of one field need: class counts by degree, local data at
/// the primes of the modulus and the characters with their conductors.
#[derive(Clone, Debug)]
pub struct LFunctions {
    datum: AbelianFieldDatum,
    cyc: CyclotomicField,
    depth: usize,
    /// counts[d][σ] = #{a monic, deg a = d, (a, m) = 1, σ_a = σ}.
    counts: Vec<Vec<u64>>,
    local: Vec<LocalData>,
    chars: Vec<CharacterData>,
}

impl LFunctions {
    /// Sums run to degree `depth` (default deg m + 2); degrees ≥ deg m are certified zero.
    pub fn new(l: &AbelianFieldDatum, depth: Option<usize>) -> Result<LFunctions> {
        let m = l.modulus().clone();
        let field = l.field();
        let depth = depth.unwrap_or(m.deg() + 2).max(m.deg());
        let g = l.galois();
        let mut counts = vec![vec![0u64; g.order()]; depth + 1];
        for (d, row) in counts.iter_mut().enumerate() {
            for a in monic_enumerate(field, d, &m) {
                row[l.artin(&a)?] += 1;
            }
        }
        let local = m
            .factor()
            .into_iter()
            .map(|(p, _)| l.local_data(&p))
            .collect::<Result<Vec<_>>>()?;
        let divisors = m.divisors();
        let gal: Vec<(Poly, Vec<usize>)> =
            divisors.into_iter().map(|n| (n.clone(), l.gal_over_ln(&n))).collect();
        let chars = characters(g)
            .into_iter()
            .map(|chi| {
                let conductor = gal
                    .iter()
                    .filter(|(_, h)| chi.trivial_on(h))
                    .map(|(n, _)| n.clone())
                    .min_by_key(|n| n.deg())
                    .expect("χ factors through A_m");
                CharacterData { chi, conductor }
            })
            .collect();
        Ok(LFunctions {
            datum: l.clone(),
            cyc: CyclotomicField::new(g.exponent()),
            depth,
            counts,
            local,
            chars,
        })
    }
    pub fn datum(&self) -> &AbelianFieldDatum {
        &self.datum
    }
    pub fn cyclotomic(&self) -> &CyclotomicField {
        &self.cyc
    }
    pub fn characters(&self) -> &[CharacterData] {
        &self.chars
    }
    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }
    fn w(&self) -> BigRational {
        BigRational::from_integer((self.datum.field().q() as i64 - 1).into())
    }
    /// χ(σ) as an element of Q(ζ_e).
    pub fn value(&self, chi: &Character, sigma: usize) -> Cyclo {
        self.cyc.zeta(chi.exp_at(sigma))
    }
    /// χ(p) := χ(σ_p e_{T_p}): zero unless T_p ⊆ ker χ.
    pub fn prime_value(&self, chi: &Character, p: &Poly) -> Result<Cyclo> {
        let p = p.monic();
        let ld = match self.local.iter().find(|ld| ld.prime == p) {
            Some(ld) => ld.clone(),
            None => self.datum.local_data(&p)?,
        };
        if chi.trivial_on(&ld.inertia) {
            Ok(self.value(chi, ld.frobenius))
        } else {
            Ok(self.cyc.zero())
        }
    }
    /// Σ_{(a, m) = 1} χ(a) u^{deg a} = L_{S_m}(χ, u) with the tail certified zero.
    fn sum_over_modulus(&self, chi: &Character) -> Result<Vec<Cyclo>> {
        let k = &self.cyc;
        let coeffs: Vec<Cyclo> = self
            .counts
            .iter()
            .map(|row| {
                let mut acc = vec![0i64; k.order() as usize];
                for (sigma, &c) in row.iter().enumerate() {
                    acc[chi.exp_at(sigma) as usize] += c as i64;
                }
                acc.iter().enumerate().fold(k.zero(), |s, (j, &c)| {
                    if c == 0 {
                        s
                    } else {
                        k.add(&s, &k.scale(&k.zeta(j as u64), &BigRational::from_integer(c.into())))
                    }
                })
            })
            .collect();
        let dm = self.datum.modulus().deg();
        if coeffs[dm..].iter().any(|c| !k.is_zero(c)) {
            return Err(CarlitzError::Domain(format!(
                "character sums do not vanish in degrees {dm}..={}",
                self.depth
            )));
        }
        Ok(trim(k, coeffs[..dm].to_vec()))
    }
    /// The finite Dirichlet polynomial L_S(χ, u) (no factor at ∞; `s.infinity` is ignored).
    /// Euler factors at primes of the modulus outside S are restored by exact division.
    pub fn dirichlet_l(&self, chi: &Character, s: &PrimeSet) -> Result<LPolynomial> {
        if chi.is_trivial() {
            return Err(CarlitzError::Pole("ζ_K has no polynomial Dirichlet series".into()));
        }
        let k = &self.cyc;
        let m = self.datum.modulus();
        let mut c = self.sum_over_modulus(chi)?;
        for ld in &self.local {
            if s.contains(&ld.prime) {
                continue;
            }
            let v = self.prime_value(chi, &ld.prime)?;
            if !k.is_zero(&v) {
                c = div_euler(k, &c, &v, ld.prime.deg())?;
            }
        }
        for p in &s.finite {
            if p.divides(m) {
                continue;
            }
            let v = self.prime_value(chi, p)?;
            c = mul_euler(k, &c, &v, p.deg());
        }
        Ok(LPolynomial { coeffs: c })
    }
    /// L_S(χ, 0): P(1) if ∞ ∈ S, otherwise (P/(1 − u))(1) with the ∞ factor of a real χ.
    pub fn l_at_zero(&self, chi: &Character, s: &PrimeSet) -> Result<Cyclo> {
        let k = &self.cyc;
        let p = self.dirichlet_l(chi, s)?;
        if s.infinity {
            return Ok(p.eval_one(k));
        }
        let q = div_euler(k, &p.coeffs, &k.one(), 1)
            .map_err(|_| CarlitzError::Domain("(1 − u) does not divide the L-polynomial".into()))?;
        Ok(q.iter().fold(k.zero(), |acc, c| k.add(&acc, c)))
    }
    /// hw_∞ Σ_{χ≠1} L_S(χ̄, 0) e_χ with e_χ = |G|^{-1} Σ_σ χ(σ)σ^{-1}; must be rational.
    pub fn omega_with(&self, s: &PrimeSet) -> Result<QElt> {
        let g = self.datum.galois();
        let k = &self.cyc;
        let n = g.order();
        let lvals: Vec<(Character, Cyclo)> = self
            .chars
            .iter()
            .filter(|c| !c.chi.is_trivial())
            .map(|c| Ok((c.chi.clone(), self.l_at_zero(&c.chi.conj(), s)?)))
            .collect::<Result<_>>()?;
        let scale = self.w() / BigRational::from_integer(n.into());
        let mut coeffs = vec![BigRational::zero(); n];
        for tau in 0..n {
            let mut acc = k.zero();
            for (chi, lv) in &lvals {
                acc = k.add(&acc, &k.mul_zeta(lv, chi.exp_at(tau)));
            }
            let r = k.to_rational(&acc).ok_or_else(|| {
                CarlitzError::NonRational(format!("ω coefficient {}", k.display(&acc)))
            })?;
            coeffs[g.neg(tau)] = r * &scale;
        }
        Ok(QElt::from_coeffs(g, coeffs))
    }
    /// ω = hw_∞ Σ_{χ≠1} L(χ̄, 0) e_χ.
    pub fn omega(&self) -> Result<QElt> {
        self.omega_with(&PrimeSet::empty())
    }
    /// Θ̃ = value at u = 1 of (1 − e_G)Θ(u)/(1 − u), Θ(u) = Σ_{(a,m)=1} σ_a^{-1} u^{deg a},
    /// computed as −(1 − e_G)Θ′(1). Then w_∞Θ̃ = ω with S = supp(m).
    pub fn theta_tilde(&self) -> Result<QElt> {
        let g = self.datum.galois();
        let n = g.order();
        let dm = self.datum.modulus().deg();
        let avg = |row: &[u64]| BigRational::new(row.iter().sum::<u64>().into(), n.into());
        let mut deriv = vec![BigRational::zero(); n];
        let mut at_one = vec![BigRational::zero(); n];
        for (d, row) in self.counts.iter().enumerate() {
            let mean = avg(row);
            for (sigma, &c) in row.iter().enumerate() {
                let x = BigRational::from_integer(c.into()) - &mean;
                if d >= dm && !x.is_zero() {
                    return Err(CarlitzError::Domain(format!("Θ has a non-norm term in degree {d}")));
                }
                let inv = g.neg(sigma);
                deriv[inv] -= &x * BigRational::from_integer(d.into());
                at_one[inv] += x;
            }
        }
        if at_one.iter().any(|x| !x.is_zero()) {
            return Err(CarlitzError::Domain("(1 − e_G)Θ(1) ≠ 0".into()));
        }
        Ok(QElt::from_coeffs(g, deriv))
    }
    /// Π_{χ≠1} L(χ̄, 0), a positive rational.
    pub fn hr_product(&self) -> Result<BigRational> {
        let k = &self.cyc;
        let mut acc = k.one();
        for c in self.chars.iter().filter(|c| !c.chi.is_trivial()) {
            let v = self.l_at_zero(&c.chi.conj(), &PrimeSet::empty())?;
            if k.is_zero(&v) {
                return Err(CarlitzError::VanishingLValue(format!("character {}", c.chi.index())));
            }
            acc = k.mul(&acc, &v);
        }
        let r = k
            .to_rational(&acc)
            .ok_or_else(|| CarlitzError::NonRational(format!("Π L(χ,0) = {}", k.display(&acc))))?;
        if !r.is_positive() {
            return Err(CarlitzError::VanishingLValue(format!("Π L(χ,0) = {r}")));
        }
        Ok(r)
    }
    /// P_L(u) = Z_L(u)(1 − u)(1 − qu) from the character side: ζ_L = ζ_K·Π_{χ≠1} L(χ, s)
    /// gives P_L = Π_{χ≠1} L_∅(χ, u)/(1 − u).
    pub fn zeta_numerator(&self) -> Result<Vec<BigRational>> {
        let k = &self.cyc;
        let mut acc = vec![k.one()];
        for c in self.chars.iter().filter(|c| !c.chi.is_trivial()) {
            let p = self.dirichlet_l(&c.chi, &PrimeSet::empty())?;
            let f = div_euler(k, &p.coeffs, &k.one(), 1)?;
            let mut next = vec![k.zero(); acc.len() + f.len().max(1) - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    next[i + j] = k.add(&next[i + j], &k.mul(a, b));
                }
            }
            acc = next;
        }
        acc.iter()
            .map(|c| {
                k.to_rational(c)
                    .ok_or_else(|| CarlitzError::NonRational(format!("P_L coefficient {}", k.display(c))))
            })
            .collect()
    }
}

/// Z_L(u)(1 − u)(1 − qu) to `terms` coefficients from the Euler product over the places of
/// L: a prime p of K with residue degree f and g places above it contributes
/// (1 − u^{f deg p})^{-g}, and ∞ contributes (1 − u)^{-[L:K]}.
pub fn zeta_numerator_euler(l: &AbelianFieldDatum, terms: usize) -> Result<Vec<BigInt>> {
    let field = l.field();
    let n = l.degree();
    let mut series = vec![BigInt::zero(); terms];
    series[0] = BigInt::one();
    let inv_factor = |s: &mut Vec<BigInt>, step: usize, times: usize| {
        for _ in 0..times {
            for i in step..s.len() {
                let prev = s[i - step].clone();
                s[i] += prev;
            }
        }
    };
    let mul_factor = |s: &mut Vec<BigInt>, c: i64, step: usize| {
        for i in (step..s.len()).rev() {
            let prev = s[i - step].clone();
            s[i] -= prev * c;
        }
    };
    for d in 1..terms {
        for p in monic_irreducibles(field, d) {
            let ld = l.local_data(&p)?;
            let f = ld.decomposition.len() / ld.inertia.len();
            let g = n / ld.decomposition.len();
            if f * d < terms {
                inv_factor(&mut series, f * d, g);
            }
        }
    }
    inv_factor(&mut series, 1, n);
    mul_factor(&mut series, 1, 1);
    mul_factor(&mut series, field.q() as i64, 1);
    Ok(series)
}

/// The characters of G as a free function over a field datum.
pub fn characters_of(l: &AbelianFieldDatum) -> Result<Vec<CharacterData>> {
    Ok(LFunctions::new(l, None)?.chars)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::classfield::ray_class_group;
    use crate::fieldpoly::Fq;
    use crate::groupring::rat;

    fn poly(q: u32, s: &str) -> Poly {
        Poly::parse(&Fq::new(q).unwrap(), s).unwrap()
    }

    fn full(q: u32, m: &str) -> AbelianFieldDatum {
        AbelianFieldDatum::full(Arc::new(ray_class_group(&poly(q, m)).unwrap()))
    }

    #[test]
    fn character_counts() {
        assert_eq!(characters(&AbGroup::trivial()).len(), 1);
        let c3 = characters(&AbGroup::cyclic(3));
        assert_eq!(c3.len(), 3);
        let g = AbGroup::new(vec![7, 7]);
        let all = characters(&g);
        assert_eq!(all.iter().filter(|c| !c.is_trivial()).count(), 48);
        // orthogonality: Σ_σ χ(σ) = 0 for χ ≠ 1
        for c in &all[1..] {
            let mut hist = [0u32; 7];
            for s in 0..49 {
                hist[c.exp_at(s) as usize] += 1;
            }
            assert!(hist.iter().all(|&h| h == 7));
        }
    }

    #[test]
    fn l_polynomial_mod_t2_t_1() {
        let l = full(2, "1,1,1");
        let lf = LFunctions::new(&l, None).unwrap();
        let k = lf.cyclotomic();
        let s = PrimeSet::support(l.modulus());
        for c in &lf.characters()[1..] {
            let p = lf.dirichlet_l(&c.chi, &s).unwrap();
            assert_eq!(p.coeffs, vec![k.one(), k.neg(&k.one())]);
            assert_eq!(lf.l_at_zero(&c.chi, &s).unwrap(), k.one());
            assert!(k.is_zero(&lf.l_at_zero(&c.chi, &s.clone().with_infinity()).unwrap()));
        }
        assert!(matches!(
            lf.dirichlet_l(&lf.characters()[0].chi, &PrimeSet::empty().with_infinity()),
            Err(CarlitzError::Pole(_))
        ));
    }

    #[test]
    fn inflation_leaves_l_polynomials_unchanged() {
        let small = full(2, "1,1,1");
        let big_ray = Arc::new(ray_class_group(&poly(2, "0,1,1,1")).unwrap());
        let n = poly(2, "1,1,1");
        let inflated = crate::classfield::field_from_kernel(big_ray.clone(), &big_ray.kernel_to(&n));
        assert_eq!(inflated.degree(), 3);
        let a = LFunctions::new(&small, None).unwrap();
        let b = LFunctions::new(&inflated, None).unwrap();
        let mut pa: Vec<String> = a.characters()[1..]
            .iter()
            .map(|c| format!("{:?}", a.dirichlet_l(&c.chi, &PrimeSet::empty()).unwrap()))
            .collect();
        let mut pb: Vec<String> = b.characters()[1..]
            .iter()
            .map(|c| format!("{:?}", b.dirichlet_l(&c.chi, &PrimeSet::empty()).unwrap()))
            .collect();
        pa.sort();
        pb.sort();
        assert_eq!(pa, pb);
        assert!(b.characters()[1..].iter().all(|c| c.conductor == n));
    }

    #[test]
    fn omega_for_t2_t_1() {
        let l = full(2, "1,1,1");
        let lf = LFunctions::new(&l, None).unwrap();
        let w = lf.omega().unwrap();
        let lex = l.ray().lex_order();
        let got: Vec<BigRational> = lex.iter().map(|&i| w.coeff(l.to_g(i)).clone()).collect();
        assert_eq!(got, vec![BigRational::new(2.into(), 3.into()), BigRational::new((-1).into(), 3.into()), BigRational::new((-1).into(), 3.into())]);
        assert_eq!(lf.theta_tilde().unwrap(), w);
        assert_eq!(lf.hr_product().unwrap(), rat(1));
        assert!(LFunctions::new(&full(2, "0,1"), None).unwrap().omega().unwrap().is_zero());
    }

    #[test]
    fn zeta_numerator_both_ways() {
        for (q, m) in [(2, "1,1,1"), (2, "1,1,0,1"), (2, "0,1,1"), (2, "0,0,1,1"), (3, "1,0,1"), (3, "0,1,1")] {
            let l = full(q, m);
            let lf = LFunctions::new(&l, None).unwrap();
            let p = lf.zeta_numerator().unwrap();
            let e = zeta_numerator_euler(&l, p.len() + 2).unwrap();
            let lhs: Vec<BigRational> = e.into_iter().map(BigRational::from_integer).collect();
            let mut rhs = p.clone();
            rhs.resize(lhs.len(), BigRational::zero());
            assert_eq!(lhs, rhs, "q={q} m={m}");
        }
    }
}
