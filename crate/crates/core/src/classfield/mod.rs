//! Ray class groups A_m = (O_K/m)^×/F_q^× and real abelian fields as (modulus, kernel) data.

mod cyclic;

use std::sync::Arc;

use crate::error::{CarlitzError, Result};
use crate::fieldpoly::{unit_group, Fq, Poly, UnitGroupData};
use crate::group::AbGroup;

pub use cyclic::{antidiagonal_subfield, cyclic_subfield, subfield_lattice, CyclicTower};

/// A_m with each class labelled by its unique monic representative of degree < deg m.
#[derive(Clone, Debug)]
pub struct RayClassGroup {
    modulus: Poly,
    units: Option<UnitGroupData>,
    group: AbGroup,
    /// unit-group index → class index
    unit_class: Vec<u32>,
    reps: Vec<Poly>,
}

/// Builds A_m. Each class of (O_K/m)^×/F_q^× contains exactly one monic residue.
pub fn ray_class_group(m: &Poly) -> Result<RayClassGroup> {
    if m.is_zero() {
        return Err(CarlitzError::Domain("modulus must be nonzero".into()));
    }
    let field = m.field();
    let m = m.monic();
    if m.is_one() {
        return Ok(RayClassGroup {
            modulus: m,
            units: None,
            group: AbGroup::trivial(),
            unit_class: vec![0],
            reps: vec![Poly::one(field)],
        });
    }
    let u = unit_group(&m)?;
    let g = Poly::constant(field, field.generator());
    let gi = u.dlog_index(&g)?;
    let quo = u.group().quotient(&[gi]);
    let unit_class: Vec<u32> = (0..u.order())
        .map(|i| {
            let x: Vec<i64> = u.group().elem(i).iter().map(|&c| c as i64).collect();
            quo.apply(&x) as u32
        })
        .collect();
    let mut reps: Vec<Option<Poly>> = vec![None; quo.group.order()];
    for d in 0..m.deg() {
        for a in crate::fieldpoly::monic_enumerate(field, d, &m) {
            let c = unit_class[u.dlog_index(&a)?] as usize;
            debug_assert!(reps[c].is_none(), "two monic representatives in one class");
            reps[c] = Some(a);
        }
    }
    let reps = reps.into_iter().map(|r| r.expect("class without monic representative")).collect();
    Ok(RayClassGroup { modulus: m, units: Some(u), group: quo.group, unit_class, reps })
}

impl RayClassGroup {
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }
    pub fn field(&self) -> &Fq {
        self.modulus.field()
    }
    pub fn group(&self) -> &AbGroup {
        &self.group
    }
    pub fn order(&self) -> usize {
        self.group.order()
    }
    /// Monic representative of degree < deg m of class `i`.
    pub fn rep(&self, i: usize) -> &Poly {
        &self.reps[i]
    }
    /// Class of a residue coprime to m (the Artin symbol of (a) in H_m/K).
    pub fn class_of(&self, a: &Poly) -> Result<usize> {
        match &self.units {
            None => Ok(0),
            Some(u) => Ok(self.unit_class[u.dlog_index(a)?] as usize),
        }
    }
    /// Class indices ordered by their monic representatives (degree, then lexicographic).
    pub fn lex_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.order()).collect();
        idx.sort_by(|&a, &b| self.reps[a].cmp(&self.reps[b]));
        idx
    }
    /// The projection A_m → A_n for n | m, as a table of class indices.
    pub fn projection(&self, target: &RayClassGroup) -> Result<Vec<usize>> {
        if !target.modulus.divides(&self.modulus) {
            return Err(CarlitzError::Domain(format!(
                "{} does not divide {}",
                target.modulus, self.modulus
            )));
        }
        self.reps.iter().map(|a| target.class_of(a)).collect()
    }
    /// Classes in ker(A_m → A_n): monic representatives congruent to a constant mod n.
    pub fn kernel_to(&self, n: &Poly) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.reps[i].rem(n).is_constant()).collect()
    }
}

/// The fixed field L ⊆ H_m of a subgroup S ≤ A_m, with Γ = A_m/S.
#[derive(Clone, Debug)]
pub struct AbelianFieldDatum {
    ray: Arc<RayClassGroup>,
    kernel: Vec<usize>,
    galois: AbGroup,
    /// class index in A_m → element index in G
    to_g: Vec<usize>,
}

/// The datum of the fixed field of ⟨gens⟩ ≤ A_m.
pub fn field_from_kernel(ray: Arc<RayClassGroup>, gens: &[usize]) -> AbelianFieldDatum {
    let kernel = ray.group().span(gens);
    let quo = ray.group().quotient(&kernel);
    let to_g = (0..ray.order())
        .map(|i| {
            let x: Vec<i64> = ray.group().elem(i).iter().map(|&c| c as i64).collect();
            quo.apply(&x)
        })
        .collect();
    AbelianFieldDatum { ray, kernel, galois: quo.group, to_g }
}

/// Decomposition and inertia data of a prime in L/K.
#[derive(Clone, Debug)]
pub struct LocalData {
    pub prime: Poly,
    /// T_p ≤ G, sorted element indices.
    pub inertia: Vec<usize>,
    /// D_p = ⟨T_p, σ_p⟩ ≤ G.
    pub decomposition: Vec<usize>,
    /// σ_p ∈ G: the Frobenius if p is unramified, otherwise a fixed lift on the inertia field.
    pub frobenius: usize,
}

impl AbelianFieldDatum {
    /// H_m itself.
    pub fn full(ray: Arc<RayClassGroup>) -> AbelianFieldDatum {
        field_from_kernel(ray, &[])
    }
    pub fn ray(&self) -> &RayClassGroup {
        &self.ray
    }
    pub fn ray_arc(&self) -> &Arc<RayClassGroup> {
        &self.ray
    }
    pub fn modulus(&self) -> &Poly {
        self.ray.modulus()
    }
    pub fn field(&self) -> &Fq {
        self.ray.field()
    }
    /// S ≤ A_m, sorted.
    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }
    /// Γ = Gal(L/K) = A_m/S.
    pub fn galois(&self) -> &AbGroup {
        &self.galois
    }
    pub fn degree(&self) -> usize {
        self.galois.order()
    }
    /// Image in G of a class of A_m.
    pub fn to_g(&self, class: usize) -> usize {
        self.to_g[class]
    }
    pub fn to_g_table(&self) -> &[usize] {
        &self.to_g
    }
    /// Artin symbol of a residue coprime to m.
    pub fn artin(&self, a: &Poly) -> Result<usize> {
        Ok(self.to_g[self.ray.class_of(a)?])
    }
    /// Preimage in A_m of a subgroup of G.
    pub fn preimage(&self, h: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.degree()];
        for &x in h {
            mark[x] = true;
        }
        (0..self.ray.order()).filter(|&i| mark[self.to_g[i]]).collect()
    }
    fn image(&self, classes: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = classes.iter().map(|&c| self.to_g[c]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
    /// Fixed field of a subgroup H ≤ G, on the same modulus.
    pub fn fixed_field(&self, h: &[usize]) -> AbelianFieldDatum {
        field_from_kernel(self.ray.clone(), &self.preimage(h))
    }
    /// Gal(L/L_n) ≤ G for n | m, where L_n = L ∩ H_n.
    pub fn gal_over_ln(&self, n: &Poly) -> Vec<usize> {
        self.image(&self.ray.kernel_to(n))
    }
    /// L_n = L ∩ H_n as a datum on the modulus n.
    pub fn restrict_to(&self, n: &Poly) -> Result<AbelianFieldDatum> {
        let rn = Arc::new(ray_class_group(n)?);
        let proj = self.ray.projection(&rn)?;
        let gens: Vec<usize> = self.kernel.iter().map(|&c| proj[c]).collect();
        Ok(field_from_kernel(rn, &gens))
    }
    /// Restriction map G = Gal(L/K) → Gal(L_n/K) for a datum `ln` of L_n on the modulus n.
    pub fn restriction_map(&self, ln: &AbelianFieldDatum) -> Result<Vec<usize>> {
        let proj = self.ray.projection(ln.ray())?;
        let mut map = vec![usize::MAX; self.degree()];
        for (c, &g) in self.to_g.iter().enumerate() {
            let h = ln.to_g[proj[c]];
            debug_assert!(map[g] == usize::MAX || map[g] == h, "restriction not well defined");
            map[g] = h;
        }
        Ok(map)
    }
    /// Whether L ⊆ H_n, i.e. ker(A_m → A_n) ⊆ S.
    pub fn defined_mod(&self, n: &Poly) -> bool {
        n.divides(self.modulus()) && self.gal_over_ln(n) == vec![0]
    }
    /// The smallest modulus n | m with L ⊆ H_n.
    pub fn conductor(&self) -> Poly {
        let valid: Vec<Poly> =
            self.modulus().divisors().into_iter().filter(|n| self.defined_mod(n)).collect();
        let c = valid.iter().min_by_key(|n| n.deg()).unwrap().clone();
        debug_assert!(valid.iter().all(|n| c.divides(n)));
        c
    }
    /// Finite primes ramified in L, i.e. the support of the conductor.
    pub fn ramified_primes(&self) -> Vec<Poly> {
        self.conductor().factor().into_iter().map(|(p, _)| p).collect()
    }
    /// T_p, D_p and σ_p. For p | m write m = p^k·m′; T_p is the image of ker(A_m → A_{m′})
    /// and σ_p the class of the residue ≡ p mod m′, ≡ 1 mod p^k.
    pub fn local_data(&self, p: &Poly) -> Result<LocalData> {
        if !p.is_irreducible() {
            return Err(CarlitzError::Domain(format!("{p} is not prime")));
        }
        let p = p.monic();
        let m = self.modulus();
        let mut pk = Poly::one(self.field());
        let mut rest = m.clone();
        while p.divides(&rest) {
            rest = rest.div_exact(&p);
            pk = &pk * &p;
        }
        let g = &self.galois;
        if pk.is_one() {
            let f = self.artin(&p)?;
            return Ok(LocalData {
                prime: p,
                inertia: vec![0],
                decomposition: g.span(&[f]),
                frobenius: f,
            });
        }
        let inertia = self.image(&self.ray.kernel_to(&rest));
        let frobenius = if rest.is_one() {
            0
        } else {
            // a = 1 + pk·((p − 1)·pk^{-1} mod rest)
            let inv = pk.inv_mod(&rest).expect("coprime parts");
            let t = (&p - &Poly::one(self.field())).mul_mod(&inv, &rest);
            let a = (&Poly::one(self.field()) + &(&pk * &t)).rem(m);
            self.artin(&a)?
        };
        let mut gens = inertia.clone();
        gens.push(frobenius);
        Ok(LocalData { prime: p, decomposition: g.span(&gens), inertia, frobenius })
    }
    /// Ramification profile (p_j, t_j, n_j) in the given prime order.
    pub fn ram_profile(&self) -> Result<RamProfile> {
        let mut entries = Vec::new();
        for p in self.ramified_primes() {
            let ld = self.local_data(&p)?;
            entries.push(RamEntry {
                prime: p,
                t: ld.inertia.len() as u64,
                n: (self.degree() / ld.decomposition.len()) as u64,
            });
        }
        Ok(RamProfile { entries })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamEntry {
    pub prime: Poly,
    /// |T_j|
    pub t: u64,
    /// [Γ : D_j]
    pub n: u64,
}

/// Ramified primes with t_j = |T_j(L)| and n_j = [Γ : D_j(L)].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamProfile {
    pub entries: Vec<RamEntry>,
}

impl RamProfile {
    pub fn s(&self) -> usize {
        self.entries.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(q: u32, s: &str) -> Poly {
        Poly::parse(&Fq::new(q).unwrap(), s).unwrap()
    }

    #[test]
    fn small_ray_class_groups() {
        assert_eq!(ray_class_group(&poly(3, "0,1")).unwrap().order(), 1);
        let a = ray_class_group(&poly(2, "1,1,1")).unwrap();
        assert_eq!(a.group().invariants(), &[3]);
        let order: Vec<String> = a.lex_order().iter().map(|&i| a.rep(i).to_string()).collect();
        assert_eq!(order, ["1", "T", "T + 1"]);
        let m = &poly(2, "1,1,0,1") * &poly(2, "1,0,1,1");
        assert_eq!(ray_class_group(&m).unwrap().group().invariants(), &[7, 7]);
    }

    #[test]
    fn ray_class_order_formula() {
        for (q, s) in [(3, "1,0,1"), (3, "0,0,1,1"), (4, "1,1,1"), (5, "0,1,1")] {
            let m = poly(q, s);
            let a = ray_class_group(&m).unwrap();
            assert_eq!(a.order() as u64 * (q as u64 - 1), crate::fieldpoly::unit_group_order(&m));
        }
    }

    #[test]
    fn conductor_of_base_and_full_field() {
        let a = Arc::new(ray_class_group(&poly(2, "1,1,1")).unwrap());
        let all: Vec<usize> = (0..a.order()).collect();
        let k = field_from_kernel(a.clone(), &all);
        assert_eq!(k.degree(), 1);
        assert!(k.conductor().is_one());
        let h = AbelianFieldDatum::full(a);
        assert_eq!(h.degree(), 3);
        assert_eq!(h.conductor(), poly(2, "1,1,1"));
        let ld = h.local_data(&poly(2, "1,1,1")).unwrap();
        assert_eq!(ld.inertia.len(), 3);
    }

    #[test]
    fn antidiagonal_septic() {
        let (p1, p2) = (poly(2, "1,1,0,1"), poly(2, "1,0,1,1"));
        let a = Arc::new(ray_class_group(&(&p1 * &p2)).unwrap());
        // σ_{x} ↦ (x mod p1, x mod p2); the anti-diagonal pairs a class with its inverse
        let g1 = a.class_of(&crt(&p1, &p2, &poly(2, "0,1"), &poly(2, "1"))).unwrap();
        let g2 = a.class_of(&crt(&p1, &p2, &poly(2, "1"), &poly(2, "0,1"))).unwrap();
        let l = field_from_kernel(a.clone(), &[a.group().sub(g1, g2)]);
        assert_eq!(l.degree(), 7);
        assert_eq!(l.conductor(), &p1 * &p2);
        let prof = l.ram_profile().unwrap();
        assert!(prof.entries.iter().all(|e| e.t == 7 && e.n == 1));
        let unram = poly(2, "1,1,0,0,1");
        let ld = l.local_data(&unram).unwrap();
        assert_eq!(ld.inertia, vec![0]);
        assert_eq!(ld.frobenius, l.artin(&unram).unwrap());
    }

    fn crt(p1: &Poly, p2: &Poly, a1: &Poly, a2: &Poly) -> Poly {
        let m = p1 * p2;
        let e1 = p2 * &p2.inv_mod(p1).unwrap();
        let e2 = p1 * &p1.inv_mod(p2).unwrap();
        (&(a1 * &e1) + &(a2 * &e2)).rem(&m)
    }
}
