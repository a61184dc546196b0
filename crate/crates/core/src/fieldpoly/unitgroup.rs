use std::collections::VecDeque;

use super::fq::Fq;
use super::poly::Poly;
use crate::error::{CarlitzError, Result};
use crate::group::{quotient_of_lattice, AbGroup};

/// Largest residue ring (by number of residues) that is tabulated.
pub const MAX_RESIDUES: u64 = 1 << 22;

/// (O_K/m)^× as a finite abelian group with a total discrete logarithm.
#[derive(Clone, Debug)]
pub struct UnitGroupData {
    pub modulus: Poly,
    /// Residues with dlog(generators[i]) = e_i.
    pub generators: Vec<Poly>,
    group: AbGroup,
    /// residue code → element index, `u32::MAX` for non-units.
    table: Vec<u32>,
}

impl UnitGroupData {
    pub fn orders(&self) -> &[u64] {
        self.group.invariants()
    }
    pub fn group(&self) -> &AbGroup {
        &self.group
    }
    pub fn order(&self) -> usize {
        self.group.order()
    }
    /// Element index of the class of `a`.
    pub fn dlog_index(&self, a: &Poly) -> Result<usize> {
        let r = a.rem(&self.modulus);
        match self.table[r.code() as usize] {
            u32::MAX => Err(CarlitzError::Domain(format!(
                "{a} is not a unit modulo {}",
                self.modulus
            ))),
            i => Ok(i as usize),
        }
    }
    /// Exponent vector of `a` with respect to `generators`.
    pub fn dlog(&self, a: &Poly) -> Result<Vec<u64>> {
        Ok(self.group.elem(self.dlog_index(a)?))
    }
    /// Residue with the given exponent vector.
    pub fn exp(&self, x: &[u64]) -> Poly {
        let m = &self.modulus;
        let mut r = Poly::one(m.field()).rem(m);
        for (g, &k) in self.generators.iter().zip(x) {
            r = r.mul_mod(&g.pow_mod(k, m), m);
        }
        r
    }
}

/// Expected order Π (q^{deg p} − 1) q^{(k−1) deg p} of (O_K/m)^×.
pub fn unit_group_order(m: &Poly) -> u64 {
    let q = m.field().q() as u64;
    m.factor()
        .iter()
        .map(|(p, k)| (q.pow(p.deg() as u32) - 1) * q.pow((k - 1) * p.deg() as u32))
        .product()
}

/// Structure of (O_K/m)^×: greedy generating set, relation lattice from a breadth-first
/// walk of the Cayley graph, then Smith normal form.
pub fn unit_group(m: &Poly) -> Result<UnitGroupData> {
    if m.is_zero() {
        return Err(CarlitzError::Domain("modulus must be nonzero".into()));
    }
    let field: &Fq = m.field();
    let m = m.monic();
    let q = field.q() as u64;
    let n = q
        .checked_pow(m.deg() as u32)
        .filter(|&n| n <= MAX_RESIDUES)
        .ok_or_else(|| CarlitzError::Domain(format!("modulus {m} too large to tabulate")))?;
    let primes: Vec<Poly> = m.factor().into_iter().map(|(p, _)| p).collect();
    let is_unit: Vec<bool> = (0..n)
        .map(|c| {
            let a = Poly::from_code(field, c);
            !a.is_zero() && primes.iter().all(|p| !a.rem(p).is_zero())
        })
        .collect();
    let units = is_unit.iter().filter(|&&u| u).count();

    let one = Poly::one(field).rem(&m);
    let mut gens: Vec<Poly> = Vec::new();
    let mut coords: Vec<Option<Vec<i64>>>;
    loop {
        coords = vec![None; n as usize];
        coords[one.code() as usize] = Some(vec![0; gens.len()]);
        let mut queue = VecDeque::from([one.clone()]);
        let mut seen = 1;
        while let Some(x) = queue.pop_front() {
            let cx = coords[x.code() as usize].clone().unwrap();
            for (i, g) in gens.iter().enumerate() {
                let y = x.mul_mod(g, &m);
                let slot = &mut coords[y.code() as usize];
                if slot.is_none() {
                    let mut cy = cx.clone();
                    cy[i] += 1;
                    *slot = Some(cy);
                    seen += 1;
                    queue.push_back(y);
                }
            }
        }
        if seen == units {
            break;
        }
        let next = (0..n)
            .find(|&c| is_unit[c as usize] && coords[c as usize].is_none())
            .unwrap();
        gens.push(Poly::from_code(field, next));
    }

    let r = gens.len();
    let mut rels: Vec<Vec<i128>> = Vec::new();
    for (c, cx) in coords.iter().enumerate() {
        let Some(cx) = cx else { continue };
        let x = Poly::from_code(field, c as u64);
        for (i, g) in gens.iter().enumerate() {
            let y = x.mul_mod(g, &m);
            let cy = coords[y.code() as usize].as_ref().unwrap();
            let mut rel: Vec<i128> = (0..r).map(|k| (cx[k] - cy[k]) as i128).collect();
            rel[i] += 1;
            if rel.iter().any(|&v| v != 0) {
                rels.push(rel);
            }
        }
    }
    let (group, table, generators) = if r == 0 {
        let mut table = vec![u32::MAX; n as usize];
        table[one.code() as usize] = 0;
        (AbGroup::trivial(), table, Vec::new())
    } else {
        let quo = quotient_of_lattice(r, rels);
        let mut table = vec![u32::MAX; n as usize];
        for (c, cx) in coords.iter().enumerate() {
            if let Some(cx) = cx {
                table[c] = quo.apply(cx) as u32;
            }
        }
        let generators = quo
            .lift
            .iter()
            .map(|row| {
                let mut g = one.clone();
                for (gi, &k) in gens.iter().zip(row) {
                    let k = k.rem_euclid(units as i64) as u64;
                    g = g.mul_mod(&gi.pow_mod(k, &m), &m);
                }
                g
            })
            .collect();
        (quo.group, table, generators)
    };
    debug_assert_eq!(group.order(), units);
    Ok(UnitGroupData { modulus: m, generators, group, table })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(q: u32, s: &str) -> Poly {
        Poly::parse(&Fq::new(q).unwrap(), s).unwrap()
    }

    #[test]
    fn small_unit_groups() {
        assert_eq!(unit_group(&poly(2, "1,1,1")).unwrap().orders(), &[3]);
        assert_eq!(unit_group(&poly(2, "1,1,0,1")).unwrap().orders(), &[7]);
        assert_eq!(unit_group(&poly(3, "0,1")).unwrap().orders(), &[2]);
    }

    #[test]
    fn generators_have_unit_dlog() {
        for (q, s) in [(2, "0,0,0,1"), (3, "1,0,1,0,1"), (2, "1,1,0,1,1,0,1"), (5, "0,0,1")] {
            let m = poly(q, s);
            let u = unit_group(&m).unwrap();
            assert_eq!(u.order() as u64, unit_group_order(&m));
            for (i, g) in u.generators.iter().enumerate() {
                let mut e = vec![0; u.generators.len()];
                e[i] = 1;
                assert_eq!(u.dlog(g).unwrap(), e);
                assert_eq!(&u.exp(&e), g);
            }
        }
    }

    #[test]
    fn dlog_rejects_non_units() {
        let m = poly(2, "0,1,1");
        let u = unit_group(&m).unwrap();
        assert!(u.dlog(&poly(2, "0,1")).is_err());
    }
}
