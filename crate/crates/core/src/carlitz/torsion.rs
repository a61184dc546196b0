use num_rational::{BigRational, Ratio};

use super::carlitz_eval;
use super::exp::{default_precision, CarlitzContext, PRECISION_CAP};
use crate::classfield::RayClassGroup;
use crate::error::{CarlitzError, Result};
use crate::fieldpoly::{ExtField, FiniteField, LaurentSeries, Poly, ResidueField};
use crate::groupring::OrdVector;

/// The conjugate λ_m^{σ_a} = ρ_a(λ_m) = e_C(π̄a/m), with a reduced modulo m.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionLabel {
    pub modulus: Poly,
    pub a: Poly,
}

impl TorsionLabel {
    pub fn new(m: &Poly, a: &Poly) -> Result<TorsionLabel> {
        if m.deg() == 0 {
            return Err(CarlitzError::Domain("torsion modulus must be nonconstant".into()));
        }
        let m = m.monic();
        let a = a.rem(&m);
        if !a.coprime(&m) {
            return Err(CarlitzError::Domain(format!("{a} is not invertible modulo {m}")));
        }
        Ok(TorsionLabel { modulus: m, a })
    }
}

/// e_C(π̄a/m) as a Laurent series.
pub fn torsion_series(label: &TorsionLabel, ctx: &CarlitzContext) -> Result<LaurentSeries> {
    let r = ctx.precision();
    let inv_m = LaurentSeries::from_poly(&label.modulus).inv(r)?;
    let z = ctx.period().mul(&LaurentSeries::from_poly(&label.a)).mul(&inv_m);
    ctx.exp_series(&z)
}

/// ord_∞(e_C(π̄a/m)), exact with denominator dividing q − 1.
pub fn torsion_conjugate_ord(label: &TorsionLabel, ctx: &CarlitzContext) -> Result<Ratio<i64>> {
    torsion_series(label, ctx)?.ord()
}

/// σ_a ↦ ord_∞(α_m^{σ_a}) = (q−1)·ord_∞(e_C(π̄a/m)) on A_m, α_m = λ_m^{q−1}.
pub fn alpha_ord_vector(ray: &RayClassGroup, ctx: &CarlitzContext) -> Result<OrdVector> {
    let m = ray.modulus();
    let w = ray.field().q() as i64 - 1;
    let values = (0..ray.order())
        .map(|i| {
            let o = torsion_conjugate_ord(&TorsionLabel::new(m, ray.rep(i))?, ctx)? * w;
            if !o.is_integer() {
                return Err(CarlitzError::NonRational(format!("ord of α_{m} is {o}")));
            }
            Ok(BigRational::from_integer((*o.numer()).into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrdVector::new(ray.group(), values))
}

/// [`alpha_ord_vector`] with the precision doubled until every leading term is certified.
pub fn alpha_ord_vector_adaptive(ray: &RayClassGroup, start: Option<i64>) -> Result<OrdVector> {
    let mut prec = start.unwrap_or_else(|| default_precision(ray.field().q(), ray.modulus().deg()));
    loop {
        let ctx = CarlitzContext::new(ray.field(), prec)?;
        match alpha_ord_vector(ray, &ctx) {
            Err(CarlitzError::InsufficientPrecision(_)) if prec * 2 <= PRECISION_CAP => prec *= 2,
            other => return other,
        }
    }
}

/// The m-torsion of the Carlitz module over F_{Q^f}, labelled by residues modulo m
/// through a fixed primitive generator t: the root labelled a is ρ_a(t).
#[derive(Clone, Debug)]
pub struct TorsionSplitting {
    pub modulus: Poly,
    pub field: ExtField<ResidueField>,
    pub generator: Vec<Poly>,
    /// (a, ρ_a(t)) for every residue a of degree < deg m, in code order.
    pub roots: Vec<(Poly, Vec<Poly>)>,
}

impl TorsionSplitting {
    /// ρ_a(t) for any a.
    pub fn conjugate(&self, a: &Poly) -> Vec<Poly> {
        carlitz_eval(&self.field, &a.rem(&self.modulus), &self.generator)
    }
}

/// Reduces the m-torsion modulo the prime Q inside F_{Q^f}; requires m | Q^f − 1.
///
/// Over F_{Q^f} the Carlitz module is A/(Q^f − 1), so ρ_{(Q^f−1)/m} maps into Λ_m and
/// a primitive generator is found by trying field elements.
pub fn torsion_in_residue_field(m: &Poly, big_q: &Poly, f: u64) -> Result<TorsionSplitting> {
    let field = m.field();
    let m = m.monic();
    let base = ResidueField::new(big_q)?;
    if !m.coprime(big_q) {
        return Err(CarlitzError::Domain(format!("{big_q} divides {m}")));
    }
    let n = &big_q.monic().pow(f) - &Poly::one(field);
    if !m.divides(&n) {
        return Err(CarlitzError::Unsplit(format!("{m} does not divide Q^{f} − 1")));
    }
    let cof = n.div_exact(&m);
    let k = ExtField::new(base, f)?;
    let maximal: Vec<Poly> = m.factor().into_iter().map(|(l, _)| m.div_exact(&l)).collect();
    let mut generator = None;
    // every coordinate gets its own hashed digit so the trials are not confined to a subspace
    let mix = |x: u64| {
        let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    for idx in 1..=4096u64 {
        let z: Vec<Poly> = (0..f).map(|i| k.base_field().element(mix(idx.wrapping_mul(1 << 20) ^ i))).collect();
        let t = carlitz_eval(&k, &cof, &z);
        if maximal.iter().all(|d| !k.is_zero(&carlitz_eval(&k, d, &t))) {
            generator = Some(t);
            break;
        }
    }
    let t = generator.ok_or_else(|| CarlitzError::Unsplit("no primitive torsion found".into()))?;
    let count = (field.q() as u64).pow(m.deg() as u32);
    let roots = (0..count)
        .map(|c| {
            let a = Poly::from_code(field, c);
            let r = carlitz_eval(&k, &a, &t);
            (a, r)
        })
        .collect();
    Ok(TorsionSplitting { modulus: m, field: k, generator: t, roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carlitz::carlitz_action;
    use crate::classfield::ray_class_group;
    use crate::fieldpoly::Fq;

    fn poly(q: u32, s: &str) -> Poly {
        Poly::parse(&Fq::new(q).unwrap(), s).unwrap()
    }

    #[test]
    fn small_torsion_ords() {
        let f = Fq::new(2).unwrap();
        let ctx = CarlitzContext::new(&f, 24).unwrap();
        let ord = |m: &str, a: &str| {
            torsion_conjugate_ord(&TorsionLabel::new(&poly(2, m), &poly(2, a)).unwrap(), &ctx).unwrap()
        };
        assert_eq!(ord("0,1", "1"), Ratio::from_integer(-1));
        assert_eq!(ord("1,1,1", "1"), Ratio::from_integer(0));
        assert_eq!(ord("1,1,1", "0,1"), Ratio::from_integer(-1));
    }

    #[test]
    fn alpha_vector_for_t2_t_1() {
        let ray = ray_class_group(&poly(2, "1,1,1")).unwrap();
        let v = alpha_ord_vector_adaptive(&ray, None).unwrap();
        let lex: Vec<i64> =
            ray.lex_order().iter().map(|&i| i64::try_from(v.values[i].to_integer()).unwrap()).collect();
        assert_eq!(lex, [0, -1, -1]);
    }

    #[test]
    fn residue_torsion_for_t() {
        let m = poly(2, "0,1");
        let big_q = poly(2, "1,1,0,1");
        let sp = torsion_in_residue_field(&m, &big_q, 1).unwrap();
        let vals: Vec<Poly> = sp.roots.iter().map(|(_, r)| r[0].clone()).collect();
        assert_eq!(vals, [poly(2, ""), poly(2, "0,1")]);
    }

    #[test]
    fn residue_labels_follow_the_action() {
        let m = poly(3, "1,0,1");
        let big_q = poly(3, "2,1");
        // order of Q mod m in (F_3[T]/(T^2+1))^× divides 8
        let f = (1..=8).find(|&f| m.divides(&(&big_q.pow(f) - &poly(3, "1")))).unwrap();
        let sp = torsion_in_residue_field(&m, &big_q, f).unwrap();
        let k = &sp.field;
        for (a, ra) in &sp.roots {
            for b in [poly(3, "0,1"), poly(3, "2,1")] {
                let lhs = carlitz_action(&b).eval_in(k, ra);
                assert_eq!(lhs, sp.conjugate(&(&b * a)));
            }
        }
        let nonzero = sp.roots.iter().filter(|(_, r)| !k.is_zero(r)).count();
        assert_eq!(nonzero, 8);
        // primitive roots are exactly the unit labels
        let units = sp.roots.iter().filter(|(a, _)| a.coprime(&m)).count();
        assert_eq!(units as u64, crate::fieldpoly::unit_group_order(&m));
    }
}
