//! Elliptic numbers φ_{L,n} = N_{H_n/L_n}(α_n), α_n = λ_n^{q−1}, through their logarithmic
//! images, and the identities tying them to L-values and to each other.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::carlitz::{alpha_ord_vector_adaptive, torsion_series, CarlitzContext, TorsionLabel};
use crate::classfield::{ray_class_group, AbelianFieldDatum};
use crate::error::{CarlitzError, Result};
use crate::fieldpoly::{LaurentSeries, Poly};
use crate::groupring::{rat, OrdVector, QElt};
use crate::lattice::{lattice_index, LatticeBasis};
use crate::lfun::{LFunctions, PrimeSet};
use crate::report::{Check, Report};
use crate::sinnott::{coset_reps, rho_prime, sinnott_module};

pub use crate::sinnott::{dl_value, DlValue};

/// How ord-vectors pair with characters in the limit formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Σ_σ ord(α^σ)χ(σ)
    Direct,
    /// Σ_σ ord(α^σ)χ(σ^{-1})
    Inverse,
}

/// Fixed once for all moduli; the degree-7 field H_{T³+T+1} over F_2 is the smallest case
/// where the two choices differ.
pub const ORIENTATION: Orientation = Orientation::Direct;

/// Minimum number of certified coefficients compared in a series-level norm relation.
pub const NORM_RELATION_TERMS: i64 = 50;

/// l_L(φ_{L,n}) as the map σ ↦ ord_∞(φ_{L,n}^σ), for n | m, n ≠ 1.
///
/// The entry at σ is the sum of ord_∞(α_n^c) over the classes c of A_n restricting to
/// σ|_{L_n}.
pub fn elliptic_log(l: &AbelianFieldDatum, n: &Poly) -> Result<OrdVector> {
    let n = n.monic();
    if n.is_one() || !n.divides(l.modulus()) {
        return Err(CarlitzError::Domain(format!("{n} must be a nontrivial divisor of {}", l.modulus())));
    }
    let ln = l.restrict_to(&n)?;
    let res = l.restriction_map(&ln)?;
    let alpha = alpha_ord_vector_adaptive(ln.ray(), None)?;
    let mut on_ln = vec![BigRational::zero(); ln.degree()];
    for (c, a) in alpha.values.iter().enumerate() {
        on_ln[ln.to_g(c)] += a;
    }
    Ok(OrdVector::new(l.galois(), res.iter().map(|&t| on_ln[t].clone()).collect()))
}

/// l_L^* = (1 − e_G)l_L.
pub fn l_star(v: &OrdVector) -> QElt {
    let x = v.to_group_ring();
    let g = &v.group;
    let all: Vec<usize> = (0..g.order()).collect();
    x.sub(&QElt::idempotent(g, &all).scale(&x.augmentation()))
}

fn render(x: &QElt) -> String {
    let c: Vec<String> = x.coeffs().iter().map(|c| c.to_string()).collect();
    format!("({})", c.join(", "))
}

/// w_∞·ζ_{K,S}(0) for S a finite set of primes (∞ kept), from
/// ζ_{K,S}(u) = Π_{p∈S}(1 − u^{deg p}) / ((1 − u)(1 − qu)).
pub fn w_zeta_s_at_zero(q: u32, degrees: &[usize]) -> Result<BigRational> {
    if degrees.is_empty() {
        return Err(CarlitzError::Pole("ζ_K has a pole at s = 0".into()));
    }
    let mut prod = vec![BigInt::from(1)];
    for &d in degrees {
        let mut next = vec![BigInt::zero(); prod.len() + d];
        for (i, c) in prod.iter().enumerate() {
            next[i] += c;
            next[i + d] -= c;
        }
        prod = next;
    }
    // synthetic division by (1 − u): quotient coefficients are partial sums
    let mut acc = BigInt::zero();
    let mut at_one = BigInt::zero();
    for c in &prod[..prod.len() - 1] {
        acc += c;
        at_one += &acc;
    }
    let w = q as i64 - 1;
    Ok(BigRational::from_integer(at_one) * rat(w) / rat(1 - q as i64))
}

fn limit_side(lf: &LFunctions, alpha: &OrdVector, chi: &crate::lfun::Character, o: Orientation) -> crate::lfun::Cyclo {
    let k = lf.cyclotomic();
    let g = &alpha.group;
    alpha.values.iter().enumerate().fold(k.zero(), |acc, (s, v)| {
        let s = match o {
            Orientation::Direct => s,
            Orientation::Inverse => g.neg(s),
        };
        k.add(&acc, &k.scale(&lf.value(chi, s), v))
    })
}

/// Pairing of l(α_n) with every character of Gal(H_n/K) against w_∞·L_{S_n}(χ, 0) under
/// the given orientation; the trivial character is compared with w_∞ζ_{K,S_n}(0).
pub fn limit_formula_checks(n: &Poly, o: Orientation) -> Result<Report> {
    let n = n.monic();
    let h = AbelianFieldDatum::full(Arc::new(ray_class_group(&n)?));
    let alpha = alpha_ord_vector_adaptive(h.ray(), None)?;
    let alpha = OrdVector::new(h.galois(), (0..h.degree()).map(|s| {
        let c = (0..h.ray().order()).find(|&c| h.to_g(c) == s).unwrap();
        alpha.values[c].clone()
    }).collect());
    let lf = LFunctions::new(&h, None)?;
    let k = lf.cyclotomic();
    let w = rat(h.field().q() as i64 - 1);
    let support = PrimeSet::support(&n);
    let mut report = Report::default();
    let degrees: Vec<usize> = support.finite.iter().map(Poly::deg).collect();
    report.push(Check::equal(
        "limit formula, trivial character",
        format!("n = {n}"),
        w_zeta_s_at_zero(h.field().q(), &degrees)?.to_string(),
        alpha.sum().to_string(),
    ));
    for c in lf.characters().iter().filter(|c| !c.chi.is_trivial()) {
        let lhs = limit_side(&lf, &alpha, &c.chi, o);
        let rhs = k.scale(&lf.l_at_zero(&c.chi, &support)?, &w);
        report.push(Check::new(
            "limit formula",
            format!("n = {n}, χ #{}", c.chi.index()),
            k.display(&rhs),
            k.display(&lhs),
            k.is_zero(&k.sub(&lhs, &rhs)),
        ));
    }
    Ok(report)
}

/// The limit formula with the fixed [`ORIENTATION`], plus l^*(α_n) = ω ρ′_n on H_n.
pub fn verify_limit_formula(n: &Poly) -> Result<Report> {
    let mut report = limit_formula_checks(n, ORIENTATION)?;
    let h = AbelianFieldDatum::full(Arc::new(ray_class_group(&n.monic())?));
    report.push(verify_imglog(&h, n)?);
    Ok(report)
}

/// l_L^*(φ_{L,n}) = ω ρ′_n.
pub fn verify_imglog(l: &AbelianFieldDatum, n: &Poly) -> Result<Check> {
    let lhs = l_star(&elliptic_log(l, n)?);
    let omega = LFunctions::new(l, None)?.omega()?;
    let rhs = omega.mul(&rho_prime(l, n)?);
    Ok(Check::equal("l*(φ_n) = ω ρ′_n", format!("m = {}, n = {n}", l.modulus()), render(&rhs), render(&lhs)))
}

fn alpha_series(ctx: &CarlitzContext, m: &Poly, a: &Poly) -> Result<LaurentSeries> {
    let w = ctx.field().q() as u64 - 1;
    Ok(torsion_series(&TorsionLabel::new(m, a)?, ctx)?.pow(w))
}

/// Certified coefficients shared by two series, counted from the smaller valuation.
fn shared_terms(a: &LaurentSeries, b: &LaurentSeries) -> i64 {
    a.prec().min(b.prec()) - a.val_bound().min(b.val_bound())
}

/// N_{H_{np}/H_n}(α_{np}) against α_n (p | n), α_n^{1 − σ_p^{-1}} (p ∤ n, n ≠ 1) or c·p with
/// c ∈ F_q^× (n = 1), as Laurent series agreeing in at least [`NORM_RELATION_TERMS`] terms.
pub fn verify_norm_relation(n: &Poly, p: &Poly, precision: i64) -> Result<Check> {
    let field = n.field().clone();
    let (n, p) = (n.monic(), p.monic());
    if !p.is_irreducible() {
        return Err(CarlitzError::Domain(format!("{p} is not prime")));
    }
    let np = &n * &p;
    let ray = ray_class_group(&np)?;
    let ctx = CarlitzContext::new(&field, precision.max(NORM_RELATION_TERMS) + 8)?;
    let mut lhs = LaurentSeries::one(&field);
    for c in ray.kernel_to(&n) {
        lhs = lhs.mul(&alpha_series(&ctx, &np, ray.rep(c))?);
    }
    let inputs = format!("n = {n}, p = {p}");
    let name = "norm relation";
    let need = precision.max(NORM_RELATION_TERMS);
    if n.is_one() {
        let xp = LaurentSeries::from_poly(&p);
        let unit = field.elements().filter(|&c| c != 0).find(|&c| {
            let rhs = xp.scale(c);
            shared_terms(&lhs, &rhs) >= need && lhs.agrees_with(&rhs, need)
        });
        return Ok(Check::new(
            name,
            inputs,
            format!("c·({p}) for some c ∈ F_{}^×", field.q()),
            match unit {
                Some(c) => format!("c = {c}"),
                None => "no c".into(),
            },
            unit.is_some(),
        ));
    }
    let one = Poly::one(&field);
    let alpha_n = alpha_series(&ctx, &n, &one)?;
    let (rhs, shape) = if p.divides(&n) {
        (alpha_n, "α_n")
    } else {
        let pbar = p.inv_mod(&n).expect("p is prime to n");
        let conj = alpha_series(&ctx, &n, &pbar)?;
        (alpha_n.div(&conj, ctx.precision())?, "α_n^{1 − σ_p^{-1}}")
    };
    let terms = shared_terms(&lhs, &rhs);
    let pass = terms >= need && lhs.agrees_with(&rhs, need);
    Ok(Check::new(name, inputs, format!("{shape}, {need} terms"), format!("{terms} certified terms compared"), pass))
}

/// The norm relation on logarithmic images in an arbitrary L with np | m:
/// l_L(N_{L_{np}/L_n}φ_{L,np}) against l_L of φ_{L,n}, φ_{L,n}^{1 − σ_p^{-1}} or p.
pub fn verify_norm_relation_log(l: &AbelianFieldDatum, n: &Poly, p: &Poly) -> Result<Check> {
    let (n, p) = (n.monic(), p.monic());
    let np = &n * &p;
    let g = l.galois();
    let x = elliptic_log(l, &np)?;
    let over_n = l.gal_over_ln(&n);
    let over_np = l.gal_over_ln(&np).len();
    let lhs: Vec<BigRational> = (0..g.order())
        .map(|s| {
            let tot = over_n.iter().fold(BigRational::zero(), |a, &t| a + &x.values[g.add(s, t)]);
            tot / rat(over_np as i64)
        })
        .collect();
    let rhs: Vec<BigRational> = if n.is_one() {
        vec![rat(-(p.deg() as i64)); g.order()]
    } else if p.divides(&n) {
        elliptic_log(l, &n)?.values
    } else {
        let y = elliptic_log(l, &n)?;
        let f = l.local_data(&p)?.frobenius;
        (0..g.order()).map(|s| &y.values[s] - &y.values[g.sub(s, f)]).collect()
    };
    let show = |v: &[BigRational]| format!("{:?}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    Ok(Check::equal(
        "norm relation (logarithmic)",
        format!("m = {}, n = {n}, p = {p}", l.modulus()),
        show(&rhs),
        show(&lhs),
    ))
}

/// l_L^*(P_L) built twice: from the Carlitz-series ord-vectors of the φ_{L,n}, and as ω·U′_0.
#[derive(Clone, Debug)]
pub struct LogLattice {
    pub direct: LatticeBasis,
    pub formula: LatticeBasis,
}

impl LogLattice {
    pub fn agree(&self) -> bool {
        let s = self.direct.sum(&self.formula);
        let one = BigRational::from_integer(1.into());
        self.direct.same_span(&self.formula)
            && lattice_index(&self.direct, &s).is_ok_and(|i| i == one)
            && lattice_index(&self.formula, &s).is_ok_and(|i| i == one)
    }
}

pub fn p_l_log_lattice(l: &AbelianFieldDatum) -> Result<LogLattice> {
    let g = l.galois();
    let dim = g.order();
    let omega = LFunctions::new(l, None)?.omega()?;
    let module = sinnott_module(l)?;
    let mut direct = Vec::new();
    let mut formula = Vec::new();
    for (n, rho) in module.rho.iter().filter(|(n, _)| !n.is_one()) {
        let v = l_star(&elliptic_log(l, n)?);
        let f = omega.mul(rho);
        for s in coset_reps(g, &l.gal_over_ln(n)) {
            direct.push(v.translate(s).coeffs().to_vec());
            formula.push(f.translate(s).coeffs().to_vec());
        }
    }
    Ok(LogLattice {
        direct: LatticeBasis::from_rational(dim, &direct),
        formula: LatticeBasis::from_rational(dim, &formula),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classfield::field_from_kernel;
    use crate::fieldpoly::Fq;

    fn poly(q: u32, s: &str) -> Poly {
        Poly::parse(&Fq::new(q).unwrap(), s).unwrap()
    }

    fn full(m: &Poly) -> AbelianFieldDatum {
        AbelianFieldDatum::full(Arc::new(ray_class_group(m).unwrap()))
    }

    fn ints(v: &OrdVector) -> Vec<i64> {
        v.integer_values().unwrap()
    }

    #[test]
    fn elliptic_log_on_h_m_is_the_alpha_vector() {
        for (q, m) in [(2, "1,1,1"), (3, "1,0,1"), (2, "0,1,1,1")] {
            let l = full(&poly(q, m));
            let v = elliptic_log(&l, &poly(q, m)).unwrap();
            let alpha = alpha_ord_vector_adaptive(l.ray(), None).unwrap();
            for c in 0..l.ray().order() {
                assert_eq!(v.values[l.to_g(c)], alpha.values[c]);
            }
        }
    }

    #[test]
    fn elliptic_log_for_t2_t_1() {
        let m = poly(2, "1,1,1");
        let l = full(&m);
        let v = elliptic_log(&l, &m).unwrap();
        let lex: Vec<i64> = l.ray().lex_order().iter().map(|&c| ints(&v)[l.to_g(c)]).collect();
        assert_eq!(lex, [0, -1, -1]);
    }

    #[test]
    fn entry_sums() {
        // prime powers give −deg p, anything else 0
        for (q, n, sum) in [(2, "0,0,1", -1), (2, "1,1,1", -2), (3, "1,0,1", -2), (2, "0,1,1", 0), (3, "0,2,1", 0)] {
            let n = poly(q, n);
            let v = elliptic_log(&full(&n), &n).unwrap();
            assert_eq!(v.sum(), rat(sum), "q={q} n={n}");
        }
    }

    #[test]
    fn l_star_examples() {
        let m = poly(2, "1,1,1");
        let l = full(&m);
        let v = elliptic_log(&l, &m).unwrap();
        let x = l_star(&v);
        assert_eq!(x.coeff(0), &(rat(2) / rat(3)));
        assert_eq!(x.augmentation(), rat(0));
        let flat = OrdVector::new(l.galois(), vec![rat(5); 3]);
        assert!(l_star(&flat).is_zero());
    }

    #[test]
    fn limit_formula_small_moduli() {
        for (q, n) in [(2, "0,1"), (2, "1,1,1"), (2, "0,1,1,1"), (2, "1,1,0,1"), (3, "1,0,1"), (3, "0,1,1"), (2, "0,0,1,1")] {
            let r = verify_limit_formula(&poly(q, n)).unwrap();
            assert!(r.all_pass(), "q={q} n={n}: {r:#?}");
        }
    }

    #[test]
    fn orientation_is_decided_by_a_degree_seven_field() {
        let n = poly(2, "1,1,0,1");
        let direct = limit_formula_checks(&n, Orientation::Direct).unwrap();
        let inverse = limit_formula_checks(&n, Orientation::Inverse).unwrap();
        assert_eq!(direct.all_pass(), ORIENTATION == Orientation::Direct);
        assert_eq!(inverse.all_pass(), ORIENTATION == Orientation::Inverse);
        // the quadratic-residue case cannot tell them apart
        let small = poly(2, "1,1,1");
        assert!(limit_formula_checks(&small, Orientation::Direct).unwrap().all_pass());
        assert!(limit_formula_checks(&small, Orientation::Inverse).unwrap().all_pass());
    }

    #[test]
    fn w_zeta_values() {
        assert_eq!(w_zeta_s_at_zero(2, &[1]).unwrap(), rat(-1));
        assert_eq!(w_zeta_s_at_zero(3, &[2]).unwrap(), rat(-2));
        assert_eq!(w_zeta_s_at_zero(3, &[1, 2]).unwrap(), rat(0));
        assert!(w_zeta_s_at_zero(2, &[]).is_err());
    }

    #[test]
    fn norm_relations_as_series() {
        let cases = [
            (2, "1", "0,1"),
            (2, "1", "1,1,1"),
            (2, "0,1", "1,1,1"),
            (2, "0,1,1,1", "1,1,1"),
            (2, "0,1", "0,1"),
            (3, "1", "1,0,1"),
            (3, "0,1", "1,1"),
            (3, "1,0,1", "0,1"),
        ];
        for (q, n, p) in cases {
            let c = verify_norm_relation(&poly(q, n), &poly(q, p), NORM_RELATION_TERMS).unwrap();
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn norm_relation_detects_a_wrong_side() {
        // α_n itself is not the norm when p ∤ n
        let field = Fq::new(2).unwrap();
        let (n, p) = (poly(2, "0,1"), poly(2, "1,1,1"));
        let np = &n * &p;
        let ray = ray_class_group(&np).unwrap();
        let ctx = CarlitzContext::new(&field, 60).unwrap();
        let mut lhs = LaurentSeries::one(&field);
        for c in ray.kernel_to(&n) {
            lhs = lhs.mul(&alpha_series(&ctx, &np, ray.rep(c)).unwrap());
        }
        let alpha_n = alpha_series(&ctx, &n, &Poly::one(&field)).unwrap();
        assert!(!lhs.agrees_with(&alpha_n, 20));
    }

    #[test]
    fn norm_relations_on_log_images() {
        let q2 = |s: &str| poly(2, s);
        let (a, b) = (q2("1,1,1"), q2("1,1,0,1"));
        let m = &a * &b;
        let ray = Arc::new(ray_class_group(&m).unwrap());
        for gens in [vec![], vec![1], vec![3]] {
            let l = field_from_kernel(ray.clone(), &gens);
            for (n, p) in [(q2("1"), a.clone()), (q2("1"), b.clone()), (a.clone(), b.clone()), (b.clone(), a.clone())] {
                let c = verify_norm_relation_log(&l, &n, &p).unwrap();
                assert!(c.pass, "{c:?}");
            }
        }
        let m = &q2("0,1") * &q2("0,1");
        let l = full(&(&m * &a));
        let c = verify_norm_relation_log(&l, &(&q2("0,1") * &a), &q2("0,1")).unwrap();
        assert!(c.pass, "{c:?}");
    }

    #[test]
    fn imglog_on_subfields() {
        let q2 = |s: &str| poly(2, s);
        let m = &q2("1,1,1") * &q2("0,1");
        let ray = Arc::new(ray_class_group(&m).unwrap());
        let l = AbelianFieldDatum::full(ray);
        for n in m.divisors().into_iter().filter(|n| !n.is_one()) {
            assert!(verify_imglog(&l, &n).unwrap().pass, "n = {n}");
        }
    }

    #[test]
    fn log_lattice_two_ways() {
        for (q, m) in [(2, "1,1,1"), (2, "0,1,1,1"), (3, "1,0,1"), (2, "1,1,0,1")] {
            let ll = p_l_log_lattice(&full(&poly(q, m))).unwrap();
            assert!(ll.agree(), "q={q} m={m}");
        }
        let ll = p_l_log_lattice(&full(&poly(2, "0,1"))).unwrap();
        assert_eq!((ll.direct.rank(), ll.formula.rank()), (0, 0));
    }
}
