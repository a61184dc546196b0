//! The Carlitz module ρ_T = T + τ, its exponential and period, and its torsion.

mod exp;
mod torsion;

use std::fmt;

use crate::fieldpoly::{FiniteField, Fq, LaurentSeries, Poly};

pub use exp::{default_precision, CarlitzContext, PRECISION_CAP};
pub use torsion::{
    alpha_ord_vector, alpha_ord_vector_adaptive, torsion_conjugate_ord, torsion_in_residue_field,
    torsion_series, TorsionLabel, TorsionSplitting,
};

/// Σ c_i τ^i with c_i ∈ F_q[T], τ the q-power Frobenius.
#[derive(Clone, PartialEq, Eq)]
pub struct TwistedPoly {
    field: Fq,
    c: Vec<Poly>,
}

impl fmt::Debug for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.c.iter().enumerate().map(|(i, c)| format!("({c})τ^{i}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl TwistedPoly {
    fn trimmed(field: &Fq, mut c: Vec<Poly>) -> TwistedPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        TwistedPoly { field: field.clone(), c }
    }
    pub fn from_coeffs(field: &Fq, c: Vec<Poly>) -> TwistedPoly {
        TwistedPoly::trimmed(field, c)
    }
    pub fn zero(field: &Fq) -> TwistedPoly {
        TwistedPoly { field: field.clone(), c: Vec::new() }
    }
    pub fn scalar(a: &Poly) -> TwistedPoly {
        TwistedPoly::trimmed(a.field(), vec![a.clone()])
    }
    pub fn coeffs(&self) -> &[Poly] {
        &self.c
    }
    /// τ-degree; −1 is reported as `None`.
    pub fn tau_degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// D(ρ) = c_0.
    pub fn differential(&self) -> Poly {
        self.c.first().cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }
    pub fn add(&self, o: &TwistedPoly) -> TwistedPoly {
        let n = self.c.len().max(o.c.len());
        let z = Poly::zero(&self.field);
        let c = (0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect();
        TwistedPoly::trimmed(&self.field, c)
    }
    /// self ∘ o: (Σ c_i τ^i)(Σ d_j τ^j) = Σ c_i d_j^{q^i} τ^{i+j}.
    pub fn compose(&self, o: &TwistedPoly) -> TwistedPoly {
        if self.c.is_empty() || o.c.is_empty() {
            return TwistedPoly::zero(&self.field);
        }
        let mut out = vec![Poly::zero(&self.field); self.c.len() + o.c.len() - 1];
        let mut d: Vec<Poly> = o.c.clone();
        for (i, ci) in self.c.iter().enumerate() {
            if i > 0 {
                d = d.iter().map(|x| x.frobenius()).collect();
            }
            for (j, dj) in d.iter().enumerate() {
                out[i + j] = &out[i + j] + &(ci * dj);
            }
        }
        TwistedPoly::trimmed(&self.field, out)
    }
    /// Σ c_i x^{q^i} for a Laurent series x.
    pub fn eval_series(&self, x: &LaurentSeries) -> LaurentSeries {
        let mut acc = LaurentSeries::zero(x.field());
        let mut xp = x.clone();
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                xp = xp.frobenius();
            }
            acc = acc.add(&LaurentSeries::from_poly(c).mul(&xp));
        }
        acc
    }
    /// Σ c_i x^{q^i} in a finite field with T ↦ θ.
    pub fn eval_in<F: FiniteField>(&self, k: &F, x: &F::E) -> F::E {
        let mut acc = k.zero();
        let mut xp = x.clone();
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                xp = k.frob(&xp);
            }
            acc = k.add(&acc, &k.mul(&k.embed(c), &xp));
        }
        acc
    }
}

/// ρ_a, built by Horner's rule from ρ_T = T + τ.
pub fn carlitz_action(a: &Poly) -> TwistedPoly {
    let field = a.field();
    let rho_t = TwistedPoly::from_coeffs(field, vec![Poly::t(field), Poly::one(field)]);
    let mut r = TwistedPoly::zero(field);
    for &c in a.coeffs().iter().rev() {
        r = rho_t.compose(&r).add(&TwistedPoly::scalar(&Poly::constant(field, c)));
    }
    r
}

/// ρ_a(x) in a finite field, by Horner's rule with ρ_T(y) = θy + y^q; linear in deg a.
pub fn carlitz_eval<F: FiniteField>(k: &F, a: &Poly, x: &F::E) -> F::E {
    let th = k.theta();
    let mut r = k.zero();
    for &c in a.coeffs().iter().rev() {
        let rt = k.add(&k.mul(&th, &r), &k.frob(&r));
        r = k.add(&rt, &k.mul(&k.constant(c), x));
    }
    r
}
