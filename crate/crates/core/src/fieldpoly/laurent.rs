use std::fmt;

use num_rational::Ratio;

use super::fq::{Fe, Fq};
use super::poly::Poly;
use crate::error::{CarlitzError, Result};

/// Absolute precision of series that are known exactly (finite sums of monomials).
pub const EXACT: i64 = i64::MAX / 4;

/// Truncated Laurent series Σ c_e u^e over F_q in the uniformizer u with u^{q−1} = −1/T,
/// so that ord_∞(u) = 1/(q−1) and K_∞ embeds as the series supported on (q−1)Z.
///
/// Coefficients of u^e are known for e < `prec`; those beyond the stored vector are zero.
/// A nonzero known leading coefficient is stored first, so `start` is the certified
/// valuation. When every known coefficient vanishes the vector is empty and `start == prec`.
#[derive(Clone)]
pub struct LaurentSeries {
    field: Fq,
    start: i64,
    coeffs: Vec<Fe>,
    prec: i64,
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate().take(12) {
            if *c != 0 {
                write!(f, "{c}u^{} + ", self.start + i as i64)?;
            }
        }
        if self.prec >= EXACT {
            write!(f, "exact]")
        } else {
            write!(f, "O(u^{})]", self.prec)
        }
    }
}

impl LaurentSeries {
    fn normalized(field: &Fq, start: i64, mut coeffs: Vec<Fe>, prec: i64) -> LaurentSeries {
        let avail = (prec.saturating_sub(start)).max(0) as usize;
        coeffs.truncate(avail);
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|&c| c != 0);
        match lead {
            None => LaurentSeries { field: field.clone(), start: prec, coeffs: Vec::new(), prec },
            Some(k) => LaurentSeries {
                field: field.clone(),
                start: start + k as i64,
                coeffs: coeffs.split_off(k),
                prec,
            },
        }
    }
    /// Series with coefficients `coeffs` starting at u^start, known to absolute precision `prec`.
    pub fn from_coeffs(field: &Fq, start: i64, coeffs: Vec<Fe>, prec: i64) -> LaurentSeries {
        LaurentSeries::normalized(field, start, coeffs, prec)
    }
    pub fn zero(field: &Fq) -> LaurentSeries {
        LaurentSeries::normalized(field, 0, Vec::new(), EXACT)
    }
    pub fn one(field: &Fq) -> LaurentSeries {
        LaurentSeries::monomial(field, 1, 0)
    }
    /// Exact monomial a·u^k.
    pub fn monomial(field: &Fq, a: Fe, k: i64) -> LaurentSeries {
        LaurentSeries::normalized(field, k, vec![a], EXACT)
    }
    /// Exact image of a polynomial in T, using T = −u^{−(q−1)}.
    pub fn from_poly(p: &Poly) -> LaurentSeries {
        let field = p.field();
        let w = field.q() as i64 - 1;
        if p.is_zero() {
            return LaurentSeries::zero(field);
        }
        let d = p.deg() as i64;
        let mut coeffs = vec![0; (d * w + 1) as usize];
        for (k, &c) in p.coeffs().iter().enumerate() {
            let c = if k % 2 == 1 { field.neg(c) } else { c };
            coeffs[((d - k as i64) * w) as usize] = c;
        }
        LaurentSeries::normalized(field, -d * w, coeffs, EXACT)
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }
    /// Absolute precision: coefficients of u^e with e < prec are certified.
    pub fn prec(&self) -> i64 {
        self.prec
    }
    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }
    /// Certified valuation in units of 1/(q−1), if the leading term is within precision.
    pub fn val(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }
    /// Lower bound for the valuation.
    pub fn val_bound(&self) -> i64 {
        self.start
    }
    /// Number of certified terms from the leading term on.
    pub fn rel_prec(&self) -> i64 {
        self.prec.saturating_sub(self.start)
    }
    /// ord_∞ = val/(q−1).
    pub fn ord(&self) -> Result<Ratio<i64>> {
        let v = self.val().ok_or_else(|| {
            CarlitzError::InsufficientPrecision(format!(
                "no nonzero coefficient below u^{}",
                self.prec
            ))
        })?;
        Ok(Ratio::new(v, self.field.q() as i64 - 1))
    }
    /// Known coefficient of u^e; `None` beyond precision.
    pub fn coeff(&self, e: i64) -> Option<Fe> {
        if e >= self.prec {
            return None;
        }
        if e < self.start {
            return Some(0);
        }
        Some(self.coeffs.get((e - self.start) as usize).copied().unwrap_or(0))
    }
    pub fn lead(&self) -> Option<Fe> {
        self.coeffs.first().copied()
    }
    /// Drop everything from u^limit on.
    pub fn truncate(&self, limit: i64) -> LaurentSeries {
        LaurentSeries::normalized(&self.field, self.start, self.coeffs.clone(), self.prec.min(limit))
    }
    /// Equality of all coefficients certified in both operands, with at least `min_terms`
    /// of them counted from the smaller valuation.
    pub fn agrees_with(&self, other: &LaurentSeries, min_terms: i64) -> bool {
        let prec = self.prec.min(other.prec);
        let lo = self.start.min(other.start);
        if prec.saturating_sub(lo) < min_terms {
            return false;
        }
        (lo..prec.min(lo.saturating_add(1 << 24))).all(|e| self.coeff(e) == other.coeff(e))
    }

    pub fn neg(&self) -> LaurentSeries {
        let f = &self.field;
        let c = self.coeffs.iter().map(|&a| f.neg(a)).collect();
        LaurentSeries { field: f.clone(), start: self.start, coeffs: c, prec: self.prec }
    }
    pub fn scale(&self, a: Fe) -> LaurentSeries {
        let f = &self.field;
        let c = self.coeffs.iter().map(|&x| f.mul(x, a)).collect();
        LaurentSeries::normalized(f, self.start, c, self.prec)
    }
    /// Multiply by u^k.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        LaurentSeries {
            field: self.field.clone(),
            start: self.start + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec.saturating_add(k).min(EXACT),
        }
    }

    pub fn add(&self, o: &LaurentSeries) -> LaurentSeries {
        self.combine(o, false)
    }
    pub fn sub(&self, o: &LaurentSeries) -> LaurentSeries {
        self.combine(o, true)
    }
    fn combine(&self, o: &LaurentSeries, negate: bool) -> LaurentSeries {
        let f = &self.field;
        let prec = self.prec.min(o.prec);
        let lo = self.start.min(o.start);
        let hi = (self.start + self.coeffs.len() as i64)
            .max(o.start + o.coeffs.len() as i64)
            .min(prec);
        if hi <= lo {
            return LaurentSeries::normalized(f, prec, Vec::new(), prec);
        }
        let mut c = vec![0; (hi - lo) as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            let e = self.start + i as i64;
            if e < hi {
                c[(e - lo) as usize] = a;
            }
        }
        for (i, &b) in o.coeffs.iter().enumerate() {
            let e = o.start + i as i64;
            if e < hi {
                let slot = &mut c[(e - lo) as usize];
                *slot = if negate { f.sub(*slot, b) } else { f.add(*slot, b) };
            }
        }
        LaurentSeries::normalized(f, lo, c, prec)
    }

    pub fn mul(&self, o: &LaurentSeries) -> LaurentSeries {
        let f = &self.field;
        let prec = self.prec.saturating_add(o.start).min(o.prec.saturating_add(self.start)).min(EXACT);
        let lo = self.start + o.start;
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return LaurentSeries::normalized(f, prec, Vec::new(), prec);
        }
        let full = self.coeffs.len() + o.coeffs.len() - 1;
        let len = ((prec - lo).max(0) as usize).min(full);
        let mut c = vec![0; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a == 0 {
                continue;
            }
            let row = &mut c[i..];
            for (slot, &b) in row.iter_mut().zip(&o.coeffs) {
                *slot = f.add(*slot, f.mul(a, b));
            }
        }
        LaurentSeries::normalized(f, lo, c, prec)
    }

    /// Multiplicative inverse, keeping at most `max_rel` terms.
    pub fn inv(&self, max_rel: i64) -> Result<LaurentSeries> {
        let f = &self.field;
        let v = self.val().ok_or_else(|| {
            CarlitzError::InsufficientPrecision("cannot invert a series with no certified term".into())
        })?;
        let rel = self.rel_prec().min(max_rel);
        let n = rel as usize;
        let a0i = f.inv(self.coeffs[0]);
        let mut b = vec![0; n];
        if n > 0 {
            b[0] = a0i;
        }
        for k in 1..n {
            let mut s = 0;
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s = f.add(s, f.mul(self.coeffs[j], b[k - j]));
            }
            b[k] = f.neg(f.mul(s, a0i));
        }
        Ok(LaurentSeries::normalized(f, -v, b, -v + rel))
    }
    pub fn div(&self, o: &LaurentSeries, max_rel: i64) -> Result<LaurentSeries> {
        Ok(self.mul(&o.inv(max_rel)?))
    }
    pub fn pow(&self, mut n: u64) -> LaurentSeries {
        let mut r = LaurentSeries::one(&self.field);
        let mut b = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                r = r.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        r
    }
    /// x^q, exact in characteristic p: Σ c_e^q u^{qe}.
    pub fn frobenius(&self) -> LaurentSeries {
        let f = &self.field;
        let q = f.q() as i64;
        if self.coeffs.is_empty() {
            let p = self.prec.saturating_mul(q).min(EXACT);
            return LaurentSeries::normalized(f, p, Vec::new(), p);
        }
        let mut c = vec![0; (self.coeffs.len() - 1) * q as usize + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            c[i * q as usize] = f.pow(a, q as u64);
        }
        LaurentSeries::normalized(f, self.start * q, c, self.prec.saturating_mul(q).min(EXACT))
    }
    /// x^{q^k} = Σ c_e^{q^k} u^{q^k e}, never materialising terms at or beyond `limit`.
    pub fn frobenius_pow(&self, k: u32, limit: i64) -> LaurentSeries {
        let f = &self.field;
        let qk = (f.q() as i64).checked_pow(k).expect("Frobenius power overflow");
        let prec = self.prec.saturating_mul(qk).min(EXACT).min(limit);
        let start = self.start.saturating_mul(qk);
        if self.coeffs.is_empty() || start >= prec {
            return LaurentSeries::normalized(f, prec, Vec::new(), prec);
        }
        let len = ((prec - start) as usize).min((self.coeffs.len() - 1) * qk as usize + 1);
        let mut c = vec![0; len];
        let e = (f.q() as u64).pow(k);
        for (i, &a) in self.coeffs.iter().enumerate() {
            let pos = i * qk as usize;
            if pos >= len {
                break;
            }
            c[pos] = f.pow(a, e);
        }
        LaurentSeries::normalized(f, start, c, prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ord_of_t_is_minus_one() {
        for q in [2, 3, 4, 5] {
            let f = Fq::new(q).unwrap();
            let t = LaurentSeries::from_poly(&Poly::t(&f));
            assert_eq!(t.ord().unwrap(), Ratio::from_integer(-1));
            let u3 = LaurentSeries::monomial(&f, 1, 3);
            assert_eq!(u3.ord().unwrap(), Ratio::new(3, q as i64 - 1));
        }
    }

    #[test]
    fn u_power_is_minus_inverse_t() {
        let f = Fq::new(5).unwrap();
        let u4 = LaurentSeries::monomial(&f, 1, 4);
        let t = LaurentSeries::from_poly(&Poly::t(&f));
        let prod = u4.mul(&t);
        assert!(prod.agrees_with(&LaurentSeries::one(&f).neg(), 1));
    }

    #[test]
    fn inverse_of_one_minus_u() {
        let f = Fq::new(3).unwrap();
        let x = LaurentSeries::from_coeffs(&f, 0, vec![1, f.neg(1)], 40);
        let y = x.inv(100).unwrap();
        let one = x.mul(&y);
        assert_eq!(one.prec(), 40);
        assert!(one.agrees_with(&LaurentSeries::one(&f), 40));
    }

    #[test]
    fn precision_of_zero_difference() {
        let f = Fq::new(2).unwrap();
        let x = LaurentSeries::from_coeffs(&f, -2, vec![1, 1, 0, 1], 5);
        let d = x.sub(&x);
        assert_eq!(d.val(), None);
        assert!(d.ord().is_err());
        assert_eq!(d.prec(), 5);
    }
}
