use std::fmt;
use std::sync::Mutex;

use crate::error::{CarlitzError, Result};
use crate::fieldpoly::{Fq, LaurentSeries, Poly, EXACT};

/// Largest relative precision the adaptive loops will try.
pub const PRECISION_CAP: i64 = 1 << 13;

/// Starting relative precision 4(q−1)(deg m + 2) for torsion of modulus degree `deg_m`.
pub fn default_precision(q: u32, deg_m: usize) -> i64 {
    4 * (q as i64 - 1) * (deg_m as i64 + 2)
}

/// Series data for the Carlitz exponential at a fixed relative precision.
///
/// The period is π̄ = T·(−T)^{1/(q−1)}·Π_{i≥1}(1 − T^{1−q^i})^{-1} with (−T)^{1/(q−1)} = u^{-1},
/// i.e. π̄ = −u^{−q}·Π_{i≥1}(1 − u^{(q−1)(q^i−1)})^{-1}.
pub struct CarlitzContext {
    field: Fq,
    precision: i64,
    period: LaurentSeries,
    factorials: Mutex<Vec<Poly>>,
    inv_factorials: Mutex<Vec<Option<LaurentSeries>>>,
}

impl fmt::Debug for CarlitzContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CarlitzContext")
            .field("q", &self.field.q())
            .field("precision", &self.precision)
            .finish()
    }
}

impl CarlitzContext {
    /// `precision` is the number of certified terms of the period (and of every
    /// e_C(π̄a/m) from its leading term on).
    pub fn new(field: &Fq, precision: i64) -> Result<CarlitzContext> {
        if precision < 1 {
            return Err(CarlitzError::Domain("precision must be positive".into()));
        }
        if precision > PRECISION_CAP {
            return Err(CarlitzError::PrecisionCap {
                cap: PRECISION_CAP as usize,
                what: "Carlitz period".into(),
            });
        }
        let period = period_product(field, precision, None);
        Ok(CarlitzContext {
            field: field.clone(),
            precision,
            period,
            factorials: Mutex::new(vec![Poly::one(field)]),
            inv_factorials: Mutex::new(Vec::new()),
        })
    }
    pub fn field(&self) -> &Fq {
        &self.field
    }
    pub fn precision(&self) -> i64 {
        self.precision
    }
    /// π̄ to relative precision `precision`.
    pub fn period(&self) -> &LaurentSeries {
        &self.period
    }
    /// D_i = (T^{q^i} − T)·D_{i−1}^q.
    pub fn factorial(&self, i: usize) -> Poly {
        let mut f = self.factorials.lock().unwrap();
        while f.len() <= i {
            let j = f.len() as u32;
            let q = self.field.q() as usize;
            let t_qj = Poly::monomial(&self.field, 1, q.pow(j));
            let next = &(&t_qj - &Poly::t(&self.field)) * &f.last().unwrap().frobenius();
            f.push(next);
        }
        f[i].clone()
    }
    fn inv_factorial(&self, i: usize, rel: i64) -> Result<LaurentSeries> {
        {
            let cache = self.inv_factorials.lock().unwrap();
            if let Some(Some(s)) = cache.get(i) {
                if s.rel_prec() >= rel {
                    return Ok(s.truncate(s.val_bound() + rel));
                }
            }
        }
        let d = LaurentSeries::from_poly(&self.factorial(i));
        let inv = d.inv(rel.max(1))?;
        let mut cache = self.inv_factorials.lock().unwrap();
        if cache.len() <= i {
            cache.resize(i + 1, None);
        }
        cache[i] = Some(inv.clone());
        Ok(inv)
    }

    /// e_C(z) = Σ_i z^{q^i}/D_i, certified to the absolute precision of z.
    /// An exact z is first truncated to `precision` terms past its leading term.
    pub fn exp_series(&self, z: &LaurentSeries) -> Result<LaurentSeries> {
        let q = self.field.q() as i64;
        let w = q - 1;
        if z.is_exact() && z.val().is_none() {
            return Ok(LaurentSeries::zero(&self.field));
        }
        let z = if z.is_exact() { z.truncate(z.val_bound() + self.precision) } else { z.clone() };
        let v = z.val_bound() as i128;
        let target = z.prec();
        let mut acc = LaurentSeries::zero(&self.field);
        for i in 0u32.. {
            let qi = (q as i128).checked_pow(i).filter(|&x| x < (1 << 40)).ok_or_else(|| {
                CarlitzError::PrecisionCap { cap: 40, what: "exponential series length".into() }
            })?;
            let vd = w as i128 * i as i128 * qi;
            let lb = qi * v + vd;
            if lb >= target as i128 && v + (w * i as i64) as i128 > 0 {
                break;
            }
            if lb >= target as i128 {
                continue;
            }
            let rel = target as i128 - lb;
            if rel > (PRECISION_CAP as i128) * 64 {
                return Err(CarlitzError::PrecisionCap {
                    cap: PRECISION_CAP as usize,
                    what: format!("term {i} of e_C needs {rel} coefficients"),
                });
            }
            let inv = self.inv_factorial(i as usize, rel as i64)?;
            let zq = z.frobenius_pow(i, target - vd as i64);
            acc = acc.add(&zq.mul(&inv));
        }
        Ok(acc.truncate(target.min(EXACT)))
    }
}

/// −u^{−q}·Π_{i ≥ 1, (q−1)(q^i−1) < bound}(1 − u^{(q−1)(q^i−1)})^{-1}, to relative precision
/// `precision`. `bound` defaults to `precision`; a larger bound includes factors that
/// cannot change any retained coefficient.
pub(crate) fn period_product(field: &Fq, precision: i64, bound: Option<i64>) -> LaurentSeries {
    let q = field.q() as i64;
    let w = q - 1;
    let bound = bound.unwrap_or(precision);
    let mut prod = LaurentSeries::one(field).truncate(precision);
    let mut qi = q;
    while w * (qi - 1) < bound {
        let e = w * (qi - 1);
        let mut c = vec![0; precision as usize];
        for k in (0..precision).step_by(e as usize) {
            c[k as usize] = 1;
        }
        prod = prod.mul(&LaurentSeries::from_coeffs(field, 0, c, precision));
        qi *= q;
    }
    LaurentSeries::monomial(field, field.neg(1), -q).mul(&prod)
}
