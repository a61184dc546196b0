//! Shared fixtures for the criterion benchmarks.

use std::sync::Arc;

use carlitz::annih::CyclicSetting;
use carlitz::classfield::{antidiagonal_subfield, cyclic_subfield};
use carlitz::{ray_class_group, AbelianFieldDatum, Fq, Poly};

pub fn poly(q: u32, s: &str) -> Poly {
    Poly::parse(&Fq::new(q).unwrap(), s).unwrap()
}

/// H_m, the full real ray class field of conductor m.
pub fn full(q: u32, m: &str) -> AbelianFieldDatum {
    AbelianFieldDatum::full(Arc::new(ray_class_group(&poly(q, m)).unwrap()))
}

/// The degree-7 field over F_2 ramified at T³+T+1 and T³+T²+1.
pub fn septic() -> AbelianFieldDatum {
    antidiagonal_subfield(&poly(2, "1,1,0,1"), &poly(2, "1,0,1,1")).unwrap()
}

/// The cubic field over F_2 ramified at T²+T+1 and T⁴+T+1.
pub fn cubic() -> CyclicSetting {
    let l = cyclic_subfield(&[poly(2, "1,1,1"), poly(2, "1,1,0,0,1")], 3, 1, &[1, 1]).unwrap();
    CyclicSetting::new(&l).unwrap()
}

/// A degree-24 prime of F_2[T] that lies in Q_9 for [`cubic`].
pub const Q24: &str = "1,1,1,1,1,1,0,1,0,0,1,1,1,0,0,0,0,0,0,0,0,0,0,0,1";
