//! Elliptic units, Sinnott's module and the cyclic p^k annihilation machinery for the
//! Carlitz cyclotomic function fields over K = F_q(T).

// row reduction reads more clearly with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod annih;
pub mod carlitz;
pub mod classfield;
pub mod error;
pub mod fieldpoly;
pub mod group;
pub mod groupring;
pub mod lattice;
pub mod lfun;
pub mod report;
pub mod sinnott;
pub mod units;

pub use classfield::{ray_class_group, AbelianFieldDatum, RayClassGroup};
pub use error::{CarlitzError, Result};
pub use fieldpoly::{Fe, Fq, LaurentSeries, Poly, UnitGroupData};
pub use group::AbGroup;
pub use groupring::{GroupRingElt, OrdVector, QElt, ZElt};
pub use report::{Check, Report};
