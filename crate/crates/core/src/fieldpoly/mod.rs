//! Arithmetic in F_q, F_q[T] and the completion at ∞.

pub mod ext;
pub mod fq;
pub mod laurent;
pub mod poly;
pub mod unitgroup;

pub use ext::{ExtField, FiniteField, ResidueField};
pub use fq::{Fe, Fq};
pub use laurent::{LaurentSeries, EXACT};
pub use poly::{monic_enumerate, monic_irreducibles, Poly};
pub use unitgroup::{unit_group, unit_group_order, UnitGroupData};
