//! Group rings R[G] of finite abelian groups and logarithmic ord-vectors.

use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Zero};

use crate::group::AbGroup;

/// Σ_σ c_σ σ, coefficients indexed by the element indices of `group`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElt<T> {
    group: AbGroup,
    coeffs: Vec<T>,
}

pub type QElt = GroupRingElt<BigRational>;
pub type ZElt = GroupRingElt<BigInt>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl<T: Num + Neg<Output = T> + Clone> GroupRingElt<T> {
    pub fn zero(group: &AbGroup) -> Self {
        GroupRingElt { group: group.clone(), coeffs: vec![T::zero(); group.order()] }
    }
    pub fn one(group: &AbGroup) -> Self {
        Self::basis(group, 0)
    }
    /// The group element σ (index `idx`) itself.
    pub fn basis(group: &AbGroup, idx: usize) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[idx] = T::one();
        x
    }
    pub fn from_coeffs(group: &AbGroup, coeffs: Vec<T>) -> Self {
        assert_eq!(coeffs.len(), group.order());
        GroupRingElt { group: group.clone(), coeffs }
    }
    /// s(U) = Σ_{σ∈U} σ.
    pub fn norm_element(group: &AbGroup, subgroup: &[usize]) -> Self {
        let mut x = Self::zero(group);
        for &s in subgroup {
            x.coeffs[s] = T::one();
        }
        x
    }
    pub fn group(&self) -> &AbGroup {
        &self.group
    }
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }
    pub fn coeff(&self, idx: usize) -> &T {
        &self.coeffs[idx]
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    pub fn add(&self, o: &Self) -> Self {
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        GroupRingElt { group: self.group.clone(), coeffs: c }
    }
    pub fn sub(&self, o: &Self) -> Self {
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        GroupRingElt { group: self.group.clone(), coeffs: c }
    }
    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|a| -a.clone()).collect();
        GroupRingElt { group: self.group.clone(), coeffs: c }
    }
    pub fn scale(&self, k: &T) -> Self {
        let c = self.coeffs.iter().map(|a| a.clone() * k.clone()).collect();
        GroupRingElt { group: self.group.clone(), coeffs: c }
    }
    /// x·σ.
    pub fn translate(&self, sigma: usize) -> Self {
        let mut c = vec![T::zero(); self.coeffs.len()];
        for (t, a) in self.coeffs.iter().enumerate() {
            c[self.group.add(t, sigma)] = a.clone();
        }
        GroupRingElt { group: self.group.clone(), coeffs: c }
    }
    pub fn mul(&self, o: &Self) -> Self {
        let g = &self.group;
        let mut c = vec![T::zero(); self.coeffs.len()];
        let support: Vec<(usize, &T)> =
            o.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()).collect();
        for (s, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(t, b) in &support {
                let st = g.add(s, t);
                c[st] = c[st].clone() + a.clone() * b.clone();
            }
        }
        GroupRingElt { group: g.clone(), coeffs: c }
    }
    /// The involution σ ↦ σ^{-1}.
    pub fn involution(&self) -> Self {
        let mut c = vec![T::zero(); self.coeffs.len()];
        for (s, a) in self.coeffs.iter().enumerate() {
            c[self.group.neg(s)] = a.clone();
        }
        GroupRingElt { group: self.group.clone(), coeffs: c }
    }
    /// Augmentation Σ c_σ.
    pub fn augmentation(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc + c.clone())
    }
    /// Push forward along a group homomorphism given as a table of images.
    pub fn push_forward(&self, target: &AbGroup, map: &[usize]) -> Self {
        let mut c = vec![T::zero(); target.order()];
        for (s, a) in self.coeffs.iter().enumerate() {
            c[map[s]] = c[map[s]].clone() + a.clone();
        }
        GroupRingElt { group: target.clone(), coeffs: c }
    }
    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> GroupRingElt<U> {
        GroupRingElt { group: self.group.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl QElt {
    /// e_U = s(U)/|U|.
    pub fn idempotent(group: &AbGroup, subgroup: &[usize]) -> QElt {
        QElt::norm_element(group, subgroup).scale(&BigRational::new(1.into(), subgroup.len().into()))
    }
    pub fn from_int(x: &ZElt) -> QElt {
        x.map(|c| BigRational::from_integer(c.clone()))
    }
    /// The integral element, if every coefficient is an integer.
    pub fn to_int(&self) -> Option<ZElt> {
        self.coeffs
            .iter()
            .all(|c| c.is_integer())
            .then(|| self.map(|c| c.to_integer()))
    }
}

/// The map σ ↦ ord_∞(x^σ) of an element x of a field with Galois group `group`.
/// Its logarithmic image is l(x) = Σ_σ ord_∞(x^σ) σ^{-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdVector {
    pub group: AbGroup,
    pub values: Vec<BigRational>,
}

impl OrdVector {
    pub fn new(group: &AbGroup, values: Vec<BigRational>) -> OrdVector {
        assert_eq!(values.len(), group.order());
        OrdVector { group: group.clone(), values }
    }
    /// l(x) ∈ Q[G].
    pub fn to_group_ring(&self) -> QElt {
        QElt::from_coeffs(&self.group, self.values.clone()).involution()
    }
    pub fn sum(&self) -> BigRational {
        self.values.iter().fold(BigRational::zero(), |a, b| a + b)
    }
    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }
    /// Entries as integers; `None` unless integral.
    pub fn integer_values(&self) -> Option<Vec<i64>> {
        self.values
            .iter()
            .map(|v| {
                let n = v.is_integer().then(|| v.to_integer())?;
                i64::try_from(n).ok()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotents_are_idempotent() {
        let g = AbGroup::new(vec![2, 6]);
        let h = g.span(&[g.gen(1)]);
        let e = QElt::idempotent(&g, &h);
        assert_eq!(e.mul(&e), e);
        let all: Vec<usize> = (0..g.order()).collect();
        let eg = QElt::idempotent(&g, &all);
        let x = QElt::from_coeffs(&g, (0..12).map(|i| rat(i * i - 3)).collect());
        assert_eq!(eg.mul(&x), eg.scale(&x.augmentation()));
    }

    #[test]
    fn involution_is_an_antiautomorphism_on_abelian_groups() {
        let g = AbGroup::new(vec![3, 3]);
        let x = ZElt::from_coeffs(&g, (0..9).map(|i| BigInt::from(i % 4 - 1)).collect());
        let y = ZElt::from_coeffs(&g, (0..9).map(|i| BigInt::from(2 - i % 3)).collect());
        assert_eq!(x.mul(&y).involution(), x.involution().mul(&y.involution()));
    }

    #[test]
    fn log_vector_inverts_indices() {
        let g = AbGroup::cyclic(3);
        let v = OrdVector::new(&g, vec![rat(0), rat(-1), rat(-2)]);
        let l = v.to_group_ring();
        assert_eq!(l.coeffs(), &[rat(0), rat(-2), rat(-1)]);
    }
}
