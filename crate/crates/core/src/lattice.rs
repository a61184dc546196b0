//! Lattices in Q^n given by generators, Hermite normal form, and the generalized index
//! [A:B] = |det γ| for γ(A) = B.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CarlitzError, Result};

/// Row-style Hermite normal form: `rows[i]` has its first nonzero entry, positive, in
/// column `pivots[i]`; pivots increase and entries above a pivot lie in [0, pivot).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub ncols: usize,
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

fn axpy(y: &mut [BigInt], a: &BigInt, x: &[BigInt], from: usize) {
    for (yi, xi) in y[from..].iter_mut().zip(&x[from..]) {
        if !xi.is_zero() {
            *yi -= a * xi;
        }
    }
}

impl Hnf {
    pub fn empty(ncols: usize) -> Hnf {
        Hnf { ncols, rows: Vec::new(), pivots: Vec::new() }
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    /// Adds one generator, keeping echelon form (not yet Hermite-reduced).
    pub fn insert(&mut self, mut r: Vec<BigInt>) {
        assert_eq!(r.len(), self.ncols);
        let mut c = 0;
        loop {
            while c < self.ncols && r[c].is_zero() {
                c += 1;
            }
            if c == self.ncols {
                return;
            }
            match self.pivots.binary_search(&c) {
                Ok(i) => {
                    let b = &mut self.rows[i];
                    let (bc, rc) = (b[c].clone(), r[c].clone());
                    if rc.is_multiple_of(&bc) {
                        let f = &rc / &bc;
                        axpy(&mut r, &f, b, c);
                    } else {
                        let eg = bc.extended_gcd(&rc);
                        let (g, s, t) = (eg.gcd, eg.x, eg.y);
                        let (bq, rq) = (&bc / &g, &rc / &g);
                        let nb: Vec<BigInt> =
                            b.iter().zip(&r).map(|(x, y)| &s * x + &t * y).collect();
                        let nr: Vec<BigInt> =
                            b.iter().zip(&r).map(|(x, y)| &bq * y - &rq * x).collect();
                        *b = nb;
                        r = nr;
                        self.reduce_row(i);
                    }
                    c += 1;
                }
                Err(i) => {
                    if r[c].is_negative() {
                        for x in r.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    self.rows.insert(i, r);
                    self.pivots.insert(i, c);
                    self.reduce_row(i);
                    return;
                }
            }
        }
    }
    /// Reduces row i modulo the rows with later pivots.
    fn reduce_row(&mut self, i: usize) {
        let (head, tail) = self.rows.split_at_mut(i + 1);
        let row = &mut head[i];
        if row[self.pivots[i]].is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
        for (b, &c) in tail.iter().zip(&self.pivots[i + 1..]) {
            if !row[c].is_zero() {
                let f = row[c].div_floor(&b[c]);
                axpy(row, &f, b, c);
            }
        }
    }
    /// Hermite reduction of every row.
    pub fn reduce(&mut self) {
        for i in (0..self.rows.len()).rev() {
            self.reduce_row(i);
        }
    }
    /// Π of the pivots: the covolume of the lattice inside the coordinate subspace on
    /// the pivot columns.
    pub fn pivot_product(&self) -> BigInt {
        self.rows.iter().zip(&self.pivots).map(|(r, &c)| r[c].clone()).product()
    }
}

pub fn hnf(ncols: usize, gens: impl IntoIterator<Item = Vec<BigInt>>) -> Hnf {
    let mut h = Hnf::empty(ncols);
    for g in gens {
        h.insert(g);
    }
    h.reduce();
    h
}

/// A finitely generated subgroup of Q^n, stored as an integral HNF with a common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub dim: usize,
    pub denom: BigInt,
    pub hnf: Hnf,
}

impl LatticeBasis {
    pub fn from_rational(dim: usize, gens: &[Vec<BigRational>]) -> LatticeBasis {
        let denom = gens
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints = gens.iter().map(|g| {
            g.iter().map(|x| (x * BigRational::from_integer(denom.clone())).to_integer()).collect()
        });
        LatticeBasis { dim, denom: denom.clone(), hnf: hnf(dim, ints) }
    }
    pub fn from_integer(dim: usize, gens: impl IntoIterator<Item = Vec<BigInt>>) -> LatticeBasis {
        LatticeBasis { dim, denom: BigInt::one(), hnf: hnf(dim, gens) }
    }
    /// Z^n.
    pub fn standard(dim: usize) -> LatticeBasis {
        LatticeBasis::from_integer(
            dim,
            (0..dim).map(|i| (0..dim).map(|j| BigInt::from((i == j) as i32)).collect()),
        )
    }
    pub fn rank(&self) -> usize {
        self.hnf.rank()
    }
    /// Basis vectors with rational entries.
    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        self.hnf
            .rows
            .iter()
            .map(|r| r.iter().map(|x| BigRational::new(x.clone(), self.denom.clone())).collect())
            .collect()
    }
    /// The lattice generated by this one and `other`.
    pub fn sum(&self, other: &LatticeBasis) -> LatticeBasis {
        let mut g = self.basis();
        g.extend(other.basis());
        LatticeBasis::from_rational(self.dim, &g)
    }
    pub fn same_span(&self, other: &LatticeBasis) -> bool {
        let r = self.rank();
        r == other.rank() && self.sum(other).rank() == r
    }
}

/// [A:B] = |det γ| for an automorphism γ of QA = QB with γ(A) = B; the group index when B ⊆ A.
pub fn lattice_index(a: &LatticeBasis, b: &LatticeBasis) -> Result<BigRational> {
    if !a.same_span(b) {
        return Err(CarlitzError::RankDeficient { rank: b.rank().min(a.rank()), dim: a.rank() });
    }
    let r = a.rank();
    if r == 0 {
        return Ok(BigRational::one());
    }
    // projection to A's pivot coordinates is injective on the common span
    let cols = &a.hnf.pivots;
    let proj = hnf(r, b.hnf.rows.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()));
    if proj.rank() < r {
        return Err(CarlitzError::RankDeficient { rank: proj.rank(), dim: r });
    }
    let det_b = proj.pivot_product();
    let det_a = a.hnf.pivot_product();
    let scale = BigRational::new(a.denom.clone(), b.denom.clone());
    Ok(BigRational::new(det_b, det_a) * num_traits::pow(scale, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_hermite_forms() {
        let h = hnf(2, vec![ints(&[2, 0]), ints(&[0, 3]), ints(&[4, 6])]);
        assert_eq!(h.pivots, vec![0, 1]);
        assert_eq!(h.pivot_product(), BigInt::from(6));
        let h = hnf(2, vec![ints(&[4, 1]), ints(&[6, 1])]);
        assert_eq!(h.rows, vec![ints(&[2, 0]), ints(&[0, 1])]);
    }

    #[test]
    fn trivial_indices() {
        let a = LatticeBasis::standard(2);
        assert_eq!(lattice_index(&a, &a).unwrap(), BigRational::one());
        let b = LatticeBasis::from_integer(2, vec![ints(&[2, 0]), ints(&[0, 2])]);
        assert_eq!(lattice_index(&a, &b).unwrap(), BigRational::from_integer(4.into()));
        assert_eq!(lattice_index(&b, &a).unwrap(), BigRational::new(1.into(), 4.into()));
        let line = LatticeBasis::from_integer(2, vec![ints(&[1, 1])]);
        assert!(lattice_index(&a, &line).is_err());
    }

    #[test]
    fn index_inside_a_hyperplane() {
        // augmentation-zero vectors of Z^3, and the sublattice spanned by 2(e0 − e1), e1 − e2
        let r0 = LatticeBasis::from_integer(3, vec![ints(&[1, -1, 0]), ints(&[0, 1, -1])]);
        let sub = LatticeBasis::from_integer(3, vec![ints(&[2, -2, 0]), ints(&[0, 1, -1])]);
        assert_eq!(lattice_index(&r0, &sub).unwrap(), BigRational::from_integer(2.into()));
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-6i64..7, 3), 3)
    }

    proptest! {
        #[test]
        fn index_is_multiplicative(a in arb_matrix(), b in arb_matrix()) {
            // A = Z^3, B = M_a Z^3, C = M_b M_a Z^3
            let to_rows = |m: &Vec<Vec<i64>>| m.iter().map(|r| ints(r)).collect::<Vec<_>>();
            let det = |m: &Vec<Vec<i64>>| {
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            };
            prop_assume!(det(&a) != 0 && det(&b) != 0);
            let ab: Vec<Vec<i64>> = (0..3)
                .map(|i| (0..3).map(|j| (0..3).map(|k| b[i][k] * a[k][j]).sum()).collect())
                .collect();
            let la = LatticeBasis::standard(3);
            let lb = LatticeBasis::from_integer(3, to_rows(&a));
            let lc = LatticeBasis::from_integer(3, to_rows(&ab));
            let ib = lattice_index(&la, &lb).unwrap();
            let ic = lattice_index(&lb, &lc).unwrap();
            prop_assert_eq!(&ib * &ic, lattice_index(&la, &lc).unwrap());
            prop_assert_eq!(ib, BigRational::from_integer(det(&a).abs().into()));
        }
    }
}
