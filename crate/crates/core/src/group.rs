//! Finite abelian groups Z/d_1 × … × Z/d_r with d_1 | d_2 | … and small-integer
//! Smith normal form with column transforms.

use serde::{Deserialize, Serialize};

/// Finite abelian group in invariant-factor form. Elements are indexed by mixed radix
/// with the first coordinate least significant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbGroup {
    inv: Vec<u64>,
}

impl AbGroup {
    /// `inv` must be a divisibility chain of integers ≥ 2 (entries equal to 1 are dropped).
    pub fn new(inv: Vec<u64>) -> AbGroup {
        let inv: Vec<u64> = inv.into_iter().filter(|&d| d != 1).collect();
        debug_assert!(inv.windows(2).all(|w| w[1] % w[0] == 0), "not a divisibility chain");
        AbGroup { inv }
    }
    pub fn trivial() -> AbGroup {
        AbGroup { inv: Vec::new() }
    }
    pub fn cyclic(n: u64) -> AbGroup {
        AbGroup::new(vec![n])
    }
    pub fn invariants(&self) -> &[u64] {
        &self.inv
    }
    pub fn rank(&self) -> usize {
        self.inv.len()
    }
    pub fn order(&self) -> usize {
        self.inv.iter().product::<u64>() as usize
    }
    pub fn exponent(&self) -> u64 {
        self.inv.last().copied().unwrap_or(1)
    }
    pub fn is_cyclic(&self) -> bool {
        self.inv.len() <= 1
    }
    pub fn index(&self, x: &[u64]) -> usize {
        let mut idx = 0usize;
        for (i, &d) in self.inv.iter().enumerate().rev() {
            idx = idx * d as usize + (x[i] % d) as usize;
        }
        idx
    }
    /// Index of an integer vector, reducing each coordinate.
    pub fn index_i64(&self, x: &[i64]) -> usize {
        let mut idx = 0usize;
        for (i, &d) in self.inv.iter().enumerate().rev() {
            idx = idx * d as usize + x[i].rem_euclid(d as i64) as usize;
        }
        idx
    }
    pub fn elem(&self, mut idx: usize) -> Vec<u64> {
        self.inv
            .iter()
            .map(|&d| {
                let c = (idx % d as usize) as u64;
                idx /= d as usize;
                c
            })
            .collect()
    }
    pub fn add(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let (mut idx, mut mul) = (0usize, 1usize);
        for &d in &self.inv {
            let d = d as usize;
            idx += ((a % d + b % d) % d) * mul;
            mul *= d;
            a /= d;
            b /= d;
        }
        idx
    }
    pub fn neg(&self, a: usize) -> usize {
        let mut a = a;
        let (mut idx, mut mul) = (0usize, 1usize);
        for &d in &self.inv {
            let d = d as usize;
            idx += ((d - a % d) % d) * mul;
            mul *= d;
            a /= d;
        }
        idx
    }
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }
    /// k·a for an integer k.
    pub fn mul(&self, a: usize, k: i64) -> usize {
        let x: Vec<i64> = self.elem(a).iter().map(|&c| c as i64 * k).collect();
        self.index_i64(&x)
    }
    pub fn element_order(&self, a: usize) -> u64 {
        self.inv
            .iter()
            .zip(self.elem(a))
            .map(|(&d, c)| d / num_integer::gcd(d, c))
            .fold(1, num_integer::lcm)
    }
    /// Standard generator e_i as an index.
    pub fn gen(&self, i: usize) -> usize {
        let mut x = vec![0; self.rank()];
        x[i] = 1;
        self.index(&x)
    }
    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn span(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0usize];
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    frontier.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }
    /// Quotient by the subgroup generated by `gens` (as indices of this group).
    pub fn quotient(&self, gens: &[usize]) -> Quotient {
        let r = self.rank();
        let mut rel: Vec<Vec<i128>> = Vec::new();
        for (i, &d) in self.inv.iter().enumerate() {
            let mut row = vec![0i128; r];
            row[i] = d as i128;
            rel.push(row);
        }
        for &g in gens {
            rel.push(self.elem(g).iter().map(|&c| c as i128).collect());
        }
        quotient_of_lattice(r, rel)
    }
}

/// Quotient Z^r / rowspan(rel) (assumed finite) with the projection matrix.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: AbGroup,
    /// r × t matrix: base coordinates x map to x·proj reduced by the target invariants.
    pub proj: Vec<Vec<i64>>,
    /// t × r matrix: row j is a base vector mapping to the j-th standard generator.
    pub lift: Vec<Vec<i64>>,
}

impl Quotient {
    pub fn apply(&self, x: &[i64]) -> usize {
        let t = self.group.rank();
        let mut y = vec![0i64; t];
        for (xi, row) in x.iter().zip(&self.proj) {
            if *xi == 0 {
                continue;
            }
            for j in 0..t {
                let d = self.group.inv[j] as i64;
                y[j] = (y[j] + (xi.rem_euclid(d)) * row[j]).rem_euclid(d);
            }
        }
        self.group.index_i64(&y)
    }
}

/// Hermite-style row reduction of a relation list down to at most r rows.
fn reduce_rows(r: usize, rows: Vec<Vec<i128>>) -> Vec<Vec<i128>> {
    let mut basis: Vec<Option<Vec<i128>>> = vec![None; r];
    for mut v in rows {
        for c in 0..r {
            if v[c] == 0 {
                continue;
            }
            match basis[c].take() {
                None => {
                    if v[c] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    basis[c] = Some(v);
                    break;
                }
                Some(b) => {
                    let (g, s, t) = xgcd(b[c], v[c]);
                    let (bc, vc) = (b[c] / g, v[c] / g);
                    let nb: Vec<i128> = (0..r).map(|i| s * b[i] + t * v[i]).collect();
                    let nv: Vec<i128> = (0..r).map(|i| bc * v[i] - vc * b[i]).collect();
                    basis[c] = Some(nb);
                    v = nv;
                }
            }
        }
    }
    // Keep entries small by reducing each row modulo the pivots below it.
    let mut out: Vec<Vec<i128>> = basis.into_iter().flatten().collect();
    out.sort_by_key(|row| row.iter().position(|&x| x != 0).unwrap_or(r));
    for i in (0..out.len()).rev() {
        let pc = out[i].iter().position(|&x| x != 0).unwrap();
        let piv = out[i][pc];
        for j in 0..i {
            let k = out[j][pc].div_euclid(piv);
            if k != 0 {
                let (lo, hi) = out.split_at_mut(i);
                for (a, b) in lo[j].iter_mut().zip(&hi[0]) {
                    *a -= k * b;
                }
            }
        }
    }
    out
}

fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Smith normal form of a matrix with column transforms: U·A·V = diag(d).
pub struct SmallSmith {
    pub diag: Vec<i128>,
    pub v: Vec<Vec<i128>>,
    pub vinv: Vec<Vec<i128>>,
}

pub fn small_smith(mut a: Vec<Vec<i128>>, cols: usize) -> SmallSmith {
    let rows = a.len();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| (i == j) as i128).collect())
        .collect();
    let mut vinv = v.clone();
    let n = rows.min(cols);
    let mut diag = Vec::new();
    for t in 0..n {
        loop {
            // pivot: smallest nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
                vinv.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let k = a[i][t].div_euclid(p);
                if k != 0 {
                    for j in t..cols {
                        a[i][j] -= k * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let k = a[t][j].div_euclid(p);
                if k != 0 {
                    // col_j -= k col_t
                    for row in a.iter_mut() {
                        row[j] -= k * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= k * row[t];
                    }
                    for c in 0..cols {
                        vinv[t][c] += k * vinv[j][c];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let mut bad = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if a[i][j] % p != 0 {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for row in a.iter_mut() {
                row[t] = -row[t];
            }
            for row in v.iter_mut() {
                row[t] = -row[t];
            }
            for c in 0..cols {
                vinv[t][c] = -vinv[t][c];
            }
        }
        diag.push(a[t][t]);
    }
    SmallSmith { diag, v, vinv }
}

/// Quotient Z^r / rowspan(rel). The relation lattice must have full rank.
pub fn quotient_of_lattice(r: usize, rel: Vec<Vec<i128>>) -> Quotient {
    let reduced = reduce_rows(r, rel);
    assert_eq!(reduced.len(), r, "relation lattice is not of full rank");
    let s = small_smith(reduced, r);
    let keep: Vec<usize> = (0..r).filter(|&j| s.diag[j] != 1).collect();
    let inv: Vec<u64> = keep.iter().map(|&j| s.diag[j] as u64).collect();
    let proj = (0..r)
        .map(|i| {
            keep.iter()
                .map(|&j| s.v[i][j].rem_euclid(s.diag[j]) as i64)
                .collect()
        })
        .collect();
    let lift = keep
        .iter()
        .map(|&j| s.vinv[j].iter().map(|&x| x as i64).collect())
        .collect();
    Quotient { group: AbGroup::new(inv), proj, lift }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_diag_2_3_is_6() {
        let q = quotient_of_lattice(2, vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(q.group.invariants(), &[6]);
        // both generators map to elements of order 2 and 3
        assert_eq!(q.group.element_order(q.apply(&[1, 0])), 2);
        assert_eq!(q.group.element_order(q.apply(&[0, 1])), 3);
    }

    #[test]
    fn lift_maps_to_standard_generators() {
        let q = quotient_of_lattice(3, vec![vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10], vec![2, 3, 5]]);
        for (j, l) in q.lift.iter().enumerate() {
            assert_eq!(q.apply(l), q.group.gen(j));
        }
        let order: usize = q.group.order();
        assert_eq!(order, 4 * 6 * 10 / 2);
    }

    #[test]
    fn quotient_by_subgroup() {
        let g = AbGroup::new(vec![7, 7]);
        let anti = g.index(&[1, 6]);
        let q = g.quotient(&[anti]);
        assert_eq!(q.group.invariants(), &[7]);
        assert_eq!(q.apply(&[1, 6]), 0);
        assert_ne!(q.apply(&[1, 0]), 0);
    }
}
