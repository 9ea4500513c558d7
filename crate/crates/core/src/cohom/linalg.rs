//! Sparse matrices over `Q` and `Q(k)` and exact rank by fraction-free elimination.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::{Poly, RatFunc};
use crate::rational::Q;

/// Minimal ring interface for matrix entries.
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero_value() -> Self;
    fn is_zero_value(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
}

impl Scalar for Q {
    fn zero_value() -> Self {
        Q::zero()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
}

impl Scalar for RatFunc {
    fn zero_value() -> Self {
        RatFunc::zero()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
}

/// Triplet storage, sorted by `(row, col)`, no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<S> {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, S)>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    /// Builds from triplets, summing duplicates and dropping zeros.
    pub fn from_triplets(rows: usize, cols: usize, mut t: Vec<(usize, usize, S)>) -> Self {
        t.sort_by_key(|e| (e.0, e.1));
        let mut entries: Vec<(usize, usize, S)> = Vec::with_capacity(t.len());
        for (i, j, v) in t {
            assert!(i < rows && j < cols, "triplet out of bounds");
            match entries.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 = last.2.plus(&v),
                _ => entries.push((i, j, v)),
            }
        }
        entries.retain(|e| !e.2.is_zero_value());
        SparseMatrix { rows, cols, entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        match self.entries.binary_search_by(|e| (e.0, e.1).cmp(&(i, j))) {
            Ok(p) => self.entries[p].2.clone(),
            Err(_) => S::zero_value(),
        }
    }

    pub fn dense_rows(&self) -> Vec<Vec<S>> {
        let mut d = vec![vec![S::zero_value(); self.cols]; self.rows];
        for (i, j, v) in &self.entries {
            d[*i][*j] = v.clone();
        }
        d
    }

    /// `self · o`.
    pub fn mul(&self, o: &SparseMatrix<S>) -> SparseMatrix<S> {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut by_row: Vec<Vec<(usize, &S)>> = vec![Vec::new(); o.rows];
        for (i, j, v) in &o.entries {
            by_row[*i].push((*j, v));
        }
        let mut t = Vec::new();
        for (i, k, a) in &self.entries {
            for (j, b) in &by_row[*k] {
                t.push((*i, *j, a.times(b)));
            }
        }
        SparseMatrix::from_triplets(self.rows, o.cols, t)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparseMatrix<T> {
        SparseMatrix::from_triplets(self.rows, self.cols, self.entries.iter().map(|(i, j, v)| (*i, *j, f(v))).collect())
    }
}

/// Exact rank over `Q`: rows are scaled to integers, then Bareiss elimination.
pub fn rank_q(m: &SparseMatrix<Q>) -> usize {
    let rows: Vec<Vec<BigInt>> = m
        .dense_rows()
        .into_iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
        })
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    bareiss(
        rows,
        |x: &BigInt| x.bits(),
        |a, b| {
            let (qt, r) = a.div_rem(b);
            debug_assert!(r.is_zero(), "Bareiss division must be exact");
            qt
        },
    )
}

/// Rank over the field `Q(k)`: denominators cleared row by row, Bareiss over `Q[k]`
/// pivoting on lowest-degree entries.
pub fn rank_ratfunc(m: &SparseMatrix<RatFunc>) -> usize {
    if m.entries.iter().all(|e| e.2.is_constant()) {
        return rank_q(&m.map(|v| v.num().constant_term()));
    }
    let rows: Vec<Vec<Poly>> = m
        .dense_rows()
        .into_iter()
        .map(|r| {
            let mut l = Poly::one();
            for x in &r {
                if !x.is_zero() {
                    let g = Poly::gcd(&l, x.den());
                    l = (&l * x.den()).exact_div(&g);
                }
            }
            r.iter()
                .map(|x| if x.is_zero() { Poly::zero() } else { &x.num().clone() * &l.exact_div(x.den()) })
                .collect()
        })
        .filter(|r: &Vec<Poly>| r.iter().any(|x| !x.is_zero()))
        .collect();
    bareiss(rows, |x: &Poly| x.degree().unwrap_or(0) as u64, |a, b| a.exact_div(b))
}

/// Generic fraction-free elimination returning the rank.
fn bareiss<T>(mut rows: Vec<Vec<T>>, size: impl Fn(&T) -> u64, exact_div: impl Fn(&T, &T) -> T) -> usize
where
    T: Clone + RingOps,
{
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut prev = T::one_();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).filter(|&r| !rows[r][c].is_zero_()).min_by_key(|&r| size(&rows[r][c])) else {
            continue;
        };
        rows.swap(rank, p);
        let piv = rows[rank][c].clone();
        for r in rank + 1..rows.len() {
            let f = rows[r][c].clone();
            for j in c..ncols {
                let v = piv.mul_(&rows[r][j]).sub_(&f.mul_(&rows[rank][j]));
                rows[r][j] = exact_div(&v, &prev);
            }
        }
        prev = piv;
        rank += 1;
    }
    rank
}

trait RingOps {
    fn one_() -> Self;
    fn is_zero_(&self) -> bool;
    fn mul_(&self, o: &Self) -> Self;
    fn sub_(&self, o: &Self) -> Self;
}

impl RingOps for BigInt {
    fn one_() -> Self {
        BigInt::one()
    }
    fn is_zero_(&self) -> bool {
        self.is_zero()
    }
    fn mul_(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_(&self, o: &Self) -> Self {
        self - o
    }
}

impl RingOps for Poly {
    fn one_() -> Self {
        Poly::one()
    }
    fn is_zero_(&self) -> bool {
        self.is_zero()
    }
    fn mul_(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_(&self, o: &Self) -> Self {
        self - o
    }
}

/// Kernel basis over `Q` of a dense matrix (columns are unknowns).
pub fn kernel_q(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut a: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Q::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Q::zero(); ncols];
            v[fc] = Q::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][fc].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn ranks_over_q() {
        assert_eq!(rank_q(&SparseMatrix::zeros(3, 4)), 0);
        assert_eq!(rank_q(&SparseMatrix::from_triplets(1, 1, vec![(0, 0, q(2))])), 1);
        let m = SparseMatrix::from_triplets(
            3,
            3,
            vec![(0, 0, frac(1, 2)), (0, 1, q(1)), (1, 0, q(1)), (1, 1, q(2)), (2, 2, frac(3, 7)), (2, 0, q(5))],
        );
        assert_eq!(rank_q(&m), 2);
    }

    #[test]
    fn ranks_over_qk() {
        let k = Poly::k();
        let k2 = Poly::k_plus(q(2));
        // [[k+2, 1], [k^2+2k, k]]
        let m = SparseMatrix::from_triplets(
            2,
            2,
            vec![
                (0, 0, RatFunc::from_poly(k2.clone())),
                (0, 1, RatFunc::one()),
                (1, 0, RatFunc::from_poly(&k * &k2)),
                (1, 1, RatFunc::from_poly(k.clone())),
            ],
        );
        assert_eq!(rank_ratfunc(&m), 1);
        let n = SparseMatrix::from_triplets(
            2,
            2,
            vec![
                (0, 0, RatFunc::new(Poly::one(), k2.clone())),
                (0, 1, RatFunc::one()),
                (1, 0, RatFunc::one()),
                (1, 1, RatFunc::from_poly(k.clone())),
            ],
        );
        assert_eq!(rank_ratfunc(&n), 2);
    }

    #[test]
    fn kernels() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let k = kernel_q(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            let s: Q = rows[0].iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn naive_rank(d: &[Vec<Q>]) -> usize {
            let nc = d.first().map_or(0, |r| r.len());
            nc - kernel_q(d, nc).len()
        }

        proptest! {
            #[test]
            fn bareiss_matches_gauss(entries in proptest::collection::vec((0usize..5, 0usize..6, -4i64..5, 1i64..4), 0..20)) {
                let m = SparseMatrix::from_triplets(5, 6, entries.into_iter().map(|(i, j, n, d)| (i, j, frac(n, d))).collect());
                prop_assert_eq!(rank_q(&m), naive_rank(&m.dense_rows()));
            }

            // Specializing a generic matrix can only lower its rank, and a random point keeps it.
            #[test]
            fn generic_rank_bounds_specialized(entries in proptest::collection::vec((0usize..4, 0usize..4, -3i64..4, -3i64..4), 0..12), k0 in 5i64..40) {
                let m = SparseMatrix::from_triplets(4, 4, entries.into_iter().map(|(i, j, a, b)| {
                    (i, j, RatFunc::from_poly(Poly::from_coeffs(vec![q(a), q(b)])))
                }).collect());
                let g = rank_ratfunc(&m);
                let s = rank_q(&m.map(|v| v.eval(&q(k0)).unwrap()));
                prop_assert!(s <= g);
            }
        }
    }
}
