//! Chevalley-type basis of `sl_n` from elementary matrices.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{Family, RootSystem};
use crate::error::{Error, Result};
use crate::rational::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// `J_i = E_ii − E_{i+1,i+1}`, the simple coroot `α_i^∨`.
    Cartan(usize),
    /// Root vector; the root in simple coordinates, possibly negative.
    Root(Vec<i64>),
}

/// Basis `{J_a}` of `ḡ` with structure constants and the principal `sl_2`.
///
/// Index layout: `0..l` Cartan, then positive roots in the order of
/// `RootSystem::pos_roots`, then the negative roots in the same order.
#[derive(Clone, Debug)]
pub struct ChevalleyData {
    pub rank: usize,
    pub labels: Vec<BasisLabel>,
    /// Root of each basis element in simple coordinates (zero for Cartan).
    pub weights: Vec<Vec<i64>>,
    brackets: Vec<Vec<Vec<(usize, Q)>>>,
    pub pairing: Vec<Vec<Q>>,
    pub e: Vec<Q>,
    pub f: Vec<Q>,
    pub h0: Vec<Q>,
    /// `χ̄_+(J_a) = (f|J_a)`, nonzero only on positive roots.
    pub chi_plus: Vec<Q>,
    /// `χ̄_−(J_a) = (e|J_a)`, nonzero only on negative roots.
    pub chi_minus: Vec<Q>,
    index: BTreeMap<Vec<i64>, usize>,
}

pub fn build_chevalley(rs: &RootSystem) -> Result<ChevalleyData> {
    ChevalleyData::new(rs)
}

type Mat = Vec<Vec<Q>>;

impl ChevalleyData {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        if rs.cartan_type.family != Family::A {
            return Err(Error::UnsupportedType(format!(
                "structure constants are available for type A only, got {}",
                rs.cartan_type
            )));
        }
        let l = rs.rank();
        let n = l + 1;
        let np = rs.num_pos_roots();
        let dim = l + 2 * np;
        let zero_mat = || vec![vec![Q::zero(); n]; n];

        let mut labels = Vec::with_capacity(dim);
        let mut weights = Vec::with_capacity(dim);
        let mut mats: Vec<Mat> = Vec::with_capacity(dim);
        for i in 0..l {
            let mut m = zero_mat();
            m[i][i] = Q::one();
            m[i + 1][i + 1] = -Q::one();
            mats.push(m);
            labels.push(BasisLabel::Cartan(i));
            weights.push(vec![0; l]);
        }
        for sign in [1i64, -1] {
            for r in &rs.pos_roots {
                let (i, j) = matrix_position(r);
                let mut m = zero_mat();
                if sign > 0 {
                    m[i][j] = Q::one();
                } else {
                    m[j][i] = Q::one();
                }
                mats.push(m);
                let w: Vec<i64> = r.iter().map(|x| sign * x).collect();
                labels.push(BasisLabel::Root(w.clone()));
                weights.push(w);
            }
        }
        let index: BTreeMap<Vec<i64>, usize> =
            weights.iter().enumerate().skip(l).map(|(a, w)| (w.clone(), a)).collect();

        let decompose = |m: &Mat| -> Vec<(usize, Q)> {
            let mut out = Vec::new();
            let mut acc = Q::zero();
            for i in 0..l {
                acc += &m[i][i];
                if !acc.is_zero() {
                    out.push((i, acc.clone()));
                }
            }
            debug_assert!((acc + &m[l][l]).is_zero(), "traceless");
            for a in l..dim {
                let (i, j) = matrix_position(&weights[a]);
                let (i, j) = if a < l + np { (i, j) } else { (j, i) };
                if !m[i][j].is_zero() {
                    out.push((a, m[i][j].clone()));
                }
            }
            out
        };

        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        let mut pairing = vec![vec![Q::zero(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let ab = matmul(&mats[a], &mats[b]);
                let ba = matmul(&mats[b], &mats[a]);
                let c: Mat = (0..n).map(|i| (0..n).map(|j| &ab[i][j] - &ba[i][j]).collect()).collect();
                brackets[a][b] = decompose(&c);
                pairing[a][b] = (0..n).map(|i| ab[i][i].clone()).sum();
            }
        }

        let mut e_mat = zero_mat();
        let mut f_mat = zero_mat();
        for i in 0..l {
            e_mat[i][i + 1] = q(((i + 1) * (n - i - 1)) as i64);
            f_mat[i + 1][i] = Q::one();
        }
        let ef = matmul(&e_mat, &f_mat);
        let fe = matmul(&f_mat, &e_mat);
        let h_mat: Mat = (0..n).map(|i| (0..n).map(|j| &ef[i][j] - &fe[i][j]).collect()).collect();
        let dense = |m: &Mat| {
            let mut v = vec![Q::zero(); dim];
            for (a, c) in decompose(m) {
                v[a] = c;
            }
            v
        };
        let e = dense(&e_mat);
        let f = dense(&f_mat);
        let h0 = dense(&h_mat);
        let pair_with = |x: &Mat, a: usize| -> Q {
            let p = matmul(x, &mats[a]);
            (0..n).map(|i| p[i][i].clone()).sum()
        };
        let chi_plus = (0..dim).map(|a| if a >= l && a < l + np { pair_with(&f_mat, a) } else { Q::zero() }).collect();
        let chi_minus = (0..dim).map(|a| if a >= l + np { pair_with(&e_mat, a) } else { Q::zero() }).collect();

        Ok(ChevalleyData { rank: l, labels, weights, brackets, pairing, e, f, h0, chi_plus, chi_minus, index })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Dual Coxeter number of `sl_{l+1}`.
    pub fn h_check(&self) -> i64 {
        self.rank as i64 + 1
    }

    pub fn num_pos(&self) -> usize {
        (self.dim() - self.rank) / 2
    }

    /// `[J_a, J_b]` as a sparse combination.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, Q)] {
        &self.brackets[a][b]
    }

    /// `c_{a,b}^d`.
    pub fn structure_const(&self, a: usize, b: usize, d: usize) -> Q {
        self.brackets[a][b].iter().find(|(x, _)| *x == d).map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
    }

    /// Basis index of a root (simple coordinates, any sign).
    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_cartan(&self, a: usize) -> bool {
        a < self.rank
    }

    pub fn is_positive(&self, a: usize) -> bool {
        a >= self.rank && a < self.rank + self.num_pos()
    }

    pub fn is_negative(&self, a: usize) -> bool {
        a >= self.rank + self.num_pos()
    }

    /// Signed height of the root of `J_a` (0 on the Cartan).
    pub fn height(&self, a: usize) -> i64 {
        self.weights[a].iter().sum()
    }

    /// Index of `J_{−α}` for a root vector `J_α`; Cartan elements map to themselves.
    pub fn opposite(&self, a: usize) -> usize {
        if self.is_cartan(a) {
            return a;
        }
        let np = self.num_pos();
        if self.is_positive(a) {
            a + np
        } else {
            a - np
        }
    }

    pub fn positive_indices(&self) -> core::ops::Range<usize> {
        self.rank..self.rank + self.num_pos()
    }

    pub fn negative_indices(&self) -> core::ops::Range<usize> {
        self.rank + self.num_pos()..self.dim()
    }

    /// `[x, y]` for dense vectors over the basis.
    pub fn bracket_vec(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                for (d, c) in &self.brackets[a][b] {
                    out[*d] += xa * yb * c;
                }
            }
        }
        out
    }

    pub fn pair_vec(&self, x: &[Q], y: &[Q]) -> Q {
        let mut s = Q::zero();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if !yb.is_zero() {
                    s += xa * yb * &self.pairing[a][b];
                }
            }
        }
        s
    }

    pub fn unit(&self, a: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[a] = Q::one();
        v
    }
}

/// Matrix position `(i, j)`, `i < j`, of `E_ij` for a positive root `α_i + … + α_{j−1}`.
fn matrix_position(root: &[i64]) -> (usize, usize) {
    let i = root.iter().position(|&x| x != 0).expect("nonzero root");
    let j = root.iter().rposition(|&x| x != 0).unwrap() + 1;
    (i, j)
}

fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut c = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    c[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, CartanType};

    fn cd(n: usize) -> ChevalleyData {
        build_chevalley(&build_root_system(CartanType::a(n)).unwrap()).unwrap()
    }

    #[test]
    fn a1_data() {
        let c = cd(1);
        // basis: h, e_α, f_α
        assert_eq!(c.chi_plus[1], q(1));
        assert_eq!(c.chi_minus[2], q(1));
        assert_eq!(c.bracket(1, 2), &[(0, q(1))]);
        assert_eq!(c.pairing[0][0], q(2));
    }

    #[test]
    fn jacobi_and_invariance() {
        for n in 1..=3 {
            let c = cd(n);
            let dim = c.dim();
            for a in 0..dim {
                for b in 0..dim {
                    for d in 0..dim {
                        let (x, y, z) = (c.unit(a), c.unit(b), c.unit(d));
                        let t1 = c.bracket_vec(&x, &c.bracket_vec(&y, &z));
                        let t2 = c.bracket_vec(&y, &c.bracket_vec(&z, &x));
                        let t3 = c.bracket_vec(&z, &c.bracket_vec(&x, &y));
                        for i in 0..dim {
                            assert!((&t1[i] + &t2[i] + &t3[i]).is_zero());
                        }
                        let inv = c.pair_vec(&c.bracket_vec(&x, &y), &z) + c.pair_vec(&y, &c.bracket_vec(&x, &z));
                        assert!(inv.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn root_vector_relations() {
        for n in 1..=4 {
            let c = cd(n);
            for a in c.positive_indices() {
                assert_eq!(c.pairing[a][c.opposite(a)], q(1));
                for b in c.positive_indices() {
                    for g in c.positive_indices() {
                        let lhs = c.structure_const(a, b, g);
                        let rhs = c.structure_const(c.opposite(a), c.opposite(b), c.opposite(g));
                        assert_eq!(lhs, -rhs);
                    }
                }
                // brackets respect the root grading
                for b in 0..c.dim() {
                    for (d, _) in c.bracket(a, b) {
                        let w: Vec<i64> = c.weights[a].iter().zip(&c.weights[b]).map(|(x, y)| x + y).collect();
                        assert_eq!(c.weights[*d], w);
                    }
                }
            }
            for i in 0..n {
                let mut r = vec![0; n];
                r[i] = 1;
                assert!(!c.chi_plus[c.root_index(&r).unwrap()].is_zero());
            }
        }
    }

    #[test]
    fn principal_sl2() {
        for n in 1..=4 {
            let c = cd(n);
            let rs = build_root_system(CartanType::a(n)).unwrap();
            assert_eq!(c.bracket_vec(&c.e, &c.f), c.h0);
            let two = |v: &[Q], s: i64| v.iter().map(|x| x * q(s)).collect::<Vec<_>>();
            assert_eq!(c.bracket_vec(&c.h0, &c.e), two(&c.e, 2));
            assert_eq!(c.bracket_vec(&c.h0, &c.f), two(&c.f, -2));
            // h0 = 2ρ̄∨ = Σ 2 ρ̄∨_i α_i∨ in simple-coroot coordinates
            let rc =
                super::super::invert(&rs.cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
                    .unwrap();
            for i in 0..n {
                let coeff: Q = (0..n).map(|j| &rc[j][i] * q(2)).sum();
                assert_eq!(c.h0[i], coeff);
            }
        }
    }

    #[test]
    fn only_type_a() {
        let rs = build_root_system("B2".parse().unwrap()).unwrap();
        assert!(matches!(build_chevalley(&rs), Err(Error::UnsupportedType(_))));
    }
}
