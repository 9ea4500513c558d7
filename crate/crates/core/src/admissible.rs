//! Non-degenerate principal admissible levels and weights.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::affine::AffineWeight;
use crate::error::{Error, Result};
use crate::rational::{q, Q};
use crate::rootsys::{Family, RootSystem, Weight};

/// `k + h∨ = p/q` in lowest terms with `p ≥ h∨`, `q ≥ h`, `(q, r∨) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleLevel {
    pub k: Q,
    pub p: i64,
    pub q: i64,
}

/// One point of `(P^{p−h∨}_+ × P^{∨,q−h}_+)/W̃_+` and its weight `Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleCell {
    /// Classical part of the integral dominant weight of level `p − h∨`.
    pub lam: Weight,
    /// Classical part of the integral dominant coweight of level `q − h`, in fundamental-coweight coordinates.
    pub mu: Weight,
    /// `λ̄ − (k+h∨)(μ̄+ρ̄∨) + kΛ0`.
    pub lambda: AffineWeight,
}

pub fn admits_nondegenerate(rs: &RootSystem, k: &Q) -> Option<AdmissibleLevel> {
    let kappa = k + q(rs.h_check);
    if !kappa.is_positive() {
        return None;
    }
    let p = kappa.numer().to_i64()?;
    let qq = kappa.denom().to_i64()?;
    let ok = p >= rs.h_check && qq >= rs.h && qq.gcd(&rs.lacing) == 1;
    ok.then(|| AdmissibleLevel { k: k.clone(), p, q: qq })
}

impl AdmissibleLevel {
    /// Level datum from `(p, q)` directly.
    pub fn from_pq(rs: &RootSystem, p: i64, q_: i64) -> Option<Self> {
        if q_ <= 0 || p.gcd(&q_) != 1 {
            return None;
        }
        let k = Q::new(p.into(), q_.into()) - q(rs.h_check);
        admits_nondegenerate(rs, &k)
    }

    pub fn kappa(&self) -> Q {
        Q::new(self.p.into(), self.q.into())
    }
}

/// `Λ_{λ,μ}`.
pub fn cell_weight(rs: &RootSystem, level: &AdmissibleLevel, lam: &Weight, mu: &Weight) -> AffineWeight {
    let shifted = Weight::new(mu.coords.iter().map(|c| c + q(1)).collect());
    let classical = lam - &rs.coweight_to_weight(&shifted).scale(&level.kappa());
    AffineWeight::new(classical, level.k.clone(), Q::zero())
}

/// Dominant integral classical parts of level `m`: nonnegative integer `λ̄`
/// with `<λ̄, θ^∨> ≤ m`. Type A only (marks all 1, weights and coweights coincide).
pub fn dominant_at_level(rs: &RootSystem, m: i64) -> Vec<Vec<i64>> {
    let l = rs.rank();
    let mut out = Vec::new();
    let mut cur = vec![0i64; l];
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    if m >= 0 {
        rec(0, m, &mut cur, &mut out);
    }
    out
}

/// Rotation of the affine Dynkin diagram of `A_l` acting on classical parts of level `m`:
/// affine labels `(λ_0, λ_1, …, λ_l) ↦ (λ_l, λ_0, …, λ_{l−1})`.
pub fn rotate(v: &[i64], m: i64) -> Vec<i64> {
    let l = v.len();
    let l0 = m - v.iter().sum::<i64>();
    let mut out = vec![0; l];
    out[0] = l0;
    out[1..l].copy_from_slice(&v[..l - 1]);
    out
}

fn to_weight(v: &[i64]) -> Weight {
    Weight::from_ints(v)
}

pub fn enumerate_cells(rs: &RootSystem, level: &AdmissibleLevel) -> Result<Vec<AdmissibleCell>> {
    if rs.cartan_type.family != Family::A {
        return Err(Error::UnsupportedType(format!(
            "admissible cells need the diagram rotation group, implemented for type A only, got {}",
            rs.cartan_type
        )));
    }
    let (a, b) = (level.p - rs.h_check, level.q - rs.h);
    let lams = dominant_at_level(rs, a);
    let mus = dominant_at_level(rs, b);
    let mut reps: BTreeSet<(Vec<i64>, Vec<i64>)> = BTreeSet::new();
    for lam in &lams {
        for mu in &mus {
            let orbit = pair_orbit(lam, mu, a, b);
            reps.insert(orbit.into_iter().min().unwrap());
        }
    }
    Ok(reps
        .into_iter()
        .map(|(lam, mu)| {
            let (lw, mw) = (to_weight(&lam), to_weight(&mu));
            let lambda = cell_weight(rs, level, &lw, &mw);
            AdmissibleCell { lam: lw, mu: mw, lambda }
        })
        .collect())
}

/// Orbit of a pair under the diagonal rotation action.
pub fn pair_orbit(lam: &[i64], mu: &[i64], a: i64, b: i64) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut out = vec![(lam.to_vec(), mu.to_vec())];
    loop {
        let (x, y) = out.last().unwrap();
        let next = (rotate(x, a), rotate(y, b));
        if next == out[0] {
            return out;
        }
        out.push(next);
    }
}

/// Classical part anti-dominant.
pub fn nondegenerate(rs: &RootSystem, lambda: &AffineWeight) -> bool {
    rs.antidominant(&lambda.classical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::rootsys::{build_root_system, CartanType};

    fn rs(n: usize) -> RootSystem {
        build_root_system(CartanType::a(n)).unwrap()
    }

    #[test]
    fn levels() {
        let r = rs(1);
        assert_eq!(admits_nondegenerate(&r, &frac(-5, 4)), Some(AdmissibleLevel { k: frac(-5, 4), p: 3, q: 4 }));
        assert_eq!(admits_nondegenerate(&r, &q(0)), None);
        assert_eq!(admits_nondegenerate(&r, &q(-2)), None);
        assert_eq!(admits_nondegenerate(&r, &frac(-3, 2)), None); // q = 2 but p = 1 < 2
    }

    #[test]
    fn a1_three_four() {
        let r = rs(1);
        let lev = AdmissibleLevel::from_pq(&r, 3, 4).unwrap();
        let cells = enumerate_cells(&r, &lev).unwrap();
        assert_eq!(cells.len(), 3);
        assert!(cells.iter().all(|c| nondegenerate(&r, &c.lambda)));
        let vac = &cells[0];
        assert!(vac.lam.is_zero() && vac.mu.is_zero());
        assert_eq!(vac.lambda.classical, r.rho_check.scale(&frac(-3, 4)));
        assert_eq!(vac.lambda.level, frac(-5, 4));
    }

    #[test]
    fn a2_three_four() {
        let r = rs(2);
        let lev = AdmissibleLevel::from_pq(&r, 3, 4).unwrap();
        let cells = enumerate_cells(&r, &lev).unwrap();
        // |P^0| = 1, |P^1| = 3 and the rotation permutes the three coweights transitively
        assert_eq!(cells.len(), 1);
        assert!(nondegenerate(&r, &cells[0].lambda));
    }

    #[test]
    fn orbit_counting() {
        for (n, p, qq) in [(1, 3, 4), (1, 5, 3), (1, 4, 5), (2, 4, 5), (2, 5, 3), (2, 3, 7), (3, 5, 6)] {
            let r = rs(n);
            let lev = AdmissibleLevel::from_pq(&r, p, qq).unwrap();
            let (a, b) = (p - r.h_check, qq - r.h);
            let cells = enumerate_cells(&r, &lev).unwrap();
            let total: usize = cells.iter().map(|c| pair_orbit(&ints(&c.lam), &ints(&c.mu), a, b).len()).sum();
            let la = dominant_at_level(&r, a);
            let mb = dominant_at_level(&r, b);
            assert_eq!(total, la.len() * mb.len());
            // Burnside
            let g = n + 1;
            let mut fixed = 0;
            for lam in &la {
                for mu in &mb {
                    let (mut x, mut y) = (lam.clone(), mu.clone());
                    for _ in 0..g {
                        if &x == lam && &y == mu {
                            fixed += 1;
                        }
                        x = rotate(&x, a);
                        y = rotate(&y, b);
                    }
                }
            }
            assert_eq!(fixed % g, 0);
            assert_eq!(fixed / g, cells.len());
            // closure: every rotated cell is equivalent to a returned one
            for c in &cells {
                let orb = pair_orbit(&ints(&c.lam), &ints(&c.mu), a, b);
                for (x, y) in orb {
                    let rep = pair_orbit(&x, &y, a, b).into_iter().min().unwrap();
                    assert!(cells.iter().any(|d| ints(&d.lam) == rep.0 && ints(&d.mu) == rep.1));
                }
                assert!(nondegenerate(&r, &c.lambda));
            }
        }
    }

    /// The rotation, read as a permutation of affine simple roots, keeps positive real roots positive.
    #[test]
    fn rotation_preserves_positive_roots() {
        for n in 1..=3usize {
            let r = rs(n);
            for root in crate::affine::positive_real_roots(&r, 3) {
                // coordinates on α_0..α_l: α + mδ = m α_0 + Σ (a_i + m) α_i
                let mut c = vec![root.n];
                c.extend(root.classical.iter().map(|a| a + root.n));
                let mut rc = vec![0; n + 1];
                for i in 0..=n {
                    rc[(i + 1) % (n + 1)] = c[i];
                }
                assert!(rc.iter().all(|&x| x >= 0) && rc.iter().any(|&x| x > 0));
            }
        }
    }

    fn ints(w: &Weight) -> Vec<i64> {
        w.coords.iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }
}
