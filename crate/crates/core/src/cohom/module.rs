//! Verma modules in PBW form and finite-dimensional irreducibles as their
//! quotients by the radical of the contravariant form.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::{One, Zero};

use super::linalg::kernel_q;
use crate::rational::Q;
use crate::rootsys::{ChevalleyData, Weight};

/// Sorted list of negative-root basis indices: `y_{a1} ⋯ y_{ar} v_λ`.
pub type Mono = Vec<usize>;
pub type MVec = BTreeMap<Mono, Q>;

fn add_into(acc: &mut MVec, m: Mono, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(m.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&m);
    }
}

/// `M(λ̄) = U(n̄_−) v_λ` with the action of every basis element of `ḡ`.
pub struct Verma<'a> {
    pub cd: &'a ChevalleyData,
    /// `⟨λ̄, α_i^∨⟩`.
    pub lambda: Vec<Q>,
    memo: RefCell<BTreeMap<(usize, Mono), MVec>>,
}

impl<'a> Verma<'a> {
    pub fn new(cd: &'a ChevalleyData, lam: &Weight) -> Self {
        assert_eq!(lam.rank(), cd.rank, "weight rank");
        Verma { cd, lambda: lam.coords.clone(), memo: RefCell::new(BTreeMap::new()) }
    }

    /// `J_a · m`.
    pub fn act_mono(&self, a: usize, m: &[usize]) -> MVec {
        let mut out = MVec::new();
        let Some((&y, rest)) = m.split_first() else {
            if self.cd.is_negative(a) {
                out.insert(vec![a], Q::one());
            } else if self.cd.is_cartan(a) {
                add_into(&mut out, Vec::new(), self.lambda[a].clone());
            }
            return out;
        };
        if self.cd.is_negative(a) && a <= y {
            let mut r = vec![a];
            r.extend_from_slice(m);
            out.insert(r, Q::one());
            return out;
        }
        let key = (a, m.to_vec());
        if let Some(v) = self.memo.borrow().get(&key) {
            return v.clone();
        }
        // J_a y R = y (J_a R) + [J_a, y] R
        for (r, c) in self.act_mono(a, rest) {
            for (s, d) in self.act_mono(y, &r) {
                add_into(&mut out, s, &c * &d);
            }
        }
        for (b, c) in self.cd.bracket(a, y) {
            for (s, d) in self.act_mono(*b, rest) {
                add_into(&mut out, s, c * &d);
            }
        }
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    pub fn act(&self, a: usize, v: &MVec) -> MVec {
        let mut out = MVec::new();
        for (m, c) in v {
            for (s, d) in self.act_mono(a, m) {
                add_into(&mut out, s, c * &d);
            }
        }
        out
    }

    /// Contravariant form, `J_α ↦ J_{−α}` transposing the action.
    pub fn shapovalov(&self, x: &[usize], y: &[usize]) -> Q {
        // ⟨y_1⋯y_r v, w⟩ = ⟨v, σ(y_r)⋯σ(y_1) w⟩ with σ(y_1) acting first
        let mut w: MVec = MVec::new();
        w.insert(y.to_vec(), Q::one());
        for &a in x {
            w = self.act(self.cd.opposite(a), &w);
            if w.is_empty() {
                return Q::zero();
            }
        }
        w.get(&Vec::new()).cloned().unwrap_or_else(Q::zero)
    }

    /// Weight drop `λ − wt(m)` in simple-root coordinates.
    pub fn depth(&self, m: &[usize]) -> Vec<i64> {
        let mut d = vec![0; self.cd.rank];
        for &a in m {
            for (x, w) in d.iter_mut().zip(&self.cd.weights[a]) {
                *x -= w;
            }
        }
        d
    }

    /// PBW monomials with at most `deg` factors.
    pub fn monomials_up_to(&self, deg: usize) -> Vec<Mono> {
        let neg: Vec<usize> = self.cd.negative_indices().collect();
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Mono> = vec![Vec::new()];
        for _ in 0..deg {
            let mut next = Vec::new();
            for m in &layer {
                let lo = m.last().copied().unwrap_or(neg[0]);
                for &a in neg.iter().filter(|&&a| a >= lo) {
                    let mut r = m.clone();
                    r.push(a);
                    next.push(r);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// Finite-dimensional irreducible `L̄(λ̄)` with explicit action matrices.
pub struct FiniteModule {
    pub dim: usize,
    /// `action[a][i][j]`: coefficient of basis vector `i` in `J_a · b_j`.
    pub action: Vec<Vec<Vec<Q>>>,
}

/// Builds `L̄(λ̄)` for dominant integral `λ̄` as `M(λ̄)` modulo the radical of the contravariant form.
pub fn finite_module(cd: &ChevalleyData, lam: &Weight) -> FiniteModule {
    let v = Verma::new(cd, lam);
    // every weight of L lies at depth ≤ ⟨λ, 2ρ∨⟩
    let lam_int: Vec<i64> = lam.coords.iter().map(|c| c.to_integer().try_into().expect("small weight")).collect();
    let top: i64 = height_of_2rho_check(cd, &lam_int);
    let mut by_depth: BTreeMap<Vec<i64>, Vec<Mono>> = BTreeMap::new();
    for m in v.monomials_up_to(top as usize) {
        let d = v.depth(&m);
        if d.iter().sum::<i64>() <= top {
            by_depth.entry(d).or_default().push(m);
        }
    }
    // per weight space: a set S of monomials whose Gram block is nonsingular and spans
    let mut reps: BTreeMap<Vec<i64>, (Vec<Mono>, Vec<Vec<Q>>)> = BTreeMap::new();
    let mut offset: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut dim = 0;
    for (d, ms) in &by_depth {
        let mut chosen: Vec<Mono> = Vec::new();
        for m in ms {
            let mut trial = chosen.clone();
            trial.push(m.clone());
            let g: Vec<Vec<Q>> = trial.iter().map(|x| trial.iter().map(|y| v.shapovalov(x, y)).collect()).collect();
            if kernel_q(&g, trial.len()).is_empty() {
                chosen = trial;
            }
        }
        if chosen.is_empty() {
            continue;
        }
        let g: Vec<Vec<Q>> = chosen.iter().map(|x| chosen.iter().map(|y| v.shapovalov(x, y)).collect()).collect();
        offset.insert(d.clone(), dim);
        dim += chosen.len();
        reps.insert(d.clone(), (chosen, g));
    }
    let mut action = vec![vec![vec![Q::zero(); dim]; dim]; cd.dim()];
    for (d, (s, _)) in &reps {
        for (j, m) in s.iter().enumerate() {
            let col = offset[d] + j;
            for (a, act) in action.iter_mut().enumerate() {
                let img = v.act_mono(a, m);
                if img.is_empty() {
                    continue;
                }
                let td: Vec<i64> = d.iter().zip(&cd.weights[a]).map(|(x, w)| x - w).collect();
                let Some((t, gt)) = reps.get(&td) else { continue };
                // coordinates c with G c = (⟨t_i, img⟩)_i
                let rhs: Vec<Q> = t.iter().map(|x| img.iter().map(|(y, c)| c * &v.shapovalov(x, y)).sum()).collect();
                let c = solve(gt, &rhs);
                for (i, ci) in c.into_iter().enumerate() {
                    act[offset[&td] + i][col] = ci;
                }
            }
        }
    }
    FiniteModule { dim, action }
}

fn height_of_2rho_check(cd: &ChevalleyData, lam: &[i64]) -> i64 {
    // ⟨λ, 2ρ∨⟩ = Σ_i λ_i · (2ρ∨ in simple coroots)_i; for sl_n that coefficient is i(n−i)
    let n = cd.rank as i64 + 1;
    lam.iter().enumerate().map(|(i, l)| l * (i as i64 + 1) * (n - i as i64 - 1)).sum()
}

/// Solves a nonsingular square system.
fn solve(g: &[Vec<Q>], rhs: &[Q]) -> Vec<Q> {
    let n = g.len();
    let mut a: Vec<Vec<Q>> = g.iter().zip(rhs).map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("nonsingular");
        a.swap(c, p);
        let inv = Q::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in c..=n {
                    let t = &f * &a[c][j];
                    a[r][j] -= t;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n].clone()).collect()
}
