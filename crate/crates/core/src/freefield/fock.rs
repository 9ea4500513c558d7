//! Explicit realization of currents and ghosts on the Fock space
//! `V_k(ḡ) ⊗ F`, with coefficients in `Q[k]`.
//!
//! A Fock monomial is `J_{a1}(n1) ⋯ J_{ar}(nr) ψ_{b1}(m1) ⋯ ψ_{bs}(ms) |0⟩` with the
//! current factors sorted by `(a, n)` (repeats allowed) and the ghost factors strictly
//! sorted by `(b, m)`. Only creation modes occur: `J(n)` with `n ≤ −1`, `ψ_α(n)` with
//! `n ≤ −1` for positive `α` and `n ≤ 0` for negative `α`.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{frac, q, Q};
use crate::rootsys::ChevalleyData;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FMono {
    pub cur: Vec<(usize, i64)>,
    pub gh: Vec<(usize, i64)>,
}

impl FMono {
    pub fn vacuum() -> Self {
        FMono::default()
    }

    pub fn energy(&self) -> i64 {
        -self.cur.iter().chain(&self.gh).map(|x| x.1).sum::<i64>()
    }
}

pub type FVec = BTreeMap<FMono, Poly>;

pub fn add_into(acc: &mut FVec, m: FMono, c: &Poly) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn add_vec(acc: &mut FVec, v: FVec, s: &Poly) {
    for (m, c) in v {
        add_into(acc, m, &(&c * s));
    }
}

pub fn energy(v: &FVec) -> i64 {
    v.keys().map(FMono::energy).max().unwrap_or(0)
}

pub struct Fock<'a> {
    pub cd: &'a ChevalleyData,
    mode_limit: i64,
    memo: RefCell<BTreeMap<(usize, i64, FMono), FVec>>,
    /// Ghost bilinear of `Ĵ_a`: `(β, γ, c_{a,β}^γ)` with `β, γ` positive.
    hat_terms: Vec<Vec<(usize, usize, Q)>>,
    /// Cubic term of `d_st`: `(α, β, γ, c_{α,β}^γ)`.
    cubic: Vec<(usize, usize, usize, Q)>,
}

impl<'a> Fock<'a> {
    /// `mode_limit` bounds every mode that may appear; exceeding it is an error.
    pub fn new(cd: &'a ChevalleyData, mode_limit: i64) -> Self {
        let pos: Vec<usize> = cd.positive_indices().collect();
        let hat_terms = (0..cd.dim())
            .map(|a| {
                let mut t = Vec::new();
                for &b in &pos {
                    for &g in &pos {
                        let c = cd.structure_const(a, b, g);
                        if !c.is_zero() {
                            t.push((b, g, c));
                        }
                    }
                }
                t
            })
            .collect();
        let mut cubic = Vec::new();
        for &a in &pos {
            for &b in &pos {
                for &g in &pos {
                    let c = cd.structure_const(a, b, g);
                    if !c.is_zero() {
                        cubic.push((a, b, g, c));
                    }
                }
            }
        }
        Fock { cd, mode_limit, memo: RefCell::new(BTreeMap::new()), hat_terms, cubic }
    }

    fn check_mode(&self, n: i64) -> Result<()> {
        if n.abs() > self.mode_limit {
            return Err(Error::StraighteningOverflow { mode: n });
        }
        Ok(())
    }

    /// `J_a(n)` on a vector.
    pub fn j(&self, a: usize, n: i64, v: &FVec) -> Result<FVec> {
        self.check_mode(n)?;
        let mut out = FVec::new();
        for (m, c) in v {
            let r = self.j_mono(a, n, m)?;
            add_vec(&mut out, r, c);
        }
        Ok(out)
    }

    fn j_mono(&self, a: usize, n: i64, m: &FMono) -> Result<FVec> {
        let mut out = FVec::new();
        if n > 0 && n > m.energy() {
            return Ok(out);
        }
        if m.cur.is_empty() {
            if n <= -1 {
                let mut r = m.clone();
                r.cur.push((a, n));
                out.insert(r, Poly::one());
            }
            return Ok(out);
        }
        let head = m.cur[0];
        if n <= -1 && (a, n) <= head {
            let mut r = m.clone();
            r.cur.insert(0, (a, n));
            out.insert(r, Poly::one());
            return Ok(out);
        }
        let key = (a, n, m.clone());
        if let Some(v) = self.memo.borrow().get(&key) {
            return Ok(v.clone());
        }
        let mut rest = m.clone();
        rest.cur.remove(0);
        let (c, cm) = head;
        // J_a(n) J_c(cm) R = J_c(cm) J_a(n) R + [J_a(n), J_c(cm)] R
        let inner = self.j_mono(a, n, &rest)?;
        let moved = self.j(c, cm, &inner)?;
        add_vec(&mut out, moved, &Poly::one());
        for (d, coeff) in self.cd.bracket(a, c) {
            self.check_mode(n + cm)?;
            let t = self.j_mono(*d, n + cm, &rest)?;
            add_vec(&mut out, t, &Poly::constant(coeff.clone()));
        }
        if n + cm == 0 {
            let pr = &self.cd.pairing[a][c];
            if !pr.is_zero() {
                // central term k·n·(J_a, J_c)
                add_into(&mut out, rest.clone(), &Poly::k().scale(&(q(n) * pr)));
            }
        }
        self.memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    fn is_creator(&self, b: usize, n: i64) -> bool {
        if self.cd.is_negative(b) {
            n <= 0
        } else {
            n <= -1
        }
    }

    /// `ψ_b(n)` on a vector, `b` the basis index of a root.
    pub fn psi(&self, b: usize, n: i64, v: &FVec) -> Result<FVec> {
        self.check_mode(n)?;
        let mut out = FVec::new();
        let creator = self.is_creator(b, n);
        let partner = (self.cd.opposite(b), -n);
        for (m, c) in v {
            if creator {
                match m.gh.binary_search(&(b, n)) {
                    Ok(_) => {}
                    Err(pos) => {
                        let mut r = m.clone();
                        r.gh.insert(pos, (b, n));
                        add_into(&mut out, r, &sign(pos, c));
                    }
                }
            } else if let Ok(pos) = m.gh.binary_search(&partner) {
                let mut r = m.clone();
                r.gh.remove(pos);
                add_into(&mut out, r, &sign(pos, c));
            }
        }
        Ok(out)
    }

    /// `Ĵ_a(n) = J_a(n) − Σ_{β,γ>0} c_{a,β}^γ Σ_j :ψ_{−β}(j) ψ_γ(n−j):`.
    pub fn hat_j(&self, a: usize, n: i64, v: &FVec) -> Result<FVec> {
        let mut out = self.j(a, n, v)?;
        let e = energy(v);
        for (b, g, c) in &self.hat_terms[a] {
            let nb = self.cd.opposite(*b);
            let mut part = FVec::new();
            for j in (n - e)..=e {
                let t = if j >= 1 {
                    // annihilator ψ_{−β}(j) moves right, with a sign
                    let x = self.psi(nb, j, v)?;
                    let y = self.psi(*g, n - j, &x)?;
                    neg(y)
                } else {
                    let x = self.psi(*g, n - j, v)?;
                    self.psi(nb, j, &x)?
                };
                add_vec(&mut part, t, &Poly::one());
            }
            add_vec(&mut out, part, &Poly::constant(-c.clone()));
        }
        Ok(out)
    }

    /// Quadratic and cubic parts of `d_st`.
    pub fn d_st(&self, v: &FVec) -> Result<FVec> {
        let e = energy(v);
        let mut out = FVec::new();
        for a in self.cd.positive_indices() {
            let na = self.cd.opposite(a);
            for n in -e..=e {
                let x = self.j(a, -n, v)?;
                if x.is_empty() {
                    continue;
                }
                let y = self.psi(na, n, &x)?;
                add_vec(&mut out, y, &Poly::one());
            }
        }
        let half = Poly::constant(frac(-1, 2));
        for (a, b, g, c) in &self.cubic {
            let (na, nb) = (self.cd.opposite(*a), self.cd.opposite(*b));
            let coeff = half.scale(c);
            for k in -2 * e..=e {
                for l in -2 * e..=e {
                    let m = -k - l;
                    if m < -2 * e || m > e {
                        continue;
                    }
                    let x = self.psi(*g, m, v)?;
                    if x.is_empty() {
                        continue;
                    }
                    let y = self.psi(nb, l, &x)?;
                    if y.is_empty() {
                        continue;
                    }
                    let z = self.psi(na, k, &y)?;
                    add_vec(&mut out, z, &coeff);
                }
            }
        }
        Ok(out)
    }

    /// `χ_+ = Σ_α χ̄_+(J_α) ψ_{−α}(1)`.
    pub fn chi_plus(&self, v: &FVec) -> Result<FVec> {
        let mut out = FVec::new();
        for a in self.cd.positive_indices() {
            let c = &self.cd.chi_plus[a];
            if c.is_zero() {
                continue;
            }
            let y = self.psi(self.cd.opposite(a), 1, v)?;
            add_vec(&mut out, y, &Poly::constant(c.clone()));
        }
        Ok(out)
    }

    pub fn d_plus(&self, v: &FVec) -> Result<FVec> {
        let mut out = self.d_st(v)?;
        add_vec(&mut out, self.chi_plus(v)?, &Poly::one());
        Ok(out)
    }
}

fn sign(pos: usize, c: &Poly) -> Poly {
    if pos % 2 == 0 {
        c.clone()
    } else {
        -c
    }
}

fn neg(v: FVec) -> FVec {
    v.into_iter().map(|(m, c)| (m, -c)).collect()
}

pub fn vacuum() -> FVec {
    let mut v = FVec::new();
    v.insert(FMono::vacuum(), Poly::one());
    v
}

pub fn sub(a: &FVec, b: &FVec) -> FVec {
    let mut out = a.clone();
    for (m, c) in b {
        add_into(&mut out, m.clone(), &-c);
    }
    out
}
