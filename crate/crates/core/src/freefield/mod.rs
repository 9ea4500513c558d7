//! The free-field BRST complex `C″_k(ḡ)` of the principal Drinfeld-Sokolov reduction.
//!
//! `C″` is spanned by PBW monomials in the hatted currents `Ĵ_a(n)`, `a` in the
//! Cartan or negative sector, and the ghosts `ψ_{−α}(n)`. Everything is computed
//! inside the explicit realization on `V_k(ḡ) ⊗ F` (see [`fock`]) and read back in
//! the PBW basis, so the differential is derived from first principles rather than
//! from closed-form commutator tables.

pub mod fock;
mod reduce;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::cohom::SparseMatrix;
use crate::error::{Error, Result};
use crate::poly::{Poly, RatFunc};
use crate::rational::{q, Q};
use crate::rootsys::ChevalleyData;
use fock::{FVec, Fock};
use reduce::Reducer;

/// Generators of `C″`. Currents sort before ghosts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    /// `Ĵ_a`, `a` a Cartan or negative-root basis index.
    HattedCurrent(usize),
    /// `ψ_{−α}`, stored by the basis index of `−α`.
    Ghost(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenKey {
    pub kind: GenKind,
    pub mode: i64,
}

impl GenKey {
    pub fn current(a: usize, mode: i64) -> Self {
        GenKey { kind: GenKind::HattedCurrent(a), mode }
    }

    pub fn ghost(b: usize, mode: i64) -> Self {
        GenKey { kind: GenKind::Ghost(b), mode }
    }

    fn index(&self) -> usize {
        match self.kind {
            GenKind::HattedCurrent(a) | GenKind::Ghost(a) => a,
        }
    }

    /// `Δ_new`: minus the mode plus the height of `α` for `Ĵ_{−α}` and `ψ_{−α}`.
    pub fn delta_new(&self, cd: &ChevalleyData) -> i64 {
        -self.mode - cd.height(self.index())
    }

    pub fn is_ghost(&self) -> bool {
        matches!(self.kind, GenKind::Ghost(_))
    }

    /// Creation operators of `C″`: currents with mode `≤ −1`, ghosts with mode `≤ 0`.
    pub fn is_creation(&self) -> bool {
        match self.kind {
            GenKind::HattedCurrent(_) => self.mode <= -1,
            GenKind::Ghost(_) => self.mode <= 0,
        }
    }

    fn in_sector(&self, cd: &ChevalleyData) -> bool {
        match self.kind {
            GenKind::HattedCurrent(a) => !cd.is_positive(a),
            GenKind::Ghost(b) => cd.is_negative(b),
        }
    }
}

/// Ascending product of creation operators applied to `|0⟩`, ghosts not repeated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PbwMonomial(pub Vec<GenKey>);

impl PbwMonomial {
    pub fn vacuum() -> Self {
        PbwMonomial(Vec::new())
    }

    /// Checks canonical order and creation modes.
    pub fn new(keys: Vec<GenKey>) -> Option<Self> {
        let ordered = keys.windows(2).all(|w| w[0] < w[1] || (w[0] == w[1] && !w[0].is_ghost()));
        (ordered && keys.iter().all(GenKey::is_creation)).then_some(PbwMonomial(keys))
    }

    pub fn ghost_number(&self) -> i64 {
        self.0.iter().filter(|g| g.is_ghost()).count() as i64
    }

    pub fn delta_new(&self, cd: &ChevalleyData) -> i64 {
        self.0.iter().map(|g| g.delta_new(cd)).sum()
    }

    /// `h̄`-weight in simple-root coordinates.
    pub fn weight(&self, cd: &ChevalleyData) -> Vec<i64> {
        let mut w = vec![0; cd.rank];
        for g in &self.0 {
            for (x, y) in w.iter_mut().zip(&cd.weights[g.index()]) {
                *x += y;
            }
        }
        w
    }

    /// Height of the `h̄`-weight.
    pub fn height(&self, cd: &ChevalleyData) -> i64 {
        self.0.iter().map(|g| cd.height(g.index())).sum()
    }
}

/// Sparse combination of PBW monomials over `Q(k)`.
pub type State = BTreeMap<PbwMonomial, RatFunc>;

/// Smallest `p` with the monomial in `F_p`, the filtration by `ρ̄∨`-weight `⟨λ, ρ̄∨⟩ ≥ −p − n`.
pub fn filtration_level(cd: &ChevalleyData, m: &PbwMonomial) -> i64 {
    -m.height(cd) - m.ghost_number()
}

/// Generators of `Δ_new ≤ max`, in PBW order.
pub fn generators(cd: &ChevalleyData, max: i64) -> Vec<GenKey> {
    let mut out = Vec::new();
    for a in (0..cd.dim()).filter(|&a| !cd.is_positive(a)) {
        let h = -cd.height(a);
        for m in 1..=(max - h) {
            out.push(GenKey::current(a, -m));
        }
    }
    for b in cd.negative_indices() {
        let h = -cd.height(b);
        for m in 0..=(max - h) {
            out.push(GenKey::ghost(b, -m));
        }
    }
    out.sort();
    out
}

/// PBW basis of the `Δ_new = delta` part of `C″`, split by ghost number.
pub fn enumerate_basis(cd: &ChevalleyData, delta: i64) -> Vec<Vec<PbwMonomial>> {
    let gens = generators(cd, delta);
    let mut by_ghost: Vec<Vec<PbwMonomial>> = vec![Vec::new()];
    let mut cur = Vec::new();
    fn rec(
        cd: &ChevalleyData,
        gens: &[GenKey],
        start: usize,
        left: i64,
        cur: &mut Vec<GenKey>,
        out: &mut Vec<Vec<PbwMonomial>>,
    ) {
        if left == 0 {
            let m = PbwMonomial(cur.clone());
            let g = m.ghost_number() as usize;
            if out.len() <= g {
                out.resize(g + 1, Vec::new());
            }
            out[g].push(m);
            return;
        }
        for i in start..gens.len() {
            let w = gens[i].delta_new(cd);
            if w > left {
                continue;
            }
            cur.push(gens[i]);
            let next = if gens[i].is_ghost() { i + 1 } else { i };
            rec(cd, gens, next, left - w, cur, out);
            cur.pop();
        }
    }
    if delta >= 0 {
        rec(cd, &gens, 0, delta, &mut cur, &mut by_ghost);
    }
    for b in &mut by_ghost {
        b.sort();
    }
    by_ghost
}

/// Which part of `d_+ = d_+^st + χ_+` to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DPart {
    Full,
    Standard,
    Chi,
}

/// `(Δ_new, ghost number, h̄-weight)`: the pieces on which `d` acts blockwise.
type Sector = (i64, i64, Vec<i64>);

/// PBW bookkeeping on top of the Fock realization, with caches.
pub struct Realization<'a> {
    pub fock: Fock<'a>,
    vectors: RefCell<BTreeMap<PbwMonomial, FVec>>,
    bases: RefCell<BTreeMap<i64, Vec<Vec<PbwMonomial>>>>,
    reducers: RefCell<BTreeMap<Sector, (Vec<PbwMonomial>, Reducer)>>,
}

impl<'a> Realization<'a> {
    /// Suitable for states of `Δ_new ≤ max_delta`.
    pub fn new(cd: &'a ChevalleyData, max_delta: i64) -> Self {
        Realization {
            fock: Fock::new(cd, 3 * max_delta.max(1) + 2),
            vectors: RefCell::new(BTreeMap::new()),
            bases: RefCell::new(BTreeMap::new()),
            reducers: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn cd(&self) -> &'a ChevalleyData {
        self.fock.cd
    }

    /// Image of a PBW monomial in the Fock space; the last factor acts first.
    pub fn vector(&self, m: &PbwMonomial) -> Result<FVec> {
        if let Some(v) = self.vectors.borrow().get(m) {
            return Ok(v.clone());
        }
        let mut v = fock::vacuum();
        for g in m.0.iter().rev() {
            v = self.apply_generator(g, &v)?;
        }
        self.vectors.borrow_mut().insert(m.clone(), v.clone());
        Ok(v)
    }

    /// `Ĵ_a(n)` or `ψ_{−α}(n)` on a Fock vector, any mode.
    pub fn apply_generator(&self, g: &GenKey, v: &FVec) -> Result<FVec> {
        match g.kind {
            GenKind::HattedCurrent(a) => self.fock.hat_j(a, g.mode, v),
            GenKind::Ghost(b) => self.fock.psi(b, g.mode, v),
        }
    }

    fn mono_weight(&self, m: &fock::FMono) -> Vec<i64> {
        let cd = self.cd();
        let mut w = vec![0; cd.rank];
        for (a, _) in m.cur.iter().chain(&m.gh) {
            for (x, y) in w.iter_mut().zip(&cd.weights[*a]) {
                *x += y;
            }
        }
        w
    }

    fn with_reducer<T>(&self, key: Sector, f: impl FnOnce(&[PbwMonomial], &Reducer) -> T) -> Result<T> {
        if !self.reducers.borrow().contains_key(&key) {
            let (delta, ghost, weight) = &key;
            let all =
                self.bases.borrow_mut().entry(*delta).or_insert_with(|| enumerate_basis(self.cd(), *delta)).clone();
            let basis: Vec<PbwMonomial> = all
                .get(*ghost as usize)
                .map(|b| b.iter().filter(|m| &m.weight(self.cd()) == weight).cloned().collect())
                .unwrap_or_default();
            let vecs = basis.iter().map(|m| self.vector(m)).collect::<Result<Vec<_>>>()?;
            let red = Reducer::new(&vecs);
            self.reducers.borrow_mut().insert(key.clone(), (basis, red));
        }
        let cache = self.reducers.borrow();
        let (basis, red) = &cache[&key];
        Ok(f(basis, red))
    }

    fn read_back(&self, v: &FVec, delta: i64, ghost: i64) -> Result<Vec<(PbwMonomial, Poly)>> {
        // χ_+ shifts the weight, so split into weight components first
        let mut parts: BTreeMap<Vec<i64>, FVec> = BTreeMap::new();
        for (m, c) in v {
            parts.entry(self.mono_weight(m)).or_default().insert(m.clone(), c.clone());
        }
        let mut out = Vec::new();
        for (w, part) in parts {
            out.extend(self.with_reducer((delta, ghost, w), |basis, red| {
                let coords = red.solve(&part).expect("vector lies outside the PBW span of C″");
                basis.iter().cloned().zip(coords).filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>()
            })?);
        }
        Ok(out)
    }

    /// Reads a Fock vector of definite `(Δ_new, ghost#)` back in the PBW basis.
    /// Panics if the vector is not in `C″`.
    pub fn to_state(&self, v: &FVec, delta: i64, ghost: i64) -> Result<State> {
        Ok(self.read_back(v, delta, ghost)?.into_iter().map(|(m, c)| (m, RatFunc::from_poly(c))).collect())
    }

    /// `d(m)` in the PBW basis of the next ghost number, with coefficients in `Q[k]`.
    pub fn differential_column(&self, m: &PbwMonomial, part: DPart) -> Result<Vec<(PbwMonomial, Poly)>> {
        let v = self.vector(m)?;
        let dv = match part {
            DPart::Full => self.fock.d_plus(&v)?,
            DPart::Standard => self.fock.d_st(&v)?,
            DPart::Chi => self.fock.chi_plus(&v)?,
        };
        self.read_back(&dv, m.delta_new(self.cd()), m.ghost_number() + 1)
    }

    pub fn apply(&self, state: &State, part: DPart) -> Result<State> {
        let mut out = State::new();
        for (m, c) in state {
            for (t, p) in self.differential_column(m, part)? {
                let e = out.entry(t).or_default();
                *e = &*e + &(c * &RatFunc::from_poly(p));
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Product `g_1 ⋯ g_r |0⟩` of arbitrary `C″` generators, straightened to PBW form.
    pub fn straighten(&self, keys: &[GenKey]) -> Result<State> {
        if !keys.iter().all(|g| g.in_sector(self.cd())) {
            return Err(Error::SectorViolation);
        }
        let mut v = fock::vacuum();
        for g in keys.iter().rev() {
            v = self.apply_generator(g, &v)?;
        }
        let delta = keys.iter().map(|g| g.delta_new(self.cd())).sum();
        let ghost = keys.iter().filter(|g| g.is_ghost()).count() as i64;
        self.to_state(&v, delta, ghost)
    }
}

/// `d_+` on a state of `C″`.
pub fn apply_d_plus(cd: &ChevalleyData, state: &State) -> Result<State> {
    let max = state.keys().map(|m| m.delta_new(cd)).max().unwrap_or(0);
    Realization::new(cd, max).apply(state, DPart::Full)
}

/// `[Ĵ_a(m), Ĵ_b(n)] = Σ_d c_{a,b}^d Ĵ_d(m+n) + central`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatBracket {
    pub terms: Vec<(usize, i64, Q)>,
    pub central: Poly,
}

/// Bracket of two hatted currents of the `C″` sector; the central term is `(k+h∨)m(J_a,J_b)`.
pub fn hatted_commutator(cd: &ChevalleyData, a: usize, m: i64, b: usize, n: i64) -> Result<HatBracket> {
    if cd.is_positive(a) || cd.is_positive(b) || a >= cd.dim() || b >= cd.dim() {
        return Err(Error::SectorViolation);
    }
    let terms = cd.bracket(a, b).iter().map(|(d, c)| (*d, m + n, c.clone())).collect();
    let central =
        if m + n == 0 { Poly::k_plus(q(cd.h_check())).scale(&(q(m) * &cd.pairing[a][b])) } else { Poly::zero() };
    Ok(HatBracket { terms, central })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KMode {
    Symbolic,
    At(Q),
}

/// One `Δ_new` slice of `C″` with its differentials.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSlice {
    pub delta_new: i64,
    pub k_mode: KMode,
    /// `bases[g]` spans ghost number `g`.
    pub bases: Vec<Vec<PbwMonomial>>,
    /// `differentials[g]: C^g → C^{g+1}`, rows indexed by `bases[g+1]`.
    pub differentials: Vec<SparseMatrix<RatFunc>>,
}

impl ComplexSlice {
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.bases.iter().enumerate().map(|(g, b)| if g % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) }).sum()
    }
}

pub fn build_slice(cd: &ChevalleyData, delta_new: i64, k_mode: KMode) -> Result<ComplexSlice> {
    build_slice_with(cd, delta_new, k_mode, false)
}

/// As [`build_slice`]; `allow_critical` permits specializing at `k = −h∨`.
pub fn build_slice_with(
    cd: &ChevalleyData,
    delta_new: i64,
    k_mode: KMode,
    allow_critical: bool,
) -> Result<ComplexSlice> {
    if let KMode::At(k0) = &k_mode {
        if *k0 == q(-cd.h_check()) && !allow_critical {
            return Err(Error::CriticalSpecialization(k0.clone()));
        }
    }
    let r = Realization::new(cd, delta_new);
    let bases = enumerate_basis(cd, delta_new);
    let mut differentials = Vec::new();
    for g in 0..bases.len().saturating_sub(1) {
        let rows: BTreeMap<&PbwMonomial, usize> = bases[g + 1].iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut t = Vec::new();
        for (j, m) in bases[g].iter().enumerate() {
            for (target, p) in r.differential_column(m, DPart::Full)? {
                let i = rows[&target];
                let s = match &k_mode {
                    KMode::Symbolic => RatFunc::from_poly(p),
                    KMode::At(k0) => RatFunc::constant(p.eval(k0)),
                };
                t.push((i, j, s));
            }
        }
        differentials.push(SparseMatrix::from_triplets(bases[g + 1].len(), bases[g].len(), t));
    }
    for w in differentials.windows(2) {
        assert!(w[1].mul(&w[0]).is_zero(), "d∘d ≠ 0 in slice Δ_new = {delta_new}");
    }
    Ok(ComplexSlice { delta_new, k_mode, bases, differentials })
}
