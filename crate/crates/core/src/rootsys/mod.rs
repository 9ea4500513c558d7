//! Finite root systems of types A–G: Cartan data, the normalized invariant
//! form, positive roots, Weyl group combinatorics and principal grading data.

mod chevalley;
mod types;

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{is_positive_integer, q, Q};

pub use chevalley::{build_chevalley, BasisLabel, ChevalleyData};
pub use types::{CartanType, Family};

/// A weight in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<Q>,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { coords: vec![Q::zero(); rank] }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Weight { coords: c.iter().map(|&x| q(x)).collect() }
    }

    /// The fundamental weight `ω_i`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.coords[i] = Q::one();
        w
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn scale(&self, c: &Q) -> Self {
        Weight { coords: self.coords.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Integral and dominant: all coordinates in `Z≥0`.
    pub fn is_dominant_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    fn check(&self, rank: usize) -> Result<()> {
        if self.rank() != rank {
            return Err(Error::RankMismatch { expected: rank, got: self.rank() });
        }
        Ok(())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        assert_eq!(self.rank(), o.rank());
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        assert_eq!(self.rank(), o.rank());
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// Immutable finite root system datum.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    /// `cartan[i][j] = <α_i^∨, α_j>`.
    pub cartan: Vec<Vec<i64>>,
    /// `d_i = (α_i|α_i)/2`, so that `(α_i|α_j) = d_i cartan[i][j]`.
    pub symmetrizer: Vec<Q>,
    /// Positive roots in simple-root coordinates, sorted by height then lexicographically.
    pub pos_roots: Vec<Vec<i64>>,
    pub heights: Vec<i64>,
    pub rho: Weight,
    /// `ρ̄^∨` transported to `h̄*` by the form.
    pub rho_check: Weight,
    pub exponents: Vec<i64>,
    pub h: i64,
    pub h_check: i64,
    pub lacing: i64,
    /// Gram matrix of the form on simple roots.
    pub form: Vec<Vec<Q>>,
    /// Gram matrix of the form on fundamental weights.
    pub fund_form: Vec<Vec<Q>>,
    /// Longest element as a word, letters applied left to right.
    pub w0: Vec<usize>,
    root_index: BTreeMap<Vec<i64>, usize>,
}

pub fn build_root_system(ty: CartanType) -> Result<RootSystem> {
    RootSystem::new(ty)
}

impl RootSystem {
    pub fn new(ty: CartanType) -> Result<Self> {
        ty.validate()?;
        let cartan = ty.cartan_matrix();
        let symmetrizer = ty.symmetrizer();
        let l = ty.rank;
        let form: Vec<Vec<Q>> = (0..l).map(|i| (0..l).map(|j| &symmetrizer[i] * q(cartan[i][j])).collect()).collect();
        let cinv = invert(&cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
            .expect("Cartan matrix is invertible");
        let fund_form: Vec<Vec<Q>> = (0..l).map(|i| (0..l).map(|j| &cinv[j][i] * &symmetrizer[j]).collect()).collect();
        let pos_roots = positive_roots(&cartan);
        let heights: Vec<i64> = pos_roots.iter().map(|r| r.iter().sum()).collect();
        let root_index = pos_roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let rho = Weight::new(vec![Q::one(); l]);
        let rho_check = Weight::new(symmetrizer.iter().map(|d| Q::one() / d).collect());
        let exponents = ty.exponents();
        let theta_height = *heights.iter().max().unwrap();
        let mut rs = RootSystem {
            cartan_type: ty,
            cartan,
            symmetrizer,
            pos_roots,
            heights,
            rho,
            rho_check,
            exponents,
            h: theta_height + 1,
            h_check: ty.dual_coxeter(),
            lacing: ty.lacing(),
            form,
            fund_form,
            w0: Vec::new(),
            root_index,
        };
        rs.w0 = rs.longest_word();
        Ok(rs)
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn num_pos_roots(&self) -> usize {
        self.pos_roots.len()
    }

    /// Index of a positive root given in simple coordinates.
    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    /// Highest root `θ`.
    pub fn theta(&self) -> &[i64] {
        self.pos_roots.last().unwrap()
    }

    /// A root (simple coordinates) as a weight (fundamental coordinates).
    pub fn root_weight(&self, root: &[i64]) -> Weight {
        let l = self.rank();
        Weight::new((0..l).map(|i| q((0..l).map(|j| self.cartan[i][j] * root[j]).sum())).collect())
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        let mut r = vec![0; self.rank()];
        r[i] = 1;
        self.root_weight(&r)
    }

    /// `(α|β)` for roots in simple coordinates.
    pub fn root_form(&self, a: &[i64], b: &[i64]) -> Q {
        let l = self.rank();
        let mut s = Q::zero();
        for i in 0..l {
            if a[i] == 0 {
                continue;
            }
            for j in 0..l {
                if b[j] != 0 {
                    s += &self.form[i][j] * q(a[i] * b[j]);
                }
            }
        }
        s
    }

    /// `(λ|α)` for a weight and a root in simple coordinates.
    pub fn weight_root_form(&self, lam: &Weight, root: &[i64]) -> Q {
        let mut s = Q::zero();
        for (j, &a) in root.iter().enumerate() {
            if a != 0 {
                s += &lam.coords[j] * &self.symmetrizer[j] * q(a);
            }
        }
        s
    }

    /// `<λ, α^∨> = 2(λ|α)/(α|α)`.
    pub fn coroot_pairing(&self, lam: &Weight, root: &[i64]) -> Q {
        q(2) * self.weight_root_form(lam, root) / self.root_form(root, root)
    }

    /// `<λ, μ>` where `μ` is a coweight in fundamental-coweight coordinates.
    pub fn coweight_pairing(&self, lam: &Weight, mu: &Weight) -> Q {
        self.inner_product(lam, &self.coweight_to_weight(mu)).expect("rank mismatch")
    }

    /// A coweight (fundamental-coweight coordinates) transported to `h̄*`.
    pub fn coweight_to_weight(&self, mu: &Weight) -> Weight {
        Weight::new(mu.coords.iter().zip(&self.symmetrizer).map(|(c, d)| c / d).collect())
    }

    pub fn inner_product(&self, a: &Weight, b: &Weight) -> Result<Q> {
        a.check(self.rank())?;
        b.check(self.rank())?;
        let l = self.rank();
        let mut s = Q::zero();
        for i in 0..l {
            if a.coords[i].is_zero() {
                continue;
            }
            for j in 0..l {
                if !b.coords[j].is_zero() {
                    s += &a.coords[i] * &self.fund_form[i][j] * &b.coords[j];
                }
            }
        }
        Ok(s)
    }

    pub fn norm2(&self, a: &Weight) -> Q {
        self.inner_product(a, a).expect("rank checked by caller")
    }

    /// Simple reflection `s_i` (linear action).
    pub fn reflect(&self, i: usize, lam: &Weight) -> Result<Weight> {
        let l = self.rank();
        if i >= l {
            return Err(Error::IndexOutOfRange { index: i, rank: l });
        }
        lam.check(l)?;
        let c = lam.coords[i].clone();
        let mut out = lam.clone();
        if !c.is_zero() {
            for j in 0..l {
                out.coords[j] -= &c * q(self.cartan[j][i]);
            }
        }
        Ok(out)
    }

    /// Linear action of a word, letters applied left to right.
    pub fn weyl_act(&self, word: &[usize], lam: &Weight) -> Result<Weight> {
        let mut v = lam.clone();
        for &i in word {
            v = self.reflect(i, &v)?;
        }
        Ok(v)
    }

    /// Dot action `w∘λ = w(λ+ρ̄)−ρ̄`, letters applied left to right.
    pub fn weyl_dot(&self, word: &[usize], lam: &Weight) -> Result<Weight> {
        lam.check(self.rank())?;
        let v = self.weyl_act(word, &(lam + &self.rho))?;
        Ok(&v - &self.rho)
    }

    /// Reflection in an arbitrary positive root (simple coordinates).
    pub fn reflect_root(&self, root: &[i64], lam: &Weight) -> Weight {
        let c = self.coroot_pairing(lam, root);
        lam - &self.root_weight(root).scale(&c)
    }

    /// `<λ+ρ̄, α^∨> ∉ Z≥1` for every positive root.
    pub fn antidominant(&self, lam: &Weight) -> bool {
        let v = lam + &self.rho;
        self.pos_roots.iter().all(|a| !is_positive_integer(&self.coroot_pairing(&v, a)))
    }

    /// Weyl dimension formula `Π_{α>0} <λ+ρ̄, α^∨>/<ρ̄, α^∨>`.
    pub fn weyl_dimension(&self, lam: &Weight) -> Q {
        let v = lam + &self.rho;
        self.pos_roots.iter().map(|a| self.coroot_pairing(&v, a) / self.coroot_pairing(&self.rho, a)).product()
    }

    /// Height-one pairing `<ρ̄, α^∨>` summed; equals `<ρ̄, ρ̄^∨>` when paired with `ρ̄^∨`.
    pub fn rho_rho_check(&self) -> Q {
        self.inner_product(&self.rho, &self.rho_check).unwrap()
    }

    /// Images of `λ` under the full Weyl group (linear action).
    pub fn orbit(&self, lam: &Weight) -> Vec<Weight> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lam.clone());
        queue.push_back(lam.clone());
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank() {
                let w = self.reflect(i, &v).unwrap();
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// One reduced word per Weyl group element, shortest first. Feasible for small ranks only.
    pub fn weyl_group_words(&self) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(self.rho.clone());
        queue.push_back((self.rho.clone(), Vec::new()));
        while let Some((v, word)) = queue.pop_front() {
            for i in 0..self.rank() {
                let w = self.reflect(i, &v).unwrap();
                if seen.insert(w.clone()) {
                    let mut wd: Vec<usize> = word.clone();
                    wd.push(i);
                    queue.push_back((w, wd));
                }
            }
            out.push(word);
        }
        out
    }

    fn longest_word(&self) -> Vec<usize> {
        let mut v = self.rho.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| v.coords[i].is_positive()) {
            v = self.reflect(i, &v).unwrap();
            word.push(i);
        }
        word
    }

    pub fn label(&self) -> alloc::string::String {
        self.cartan_type.to_string()
    }
}

/// Positive roots by the root-string algorithm, sorted by height then lexicographically.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..l)
        .map(|i| {
            let mut r = vec![0; l];
            r[i] = 1;
            r
        })
        .collect();
    all.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for r in &layer {
            for i in 0..l {
                // p = largest p with r - p α_i a root (or r - p α_i = 0 excluded)
                let mut p = 0;
                let mut s = r.clone();
                loop {
                    s[i] -= 1;
                    if all.contains(&s) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..l).map(|j| cartan[i][j] * r[j]).sum();
                if p - pairing > 0 {
                    let mut t = r.clone();
                    t[i] += 1;
                    if !all.contains(&t) {
                        next.insert(t);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }
    let mut v: Vec<Vec<i64>> = all.into_iter().collect();
    v.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then(a.cmp(b)));
    v
}

/// Inverse of a square rational matrix, `None` if singular.
pub(crate) fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = Q::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[r][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
