//! Affine weights and real roots of the untwisted affinization, translations,
//! the affine dot action and windowed integral root systems.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{q, Q};
use crate::rootsys::{RootSystem, Weight};

/// `λ = λ̄ + level·Λ0 + delta·δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeight {
    pub classical: Weight,
    pub level: Q,
    pub delta: Q,
}

impl AffineWeight {
    pub fn new(classical: Weight, level: Q, delta: Q) -> Self {
        AffineWeight { classical, level, delta }
    }

    /// `k Λ0`.
    pub fn level_only(rank: usize, k: Q) -> Self {
        AffineWeight { classical: Weight::zero(rank), level: k, delta: Q::zero() }
    }

    pub fn add(&self, o: &AffineWeight) -> AffineWeight {
        AffineWeight {
            classical: &self.classical + &o.classical,
            level: &self.level + &o.level,
            delta: &self.delta + &o.delta,
        }
    }

    pub fn sub(&self, o: &AffineWeight) -> AffineWeight {
        AffineWeight {
            classical: &self.classical - &o.classical,
            level: &self.level - &o.level,
            delta: &self.delta - &o.delta,
        }
    }
}

/// Affine root `α + nδ`; `classical` in simple coordinates, zero for imaginary roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub classical: Vec<i64>,
    pub n: i64,
}

impl AffineRoot {
    pub fn new(classical: Vec<i64>, n: i64) -> Self {
        AffineRoot { classical, n }
    }

    pub fn is_real(&self) -> bool {
        self.classical.iter().any(|&c| c != 0)
    }

    pub fn is_positive(&self) -> bool {
        self.n > 0 || (self.n == 0 && self.classical.iter().all(|&c| c >= 0) && self.is_real())
    }

    pub fn neg(&self) -> AffineRoot {
        AffineRoot { classical: self.classical.iter().map(|c| -c).collect(), n: -self.n }
    }

    pub fn add(&self, o: &AffineRoot) -> AffineRoot {
        AffineRoot { classical: self.classical.iter().zip(&o.classical).map(|(a, b)| a + b).collect(), n: self.n + o.n }
    }
}

/// One letter of an affine Weyl group element: reflection in `α_i`
/// (`i = 0` is `α_0 = δ − θ`, `i ≥ 1` is `α_i` of the finite system) or a translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineLetter {
    Reflect(usize),
    /// Translation by a coweight in fundamental-coweight coordinates.
    Translate(Weight),
}

/// `ρ = ρ̄ + h∨ Λ0`.
pub fn rho_hat(rs: &RootSystem) -> AffineWeight {
    AffineWeight::new(rs.rho.clone(), q(rs.h_check), Q::zero())
}

/// The affine simple root `α_i`, `i = 0` being `δ − θ`.
pub fn simple_affine_root(rs: &RootSystem, i: usize) -> AffineRoot {
    let l = rs.rank();
    if i == 0 {
        AffineRoot::new(rs.theta().iter().map(|c| -c).collect(), 1)
    } else {
        let mut r = vec![0; l];
        r[i - 1] = 1;
        AffineRoot::new(r, 0)
    }
}

/// `<λ, (α + nδ)^∨>` for a real root.
pub fn coroot_pairing(rs: &RootSystem, lam: &AffineWeight, root: &AffineRoot) -> Q {
    debug_assert!(root.is_real());
    let aa = rs.root_form(&root.classical, &root.classical);
    rs.coroot_pairing(&lam.classical, &root.classical) + q(2 * root.n) * &lam.level / aa
}

/// Linear reflection `s_β(λ) = λ − <λ, β^∨> β`.
pub fn reflect(rs: &RootSystem, root: &AffineRoot, lam: &AffineWeight) -> AffineWeight {
    let c = coroot_pairing(rs, lam, root);
    if c.is_zero() {
        return lam.clone();
    }
    AffineWeight {
        classical: &lam.classical - &rs.root_weight(&root.classical).scale(&c),
        level: lam.level.clone(),
        delta: &lam.delta - &c * q(root.n),
    }
}

/// `t_μ(λ) = λ + <λ,K>μ − (<λ,μ> + ½|μ|²<λ,K>)δ`.
pub fn translate(rs: &RootSystem, mu: &Weight, lam: &AffineWeight) -> AffineWeight {
    let mu_w = rs.coweight_to_weight(mu);
    let mu2 = rs.norm2(&mu_w);
    let pair = rs.coweight_pairing(&lam.classical, mu);
    AffineWeight {
        classical: &lam.classical + &mu_w.scale(&lam.level),
        level: lam.level.clone(),
        delta: &lam.delta - &(pair + mu2 * &lam.level / q(2)),
    }
}

/// `t_μ(α + nδ) = α + (n − <α, μ>)δ`; requires `<α, μ> ∈ Z`.
pub fn translate_root(rs: &RootSystem, mu: &Weight, root: &AffineRoot) -> AffineRoot {
    let p = rs.coweight_pairing(&rs.root_weight(&root.classical), mu);
    assert!(p.is_integer(), "translation by a non-integral coweight does not preserve roots");
    let p: i64 = crate::rational::to_i64(&p).unwrap();
    AffineRoot::new(root.classical.clone(), root.n - p)
}

/// Linear action of a word, letters applied left to right.
pub fn affine_act(rs: &RootSystem, word: &[AffineLetter], lam: &AffineWeight) -> AffineWeight {
    let mut v = lam.clone();
    for letter in word {
        v = match letter {
            AffineLetter::Reflect(i) => reflect(rs, &simple_affine_root(rs, *i), &v),
            AffineLetter::Translate(mu) => translate(rs, mu, &v),
        };
    }
    v
}

/// `w∘λ = w(λ+ρ) − ρ`, letters applied left to right.
pub fn affine_dot(rs: &RootSystem, word: &[AffineLetter], lam: &AffineWeight) -> AffineWeight {
    let rho = rho_hat(rs);
    affine_act(rs, word, &lam.add(&rho)).sub(&rho)
}

/// Real positive roots with `δ`-coefficient `≤ n_max`, ordered by `n` then classical root
/// (positive classical roots first).
pub fn positive_real_roots(rs: &RootSystem, n_max: i64) -> Vec<AffineRoot> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        for r in &rs.pos_roots {
            out.push(AffineRoot::new(r.clone(), n));
        }
        if n > 0 {
            for r in &rs.pos_roots {
                out.push(AffineRoot::new(r.iter().map(|c| -c).collect(), n));
            }
        }
    }
    out
}

/// Positive real roots `α` with `<λ+ρ, α^∨> ∈ Z` and `δ`-coefficient `≤ n_max`.
pub fn integral_positive_roots(rs: &RootSystem, lam: &AffineWeight, n_max: i64) -> Vec<AffineRoot> {
    let v = lam.add(&rho_hat(rs));
    positive_real_roots(rs, n_max).into_iter().filter(|r| coroot_pairing(rs, &v, r).is_integer()).collect()
}

/// Smallest window guaranteed to contain one full period of every root string:
/// `2 × lcm` of the denominators of `2(k+h∨)/(α|α)`.
pub fn default_window(rs: &RootSystem, lam: &AffineWeight) -> i64 {
    let kappa = &lam.level + q(rs.h_check);
    let mut period: i64 = 1;
    for r in &rs.pos_roots {
        let b = q(2) * &kappa / rs.root_form(r, r);
        if !b.is_zero() {
            let d: i64 = crate::rational::to_i64(&Q::from_integer(b.denom().clone())).unwrap_or(i64::MAX / 4);
            period = period.lcm(&d);
        }
    }
    2 * period
}

/// Classical roots `α` admitting some integral `α + nδ`, and the number of
/// simple roots the integral affine system must have: `rank + #components`.
fn expected_simple_count(rs: &RootSystem, v: &AffineWeight) -> usize {
    let mut phi: Vec<Vec<i64>> = Vec::new();
    for r in &rs.pos_roots {
        let b = q(2) * &v.level / rs.root_form(r, r);
        let a = rs.coroot_pairing(&v.classical, r);
        let hit = if b.is_zero() {
            a.is_integer()
        } else {
            let d = crate::rational::to_i64(&Q::from_integer(b.denom().clone())).unwrap();
            (0..d).any(|n| (&a + &b * q(n)).is_integer())
        };
        if hit {
            phi.push(r.clone());
        }
    }
    if phi.is_empty() {
        return 0;
    }
    let rank = integer_rank(&phi);
    // components under non-orthogonality
    let n = phi.len();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while c[x] != x {
            c[x] = c[c[x]];
            x = c[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if !rs.root_form(&phi[i], &phi[j]).is_zero() {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let roots: BTreeSet<usize> = (0..n).map(|i| find(&mut comp, i)).collect();
    rank + roots.len()
}

fn integer_rank(vs: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<Q>> = vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &rows[rank][c];
                for j in 0..cols {
                    let t = &f * &rows[rank][j];
                    rows[r][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Simple roots of the integral system with `δ`-coefficient `≤ n_max`.
///
/// A positive integral real root `β` is simple iff `s_β` maps no other positive integral
/// root to a negative one. Only roots `γ` with `<γ̄, β̄^∨> ∈ {1,2,3}` and `n_γ ≤ 3 n_β`
/// can fail, so the test is finite and exact. The window is too small exactly when fewer
/// than `rank + #components` simples turn up.
pub fn simple_system_of_integral_roots(rs: &RootSystem, lam: &AffineWeight, n_max: i64) -> Result<Vec<AffineRoot>> {
    let v = lam.add(&rho_hat(rs));
    let pos = integral_positive_roots(rs, lam, 3 * n_max);
    let simples: Vec<AffineRoot> = pos
        .iter()
        .filter(|b| b.n <= n_max)
        .filter(|b| {
            !pos.iter().any(|g| {
                if g == *b || g.n > 3 * b.n {
                    return false;
                }
                let c = rs.coroot_pairing(&rs.root_weight(&g.classical), &b.classical);
                if !c.is_positive() {
                    return false;
                }
                let c = crate::rational::to_i64(&c).expect("root pairings are integers");
                let img = AffineRoot::new(
                    g.classical.iter().zip(&b.classical).map(|(x, y)| x - c * y).collect(),
                    g.n - c * b.n,
                );
                !img.is_positive()
            })
        })
        .cloned()
        .collect();
    let expected = expected_simple_count(rs, &v);
    if simples.len() < expected {
        return Err(Error::WindowTooSmall { n_max, found: simples.len(), expected });
    }
    debug_assert_eq!(simples.len(), expected);
    Ok(simples)
}

/// `<λ, α^∨> ∉ Z` for every `α = −β + nδ`, `β ∈ Δ̄_+`, `1 ≤ n ≤ ht β`.
pub fn plus_condition(rs: &RootSystem, lam: &AffineWeight) -> bool {
    rs.pos_roots.iter().zip(&rs.heights).all(|(b, &ht)| {
        let neg: Vec<i64> = b.iter().map(|c| -c).collect();
        (1..=ht).all(|n| !coroot_pairing(rs, lam, &AffineRoot::new(neg.clone(), n)).is_integer())
    })
}

/// `λ̄ − (k+h∨) ρ̄∨`.
pub fn plus_reduction_weight(rs: &RootSystem, lam: &AffineWeight) -> Weight {
    let kappa = &lam.level + q(rs.h_check);
    &lam.classical - &rs.rho_check.scale(&kappa)
}

/// Affine Dynkin labels `(<λ,α_0^∨>, <λ,α_1^∨>, …)`.
pub fn dynkin_labels(rs: &RootSystem, lam: &AffineWeight) -> Vec<Q> {
    (0..=rs.rank()).map(|i| coroot_pairing(rs, lam, &simple_affine_root(rs, i))).collect()
}

/// `−ρ̄∨` as a coweight.
pub fn minus_rho_check_coweight(rs: &RootSystem) -> Weight {
    Weight::new(vec![-Q::one(); rs.rank()])
}
