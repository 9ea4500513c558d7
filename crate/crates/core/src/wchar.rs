//! Central charge, conformal weights, central characters and characters of
//! highest weight modules of the principal W-algebra.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::admissible::AdmissibleLevel;
use crate::affine::{self, AffineRoot, AffineWeight};
use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rational::{q, to_i64, Q};
use crate::rootsys::{RootSystem, Weight};

/// Largest number of Weyl group elements the alternating sum may visit.
pub const MAX_WEYL_TERMS: usize = 200_000;

fn kappa(rs: &RootSystem, k: &Q) -> Result<Q> {
    let kap = k + q(rs.h_check);
    if kap.is_zero() {
        return Err(Error::CriticalLevel { h_check_neg: q(-rs.h_check) });
    }
    Ok(kap)
}

/// `c(k) = l − 12((k+h∨)|ρ̄∨|² − 2<ρ̄,ρ̄∨> + |ρ̄|²/(k+h∨))`.
pub fn central_charge(rs: &RootSystem, k: &Q) -> Result<Q> {
    let kap = kappa(rs, k)?;
    let rc2 = rs.norm2(&rs.rho_check);
    let r2 = rs.norm2(&rs.rho);
    let rr = rs.rho_rho_check();
    Ok(q(rs.rank() as i64) - q(12) * (&kap * rc2 - q(2) * rr + r2 / &kap))
}

/// `Δ_λ̄ = |λ̄+ρ̄|²/2(k+h∨) − l/24 + c(k)/24`.
pub fn conformal_weight(rs: &RootSystem, k: &Q, lam: &Weight) -> Result<Q> {
    let kap = kappa(rs, k)?;
    let c = central_charge(rs, k)?;
    let v = lam + &rs.rho;
    Ok(rs.inner_product(&v, &v)? / (q(2) * kap) - Q::new((rs.rank() as i64).into(), 24.into()) + c / q(24))
}

/// Evaluates `Ω/(2(k+h∨)) − ½((k+h∨)|ρ̄∨|² − 2<ρ̄,ρ̄∨>)` at `γ_λ̄(Ω) = |λ̄+ρ̄|² − |ρ̄|²`
/// and compares with `Δ_λ̄`.
pub fn casimir_consistency(rs: &RootSystem, k: &Q, lam: &Weight) -> Result<bool> {
    let kap = kappa(rs, k)?;
    let v = lam + &rs.rho;
    let omega = rs.inner_product(&v, &v)? - rs.norm2(&rs.rho);
    let l0 = omega / (q(2) * &kap) - (&kap * rs.norm2(&rs.rho_check) - q(2) * rs.rho_rho_check()) / q(2);
    Ok(l0 == conformal_weight(rs, k, lam)?)
}

/// Canonical representative (lexicographic minimum) of the `W̄`-orbit of `λ̄+ρ̄`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentralCharacter {
    pub orbit_rep: Weight,
}

fn canonical(rs: &RootSystem, v: &Weight) -> CentralCharacter {
    CentralCharacter { orbit_rep: rs.orbit(v).into_iter().min().unwrap() }
}

pub fn central_character(rs: &RootSystem, lam: &Weight) -> CentralCharacter {
    canonical(rs, &(lam + &rs.rho))
}

/// `γ_λ̄ ↦ γ_{−w0(λ̄)}`; on orbit representatives `v ↦ −w0(v)`, in the orbit of `−v`.
pub fn dual_central_character(rs: &RootSystem, gamma: &CentralCharacter) -> CentralCharacter {
    canonical(rs, &-&gamma.orbit_rep)
}

fn verma_lead(rs: &RootSystem, kap: &Q, lam: &Weight) -> Q {
    let v = lam + &rs.rho;
    rs.norm2(&v) / (q(2) * kap) - Q::new((rs.rank() as i64).into(), 24.into())
}

/// `q^{|λ̄+ρ̄|²/2(k+h∨)} / η(q)^l` to relative order `N`.
pub fn verma_character(rs: &RootSystem, k: &Q, lam: &Weight, order: usize) -> Result<QSeries> {
    let kap = kappa(rs, k)?;
    let mut s = QSeries::colored_partitions(rs.rank(), order);
    s.lead_exp = verma_lead(rs, &kap, lam);
    Ok(s)
}

/// `Π_i Π_{n ≥ d_i+1} (1 − q^n)^{−1}`.
pub fn vacuum_w_character(rs: &RootSystem, order: usize) -> QSeries {
    let exps = rs.exponents.clone();
    QSeries::inverse_product(order, move |n| exps.iter().filter(|&&d| (n as i64) > d).count())
}

/// Character of a one-dimensional module: the constant series.
pub fn critical_character(_rs: &RootSystem, _lam: &Weight, order: usize) -> QSeries {
    QSeries::monomial(Q::zero(), order)
}

/// Simple integral roots of `Λ`, growing the window until it suffices.
pub fn integral_simple_roots(rs: &RootSystem, lam: &AffineWeight) -> Result<Vec<AffineRoot>> {
    let mut w = affine::default_window(rs, lam);
    loop {
        match affine::simple_system_of_integral_roots(rs, lam, w) {
            Err(Error::WindowTooSmall { .. }) if w < 1 << 12 => w *= 2,
            other => return other,
        }
    }
}

/// `Σ_{w ∈ W(Λ)} (−1)^{ℓ(w)} ch M(γ_{cl(w∘Λ)})` truncated at relative order `N`.
///
/// Elements are visited breadth first from `Λ+ρ`; a step `v ↦ s_β v` along a simple
/// integral root `β = β̄ + nδ` with `c = <v, β^∨> > 0` raises the exponent
/// `|v̄|²/2(k+h∨)` by exactly `c·n`. Every step is checked to be nonnegative, so
/// pruning at the truncation order cannot drop a contributing element.
pub fn alternating_character(rs: &RootSystem, lam: &AffineWeight, order: usize) -> Result<QSeries> {
    let kap = kappa(rs, &lam.level)?;
    let simples = integral_simple_roots(rs, lam)?;
    let v0 = lam.add(&affine::rho_hat(rs));
    for b in &simples {
        let c = affine::coroot_pairing(rs, &v0, b);
        if !(c.is_integer() && c.is_positive()) {
            return Err(Error::NotAdmissible(format!(
                "<Λ+ρ, β∨> = {c} is not a positive integer for the integral simple root {b:?}"
            )));
        }
    }
    let lead = verma_lead(rs, &kap, &lam.classical);
    // relative exponent -> signed count
    let mut terms: BTreeMap<i64, i64> = BTreeMap::new();
    let mut seen: BTreeMap<AffineWeight, ()> = BTreeMap::new();
    let mut frontier = alloc::vec![(v0.clone(), 0i64)];
    seen.insert(v0, ());
    let mut depth = 0usize;
    while !frontier.is_empty() {
        let sign = if depth % 2 == 0 { 1 } else { -1 };
        let mut next = Vec::new();
        for (v, rel) in &frontier {
            *terms.entry(*rel).or_insert(0) += sign;
            for b in &simples {
                let c = affine::coroot_pairing(rs, v, b);
                if !c.is_positive() {
                    continue;
                }
                let step = &c * q(b.n);
                let Some(step) = to_i64(&step).filter(|s| *s >= 0) else {
                    return Err(Error::TruncationUnsound(format!("exponent step {step} along {b:?}")));
                };
                let w = affine::reflect(rs, b, v);
                let rel_w = rel + step;
                // cross-check the step against a direct evaluation
                debug_assert_eq!(
                    rs.norm2(&w.classical) / (q(2) * &kap) - rs.norm2(&v.classical) / (q(2) * &kap),
                    q(step)
                );
                if rel_w > order as i64 || seen.contains_key(&w) {
                    continue;
                }
                seen.insert(w.clone(), ());
                next.push((w, rel_w));
            }
        }
        if seen.len() > MAX_WEYL_TERMS {
            return Err(Error::TruncationUnsound(format!(
                "more than {MAX_WEYL_TERMS} Weyl group elements below the truncation order"
            )));
        }
        frontier = next;
        depth += 1;
    }
    let mut numer = QSeries::zero(lead.clone(), order);
    for (e, c) in terms {
        numer.coeffs[e as usize] += q(c);
    }
    let mut out = numer.mul(&QSeries::colored_partitions(rs.rank(), order));
    out.lead_exp = lead;
    Ok(out)
}

/// Character of the simple module attached to a non-degenerate principal admissible weight.
pub fn irreducible_character(
    rs: &RootSystem,
    level: &AdmissibleLevel,
    lambda: &AffineWeight,
    order: usize,
) -> Result<QSeries> {
    kappa(rs, &level.k)?;
    if lambda.level != level.k {
        return Err(Error::NotAdmissible(format!("weight level {} differs from k = {}", lambda.level, level.k)));
    }
    if !rs.antidominant(&lambda.classical) {
        return Err(Error::NotAdmissible(format!("classical part {} is not anti-dominant", lambda.classical)));
    }
    let simples = integral_simple_roots(rs, lambda)?;
    if simples.len() != rs.rank() + 1 {
        return Err(Error::NotAdmissible(format!(
            "integral root system has {} simple roots, expected {}",
            simples.len(),
            rs.rank() + 1
        )));
    }
    alternating_character(rs, lambda, order)
}

/// `ch L = ch M` with the check that the integral root system is empty; for testing generic levels.
pub fn generic_irreducible_character(rs: &RootSystem, lambda: &AffineWeight, order: usize) -> Result<QSeries> {
    alternating_character(rs, lambda, order)
}

/// `Δ` of the top of a cell: lead exponent of its character plus `c/24`.
pub fn cell_conformal_weight(rs: &RootSystem, lambda: &AffineWeight) -> Result<Q> {
    conformal_weight(rs, &lambda.level, &lambda.classical)
}
