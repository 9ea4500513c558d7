//! Acceptance suite: one line per criterion, runtime checked against its budget.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use walgebra::cli::{brst_parallel, dominant_weights_up_to_dim};
use walgebra_core::admissible::{cell_weight, enumerate_cells, nondegenerate, AdmissibleLevel};
use walgebra_core::affine::{self, AffineWeight};
use walgebra_core::cohom::{kostant_finite_verify, kostant_verma_sh0};
use walgebra_core::freefield::{
    build_slice, enumerate_basis, filtration_level, DPart, KMode, PbwMonomial, Realization, State,
};
use walgebra_core::rational::{frac, gcd_i64, q};
use walgebra_core::rootsys::{build_chevalley, build_root_system, CartanType, RootSystem, Weight};
use walgebra_core::wchar::{
    casimir_consistency, cell_conformal_weight, central_character, central_charge, conformal_weight,
    dual_central_character, generic_irreducible_character, irreducible_character, vacuum_w_character, verma_character,
};
use walgebra_core::{RatFunc, Q};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rs(s: &str) -> RootSystem {
    build_root_system(s.parse::<CartanType>().unwrap()).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_q(r: &mut ChaCha8Rng, span: i64, den: i64) -> Q {
    frac(r.gen_range(-span..=span), r.gen_range(1..=den))
}

fn random_weight(r: &mut ChaCha8Rng, rank: usize) -> Weight {
    Weight::new((0..rank).map(|_| random_q(r, 20, 7)).collect())
}

fn norm_in_fundamental_coords(rs: &RootSystem, x: &[Q]) -> Q {
    let mut s = q(0);
    for (i, xi) in x.iter().enumerate() {
        for (j, xj) in x.iter().enumerate() {
            s += xi * &rs.fund_form[i][j] * xj;
        }
    }
    s
}

fn c1_central_charge() -> Check {
    let a1 = rs("A1");
    let c = central_charge(&a1, &frac(-5, 4)).map_err(|e| e.to_string())?;
    ensure(c == frac(1, 2), || format!("c(-5/4) = {c}"))?;
    let mut r = rng(1);
    let mut done = 0;
    while done < 20 {
        let g = rs(["A1", "A2", "B2", "G2"][r.gen_range(0..4)]);
        let p = r.gen_range(g.h_check..g.h_check + 16);
        let qq = r.gen_range(g.h..g.h + 16);
        if gcd_i64(p, qq) != 1 || gcd_i64(qq, g.lacing) != 1 {
            continue;
        }
        let k = frac(p, qq) - q(g.h_check);
        let x: Vec<Q> = g.rho.coords.iter().zip(&g.rho_check.coords).map(|(a, b)| q(qq) * a - q(p) * b).collect();
        let closed = q(g.rank() as i64) - q(12) * norm_in_fundamental_coords(&g, &x) / q(p * qq);
        let c = central_charge(&g, &k).map_err(|e| e.to_string())?;
        ensure(c == closed, || format!("{} (p,q)=({p},{qq}): c(k) = {c}, closed form {closed}", g.label()))?;
        done += 1;
    }
    Ok("c = 1/2 at A1 k=-5/4; 20 random admissible (p,q) in A1,A2,B2,G2 agree".into())
}

fn c2_conformal_weights() -> Check {
    let a1 = rs("A1");
    let level = AdmissibleLevel::from_pq(&a1, 3, 4).ok_or("(3,4) not admissible")?;
    let cells = enumerate_cells(&a1, &level).map_err(|e| e.to_string())?;
    let mut deltas: Vec<Q> = cells.iter().map(|c| cell_conformal_weight(&a1, &c.lambda).unwrap()).collect();
    deltas.sort();
    ensure(deltas == vec![q(0), frac(1, 16), frac(1, 2)], || format!("Δ = {deltas:?}"))?;
    let mut r = rng(2);
    let types = ["A1", "A2", "B2", "G2", "A3", "B3", "C3"];
    for _ in 0..100 {
        let g = rs(types[r.gen_range(0..types.len())]);
        let k = random_q(&mut r, 30, 9);
        if k == q(-g.h_check) {
            continue;
        }
        let lam = random_weight(&mut r, g.rank());
        ensure(casimir_consistency(&g, &k, &lam).unwrap(), || format!("{} k={k} λ={lam:?}", g.label()))?;
    }
    Ok("Ising Δ ∈ {0, 1/16, 1/2}; Casimir identity on 100 random (k, λ̄)".into())
}

/// Multisets of `(part, colour)` with part ≥ d_i + 1 in colour `i`, counted by direct enumeration.
fn brute_colored_partitions(exponents: &[i64], n: i64) -> i64 {
    let mut tokens: Vec<(i64, usize)> = Vec::new();
    for (i, d) in exponents.iter().enumerate() {
        for part in d + 1..=n {
            tokens.push((part, i));
        }
    }
    fn go(tokens: &[(i64, usize)], from: usize, left: i64) -> i64 {
        if left == 0 {
            return 1;
        }
        (from..tokens.len()).filter(|&t| tokens[t].0 <= left).map(|t| go(tokens, t, left - tokens[t].0)).sum()
    }
    go(&tokens, 0, n)
}

fn c3_vacuum_character() -> Check {
    let a1 = rs("A1");
    let brute: Vec<i64> = (0..=10).map(|n| brute_colored_partitions(&a1.exponents, n)).collect();
    ensure(brute == [1, 0, 1, 1, 2, 2, 4, 4, 7, 8, 12], || format!("A1 oracle {brute:?}"))?;
    let got: Vec<Q> = vacuum_w_character(&a1, 10).coeffs;
    ensure(got == brute.iter().map(|&x| q(x)).collect::<Vec<_>>(), || format!("A1 {got:?}"))?;
    let a2 = rs("A2");
    let brute2: Vec<Q> = (0..=8).map(|n| q(brute_colored_partitions(&a2.exponents, n))).collect();
    let got2 = vacuum_w_character(&a2, 8).coeffs;
    ensure(got2 == brute2, || format!("A2 {got2:?} vs oracle {brute2:?}"))?;
    Ok(format!("A1 to q^10 = {brute:?}; A2 to q^8 matches bicolored count"))
}

fn c4_brst_vanishing() -> Check {
    let mut r = rng(4);
    let mut summary = Vec::new();
    for (t, n) in [("A1", 6usize), ("A2", 3)] {
        let g = rs(t);
        let oracle: Vec<usize> = (0..=n as i64).map(|d| brute_colored_partitions(&g.exponents, d) as usize).collect();
        let mut modes = vec![KMode::Symbolic];
        while modes.len() < 6 {
            let k = random_q(&mut r, 30, 9);
            if k != q(-g.h_check) && !modes.contains(&KMode::At(k.clone())) {
                modes.push(KMode::At(k));
            }
        }
        for mode in modes {
            let rep = brst_parallel(&g, n, mode.clone(), 0, &mut std::io::sink()).map_err(|e| e.to_string())?;
            for s in &rep.slices {
                let h0 = s.cohomology[0];
                ensure(s.pass, || format!("{}: slice {} failed: {:?}", rep.subject, s.degree, s.cohomology))?;
                ensure(s.cohomology[1..].iter().all(|&h| h == 0), || {
                    format!("{}: H^{{>0}} at {}", rep.subject, s.degree)
                })?;
                ensure(h0 == oracle[s.degree as usize], || format!("{}: H^0 = {h0} at {}", rep.subject, s.degree))?;
            }
            ensure(rep.pass, || rep.subject.clone())?;
        }
        summary.push(format!("{t} N={n}"));
    }
    Ok(format!("{} pass over Q(k) and at 5 random levels each", summary.join(", ")))
}

fn c5_finite_kostant() -> Check {
    let mut count = 0;
    for t in ["A1", "A2"] {
        let g = rs(t);
        let cd = build_chevalley(&g).unwrap();
        let weights = dominant_weights_up_to_dim(&g, 64);
        let reports: Vec<_> = weights.par_iter().map(|w| kostant_finite_verify(&cd, &Weight::from_ints(w))).collect();
        for rep in reports {
            let rep = rep.map_err(|e| e.to_string())?;
            ensure(rep.pass && rep.slices[0].cohomology.iter().all(|&h| h == 0), || rep.subject.clone())?;
            count += 1;
        }
    }
    let mut r = rng(5);
    for (t, trunc) in [("A1", 5), ("A2", 4)] {
        let g = rs(t);
        let cd = build_chevalley(&g).unwrap();
        for _ in 0..10 {
            let lam = random_weight(&mut r, g.rank());
            let rep = kostant_verma_sh0(&cd, &lam, trunc).map_err(|e| format!("{t} {lam:?}: {e}"))?;
            ensure(rep.stabilized && rep.coinvariants == 1, || format!("{t} {lam:?}: {rep:?}"))?;
        }
    }
    Ok(format!("{count} dominant λ̄ with dim ≤ 64 have zero homology; 20 Verma truncations stabilize at 1"))
}

/// `v + ρ̂` for A1 as (classical coordinate, level, δ-coefficient); `β = εα + nδ`.
fn a1_reflect(v: &(Q, Q, Q), eps: i64, n: i64) -> (Q, Q, Q) {
    let c = q(eps) * &v.0 + q(n) * &v.1;
    (&v.0 - &c * q(2 * eps), v.1.clone(), &v.2 - &c * q(n))
}

/// Alternating sum for A1 by enumerating every word of bounded length in the integral reflections.
fn oracle_a1_irreducible(lam: &AffineWeight, p: i64, qq: i64, order: usize) -> (Vec<i64>, usize) {
    let a1 = rs("A1");
    let kappa = frac(p, qq);
    let v0 = (&lam.classical.coords[0] + q(1), kappa.clone(), lam.delta.clone());
    let mut gens = Vec::new();
    for n in 0..=qq {
        for eps in [1, -1] {
            if n == 0 && eps < 0 {
                continue;
            }
            if (q(eps) * &v0.0 + q(n) * &kappa).is_integer() {
                gens.push((eps, n));
            }
        }
    }
    let mut elements: BTreeMap<(Q, Q, Q), i64> = BTreeMap::new();
    let mut layer = vec![v0.clone()];
    elements.insert(v0, 1);
    for len in 1..=14 {
        let mut next = Vec::new();
        for v in &layer {
            for &(e, n) in &gens {
                let w = a1_reflect(v, e, n);
                let sign = if len % 2 == 0 { 1 } else { -1 };
                let prev = elements.insert(w.clone(), sign);
                assert!(prev.is_none() || prev == Some(sign), "sign mismatch");
                next.push(w);
            }
        }
        layer = next;
    }
    let k = &lam.level;
    let base = conformal_weight(&a1, k, &lam.classical).unwrap();
    let mut alt = vec![0i64; order + 1];
    for (v, sign) in &elements {
        let cl = Weight::new(vec![&v.0 - q(1)]);
        let shift = conformal_weight(&a1, k, &cl).unwrap() - &base;
        assert!(shift.is_integer() && shift >= q(0), "shift {shift}");
        let s: usize = shift.to_integer().try_into().unwrap();
        if s <= order {
            alt[s] += sign;
        }
    }
    // times Π (1 − q^n)^{-1}
    let mut out = vec![0i64; order + 1];
    for (i, a) in alt.iter().enumerate() {
        for (j, c) in out.iter_mut().enumerate().skip(i) {
            *c += a * brute_colored_partitions(&[0], (j - i) as i64);
        }
    }
    (out, elements.len())
}

fn c6_irreducible_characters() -> Check {
    let a1 = rs("A1");
    let level = AdmissibleLevel::from_pq(&a1, 3, 4).unwrap();
    let vac = cell_weight(&a1, &level, &Weight::zero(1), &Weight::zero(1));
    let ch = irreducible_character(&a1, &level, &vac, 10).map_err(|e| e.to_string())?;
    let (oracle, seen) = oracle_a1_irreducible(&vac, 3, 4, 10);
    let got: Vec<Q> = ch.coeffs.clone();
    ensure(got == oracle.iter().map(|&x| q(x)).collect::<Vec<_>>(), || format!("{got:?} vs oracle {oracle:?}"))?;
    ensure(ch.is_nonnegative_integral(), || "negative or fractional coefficient".into())?;
    let verma = verma_character(&a1, &level.k, &vac.classical, 10).unwrap();
    ensure(verma.lead_exp == ch.lead_exp, || "lead exponents differ".into())?;
    ensure(ch.coeffs.iter().zip(&verma.coeffs).all(|(a, b)| a <= b), || "exceeds Verma".into())?;
    // generic: no integral roots at all
    let k = frac(-3, 2);
    let gen = AffineWeight::new(Weight::new(vec![frac(-2, 3)]), k.clone(), q(0));
    ensure(affine::integral_positive_roots(&a1, &gen, 60).is_empty(), || "generic weight has integral roots".into())?;
    let g = generic_irreducible_character(&a1, &gen, 10).map_err(|e| e.to_string())?;
    ensure(g == verma_character(&a1, &k, &gen.classical, 10).unwrap(), || "generic ≠ Verma".into())?;
    Ok(format!("Ising vacuum to q^10 = {oracle:?} ({seen} group elements); ≤ Verma; generic = Verma"))
}

/// Orbits of the diagonal rotation on pairs, counted by explicit closure.
fn brute_orbit_count(rank: usize, a: i64, b: i64) -> usize {
    fn tuples(rank: usize, m: i64) -> Vec<Vec<i64>> {
        // (λ_0, …, λ_l) ≥ 0 summing to m
        let mut out = Vec::new();
        let mut cur = vec![0; rank + 1];
        fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(cur.clone());
                return;
            }
            for x in 0..=left {
                cur[i] = x;
                rec(i + 1, left - x, cur, out);
            }
        }
        rec(0, m, &mut cur, &mut out);
        out
    }
    let rot = |v: &Vec<i64>| {
        let mut w = v.clone();
        w.rotate_right(1);
        w
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut orbits = 0;
    for l in tuples(rank, a) {
        for m in tuples(rank, b) {
            if seen.contains(&(l.clone(), m.clone())) {
                continue;
            }
            orbits += 1;
            let (mut x, mut y) = (l.clone(), m.clone());
            for _ in 0..=rank {
                seen.insert((x.clone(), y.clone()));
                x = rot(&x);
                y = rot(&y);
            }
        }
    }
    orbits
}

fn c7_admissible_spectrum() -> Check {
    let a1 = rs("A1");
    let level = AdmissibleLevel::from_pq(&a1, 3, 4).unwrap();
    let cells = enumerate_cells(&a1, &level).map_err(|e| e.to_string())?;
    ensure(cells.len() == 3, || format!("{} cells", cells.len()))?;
    ensure(cells.iter().all(|c| nondegenerate(&a1, &c.lambda)), || "degenerate cell".into())?;
    // vacuum: λ̄ = 0, μ̄ = 0, Λ = −(k+h∨)ρ̄∨ + kΛ0
    let vac = AffineWeight::new(a1.rho_check.scale(&-level.kappa()), level.k.clone(), q(0));
    ensure(cells.iter().any(|c| c.lam.is_zero() && c.mu.is_zero() && c.lambda == vac), || "no vacuum cell".into())?;
    for (t, p, qq) in [("A1", 3, 4), ("A1", 5, 7), ("A1", 7, 9), ("A2", 4, 5), ("A2", 5, 7), ("A3", 5, 7)] {
        let g = rs(t);
        let lv = AdmissibleLevel::from_pq(&g, p, qq).unwrap();
        let n = enumerate_cells(&g, &lv).map_err(|e| e.to_string())?.len();
        let brute = brute_orbit_count(g.rank(), p - g.h_check, qq - g.h);
        ensure(n == brute, || format!("{t} ({p},{qq}): {n} cells, {brute} orbits"))?;
    }
    Ok("A1 (3,4) has 3 non-degenerate cells incl. vacuum; orbit counts agree on 6 levels".into())
}

fn single(m: PbwMonomial) -> State {
    let mut s = State::new();
    s.insert(m, RatFunc::one());
    s
}

fn c8_structure() -> Check {
    let mut slices = 0;
    for t in ["A1", "A2"] {
        let g = rs(t);
        let cd = build_chevalley(&g).unwrap();
        let r = Realization::new(&cd, 4);
        for d in 0..=4 {
            let s = build_slice(&cd, d, KMode::Symbolic).map_err(|e| e.to_string())?;
            for w in s.differentials.windows(2) {
                ensure(w[1].mul(&w[0]).is_zero(), || format!("{t} Δ_new={d}: d∘d ≠ 0"))?;
            }
            slices += 1;
            for (gh, basis) in enumerate_basis(&cd, d).iter().enumerate() {
                for m in basis {
                    let p = filtration_level(&cd, m);
                    let st = r.apply(&single(m.clone()), DPart::Standard).map_err(|e| e.to_string())?;
                    let chi = r.apply(&single(m.clone()), DPart::Chi).map_err(|e| e.to_string())?;
                    for out in st.keys().chain(chi.keys()) {
                        ensure(out.delta_new(&cd) == d && out.ghost_number() == gh as i64 + 1, || {
                            format!("{t}: grading broken on {m:?}")
                        })?;
                    }
                    ensure(st.keys().all(|o| filtration_level(&cd, o) <= p - 1), || format!("{t}: d_st on {m:?}"))?;
                    ensure(chi.keys().all(|o| filtration_level(&cd, o) <= p), || format!("{t}: χ_+ on {m:?}"))?;
                }
            }
        }
    }
    let mut r = rng(8);
    let types = ["A1", "A2", "B2", "G2", "A3", "C3", "D4"];
    for _ in 0..200 {
        let g = rs(types[r.gen_range(0..types.len())]);
        let lam = random_weight(&mut r, g.rank());
        let word: Vec<usize> = (0..r.gen_range(0..8)).map(|_| r.gen_range(0..g.rank())).collect();
        let moved = g.weyl_dot(&word, &lam).unwrap();
        ensure(central_character(&g, &moved) == central_character(&g, &lam), || {
            format!("{}: dot invariance", g.label())
        })?;
        let dual = -&g.weyl_act(&g.w0, &lam).unwrap();
        ensure(dual_central_character(&g, &central_character(&g, &lam)) == central_character(&g, &dual), || {
            format!("{}: dual center", g.label())
        })?;
    }
    Ok(format!("{slices} slices with d∘d = 0, grading and filtration; 200 random central-character checks"))
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Check); 8] = [
        (1, "central charge", Duration::from_secs(1), c1_central_charge),
        (2, "conformal weights", Duration::from_secs(1), c2_conformal_weights),
        (3, "vacuum W-character", Duration::from_secs(1), c3_vacuum_character),
        (4, "BRST vanishing", Duration::from_secs(300), c4_brst_vanishing),
        (5, "finite Kostant reduction", Duration::from_secs(60), c5_finite_kostant),
        (6, "irreducible characters", Duration::from_secs(10), c6_irreducible_characters),
        (7, "admissible spectrum", Duration::from_secs(1), c7_admissible_spectrum),
        (8, "structural properties", Duration::from_secs(60), c8_structure),
    ];
    let mut failed = 0;
    for (n, name, budget, f) in criteria {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let el = t.elapsed();
        let (ok, detail) = match res {
            Ok(d) if el <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {n} {:<4} {name}: {detail} [{:.3}s / {}s]",
            if ok { "PASS" } else { "FAIL" },
            el.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria pass");
}
