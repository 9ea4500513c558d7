//! Exact linear algebra and the cohomology verifiers: vanishing of the BRST
//! cohomology of `C″` away from ghost number zero, and exactness of the
//! `χ̄_−`-twisted Chevalley complex of finite-dimensional modules.

mod linalg;
pub mod module;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

pub use linalg::*;
use module::{finite_module, Mono, Verma};

use crate::error::{Error, Result};
use crate::freefield::{build_slice, ComplexSlice, KMode};
use crate::poly::RatFunc;
use crate::rational::{to_i64, Q};
use crate::rootsys::{build_chevalley, ChevalleyData, RootSystem, Weight};
use crate::wchar::vacuum_w_character;

/// Ranks and cohomology of one graded piece of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceReport {
    /// `Δ_new` for BRST slices; 0 for a finite complex.
    pub degree: i64,
    /// Chain dimensions, indexed by ghost number (or homological degree).
    pub dims: Vec<usize>,
    /// `ranks[i]` is the rank of the differential leaving degree `i`.
    pub ranks: Vec<usize>,
    pub cohomology: Vec<usize>,
    /// Expected cohomology; any degree not listed must vanish.
    pub expected: Vec<usize>,
    pub euler: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub subject: String,
    pub slices: Vec<SliceReport>,
    pub pass: bool,
}

impl CohomologyReport {
    pub fn new(subject: String, slices: Vec<SliceReport>) -> Self {
        let pass = slices.iter().all(|s| s.pass);
        CohomologyReport { subject, slices, pass }
    }

    pub fn failures(&self) -> impl Iterator<Item = &SliceReport> {
        self.slices.iter().filter(|s| !s.pass)
    }
}

/// Assembles a report from chain dimensions and the ranks of the outgoing differentials.
pub fn report_from_ranks(degree: i64, dims: Vec<usize>, ranks: Vec<usize>, expected: Vec<usize>) -> SliceReport {
    let cohomology: Vec<usize> = (0..dims.len())
        .map(|g| {
            let incoming = if g == 0 { 0 } else { ranks[g - 1] };
            dims[g] - ranks[g] - incoming
        })
        .collect();
    let euler = dims.iter().enumerate().map(|(g, d)| if g % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum();
    let h_euler: i64 =
        cohomology.iter().enumerate().map(|(g, d)| if g % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum();
    debug_assert_eq!(euler, h_euler);
    let pass = cohomology.iter().enumerate().all(|(g, h)| *h == expected.get(g).copied().unwrap_or(0));
    SliceReport { degree, dims, ranks, cohomology, expected, euler, pass }
}

pub fn rank(m: &SparseMatrix<RatFunc>) -> usize {
    rank_ratfunc(m)
}

/// Cohomology of a built slice against the expected `dim H^0`.
pub fn slice_report(slice: &ComplexSlice, expected_h0: usize) -> SliceReport {
    let dims = slice.dims();
    let mut ranks: Vec<usize> = slice.differentials.iter().map(rank).collect();
    ranks.resize(dims.len(), 0);
    report_from_ranks(slice.delta_new, dims, ranks, vec![expected_h0])
}

/// Builds and checks one slice of `C″`.
pub fn verify_slice(cd: &ChevalleyData, delta_new: i64, k_mode: KMode, expected_h0: usize) -> Result<SliceReport> {
    let s = build_slice(cd, delta_new, k_mode)?;
    Ok(slice_report(&s, expected_h0))
}

/// Expected `dim H^0` of the slices `Δ_new = 0..=n`.
pub fn expected_h0(rs: &RootSystem, n: usize) -> Vec<usize> {
    vacuum_w_character(rs, n).coeffs.iter().map(|c| to_i64(c).expect("integral character") as usize).collect()
}

/// `H^i(C″) = 0` for `i ≠ 0` and `dim H^0` equal to the vacuum character, for `Δ_new ≤ n`.
pub fn brst_verify(rs: &RootSystem, n: usize, k_mode: KMode) -> Result<CohomologyReport> {
    let cd = build_chevalley(rs)?;
    let expected = expected_h0(rs, n);
    let slices =
        (0..=n).map(|d| verify_slice(&cd, d as i64, k_mode.clone(), expected[d])).collect::<Result<Vec<_>>>()?;
    let level = match &k_mode {
        KMode::Symbolic => String::from("generic k"),
        KMode::At(k) => format!("k = {k}"),
    };
    Ok(CohomologyReport::new(format!("BRST {} {level}, Δ_new ≤ {n}", rs.label()), slices))
}

/// Differentials of the twisted Chevalley complex `M ⊗ Λ^i(n̄_−)`, `y` acting as `y + χ̄_−(y)`.
///
/// `act(a)` is the matrix of `J_a` on `M`. Returns `∂_i: C_i → C_{i−1}` for `i = 1..=N`.
pub fn twisted_chevalley(cd: &ChevalleyData, dim: usize, act: &[Vec<Vec<Q>>]) -> Vec<SparseMatrix<Q>> {
    let neg: Vec<usize> = cd.negative_indices().collect();
    let n = neg.len();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|i| subsets_of(n, i)).collect();
    let index = |s: &[usize]| subsets[s.len()].iter().position(|t| t == s).unwrap();
    let mut out = Vec::new();
    for i in 1..=n {
        let mut t = Vec::new();
        for (col_s, s) in subsets[i].iter().enumerate() {
            for v in 0..dim {
                let col = col_s * dim + v;
                // Σ_j (−1)^j (y_j · m) ⊗ ŷ_j, counting j from 1
                for j in 0..i {
                    let a = neg[s[j]];
                    let sign = if j % 2 == 0 { -Q::one() } else { Q::one() };
                    let mut rest = s.clone();
                    rest.remove(j);
                    let row_s = index(&rest);
                    for (w, row) in act[a].iter().enumerate() {
                        let mut c = row[v].clone();
                        if w == v {
                            c += &cd.chi_minus[a];
                        }
                        if !c.is_zero() {
                            t.push((row_s * dim + w, col, &sign * &c));
                        }
                    }
                }
                // Σ_{j<l} (−1)^{j+l} m ⊗ [y_j, y_l] ∧ rest
                for j in 0..i {
                    for l in j + 1..i {
                        let sign = if (j + l) % 2 == 0 { Q::one() } else { -Q::one() };
                        for (d, c) in cd.bracket(neg[s[j]], neg[s[l]]) {
                            let pos = neg.iter().position(|x| x == d).expect("n̄_− is a subalgebra");
                            let mut rest: Vec<usize> =
                                s.iter().enumerate().filter(|(x, _)| *x != j && *x != l).map(|(_, y)| *y).collect();
                            if rest.contains(&pos) {
                                continue;
                            }
                            // move the new factor into sorted position
                            let p = rest.iter().position(|x| *x > pos).unwrap_or(rest.len());
                            rest.insert(p, pos);
                            let s2 = if p % 2 == 0 { sign.clone() } else { -sign.clone() };
                            t.push((index(&rest) * dim + v, col, &s2 * c));
                        }
                    }
                }
            }
        }
        out.push(SparseMatrix::from_triplets(subsets[i - 1].len() * dim, subsets[i].len() * dim, t));
    }
    out
}

fn subsets_of(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The twisted Chevalley complex of `L̄(λ̄)` is exact in every degree.
pub fn kostant_finite_verify(cd: &ChevalleyData, lam: &Weight) -> Result<CohomologyReport> {
    if !lam.is_dominant_integral() || lam.rank() != cd.rank {
        return Err(Error::NotDominantIntegral);
    }
    let l = finite_module(cd, lam);
    let ds = twisted_chevalley(cd, l.dim, &l.action);
    for w in ds.windows(2) {
        assert!(w[0].mul(&w[1]).is_zero(), "∂∘∂ ≠ 0");
    }
    let n = ds.len();
    let dims: Vec<usize> = (0..=n).map(|i| l.dim * binom(n, i)).collect();
    // homological grading: ∂_i leaves degree i; reuse the cochain bookkeeping on the reversed complex
    let mut ranks: Vec<usize> = ds.iter().rev().map(rank_q).collect();
    ranks.push(0);
    let rev_dims: Vec<usize> = dims.iter().rev().cloned().collect();
    let mut rep = report_from_ranks(0, rev_dims, ranks, Vec::new());
    rep.dims.reverse();
    rep.cohomology.reverse();
    rep.ranks.reverse();
    let label = lam.coords.iter().map(|c| format!("{c}")).collect::<Vec<_>>().join(",");
    Ok(CohomologyReport::new(format!("twisted Chevalley complex of L({label}) for sl_{}", cd.rank + 1), vec![rep]))
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim sH_0` of a PBW-truncated Verma module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaSH0Report {
    pub trunc: usize,
    /// `dim V_T / span{(y + χ̄_−(y)) m}` at `T = trunc` and `trunc + 1`.
    pub dims: (usize, usize),
    /// `dim V_T / n̄_− V_{T−1}` at `T = trunc`.
    pub coinvariants: usize,
    pub stabilized: bool,
}

/// Dimension of `M̄(λ̄)` modulo `(y + χ̄_−(y))M̄(λ̄)` on truncations `≤ trunc` and `≤ trunc + 1` PBW factors.
pub fn kostant_verma_sh0(cd: &ChevalleyData, lam: &Weight, trunc: usize) -> Result<VermaSH0Report> {
    assert!(trunc >= 1, "truncation must be positive");
    let v = Verma::new(cd, lam);
    let low = quotient_dim(&v, trunc, true);
    let high = quotient_dim(&v, trunc + 1, true);
    let coinvariants = quotient_dim(&v, trunc, false);
    if low != high {
        return Err(Error::Unstabilized { trunc, low, high });
    }
    Ok(VermaSH0Report { trunc, dims: (low, high), coinvariants, stabilized: low == 1 })
}

fn quotient_dim(v: &Verma, t: usize, twisted: bool) -> usize {
    let basis = v.monomials_up_to(t);
    let pos = |m: &Mono| basis.iter().position(|b| b == m).expect("relation stays in the truncation");
    let mut rows = Vec::new();
    for m in basis.iter().filter(|m| m.len() < t) {
        for a in v.cd.negative_indices() {
            let mut r = vec![Q::zero(); basis.len()];
            for (s, c) in v.act_mono(a, m) {
                r[pos(&s)] += c;
            }
            if twisted {
                r[pos(m)] += &v.cd.chi_minus[a];
            }
            rows.push(r);
        }
    }
    let trip: Vec<(usize, usize, Q)> = rows
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(j, c)| (i, j, c.clone())))
        .collect();
    basis.len() - rank_q(&SparseMatrix::from_triplets(rows.len(), basis.len(), trip))
}
