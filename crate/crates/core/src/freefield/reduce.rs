//! Coordinates of Fock vectors in the image of a PBW basis.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::fock::{FMono, FVec};
use crate::poly::Poly;
use crate::rational::Q;

type QVec = BTreeMap<FMono, Q>;

struct Row {
    vec: QVec,
    /// The row as a combination of the original basis vectors.
    combo: BTreeMap<usize, Q>,
}

/// Lead-term echelon form of a family of Fock vectors with rational coefficients.
pub(crate) struct Reducer {
    rows: BTreeMap<FMono, Row>,
    n: usize,
}

fn axpy(y: &mut QVec, a: &Q, x: &QVec) {
    for (m, c) in x {
        let e = y.entry(m.clone()).or_insert_with(Q::zero);
        *e += a * c;
        if e.is_zero() {
            y.remove(m);
        }
    }
}

fn axpy_combo(y: &mut BTreeMap<usize, Q>, a: &Q, x: &BTreeMap<usize, Q>) {
    for (i, c) in x {
        let e = y.entry(*i).or_insert_with(Q::zero);
        *e += a * c;
        if e.is_zero() {
            y.remove(i);
        }
    }
}

impl Reducer {
    /// `basis` must have constant coefficients; panics on a linear dependency.
    pub fn new(basis: &[FVec]) -> Self {
        let mut r = Reducer { rows: BTreeMap::new(), n: basis.len() };
        for (i, b) in basis.iter().enumerate() {
            let mut vec: QVec = b
                .iter()
                .map(|(m, c)| {
                    assert!(c.is_constant(), "basis vectors must not depend on k");
                    (m.clone(), c.constant_term())
                })
                .collect();
            let mut combo = BTreeMap::new();
            combo.insert(i, Q::from_integer(1.into()));
            r.eliminate(&mut vec, &mut combo);
            let lead = vec.keys().next_back().cloned().expect("PBW images are linearly independent");
            r.rows.insert(lead, Row { vec, combo });
        }
        r
    }

    fn eliminate(&self, vec: &mut QVec, combo: &mut BTreeMap<usize, Q>) {
        while let Some((lead, c)) = vec.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let Some(row) = self.rows.get(&lead) else { return };
            let f = -(c / &row.vec[&lead]);
            axpy(vec, &f, &row.vec);
            axpy_combo(combo, &f, &row.combo);
        }
    }

    fn solve_q(&self, v: QVec) -> Option<Vec<Q>> {
        let mut vec = v;
        let mut combo = BTreeMap::new();
        self.eliminate(&mut vec, &mut combo);
        if !vec.is_empty() {
            return None;
        }
        let mut out = vec![Q::zero(); self.n];
        for (i, c) in combo {
            out[i] = -c;
        }
        Some(out)
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is outside the span.
    pub fn solve(&self, v: &FVec) -> Option<Vec<Poly>> {
        let deg = v.values().filter_map(Poly::degree).max().unwrap_or(0);
        let mut out = vec![Poly::zero(); self.n];
        for d in 0..=deg {
            let comp: QVec = v
                .iter()
                .filter_map(|(m, c)| {
                    let x = c.coeffs().get(d).cloned().unwrap_or_else(Q::zero);
                    (!x.is_zero()).then(|| (m.clone(), x))
                })
                .collect();
            if comp.is_empty() {
                continue;
            }
            let mut kd = vec![Q::zero(); d + 1];
            kd[d] = Q::from_integer(1.into());
            let kd = Poly::from_coeffs(kd);
            for (i, c) in self.solve_q(comp)?.into_iter().enumerate() {
                if !c.is_zero() {
                    out[i] = &out[i] + &kd.scale(&c);
                }
            }
        }
        Some(out)
    }
}
