//! Truncated `q`-series `q^a (c_0 + c_1 q + … + c_N q^N + O(q^{N+1}))`.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{to_i64, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub lead_exp: Q,
    /// `coeffs[i]` multiplies `q^{lead_exp + i}`; length `order + 1`.
    pub coeffs: Vec<Q>,
    pub order: usize,
}

impl QSeries {
    pub fn zero(lead_exp: Q, order: usize) -> Self {
        QSeries { lead_exp, coeffs: vec![Q::zero(); order + 1], order }
    }

    /// `q^a` known to order `N`.
    pub fn monomial(lead_exp: Q, order: usize) -> Self {
        let mut s = Self::zero(lead_exp, order);
        s.coeffs[0] = Q::one();
        s
    }

    pub fn from_coeffs(lead_exp: Q, coeffs: Vec<Q>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one known coefficient");
        let order = coeffs.len() - 1;
        QSeries { lead_exp, coeffs, order }
    }

    /// `Π_{n≥1} (1 − q^n)^{−m(n)}` to order `N`.
    pub fn inverse_product(order: usize, mult: impl Fn(usize) -> usize) -> Self {
        let mut c = vec![Q::zero(); order + 1];
        c[0] = Q::one();
        for n in 1..=order {
            for _ in 0..mult(n) {
                for j in n..=order {
                    let t = c[j - n].clone();
                    c[j] += t;
                }
            }
        }
        QSeries { lead_exp: Q::zero(), coeffs: c, order }
    }

    /// Coefficients of `Π (1 − q^n)^{−l}`: `l`-colored partition counts.
    pub fn colored_partitions(l: usize, order: usize) -> Self {
        Self::inverse_product(order, |_| l)
    }

    /// Highest exponent whose coefficient is known.
    pub fn top_exp(&self) -> Q {
        &self.lead_exp + Q::from_integer((self.order as i64).into())
    }

    /// Coefficient of `q^e`, `None` beyond the known order; zero below the lead.
    pub fn coeff_at(&self, e: &Q) -> Option<Q> {
        let d = to_i64(&(e - &self.lead_exp))?;
        if d < 0 {
            return Some(Q::zero());
        }
        self.coeffs.get(d as usize).cloned()
    }

    fn offset(&self, o: &QSeries) -> Result<i64> {
        to_i64(&(&o.lead_exp - &self.lead_exp))
            .ok_or_else(|| Error::IncompatibleSeries(Box::new((self.lead_exp.clone(), o.lead_exp.clone()))))
    }

    /// Sum; the result is known up to the smaller of the two top exponents.
    pub fn add(&self, o: &QSeries) -> Result<QSeries> {
        let d = self.offset(o)?;
        let (lo, hi, d) = if d >= 0 { (self, o, d as usize) } else { (o, self, (-d) as usize) };
        let top = (lo.order).min(hi.order + d);
        let mut c = vec![Q::zero(); top + 1];
        for (i, x) in lo.coeffs.iter().enumerate().take(top + 1) {
            c[i] += x;
        }
        for (i, x) in hi.coeffs.iter().enumerate() {
            if i + d <= top {
                c[i + d] += x;
            }
        }
        Ok(QSeries { lead_exp: lo.lead_exp.clone(), coeffs: c, order: top })
    }

    pub fn neg(&self) -> QSeries {
        QSeries { lead_exp: self.lead_exp.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect(), order: self.order }
    }

    pub fn sub(&self, o: &QSeries) -> Result<QSeries> {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Q) -> QSeries {
        QSeries {
            lead_exp: self.lead_exp.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            order: self.order,
        }
    }

    /// Product; relative order is the smaller of the two.
    pub fn mul(&self, o: &QSeries) -> QSeries {
        let n = self.order.min(o.order);
        let mut c = vec![Q::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                c[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        QSeries { lead_exp: &self.lead_exp + &o.lead_exp, coeffs: c, order: n }
    }

    /// Restrict to a smaller order.
    pub fn truncate(&self, order: usize) -> QSeries {
        assert!(order <= self.order, "cannot extend a truncated series");
        QSeries { lead_exp: self.lead_exp.clone(), coeffs: self.coeffs[..=order].to_vec(), order }
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && *c >= Q::zero())
    }

    /// `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (Q, &Q)> + '_ {
        self.coeffs.iter().enumerate().map(move |(i, c)| (&self.lead_exp + Q::from_integer((i as i64).into()), c))
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in self.terms() {
            writeln!(f, "{e}\t{c}")?;
        }
        Ok(())
    }
}
