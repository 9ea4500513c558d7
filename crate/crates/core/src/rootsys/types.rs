use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{frac, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// Cartan type with Bourbaki node numbering (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let t = CartanType { family, rank };
        t.validate()?;
        Ok(t)
    }

    pub fn a(rank: usize) -> Self {
        CartanType { family: Family::A, rank }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        use Family::*;
        let ok = match self.family {
            A => self.rank >= 1,
            B | C => self.rank >= 2,
            D => self.rank >= 4,
            E => (6..=8).contains(&self.rank),
            F => self.rank == 4,
            G => self.rank == 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedType(format!("{self}")))
        }
    }

    pub(crate) fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        use Family::*;
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            A | B | C => (0..n - 1).for_each(|i| link(i, i + 1)),
            D => {
                (0..n - 2).for_each(|i| link(i, i + 1));
                link(n - 3, n - 1);
            }
            E => {
                for (i, j) in [(0, 2), (2, 3), (3, 4), (1, 3)] {
                    link(i, j);
                }
                (4..n - 1).for_each(|i| link(i, i + 1));
            }
            F => (0..3).for_each(|i| link(i, i + 1)),
            G => link(0, 1),
        }
        match self.family {
            B => c[n - 1][n - 2] = -2,
            C => c[n - 2][n - 1] = -2,
            F => c[2][1] = -2,
            G => c[0][1] = -3,
            _ => {}
        }
        c
    }

    /// `(α_i|α_i)/2` with long roots of square length 2.
    pub(crate) fn symmetrizer(&self) -> Vec<Q> {
        use Family::*;
        let n = self.rank;
        let one = || q(1);
        match self.family {
            A | D | E => vec![one(); n],
            B => (0..n).map(|i| if i + 1 == n { frac(1, 2) } else { one() }).collect(),
            C => (0..n).map(|i| if i + 1 == n { one() } else { frac(1, 2) }).collect(),
            F => vec![one(), one(), frac(1, 2), frac(1, 2)],
            G => vec![frac(1, 3), one()],
        }
    }

    pub(crate) fn exponents(&self) -> Vec<i64> {
        use Family::*;
        let n = self.rank as i64;
        let mut e: Vec<i64> = match self.family {
            A => (1..=n).collect(),
            B | C => (1..=n).map(|i| 2 * i - 1).collect(),
            D => (1..n).map(|i| 2 * i - 1).chain([n - 1]).collect(),
            E => match n {
                6 => vec![1, 4, 5, 7, 8, 11],
                7 => vec![1, 5, 7, 9, 11, 13, 17],
                _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
            },
            F => vec![1, 5, 7, 11],
            G => vec![1, 5],
        };
        e.sort_unstable();
        e
    }

    pub(crate) fn dual_coxeter(&self) -> i64 {
        use Family::*;
        let n = self.rank as i64;
        match self.family {
            A => n + 1,
            B => 2 * n - 1,
            C => n + 1,
            D => 2 * n - 2,
            E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            F => 9,
            G => 4,
        }
    }

    pub(crate) fn lacing(&self) -> i64 {
        use Family::*;
        match self.family {
            A | D | E => 1,
            B | C | F => 2,
            G => 3,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Accepts `A1`, `A_2`, `b3` and similar.
impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::UnsupportedType(format!("{s:?}"));
        let mut chars = t.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest.parse().map_err(|_| bad())?;
        CartanType::new(family, rank)
    }
}
