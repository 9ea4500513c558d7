//! JSON records and TSV rendering. Every rational is a `"p/q"` (or `"p"`) string.

use serde::{Deserialize, Serialize};

use walgebra_core::admissible::AdmissibleCell;
use walgebra_core::affine::AffineWeight;
use walgebra_core::cohom::{CohomologyReport, SliceReport, SparseMatrix, VermaSH0Report};
use walgebra_core::freefield::{ComplexSlice, GenKind, KMode, PbwMonomial};
use walgebra_core::qseries::QSeries;
use walgebra_core::rational::{fmt_q, parse_q};
use walgebra_core::rootsys::{ChevalleyData, RootSystem, Weight};
use walgebra_core::{RatFunc, Result, Q};

pub fn q_str(x: &Q) -> String {
    fmt_q(x)
}

pub fn weight_strs(w: &Weight) -> Vec<String> {
    w.coords.iter().map(q_str).collect()
}

fn parse_weight(v: &[String]) -> Result<Weight> {
    v.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>().map(Weight::new)
}

/// Comma-joined coordinates, the TSV cell form of a weight.
pub fn weight_tsv(w: &Weight) -> String {
    weight_strs(w).join(",")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineWeightJson {
    pub classical: Vec<String>,
    pub level: String,
    pub delta: String,
}

impl From<&AffineWeight> for AffineWeightJson {
    fn from(w: &AffineWeight) -> Self {
        AffineWeightJson { classical: weight_strs(&w.classical), level: q_str(&w.level), delta: q_str(&w.delta) }
    }
}

impl AffineWeightJson {
    pub fn to_weight(&self) -> Result<AffineWeight> {
        Ok(AffineWeight::new(parse_weight(&self.classical)?, parse_q(&self.level)?, parse_q(&self.delta)?))
    }
}

/// `q^lead_exp Σ coeffs[n] q^n`, known up to `q^{lead_exp+order}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeriesJson {
    pub lead_exp: String,
    pub coeffs: Vec<String>,
    pub order: usize,
}

impl From<&QSeries> for QSeriesJson {
    fn from(s: &QSeries) -> Self {
        QSeriesJson { lead_exp: q_str(&s.lead_exp), coeffs: s.coeffs.iter().map(q_str).collect(), order: s.order }
    }
}

impl QSeriesJson {
    pub fn to_series(&self) -> Result<QSeries> {
        let coeffs = self.coeffs.iter().map(|c| parse_q(c)).collect::<Result<Vec<_>>>()?;
        let mut s = QSeries::from_coeffs(parse_q(&self.lead_exp)?, coeffs);
        s.order = self.order;
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub lambda: Vec<String>,
    pub mu: Vec<String>,
    #[serde(rename = "Lambda")]
    pub big_lambda: AffineWeightJson,
    pub delta_weight: String,
    pub central_charge: String,
}

impl CellJson {
    pub fn new(cell: &AdmissibleCell, delta: &Q, c: &Q) -> Self {
        CellJson {
            lambda: weight_strs(&cell.lam),
            mu: weight_strs(&cell.mu),
            big_lambda: (&cell.lambda).into(),
            delta_weight: q_str(delta),
            central_charge: q_str(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceReportJson {
    pub degree: i64,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub cohomology: Vec<usize>,
    pub expected: Vec<usize>,
    pub euler: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub subject: String,
    pub pass: bool,
    pub slices: Vec<SliceReportJson>,
}

impl From<&CohomologyReport> for ReportJson {
    fn from(r: &CohomologyReport) -> Self {
        ReportJson {
            subject: r.subject.clone(),
            pass: r.pass,
            slices: r
                .slices
                .iter()
                .map(|s| SliceReportJson {
                    degree: s.degree,
                    dims: s.dims.clone(),
                    ranks: s.ranks.clone(),
                    cohomology: s.cohomology.clone(),
                    expected: s.expected.clone(),
                    euler: s.euler,
                    pass: s.pass,
                })
                .collect(),
        }
    }
}

impl ReportJson {
    pub fn to_report(&self) -> CohomologyReport {
        let slices = self
            .slices
            .iter()
            .map(|s| SliceReport {
                degree: s.degree,
                dims: s.dims.clone(),
                ranks: s.ranks.clone(),
                cohomology: s.cohomology.clone(),
                expected: s.expected.clone(),
                euler: s.euler,
                pass: s.pass,
            })
            .collect();
        CohomologyReport { subject: self.subject.clone(), slices, pass: self.pass }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VermaJson {
    pub lambda: Vec<String>,
    pub trunc: usize,
    pub dims: [usize; 2],
    pub coinvariants: usize,
    pub stabilized: bool,
    pub pass: bool,
}

impl VermaJson {
    pub fn new(lam: &Weight, r: &VermaSH0Report) -> Self {
        VermaJson {
            lambda: weight_strs(lam),
            trunc: r.trunc,
            dims: [r.dims.0, r.dims.1],
            coinvariants: r.coinvariants,
            stabilized: r.stabilized,
            pass: r.stabilized && r.coinvariants == 1,
        }
    }
}

/// Sparse matrix as `[row, col, value]` triplets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl MatrixJson {
    fn new(m: &SparseMatrix<RatFunc>) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries.iter().map(|(i, j, v)| (*i, *j, v.to_string())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceJson {
    pub delta_new: i64,
    /// `"generic"` or the specialized level.
    pub level: String,
    pub bases: Vec<Vec<String>>,
    pub matrices: Vec<MatrixJson>,
}

/// Basis index label: `h<i>` on the Cartan, simple-root coordinates of the root otherwise.
pub fn basis_label(cd: &ChevalleyData, a: usize) -> String {
    if cd.is_cartan(a) {
        format!("h{}", a + 1)
    } else {
        cd.weights[a].iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// `J[..](n)` and `psi[..](n)` factors, leftmost factor acting last.
pub fn monomial_label(cd: &ChevalleyData, m: &PbwMonomial) -> String {
    if m.0.is_empty() {
        return "1".into();
    }
    m.0.iter()
        .map(|g| match g.kind {
            GenKind::HattedCurrent(a) => format!("J[{}]({})", basis_label(cd, a), g.mode),
            GenKind::Ghost(b) => format!("psi[{}]({})", basis_label(cd, b), g.mode),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl SliceJson {
    pub fn new(cd: &ChevalleyData, s: &ComplexSlice) -> Self {
        SliceJson {
            delta_new: s.delta_new,
            level: match &s.k_mode {
                KMode::Symbolic => "generic".into(),
                KMode::At(k) => q_str(k),
            },
            bases: s.bases.iter().map(|b| b.iter().map(|m| monomial_label(cd, m)).collect()).collect(),
            matrices: s.differentials.iter().map(MatrixJson::new).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemJson {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizer: Vec<String>,
    pub positive_roots: Vec<Vec<i64>>,
    pub heights: Vec<i64>,
    pub exponents: Vec<i64>,
    pub coxeter: i64,
    pub dual_coxeter: i64,
    pub rho: Vec<String>,
    pub rho_check: Vec<String>,
    pub fundamental_form: Vec<Vec<String>>,
}

impl From<&RootSystem> for RootSystemJson {
    fn from(rs: &RootSystem) -> Self {
        RootSystemJson {
            cartan_type: rs.label(),
            rank: rs.rank(),
            cartan: rs.cartan.clone(),
            symmetrizer: rs.symmetrizer.iter().map(q_str).collect(),
            positive_roots: rs.pos_roots.clone(),
            heights: rs.heights.clone(),
            exponents: rs.exponents.clone(),
            coxeter: rs.h,
            dual_coxeter: rs.h_check,
            rho: weight_strs(&rs.rho),
            rho_check: weight_strs(&rs.rho_check),
            fundamental_form: rs.fund_form.iter().map(|r| r.iter().map(q_str).collect()).collect(),
        }
    }
}

pub fn report_tsv(r: &CohomologyReport) -> String {
    let mut out = format!("# {}\ndegree\tdims\tranks\tcohomology\texpected\teuler\tpass\n", r.subject);
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    for s in &r.slices {
        out += &format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            s.degree,
            join(&s.dims),
            join(&s.ranks),
            join(&s.cohomology),
            join(&s.expected),
            s.euler,
            if s.pass { "ok" } else { "FAIL" }
        );
    }
    out += if r.pass { "PASS\n" } else { "FAIL\n" };
    out
}
