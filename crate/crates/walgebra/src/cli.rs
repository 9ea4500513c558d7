use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, Write};
use std::sync::mpsc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use walgebra_core::admissible::{admits_nondegenerate, cell_weight, enumerate_cells, AdmissibleLevel};
use walgebra_core::affine::AffineWeight;
use walgebra_core::cohom::{expected_h0, kostant_finite_verify, kostant_verma_sh0, verify_slice, CohomologyReport};
use walgebra_core::freefield::{build_slice, KMode};
use walgebra_core::qseries::QSeries;
use walgebra_core::rational::{parse_q, q};
use walgebra_core::rootsys::{build_chevalley, build_root_system, CartanType, RootSystem, Weight};
use walgebra_core::wchar::{
    cell_conformal_weight, central_charge, conformal_weight, irreducible_character, vacuum_w_character, verma_character,
};
use walgebra_core::{Error, Q};

use crate::format::{
    q_str, report_tsv, weight_tsv, CellJson, QSeriesJson, ReportJson, RootSystemJson, SliceJson, VermaJson,
};

pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CRITICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "walgebra", version, about = "Exact W-algebra numerology and BRST verification")]
pub struct Cli {
    /// Cartan type, e.g. `A1`, or a family letter together with --rank.
    #[arg(long = "type", global = true)]
    pub cartan_type: Option<String>,
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    pub format: Format,
    /// Write data here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Worker threads for slice-parallel verification; 0 picks the rayon default.
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct LevelArgs {
    /// `p/q`, an integer, or `generic` (brst-verify and slice only).
    #[arg(long, allow_hyphen_values = true)]
    pub level: Option<String>,
    /// `k + h∨ = p/q` for an admissible level.
    #[arg(long)]
    pub pq: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct WeightArgs {
    /// Classical weight in fundamental-weight coordinates, comma separated.
    #[arg(long, alias = "lambda-bar", allow_hyphen_values = true)]
    pub weight: Option<String>,
    /// Dominant integral `λ̄` of a cell (with --pq).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Dominant integral coweight `μ̄` of a cell (with --pq).
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct KostantArgs {
    #[command(flatten)]
    pub weight: WeightArgs,
    /// Sweep every dominant integral weight with `dim L(λ̄) ≤ max-dim`.
    #[arg(long)]
    pub max_dim: Option<u64>,
    #[arg(long)]
    pub verma: bool,
    /// PBW truncation for --verma.
    #[arg(long, default_value_t = 5)]
    pub order: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Central charge `c(k)`.
    Cc {
        #[command(flatten)]
        level: LevelArgs,
    },
    /// Lowest conformal weight `Δ`.
    Delta {
        #[command(flatten)]
        level: LevelArgs,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Character of the Verma module.
    CharVerma {
        #[command(flatten)]
        level: LevelArgs,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Character of a minimal-series simple module.
    CharIrrep {
        #[command(flatten)]
        level: LevelArgs,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Vacuum character `Π_i Π_{n>d_i} (1−q^n)^{-1}`.
    CharVacuum {
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Non-degenerate admissible cells with `Δ` and `c`.
    AdmissibleList {
        #[command(flatten)]
        level: LevelArgs,
    },
    /// Checks `H^{i≠0} = 0` and the vacuum character on the slices `Δ_new ≤ order`.
    BrstVerify {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Finite Kostant reduction of `L(λ̄)`, or of a truncated Verma module with --verma.
    KostantVerify(KostantArgs),
    /// Root system data.
    Roots,
    /// One slice of the free-field complex with its differentials.
    Slice {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
    Verify(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Usage(msg.into()))
}

enum Level {
    Generic,
    At(Q),
}

fn parse_level(s: &str) -> Outcome<Level> {
    if s.eq_ignore_ascii_case("generic") {
        return Ok(Level::Generic);
    }
    parse_q(s).map(Level::At).or_else(|_| usage(format!("--level: not a rational or 'generic': {s:?}")))
}

fn root_system(cli: &Cli) -> Outcome<RootSystem> {
    let Some(t) = &cli.cartan_type else { return usage("--type is required") };
    let ty = match (t.trim().len(), cli.rank) {
        (1, Some(r)) => format!("{t}{r}"),
        (1, None) => return usage("--type without rank needs --rank"),
        (_, _) => t.clone(),
    };
    let ty: CartanType = ty.parse()?;
    if let Some(r) = cli.rank {
        if r != ty.rank {
            return usage(format!("--rank {r} disagrees with --type {t}"));
        }
    }
    Ok(build_root_system(ty)?)
}

fn parse_coords(s: &str, rs: &RootSystem, flag: &str) -> Outcome<Weight> {
    let coords = s.split(',').map(parse_q).collect::<walgebra_core::Result<Vec<_>>>()?;
    if coords.len() != rs.rank() {
        return usage(format!("--{flag} has {} coordinates, rank is {}", coords.len(), rs.rank()));
    }
    Ok(Weight::new(coords))
}

fn parse_pq(s: &str, rs: &RootSystem) -> Outcome<AdmissibleLevel> {
    let bad = || Failure::Usage(format!("--pq: expected p/q, got {s:?}"));
    let (p, qq) = s.split_once('/').ok_or_else(bad)?;
    let p: i64 = p.trim().parse().map_err(|_| bad())?;
    let qq: i64 = qq.trim().parse().map_err(|_| bad())?;
    AdmissibleLevel::from_pq(rs, p, qq)
        .ok_or_else(|| Failure::Usage(format!("({p},{qq}) is not a non-degenerate admissible pair for {}", rs.label())))
}

/// An exact level from --level or --pq.
fn exact_level(rs: &RootSystem, a: &LevelArgs) -> Outcome<Q> {
    match (&a.level, &a.pq) {
        (Some(_), Some(_)) => usage("give either --level or --pq"),
        (Some(l), None) => match parse_level(l)? {
            Level::At(k) => Ok(k),
            Level::Generic => usage("--level generic is only accepted by brst-verify and slice"),
        },
        (None, Some(pq)) => Ok(parse_pq(pq, rs)?.k),
        (None, None) => usage("--level or --pq is required"),
    }
}

fn admissible_level(rs: &RootSystem, a: &LevelArgs) -> Outcome<AdmissibleLevel> {
    match &a.pq {
        Some(pq) if a.level.is_none() => parse_pq(pq, rs),
        _ => {
            let k = exact_level(rs, a)?;
            critical_guard(rs, &k)?;
            admits_nondegenerate(rs, &k)
                .ok_or_else(|| Failure::Usage(format!("k = {k} is not a non-degenerate admissible level")))
        }
    }
}

fn critical_guard(rs: &RootSystem, k: &Q) -> Outcome<()> {
    if *k == q(-rs.h_check) {
        return Err(Failure::Core(Error::CriticalLevel { h_check_neg: k.clone() }));
    }
    Ok(())
}

/// The affine weight named by --weight, or by --lambda/--mu inside an admissible cell.
fn affine_weight(rs: &RootSystem, la: &LevelArgs, wa: &WeightArgs) -> Outcome<AffineWeight> {
    let cellwise = wa.lambda.is_some() || wa.mu.is_some();
    if cellwise && wa.weight.is_some() {
        return usage("--weight conflicts with --lambda/--mu");
    }
    if cellwise || (la.pq.is_some() && wa.weight.is_none()) {
        let level = admissible_level(rs, la)?;
        let zero = Weight::zero(rs.rank());
        let lam = wa.lambda.as_deref().map(|s| parse_coords(s, rs, "lambda")).transpose()?.unwrap_or(zero.clone());
        let mu = wa.mu.as_deref().map(|s| parse_coords(s, rs, "mu")).transpose()?.unwrap_or(zero);
        return Ok(cell_weight(rs, &level, &lam, &mu));
    }
    let k = exact_level(rs, la)?;
    let w = match &wa.weight {
        Some(s) => parse_coords(s, rs, "weight")?,
        None => Weight::zero(rs.rank()),
    };
    Ok(AffineWeight::new(w, k, q(0)))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Outcome<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Failure::Io(e.into()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn emit_scalar(out: &mut dyn Write, fmt: Format, key: &str, v: &Q) -> Outcome<()> {
    match fmt {
        Format::Tsv => writeln!(out, "{}", q_str(v))?,
        Format::Json => emit_json(out, &serde_json::json!({ key: q_str(v) }))?,
    }
    Ok(())
}

fn emit_series(out: &mut dyn Write, fmt: Format, s: &QSeries) -> Outcome<()> {
    match fmt {
        Format::Tsv => write!(out, "{s}")?,
        Format::Json => emit_json(out, &QSeriesJson::from(s))?,
    }
    Ok(())
}

fn thread_pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool")
}

/// Slice-parallel BRST verification; one progress line per finished slice goes to `log`.
pub fn brst_parallel(
    rs: &RootSystem,
    n: usize,
    k_mode: KMode,
    jobs: usize,
    log: &mut dyn Write,
) -> walgebra_core::Result<CohomologyReport> {
    let cd = build_chevalley(rs)?;
    let expected = expected_h0(rs, n);
    let (tx, rx) = mpsc::channel::<String>();
    let pool = thread_pool(jobs);
    let slices = std::thread::scope(|s| {
        let worker = s.spawn(|| {
            pool.install(|| {
                // largest slices first
                let mut v: Vec<_> = (0..=n)
                    .rev()
                    .collect::<Vec<_>>()
                    .into_par_iter()
                    .map_with(tx, |tx, d| {
                        let r = verify_slice(&cd, d as i64, k_mode.clone(), expected[d]);
                        if let Ok(rep) = &r {
                            let _ = tx.send(format!(
                                "slice Δ_new={d} dims {:?} H {:?} {}",
                                rep.dims,
                                rep.cohomology,
                                if rep.pass { "ok" } else { "FAIL" }
                            ));
                        }
                        r
                    })
                    .collect::<Vec<_>>();
                v.reverse();
                v
            })
        });
        for line in rx {
            let _ = writeln!(log, "{line}");
        }
        worker.join().expect("worker panicked")
    });
    let slices = slices.into_iter().collect::<walgebra_core::Result<Vec<_>>>()?;
    let level = match &k_mode {
        KMode::Symbolic => String::from("generic k"),
        KMode::At(k) => format!("k = {k}"),
    };
    Ok(CohomologyReport::new(format!("BRST {} {level}, Δ_new ≤ {n}", rs.label()), slices))
}

/// Dominant integral weights with `dim L(λ̄) ≤ max_dim`, in increasing order.
pub fn dominant_weights_up_to_dim(rs: &RootSystem, max_dim: u64) -> Vec<Vec<i64>> {
    let bound = q(max_dim as i64);
    let mut seen = BTreeSet::new();
    let mut stack = vec![vec![0i64; rs.rank()]];
    while let Some(w) = stack.pop() {
        if seen.contains(&w) || rs.weyl_dimension(&Weight::from_ints(&w)) > bound {
            continue;
        }
        for i in 0..w.len() {
            let mut n = w.clone();
            n[i] += 1;
            stack.push(n);
        }
        seen.insert(w);
    }
    seen.into_iter().collect()
}

fn kostant(cli: &Cli, rs: &RootSystem, a: &KostantArgs, out: &mut dyn Write, log: &mut dyn Write) -> Outcome<bool> {
    let cd = build_chevalley(rs)?;
    let wa = &a.weight;
    if a.verma {
        let Some(w) = &wa.weight else { return usage("--verma needs --weight") };
        let lam = parse_coords(w, rs, "weight")?;
        let rep = kostant_verma_sh0(&cd, &lam, a.order)?;
        let j = VermaJson::new(&lam, &rep);
        match cli.format {
            Format::Json => emit_json(out, &j)?,
            Format::Tsv => {
                writeln!(out, "lambda\ttrunc\tdims\tcoinvariants\tstabilized")?;
                writeln!(
                    out,
                    "{}\t{}\t{},{}\t{}\t{}",
                    weight_tsv(&lam),
                    j.trunc,
                    j.dims[0],
                    j.dims[1],
                    j.coinvariants,
                    j.stabilized
                )?;
                writeln!(out, "{}", if j.pass { "PASS" } else { "FAIL" })?;
            }
        }
        return Ok(j.pass);
    }
    let weights: Vec<Weight> = match (&wa.weight, a.max_dim) {
        (Some(w), None) => vec![parse_coords(w, rs, "weight")?],
        (None, Some(d)) => dominant_weights_up_to_dim(rs, d).iter().map(|w| Weight::from_ints(w)).collect(),
        _ => return usage("kostant-verify needs exactly one of --weight, --max-dim"),
    };
    let pool = thread_pool(cli.jobs);
    let reports = pool
        .install(|| weights.par_iter().map(|w| kostant_finite_verify(&cd, w)).collect::<Vec<_>>())
        .into_iter()
        .collect::<walgebra_core::Result<Vec<_>>>()?;
    for r in &reports {
        writeln!(log, "{}: {}", r.subject, if r.pass { "ok" } else { "FAIL" })?;
    }
    match cli.format {
        Format::Json => emit_json(out, &reports.iter().map(ReportJson::from).collect::<Vec<_>>())?,
        Format::Tsv => {
            for r in &reports {
                write!(out, "{}", report_tsv(r))?;
            }
        }
    }
    Ok(reports.iter().all(|r| r.pass))
}

fn execute(cli: &Cli, out: &mut dyn Write, log: &mut dyn Write) -> Outcome<()> {
    let rs = root_system(cli)?;
    let fmt = cli.format;
    match &cli.cmd {
        Command::Cc { level } => {
            let k = exact_level(&rs, level)?;
            emit_scalar(out, fmt, "central_charge", &central_charge(&rs, &k)?)?;
        }
        Command::Delta { level, weight } => {
            let w = affine_weight(&rs, level, weight)?;
            emit_scalar(out, fmt, "delta_weight", &conformal_weight(&rs, &w.level, &w.classical)?)?;
        }
        Command::CharVerma { level, weight, order } => {
            let w = affine_weight(&rs, level, weight)?;
            emit_series(out, fmt, &verma_character(&rs, &w.level, &w.classical, *order)?)?;
        }
        Command::CharIrrep { level, weight, order } => {
            let adm = admissible_level(&rs, level)?;
            let w = affine_weight(&rs, level, weight)?;
            emit_series(out, fmt, &irreducible_character(&rs, &adm, &w, *order)?)?;
        }
        Command::CharVacuum { order } => emit_series(out, fmt, &vacuum_w_character(&rs, *order))?,
        Command::AdmissibleList { level } => {
            let adm = admissible_level(&rs, level)?;
            let c = central_charge(&rs, &adm.k)?;
            let cells = enumerate_cells(&rs, &adm)?;
            let rows = cells
                .iter()
                .map(|cell| Ok(CellJson::new(cell, &cell_conformal_weight(&rs, &cell.lambda)?, &c)))
                .collect::<walgebra_core::Result<Vec<_>>>()?;
            match fmt {
                Format::Json => emit_json(out, &rows)?,
                Format::Tsv => {
                    writeln!(out, "lambda\tmu\tLambda\tdelta_weight\tcentral_charge")?;
                    for (cell, r) in cells.iter().zip(&rows) {
                        writeln!(
                            out,
                            "{}\t{}\t{};{};{}\t{}\t{}",
                            weight_tsv(&cell.lam),
                            weight_tsv(&cell.mu),
                            weight_tsv(&cell.lambda.classical),
                            q_str(&cell.lambda.level),
                            q_str(&cell.lambda.delta),
                            r.delta_weight,
                            r.central_charge
                        )?;
                    }
                }
            }
        }
        Command::BrstVerify { level, order } => {
            let mode = slice_mode(&rs, level)?;
            let rep = brst_parallel(&rs, *order, mode, cli.jobs, log)?;
            match fmt {
                Format::Json => emit_json(out, &ReportJson::from(&rep))?,
                Format::Tsv => write!(out, "{}", report_tsv(&rep))?,
            }
            if !rep.pass {
                let bad: Vec<i64> = rep.failures().map(|s| s.degree).collect();
                return Err(Failure::Verify(format!("BRST check failed at Δ_new = {bad:?}")));
            }
        }
        Command::KostantVerify(a) => {
            if !kostant(cli, &rs, a, out, log)? {
                return Err(Failure::Verify("Kostant reduction check failed".into()));
            }
        }
        Command::Roots => match fmt {
            Format::Json => emit_json(out, &RootSystemJson::from(&rs))?,
            Format::Tsv => {
                writeln!(out, "root\theight")?;
                for (r, h) in rs.pos_roots.iter().zip(&rs.heights) {
                    writeln!(out, "{}\t{h}", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))?;
                }
            }
        },
        Command::Slice { level, delta } => {
            let cd = build_chevalley(&rs)?;
            let s = build_slice(&cd, *delta, slice_mode(&rs, level)?)?;
            let j = SliceJson::new(&cd, &s);
            match fmt {
                Format::Json => emit_json(out, &j)?,
                Format::Tsv => {
                    writeln!(out, "ghost\tindex\tmonomial")?;
                    for (g, b) in j.bases.iter().enumerate() {
                        for (i, m) in b.iter().enumerate() {
                            writeln!(out, "{g}\t{i}\t{m}")?;
                        }
                    }
                    for (g, m) in j.matrices.iter().enumerate() {
                        for (r, c, v) in &m.entries {
                            writeln!(out, "d{g}\t{r},{c}\t{v}")?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn slice_mode(rs: &RootSystem, a: &LevelArgs) -> Outcome<KMode> {
    match (&a.level, &a.pq) {
        (Some(l), None) => match parse_level(l)? {
            Level::Generic => Ok(KMode::Symbolic),
            Level::At(k) => {
                critical_guard(rs, &k)?;
                Ok(KMode::At(k))
            }
        },
        _ => Ok(KMode::At(exact_level(rs, a)?)),
    }
}

fn exit_code(f: &Failure) -> i32 {
    match f {
        Failure::Usage(_) => EXIT_USAGE,
        Failure::Verify(_) | Failure::Io(_) => EXIT_VERIFY,
        Failure::Core(e) => match e {
            Error::CriticalLevel { .. } | Error::CriticalSpecialization(_) => EXIT_CRITICAL,
            Error::Parse(_)
            | Error::UnsupportedType(_)
            | Error::RankMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::NotAdmissible(_)
            | Error::NotDominantIntegral => EXIT_USAGE,
            _ => EXIT_VERIFY,
        },
    }
}

fn message(f: &Failure) -> String {
    match f {
        Failure::Usage(m) | Failure::Verify(m) => m.clone(),
        Failure::Io(e) => format!("io: {e}"),
        Failure::Core(Error::CriticalLevel { h_check_neg })
        | Failure::Core(Error::CriticalSpecialization(h_check_neg)) => {
            format!("critical level k = -h∨ = {h_check_neg} is excluded")
        }
        Failure::Core(e) => e.to_string(),
    }
}

/// Parses `argv` (program name first), writes data to `stdout` or `--out`, logs to `stderr`,
/// and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut file;
    let out: &mut dyn Write = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => {
                file = io::BufWriter::new(f);
                &mut file
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot create {path}: {e}");
                return EXIT_USAGE;
            }
        },
        None => stdout,
    };
    let res = execute(&cli, out, stderr).and_then(|()| out.flush().map_err(Failure::Io));
    match res {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", message(&f));
            exit_code(&f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Failure::Verify("x".into())), EXIT_VERIFY);
        assert_eq!(exit_code(&Failure::Core(Error::Unstabilized { trunc: 3, low: 1, high: 2 })), EXIT_VERIFY);
        assert_eq!(exit_code(&Failure::Core(Error::CriticalSpecialization(q(-2)))), EXIT_CRITICAL);
        assert_eq!(exit_code(&Failure::Core(Error::NotAdmissible("x".into()))), EXIT_USAGE);
    }

    #[test]
    fn dominant_sweep_bounds() {
        let a1 = build_root_system(CartanType::a(1)).unwrap();
        assert_eq!(dominant_weights_up_to_dim(&a1, 64).len(), 64);
        let a2 = build_root_system(CartanType::a(2)).unwrap();
        let ws = dominant_weights_up_to_dim(&a2, 64);
        assert!(ws.iter().all(|w| a2.weyl_dimension(&Weight::from_ints(w)) <= q(64)));
        assert!(ws.contains(&vec![9, 0]) && !ws.contains(&vec![10, 0]) && ws.contains(&vec![3, 3]));
    }
}
