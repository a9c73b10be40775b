//! Command-line front end: cohit bases, weight tables, Kameko kernels,
//! invariants, dual-side checks, and a paper-table reproduction matrix.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hitcalc::dual::{is_annihilated, pairing, DualPolynomial};
use hitcalc::groups::{invariants_on, verify_invariant_on, Group, Space};
use hitcalc::hit::Part;
use hitcalc::kameko::kernel_from_basis;
use hitcalc::monomial::{minimal_spike, WeightVector};
use hitcalc::poly::Polynomial;
use hitcalc::session::Session;
use hitcalc::{data, Error};

/// Column-count ceiling for unguarded full-space runs.
const LARGE_COLS: usize = 200_000;

#[derive(Parser)]
#[command(name = "hitcalc", version, about = "Cohit bases over the mod-2 Steenrod algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Echelon cache directory (env HITCALC_CACHE).
    #[arg(long, global = true, env = "HITCALC_CACHE")]
    cache_dir: Option<PathBuf>,
    /// Worker thread count (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Permit full-space runs beyond the column guard.
    #[arg(long, global = true)]
    allow_large: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum PartArg {
    Full,
    Zero,
    Positive,
}

impl From<PartArg> for Part {
    fn from(p: PartArg) -> Part {
        match p {
            PartArg::Full => Part::Full,
            PartArg::Zero => Part::Zero,
            PartArg::Positive => Part::Positive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Sigma,
    Gl,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Group {
        match g {
            GroupArg::Sigma => Group::Symmetric,
            GroupArg::Gl => Group::GeneralLinear,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Cohit basis dimension and admissible monomials.
    Cohit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value_t = PartArg::Full)]
        part: PartArg,
        /// Restrict to one weight subquotient, e.g. 3,1,1,1,1.
        #[arg(long)]
        omega: Option<String>,
    },
    /// Per-weight subquotient dimension table.
    Weight {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value_t = PartArg::Full)]
        part: PartArg,
    },
    /// Kernel of the Kameko down map at a source degree.
    KamekoKernel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u64,
    },
    /// Group invariants of a cohit space or one weight subquotient.
    Invariants {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        omega: Option<String>,
    },
    /// Check that the class of a polynomial is fixed by the group.
    VerifyInvariant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum)]
        group: GroupArg,
        /// Polynomial file, or a built-in name: zeta, phi-zeta-xi, phi2-zeta-71.
        #[arg(long)]
        file: String,
    },
    /// Check that a divided-power polynomial is A-annihilated.
    CheckAnnihilated {
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Divided-power file, or the built-in name zeta0.
        #[arg(long)]
        file: String,
    },
    /// Pair a divided-power polynomial against a cohomology polynomial.
    Pairing {
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Divided-power file, or the built-in name zeta0.
        #[arg(long)]
        file: String,
        /// Polynomial file, or a built-in name: zeta, phi-zeta, phi-zeta-xi.
        #[arg(long)]
        poly: String,
    },
    /// Run the paper's dimension matrix and print PASS/FAIL rows.
    ReproducePaper,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.common.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .is_err()
        {
            eprintln!("error: thread pool already initialized");
            return ExitCode::from(2);
        }
    }
    let session = Session::new(cli.common.cache_dir.clone());
    match run(&cli, &session) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

enum CliError {
    Usage(String),
    Guard(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::TooLarge(m) => CliError::Guard(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}

type CliResult = Result<(), CliError>;

fn parse_omega(s: &str) -> Result<WeightVector, CliError> {
    let entries: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse()).collect();
    match entries {
        Ok(e) if !e.is_empty() => Ok(WeightVector::new(e)),
        _ => Err(CliError::Usage(format!("bad weight vector {s:?}"))),
    }
}

/// Binomial count of columns for the guard, saturating.
fn column_estimate(n: usize, d: u64) -> usize {
    let mut est: u128 = 1;
    for i in 1..n as u128 {
        est = est.saturating_mul(d as u128 + i) / i;
        if est > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    est as usize
}

fn guard_full(n: usize, d: u64, allow: bool) -> CliResult {
    let est = column_estimate(n, d);
    if est > LARGE_COLS && !allow {
        return Err(CliError::Guard(format!(
            "a full-space run at (n={n}, d={d}) needs about {est} columns \
             (roughly {} MB of echelon storage); pass --allow-large to proceed",
            est / 4000
        )));
    }
    Ok(())
}

fn load_poly(n: usize, spec: &str) -> Result<Polynomial, CliError> {
    let built_in = match spec {
        "zeta" => Some(data::zeta()),
        "xi" => Some(data::xi()),
        "xi-tilde" => Some(data::xi_tilde()),
        "phi-zeta" => Some(data::zeta().map(|z| hitcalc::kameko::kameko_up(&z))),
        "phi-zeta-xi" => Some((|| {
            Ok(hitcalc::kameko::kameko_up(&data::zeta()?).add(&data::xi()?))
        })()),
        "phi2-zeta-71" => Some((|| {
            let phi2 = hitcalc::kameko::kameko_up(&hitcalc::kameko::kameko_up(&data::zeta()?));
            Ok(phi2
                .add(&hitcalc::kameko::kameko_up(&data::xi()?))
                .add(&data::xi_tilde()?))
        })()),
        _ => None,
    };
    match built_in {
        Some(p) => {
            let p = p.map_err(CliError::from)?;
            if p.n() != n {
                return Err(CliError::Usage(format!(
                    "built-in {spec} has {} variables, not {n}",
                    p.n()
                )));
            }
            Ok(p)
        }
        None => {
            let body = std::fs::read_to_string(spec)
                .map_err(|e| CliError::Usage(format!("cannot read {spec}: {e}")))?;
            Polynomial::parse(n, &body).map_err(CliError::from)
        }
    }
}

fn load_dual(n: usize, spec: &str) -> Result<DualPolynomial, CliError> {
    if spec == "zeta0" {
        return data::zeta0_dual().map_err(CliError::from);
    }
    let body = std::fs::read_to_string(spec)
        .map_err(|e| CliError::Usage(format!("cannot read {spec}: {e}")))?;
    DualPolynomial::parse(n, &body).map_err(CliError::from)
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(value).unwrap()),
        Format::Text => println!("{text}"),
    }
}

fn run(cli: &Cli, session: &Session) -> CliResult {
    let fmt = cli.common.format;
    let allow = cli.common.allow_large;
    match &cli.command {
        Command::Cohit { n, d, part, omega } => {
            let part: Part = (*part).into();
            match omega {
                None => {
                    guard_full(*n, *d, allow)?;
                    let basis = session.basis(*n, *d, part)?;
                    let rep = report::cohit(&basis, None);
                    emit(fmt, &rep, rep.text());
                }
                Some(w) => {
                    if part != Part::Full {
                        return Err(CliError::Usage(
                            "--omega combines with --part full only".into(),
                        ));
                    }
                    let w = parse_omega(w)?;
                    // a weight floor at omega is exact for that subquotient
                    let basis = session.basis_restricted(*n, *d, &w)?;
                    let view = basis.subquotient(&w).map_err(CliError::from)?;
                    let rep = report::cohit_view(&view, *n, *d);
                    emit(fmt, &rep, rep.text());
                }
            }
        }
        Command::Weight { n, d, part } => {
            guard_full(*n, *d, allow)?;
            let basis = session.basis(*n, *d, (*part).into())?;
            let rep = report::weight_table(&basis);
            emit(fmt, &rep, rep.text());
        }
        Command::KamekoKernel { n, d } => {
            let spike = minimal_spike(*n, *d).ok_or_else(|| {
                CliError::Usage(format!("no minimal spike at (n={n}, d={d}); kernel undefined"))
            })?;
            let basis = session.basis_restricted(*n, *d, &spike.weight_vector())?;
            let kernel = kernel_from_basis(&basis).map_err(CliError::from)?;
            let rep = report::kameko_kernel(&kernel);
            emit(fmt, &rep, rep.text());
        }
        Command::Invariants { n, d, group, omega } => {
            let group: Group = (*group).into();
            let rep = match omega {
                None => {
                    guard_full(*n, *d, allow)?;
                    let basis = session.basis(*n, *d, Part::Full)?;
                    let inv = invariants_on(Space::Full(&basis), *n, group)
                        .map_err(CliError::from)?;
                    report::invariants(&inv, *n, *d, None)
                }
                Some(w) => {
                    let w = parse_omega(w)?;
                    let basis = session.basis_restricted(*n, *d, &w)?;
                    let view = basis.subquotient(&w).map_err(CliError::from)?;
                    let inv = invariants_on(Space::Weight(&view), *n, group)
                        .map_err(CliError::from)?;
                    report::invariants(&inv, *n, *d, Some(&w))
                }
            };
            emit(fmt, &rep, rep.text());
        }
        Command::VerifyInvariant { n, d, group, file } => {
            guard_full(*n, *d, allow)?;
            let f = load_poly(*n, file)?;
            let basis = session.basis(*n, *d, Part::Full)?;
            let fixed = verify_invariant_on(&basis, &f, (*group).into()).map_err(CliError::from)?;
            let rep = report::Verify {
                n: *n,
                d: *d,
                group: Group::from(*group).as_str(),
                fixed,
            };
            emit(fmt, &rep, format!("fixed: {fixed}"));
        }
        Command::CheckAnnihilated { n, file } => {
            let f = load_dual(*n, file)?;
            let annihilated = is_annihilated(&f).map_err(CliError::from)?;
            let rep = report::Annihilated {
                n: *n,
                degree: f.homogeneous_degree(),
                annihilated,
            };
            emit(fmt, &rep, format!("annihilated: {annihilated}"));
        }
        Command::Pairing { n, file, poly } => {
            let f = load_dual(*n, file)?;
            let g = load_poly(*n, poly)?;
            let value = pairing(&f, &g).map_err(CliError::from)?;
            let rep = report::Pairing { n: *n, value };
            emit(fmt, &rep, format!("pairing: {value}"));
        }
        Command::ReproducePaper => {
            reproduce_paper(session, allow);
        }
    }
    Ok(())
}

struct Row {
    label: &'static str,
    expected: String,
    run: Box<dyn FnOnce(&Session) -> Result<String, Error>>,
}

fn row(
    label: &'static str,
    expected: impl ToString,
    run: impl FnOnce(&Session) -> Result<String, Error> + 'static,
) -> Row {
    Row {
        label,
        expected: expected.to_string(),
        run: Box::new(run),
    }
}

fn omega(entries: &[u32]) -> WeightVector {
    WeightVector::new(entries.to_vec())
}

fn reproduce_rows(allow_large: bool) -> Vec<Row> {
    let w1 = omega(&[3, 1, 1, 1, 1]);
    let w3 = omega(&[3, 3, 2, 2]);
    let mut rows = vec![
        row("(5,14) full dim", 320, |s| {
            Ok(s.basis(5, 14, Part::Full)?.dim().to_string())
        }),
        row("(5,33) full dim", 1322, |s| {
            Ok(s.basis(5, 33, Part::Full)?.dim().to_string())
        }),
        row("(5,33) zero part dim", 550, |s| {
            Ok(s.basis(5, 33, Part::Zero)?.dim().to_string())
        }),
        row("(5,33,w1) zero part dim", 155, {
            let w = w1.clone();
            move |s| Ok(s.basis(5, 33, Part::Zero)?.subquotient(&w)?.dim().to_string())
        }),
        row("(5,33,w3) zero part dim", 395, {
            let w = w3.clone();
            move |s| Ok(s.basis(5, 33, Part::Zero)?.subquotient(&w)?.dim().to_string())
        }),
        row("(5,33) positive weight dims", "31/0/421/0", |s| {
            let b = s.basis(5, 33, Part::Positive)?;
            let dims: Vec<String> = [
                omega(&[3, 1, 1, 1, 1]),
                omega(&[3, 1, 1, 3]),
                omega(&[3, 3, 2, 2]),
                omega(&[3, 3, 4, 1]),
            ]
            .iter()
            .map(|w| Ok(b.subquotient(w)?.dim().to_string()))
            .collect::<Result<_, Error>>()?;
            Ok(dims.join("/"))
        }),
        row("(5,33,w1) sigma invariants", 7, {
            let w = w1.clone();
            move |s| {
                let b = s.basis(5, 33, Part::Full)?;
                let v = b.subquotient(&w)?;
                Ok(invariants_on(Space::Weight(&v), 5, Group::Symmetric)?.dim.to_string())
            }
        }),
        row("(5,33,w3) sigma invariants", 18, {
            let w = w3.clone();
            move |s| {
                let b = s.basis(5, 33, Part::Full)?;
                let v = b.subquotient(&w)?;
                Ok(invariants_on(Space::Weight(&v), 5, Group::Symmetric)?.dim.to_string())
            }
        }),
        row("(5,33,w1)+(5,33,w3) gl invariants", "0/0", {
            let w1 = w1.clone();
            let w3 = w3.clone();
            move |s| {
                let b = s.basis(5, 33, Part::Full)?;
                let a = invariants_on(Space::Weight(&b.subquotient(&w1)?), 5, Group::GeneralLinear)?;
                let c = invariants_on(Space::Weight(&b.subquotient(&w3)?), 5, Group::GeneralLinear)?;
                Ok(format!("{}/{}", a.dim, c.dim))
            }
        }),
        row("(5,14) gl invariants", 1, |s| {
            let b = s.basis(5, 14, Part::Full)?;
            Ok(invariants_on(Space::Full(&b), 5, Group::GeneralLinear)?.dim.to_string())
        }),
        row("(5,33) gl invariants", 1, |s| {
            let b = s.basis(5, 33, Part::Full)?;
            Ok(invariants_on(Space::Full(&b), 5, Group::GeneralLinear)?.dim.to_string())
        }),
        row("(5,33) phi(zeta)+xi fixed under gl", true, |s| {
            let b = s.basis(5, 33, Part::Full)?;
            let f = hitcalc::kameko::kameko_up(&data::zeta()?).add(&data::xi()?);
            Ok(verify_invariant_on(&b, &f, Group::GeneralLinear)?.to_string())
        }),
        row("zeta0 annihilated", true, |_| {
            Ok(is_annihilated(&data::zeta0_dual()?)?.to_string())
        }),
        row("pairing(zeta0, phi(zeta))", 1, |_| {
            let z = hitcalc::kameko::kameko_up(&data::zeta()?);
            Ok(pairing(&data::zeta0_dual()?, &z)?.to_string())
        }),
        row("(3,15) full dim", 13, |s| {
            Ok(s.basis(3, 15, Part::Full)?.dim().to_string())
        }),
        row("(4,33) positive dim", 84, |s| {
            Ok(s.basis(4, 33, Part::Positive)?.dim().to_string())
        }),
        row("(4,33) positive weight dims w1/w3", "17/67", |s| {
            let b = s.basis(4, 33, Part::Positive)?;
            Ok(format!(
                "{}/{}",
                b.subquotient(&omega(&[3, 1, 1, 1, 1]))?.dim(),
                b.subquotient(&omega(&[3, 3, 2, 2]))?.dim()
            ))
        }),
    ];
    if allow_large {
        rows.push(row("(5,71) kameko kernel pieces", "1395+124=1519", |s| {
            let spike = minimal_spike(5, 71).expect("mu(71) <= 5");
            let b = s.basis_restricted(5, 71, &spike.weight_vector())?;
            let k = kernel_from_basis(&b)?;
            let a = k
                .per_omega
                .iter()
                .find(|(w, _)| w == &omega(&[3, 2, 2, 1, 1, 1]))
                .map_or(0, |&(_, d)| d);
            let c = k
                .per_omega
                .iter()
                .find(|(w, _)| w == &omega(&[3, 4, 1, 1, 1, 1]))
                .map_or(0, |&(_, d)| d);
            Ok(format!("{a}+{c}={}", k.total))
        }));
    }
    rows
}

fn reproduce_paper(session: &Session, allow_large: bool) {
    let mut all_ok = true;
    for r in reproduce_rows(allow_large) {
        let t = Instant::now();
        let (status, got) = match (r.run)(session) {
            Ok(got) if got == r.expected => ("PASS", got),
            Ok(got) => {
                all_ok = false;
                ("FAIL", got)
            }
            Err(e) => {
                all_ok = false;
                ("FAIL", e.to_string())
            }
        };
        println!(
            "{status} {:<42} expected {:<16} got {:<16} [{:.2?}]",
            r.label,
            r.expected,
            got,
            t.elapsed()
        );
    }
    if !allow_large {
        println!("SKIP (5,71) rows (pass --allow-large to run them)");
    }
    println!("{}", if all_ok { "ALL PASS" } else { "FAILURES PRESENT" });
}
