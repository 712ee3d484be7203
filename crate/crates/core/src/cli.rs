//! The `nct` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails (reports are
//! still written), 2 for usage and domain errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::Param;
use crate::chern::{self, Charge};
use crate::error::{Error, Result};
use crate::exact::{parse_rat, Interval};
use crate::gclass::{self, Kappas, SeedParams};
use crate::traces::{self, TraceKind, DEFAULT_WINDOW};
use crate::{expr, matrix, Rat};

#[derive(Parser, Debug)]
#[command(name = "nct", version, about = "Exact checks for the rotation algebra and its Fourier transform")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Seed arithmetic, inequality chain and certificates for the class 𝒢.
    #[command(subcommand)]
    Gclass(GclassCmd),
    /// σ-trace and σ²-trace functionals.
    #[command(subcommand)]
    Traces(TracesCmd),
    /// Topological invariants of canonical projections.
    #[command(subcommand)]
    Chern(ChernCmd),
    /// Finite clock/shift model of the Fourier transform.
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// Expression parser.
    #[command(subcommand)]
    Expr(ExprCmd),
}

#[derive(Args, Debug, Clone)]
struct SeedArgs {
    #[arg(short = 'k')]
    k: i64,
    #[arg(short = 'm')]
    m: i64,
}

#[derive(Args, Debug, Clone)]
struct KappaArgs {
    #[arg(long, default_value = "3/4")]
    kappa1: String,
    #[arg(long, default_value = "1/2")]
    kappa2: String,
}

impl KappaArgs {
    fn parse(&self) -> Result<Kappas<BigInt>> {
        Kappas::new(parse_rat(&self.kappa1)?, parse_rat(&self.kappa2)?)
    }
}

#[derive(Args, Debug, Clone)]
struct OutArgs {
    /// Write a JSON report to this file.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Algebra parameter ϑ = λθ + μ.
    #[arg(long, default_value = "1")]
    lam: String,
    #[arg(long, default_value = "0")]
    mu: String,
}

impl ParamArgs {
    fn parse(&self) -> Result<Param<BigInt>> {
        Param::new(parse_rat(&self.lam)?, parse_rat(&self.mu)?)
    }
}

#[derive(Subcommand, Debug)]
enum GclassCmd {
    /// n, q, s, p, r, A, B for a seed.
    Derive {
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The eight integer identities.
    Identities {
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The five-link inequality chain.
    Chain {
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        kappa: KappaArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The open interval attached to a seed.
    Interval {
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        kappa: KappaArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Full certificate for one seed, or for every odd-m seed with k, m ≤ max.
    Certify {
        #[arg(short = 'k', required_unless_present = "grid")]
        k: Option<i64>,
        #[arg(short = 'm', required_unless_present = "grid")]
        m: Option<i64>,
        #[arg(long, conflicts_with_all = ["k", "m"])]
        grid: bool,
        #[arg(long, default_value_t = 40)]
        max: i64,
        #[command(flatten)]
        kappa: KappaArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Seeds whose interval contains θ.
    Member {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        kmax: i64,
        #[command(flatten)]
        kappa: KappaArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Intervals of every odd-m seed with k, m ≤ max.
    Cover {
        #[arg(long, default_value_t = 40)]
        max: i64,
        #[command(flatten)]
        kappa: KappaArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand, Debug)]
enum TracesCmd {
    /// Exhaustive trace laws over monomial pairs in the window.
    Check {
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: i64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Evaluate functionals on an expression.
    Eval {
        /// t10, t11, t20, t21, t22, tau, or all.
        #[arg(long, default_value = "all")]
        kind: String,
        expr: String,
        #[command(flatten)]
        param: ParamArgs,
    },
}

#[derive(Subcommand, Debug)]
enum ChernCmd {
    /// Closed-form vector of e_q⁺ (-p, -q) or e_b⁻ (-a, -b).
    Top {
        #[arg(long)]
        charge: Charge,
        #[arg(short = 'p', allow_negative_numbers = true)]
        p: Option<i64>,
        #[arg(short = 'q')]
        q: Option<i64>,
        #[arg(short = 'a', allow_negative_numbers = true)]
        a: Option<i64>,
        #[arg(short = 'b')]
        b: Option<i64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Closed forms against the transfer computation for all coprime p/q with q ≤ qmax.
    Crosscheck {
        #[arg(long, default_value_t = 50)]
        qmax: i64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Transfer of the discrete functionals along ζ_{n,k} on a monomial window.
    Lemma24 {
        #[arg(short = 'n', default_value_t = 5)]
        nmax: i64,
        #[arg(long, default_value_t = 3)]
        kmax: i64,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: i64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand, Debug)]
enum MatrixCmd {
    /// Intertwiner residuals and order-four checks for one (p, q) or all q ≤ qmax.
    Verify {
        #[arg(short = 'p', allow_negative_numbers = true, requires = "q")]
        p: Option<i64>,
        #[arg(short = 'q', requires = "p")]
        q: Option<i64>,
        #[arg(long, default_value_t = 24, conflicts_with = "q")]
        qmax: i64,
        /// Write W as JSON [re, im] pairs (single (p, q) only).
        #[arg(long, requires = "q")]
        dump: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand, Debug)]
enum ExprCmd {
    /// Print the canonical form of an expression.
    Echo {
        expr: String,
        #[command(flatten)]
        param: ParamArgs,
    },
}

/// Outcome of a subcommand before it is turned into an exit code.
enum Outcome {
    Pass,
    Fail,
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ChainFailure(_)
        | Error::IndeterminateSign(_)
        | Error::NoIntertwiner(_)
        | Error::NotUnitary(_) => 1,
        _ => 2,
    }
}

fn write_json<T: Serialize>(out: &OutArgs, value: &T) -> Result<()> {
    if let Some(path) = &out.output {
        write_json_to(path, value)?;
    }
    Ok(())
}

fn write_json_to<T: Serialize>(path: &PathBuf, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::BadInput(format!("serialization failed: {e}")))?;
    text.push('\n');
    fs::write(path, text)
        .map_err(|e| Error::BadInput(format!("cannot write {}: {e}", path.display())))
}

fn seed(args: &SeedArgs) -> Result<SeedParams<BigInt>> {
    SeedParams::from_i64(args.k, args.m)
}

fn coprime_pairs(qmax: i64) -> Vec<(i64, i64)> {
    (1..=qmax)
        .flat_map(|q| (0..q).filter(move |&p| num_integer::gcd(p, q) == 1).map(move |p| (p, q)))
        .collect()
}

/// Runs `nct` with the given arguments (program name first), writing to `out` and `err`.
pub fn run_with<S: Into<std::ffi::OsString> + Clone>(
    argv: impl IntoIterator<Item = S>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs `nct` on the process streams.
pub fn run<S: Into<std::ffi::OsString> + Clone>(argv: impl IntoIterator<Item = S>) -> i32 {
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn io(e: std::io::Error) -> Error {
    Error::BadInput(format!("output error: {e}"))
}

fn dispatch(cmd: Command, w: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        Command::Gclass(c) => gclass_cmd(c, w),
        Command::Traces(c) => traces_cmd(c, w),
        Command::Chern(c) => chern_cmd(c, w),
        Command::Matrix(c) => matrix_cmd(c, w),
        Command::Expr(c) => expr_cmd(c, w),
    }
}

fn print_checks(w: &mut dyn Write, checks: &indexmap::IndexMap<String, bool>) -> Result<()> {
    for (name, ok) in checks {
        writeln!(w, "  {:<40} {}", name, mark(*ok)).map_err(io)?;
    }
    Ok(())
}

fn interval_text(iv: &Interval<BigInt>) -> String {
    format!("({}, {})", iv.lo(), iv.hi())
}

fn gclass_cmd(cmd: GclassCmd, w: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        GclassCmd::Derive { seed: s, out } => {
            let d = gclass::derive(&seed(&s)?)?;
            for (name, v) in [("n", &d.n), ("q", &d.q), ("s", &d.s), ("p", &d.p), ("r", &d.r), ("A", &d.a), ("B", &d.b)] {
                writeln!(w, "{name:>2} = {v}").map_err(io)?;
            }
            write_json(&out, &d)?;
            Ok(Outcome::Pass)
        }
        GclassCmd::Identities { seed: s, out } => {
            let sp = seed(&s)?;
            let d = gclass::derive(&sp)?;
            let ids = gclass::verify_identities(&sp, &d);
            print_checks(w, &ids)?;
            write_json(&out, &ids)?;
            Ok(outcome(ids.values().all(|&ok| ok)))
        }
        GclassCmd::Chain { seed: s, kappa, out } => {
            let report = gclass::chain_report(&seed(&s)?, &kappa.parse()?)?;
            print_checks(w, &report.links)?;
            writeln!(w, "  4k^2 >= k1/(1-k1): {}", report.left_inner_sufficient).map_err(io)?;
            write_json(&out, &report)?;
            Ok(outcome(report.holds()))
        }
        GclassCmd::Interval { seed: s, kappa, out } => {
            let iv = gclass::interval(&seed(&s)?, &kappa.parse()?)?;
            writeln!(w, "{}", interval_text(&iv)).map_err(io)?;
            write_json(&out, &iv)?;
            Ok(Outcome::Pass)
        }
        GclassCmd::Certify { k, m, grid, max, kappa, out } => {
            let kappas = kappa.parse()?;
            if grid {
                return certify_grid(max, &kappas, &out, w);
            }
            let (k, m) = (k.expect("clap enforces -k"), m.expect("clap enforces -m"));
            let cert = gclass::certify(&SeedParams::from_i64(k, m)?, &kappas)?;
            writeln!(w, "seed k={k} m={m}: interval {}", interval_text(&cert.interval)).map_err(io)?;
            writeln!(w, "  tau0 = {}", cert.tau0).map_err(io)?;
            writeln!(w, "  Top(e_q-) = {}", cert.chern.e_q_minus.top).map_err(io)?;
            writeln!(w, "  Top(gamma e_s+) = {}", cert.chern.gamma_e_s_plus.top).map_err(io)?;
            let failures = cert.failures();
            for f in &failures {
                writeln!(w, "  FAIL {f}").map_err(io)?;
            }
            writeln!(w, "overall: {}", mark(cert.overall)).map_err(io)?;
            write_json(&out, &cert)?;
            Ok(outcome(cert.overall))
        }
        GclassCmd::Member { theta, kmax, kappa, out } => {
            let theta: Rat = parse_rat(&theta)?;
            let seeds = gclass::member(&theta, &kappa.parse()?, kmax);
            for s in &seeds {
                writeln!(w, "k={} m={}", s.k, s.m).map_err(io)?;
            }
            if seeds.is_empty() {
                writeln!(w, "no seed with k, m <= {kmax}").map_err(io)?;
            }
            write_json(&out, &seeds)?;
            Ok(Outcome::Pass)
        }
        GclassCmd::Cover { max, kappa, out } => {
            let seeds = gclass::grid_seeds::<BigInt>(max);
            let cover = gclass::gdelta_cover(&seeds, &kappa.parse()?)?;
            #[derive(Serialize)]
            struct Entry<'a> {
                seed: &'a SeedParams<BigInt>,
                interval: &'a Interval<BigInt>,
            }
            let entries: Vec<Entry> =
                seeds.iter().zip(&cover).map(|(seed, interval)| Entry { seed, interval }).collect();
            for e in &entries {
                writeln!(w, "k={:<3} m={:<3} {}", e.seed.k, e.seed.m, interval_text(e.interval)).map_err(io)?;
            }
            write_json(&out, &entries)?;
            Ok(Outcome::Pass)
        }
    }
}

fn certify_grid(max: i64, kappas: &Kappas<BigInt>, out: &OutArgs, w: &mut dyn Write) -> Result<Outcome> {
    #[derive(Serialize)]
    #[serde(untagged)]
    enum Entry {
        Ok(Box<crate::Certificate>),
        Err { seed: SeedParams<BigInt>, error: String },
    }
    let seeds = gclass::grid_seeds::<BigInt>(max);
    let results = gclass::certify_grid(max, kappas);
    let mut all_ok = true;
    let mut entries = Vec::with_capacity(results.len());
    for (seed, res) in seeds.into_iter().zip(results) {
        match res {
            Ok(cert) => {
                if !cert.overall {
                    all_ok = false;
                    writeln!(w, "k={} m={}: FAIL {:?}", seed.k, seed.m, cert.failures()).map_err(io)?;
                }
                entries.push(Entry::Ok(Box::new(cert)));
            }
            Err(e) => {
                all_ok = false;
                writeln!(w, "k={} m={}: error {e}", seed.k, seed.m).map_err(io)?;
                entries.push(Entry::Err { seed, error: e.to_string() });
            }
        }
    }
    writeln!(w, "{} seeds with k, m <= {max}: {}", entries.len(), mark(all_ok)).map_err(io)?;
    write_json(out, &entries)?;
    Ok(outcome(all_ok))
}

fn traces_cmd(cmd: TracesCmd, w: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        TracesCmd::Check { window, out } => {
            if window < 0 {
                return Err(Error::BadInput(format!("window {window} must be ≥ 0")));
            }
            let report = traces::check_all::<BigInt>(window)?;
            for (kind, power, ok) in &report.alpha_trace {
                writeln!(w, "  {kind} is a sigma^{power}-trace: {}", mark(*ok)).map_err(io)?;
            }
            for (kind, ok) in &report.sigma_invariance {
                writeln!(w, "  {kind} o sigma = {kind}: {}", mark(*ok)).map_err(io)?;
            }
            writeln!(w, "  parity flips exactly t11, t22: {}", mark(report.parity_flip)).map_err(io)?;
            writeln!(w, "  nu relations: {}", mark(report.nu_relations)).map_err(io)?;
            write_json(&out, &report)?;
            Ok(outcome(report.all_pass()))
        }
        TracesCmd::Eval { kind, expr: text, param } => {
            let x = expr::parse(&text, &param.parse()?)?;
            let kinds: Vec<TraceKind> = if kind == "all" {
                TraceKind::ALL.to_vec()
            } else {
                vec![kind.parse()?]
            };
            for k in kinds {
                writeln!(w, "{k}: {}", traces::psi(k, &x)).map_err(io)?;
            }
            Ok(Outcome::Pass)
        }
    }
}

fn chern_cmd(cmd: ChernCmd, w: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        ChernCmd::Top { charge, p, q, a, b, out } => {
            let missing = |what: &str| Error::BadInput(format!("charge {charge:?} needs {what}"));
            let v = match charge {
                Charge::Plus => {
                    let (p, q) = (p.ok_or_else(|| missing("-p"))?, q.ok_or_else(|| missing("-q"))?);
                    chern::top_eq_plus(&BigInt::from(p), &BigInt::from(q))?
                }
                Charge::Minus => {
                    let (a, b) = (a.ok_or_else(|| missing("-a"))?, b.ok_or_else(|| missing("-b"))?);
                    chern::top_eb_minus(&BigInt::from(a), &BigInt::from(b))?
                }
            };
            writeln!(w, "{v}").map_err(io)?;
            writeln!(w, "lattice: {}", mark(v.top.in_lattice())).map_err(io)?;
            write_json(&out, &v)?;
            Ok(outcome(v.top.in_lattice()))
        }
        ChernCmd::Crosscheck { qmax, out } => {
            #[derive(Serialize)]
            struct Row {
                p: i64,
                q: i64,
                charge: Charge,
                agrees: bool,
                lattice: bool,
            }
            let mut rows = Vec::new();
            for (p, q) in coprime_pairs(qmax) {
                for charge in [Charge::Plus, Charge::Minus] {
                    let (bp, bq) = (BigInt::from(p), BigInt::from(q));
                    let agrees = chern::crosscheck_closed_forms(&bp, &bq, charge)?;
                    let lattice = chern::transferred_top(&bp, &bq, charge)?.top.in_lattice();
                    if !(agrees && lattice) {
                        writeln!(w, "p={p} q={q} {charge:?}: agrees={agrees} lattice={lattice}").map_err(io)?;
                    }
                    rows.push(Row { p, q, charge, agrees, lattice });
                }
            }
            let ok = rows.iter().all(|r| r.agrees && r.lattice);
            writeln!(w, "{} cases with q <= {qmax}: {}", rows.len(), mark(ok)).map_err(io)?;
            write_json(&out, &rows)?;
            Ok(outcome(ok))
        }
        ChernCmd::Lemma24 { nmax, kmax, window, out } => {
            if nmax < 1 || kmax < 0 || window < 0 {
                return Err(Error::BadInput("need n ≥ 1, kmax ≥ 0, window ≥ 0".into()));
            }
            let mut rows = Vec::new();
            for n in 1..=nmax {
                for k in -kmax..=kmax {
                    let ok = chern::verify_lemma_psizeta::<BigInt>(n, k, window)?;
                    if !ok {
                        writeln!(w, "n={n} k={k}: FAIL").map_err(io)?;
                    }
                    rows.push((n, k, ok));
                }
            }
            let ok = rows.iter().all(|r| r.2);
            writeln!(w, "{} (n, k) pairs, window {window}: {}", rows.len(), mark(ok)).map_err(io)?;
            write_json(&out, &rows)?;
            Ok(outcome(ok))
        }
    }
}

fn matrix_cmd(cmd: MatrixCmd, w: &mut dyn Write) -> Result<Outcome> {
    let MatrixCmd::Verify { p, q, qmax, dump, out } = cmd;
    #[derive(Serialize)]
    struct Row {
        #[serde(flatten)]
        report: matrix::IntertwinerReport<f64>,
        order_four: bool,
        trace_preserved: bool,
    }
    let pairs = match (p, q) {
        (Some(p), Some(q)) => vec![(p, q)],
        _ => coprime_pairs(qmax),
    };
    let tol = <f64 as matrix::MatrixScalar>::tolerance();
    let mut rows = Vec::new();
    for (p, q) in pairs {
        let report = matrix::intertwiner_report::<f64>(q, p)?;
        let order_four = matrix::verify_order_four::<f64>(q, p)?;
        let trace_preserved = matrix::check_trace_preservation::<f64>(q, p)?;
        let ok = report.within(tol) && order_four && trace_preserved;
        writeln!(
            w,
            "q={q:<3} p={p:<3} |WuW*-v|={:.2e} |WvW*-u*|={:.2e} |W*W-I|={:.2e} order4={} {}",
            report.residual_u, report.residual_v, report.residual_unitary, order_four, mark(ok)
        )
        .map_err(io)?;
        if let Some(path) = &dump {
            write_json_to(path, &report.w.to_pairs())?;
        }
        rows.push(Row { report, order_four, trace_preserved });
    }
    let ok = rows.iter().all(|r| r.report.within(tol) && r.order_four && r.trace_preserved);
    write_json(&out, &rows)?;
    Ok(outcome(ok))
}

fn expr_cmd(cmd: ExprCmd, w: &mut dyn Write) -> Result<Outcome> {
    let ExprCmd::Echo { expr: text, param } = cmd;
    let x = expr::parse(&text, &param.parse()?)?;
    writeln!(w, "{}", expr::print(&x)).map_err(io)?;
    Ok(Outcome::Pass)
}
