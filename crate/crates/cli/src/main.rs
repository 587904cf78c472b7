//! `blockalg`: command line front end. Every verb prints its result and
//! exits with 0 when all checks pass, 1 when one fails, 2 on bad input.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use blockalg::algebra::winf::assoc_graded_check;
use blockalg::algebra::{AlgebraError, BlockAlgebra, Element};
use blockalg::constraints::{
    case_determinant, describe_solution, q_minus1_systems, symbols, Case, ConstraintError, Subcase,
};
use blockalg::intseries::{irreducible_window, verify_module, IntSeriesError, WindowSpec};
use blockalg::io::{self, InputError};
use blockalg::par::Exec;
use blockalg::report::{self, CheckResult, Report, Suite};
use blockalg::scalar::Scalar;
use blockalg::weights::{labels_from_quasipoly, singular_check, Verdict, WeightError};

const VERBOSE_VAR: &str = "BLOCKALG_VERBOSE";

/// `println!` that stops quietly when stdout is closed, e.g. piped into `head`.
macro_rules! say {
    ($($t:tt)*) => {
        say_raw(&format!("{}\n", format_args!($($t)*)))
    };
}

fn say_raw(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}

#[derive(Parser)]
#[command(
    name = "blockalg",
    version,
    about = "Exact computations in the Block type Lie algebras B(q)"
)]
struct Cli {
    /// Also write the report as JSON to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket of two elements.
    Bracket {
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// Element as JSON or a path to a JSON file.
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Jacobi sum of three elements.
    Jacobi {
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
    },
    /// Scaling embedding or Virasoro subalgebra on a window of basis elements.
    EmbedCheck {
        #[arg(long, default_value = "q", allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_enum, default_value_t = EmbedKind::Scale)]
        kind: EmbedKind,
        /// Scaling factor for `--kind scale`.
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        alpha_max: i64,
        #[arg(long, default_value_t = 3)]
        level_max: u32,
    },
    /// Iterated ad of `L[1-mu0,0]` and `L[-mu0,0]` against its closed form.
    AdChain {
        #[arg(long, default_value = "q", allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        mu0: i64,
        #[arg(long)]
        k1: u32,
        #[arg(long)]
        k2: u32,
    },
    /// Top D-degree of differential operator brackets against B(1).
    WinfCheck {
        #[arg(long, default_value_t = 3)]
        alpha_max: i64,
        #[arg(long, default_value_t = 4)]
        level_max: u32,
    },
    /// Quasifiniteness of a highest weight module from its labels.
    QfCheck {
        #[arg(long)]
        weight: String,
    },
    /// Characteristic polynomial of the label recurrence.
    Charpoly {
        #[arg(long)]
        weight: String,
    },
    /// Whether `x^-1 t^q h(t)` gives a singular vector, compared with the constraint rows.
    SingularCheck {
        #[arg(long)]
        weight: String,
        /// Coefficients of h, constant term first, as a JSON list of strings.
        #[arg(long)]
        h: String,
    },
    /// Labels whose generating series is a quasipolynomial.
    LabelsFromQp {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// JSON list of `{"exponent": ..., "poly": [...]}` terms.
        #[arg(long)]
        qp: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// JSON map from pole index to label value.
        #[arg(long)]
        free: Option<String>,
    },
    /// Module axiom on a window of generators and basis vectors.
    ModuleVerify {
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 4)]
        alpha_max: i64,
        #[arg(long, default_value_t = 6)]
        level_max: u32,
        #[arg(long, default_value_t = 8)]
        mu_max: i64,
    },
    /// Reachability between basis vectors on a window.
    IrreducibleCheck {
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 8)]
        window: i64,
        /// Fail unless the result matches.
        #[arg(long, value_enum)]
        expect: Option<Reducibility>,
    },
    /// Determinants of the three-unknown systems and their coefficients.
    DetReport {
        #[arg(long, value_enum)]
        case: DetCase,
    },
    /// Linear systems of a `q = -1` case.
    SolveCase {
        /// Aa, Ba, Ap01 or main.
        #[arg(long)]
        subcase: String,
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
    /// Runs a verification suite.
    VerifyPaper {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EmbedKind {
    Scale,
    Virasoro,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Reducibility {
    Irreducible,
    Reducible,
}

#[derive(Clone, Copy, ValueEnum)]
enum DetCase {
    One,
    Two,
    CubeRoot,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    IntSeries(#[from] IntSeriesError),
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

/// Inline JSON, or the contents of the named file.
fn json_arg(arg: &str) -> Result<String, CliError> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|source| CliError::Read {
        path: arg.to_string(),
        source,
    })
}

fn element_args(args: &[&str], q: Option<&str>) -> Result<(BlockAlgebra, Vec<Element>), CliError> {
    let specs = args
        .iter()
        .map(|a| Ok(io::element_spec(&json_arg(a)?)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(io::elements(&specs, q)?)
}

fn algebra(q: &str) -> Result<BlockAlgebra, CliError> {
    Ok(io::elements(&[], Some(q))?.0)
}

fn sweep(id: &str, anchor: &str, total: usize, failures: &[String]) -> CheckResult {
    let witness = match failures.first() {
        None => format!("{total} cases"),
        Some(f) => format!("{} of {total} cases fail; first: {f}", failures.len()),
    };
    CheckResult::new(id, anchor, failures.is_empty(), witness)
}

fn verdict_line(c: &CheckResult) -> String {
    match &c.witness {
        Some(w) => format!("{}: {} ({w})", c.verdict, c.anchor),
        None => format!("{}: {}", c.verdict, c.anchor),
    }
}

fn run(cmd: Command, exec: Exec, verbose: bool) -> Result<Report, CliError> {
    let mut checks = vec![];
    let name = match cmd {
        Command::Bracket { q, lhs, rhs } => {
            let (alg, els) = element_args(&[&lhs, &rhs], q.as_deref())?;
            let r = alg.try_bracket(&els[0], &els[1])?;
            say!("{r}");
            checks.push(CheckResult::new(
                "bracket",
                format!("[{}, {}]", els[0], els[1]),
                true,
                r.to_string(),
            ));
            "bracket"
        }
        Command::Jacobi { q, x, y, z } => {
            let (alg, els) = element_args(&[&x, &y, &z], q.as_deref())?;
            let r = alg.jacobi_residual(&els[0], &els[1], &els[2]);
            say!("{r}");
            checks.push(CheckResult::new(
                "jacobi",
                "Jacobi sum vanishes",
                r.is_zero(),
                r.to_string(),
            ));
            "jacobi"
        }
        Command::EmbedCheck {
            q,
            kind,
            k,
            alpha_max,
            level_max,
        } => {
            let alg = algebra(&q)?;
            let c = match kind {
                EmbedKind::Scale => scale_check(&alg, k, alpha_max, level_max, exec)?,
                EmbedKind::Virasoro => virasoro_check(&alg, alpha_max, exec)?,
            };
            say!("{}", verdict_line(&c));
            checks.push(c);
            "embed-check"
        }
        Command::AdChain { q, mu0, k1, k2 } => {
            let alg = algebra(&q)?;
            let r = alg.ad_chain(mu0, k1, k2)?;
            say!("iterated:    {}", r.iterated);
            say!("closed form: {}", r.closed_form);
            let c = CheckResult::new(
                "ad-chain",
                format!("iterated ad at (mu0,k1,k2) = ({mu0},{k1},{k2}) equals its closed form"),
                r.agrees(),
                "",
            );
            say!("{}", verdict_line(&c));
            checks.push(c);
            "ad-chain"
        }
        Command::WinfCheck {
            alpha_max,
            level_max,
        } => {
            if level_max == 0 {
                return Err(CliError::Usage("--level-max must be at least 1".into()));
            }
            let cases: Vec<(i64, i64, u32, u32)> = (-alpha_max..=alpha_max)
                .flat_map(|a| {
                    (-alpha_max..=alpha_max).flat_map(move |b| {
                        (1..=level_max)
                            .flat_map(move |i| (1..=level_max).map(move |j| (a, b, i, j)))
                    })
                })
                .collect();
            let failures = exec.flat_map(&cases, |&(a, b, i, j)| {
                let r = assoc_graded_check(a, b, i, j);
                if r.is_zero() {
                    vec![]
                } else {
                    vec![format!("(a,b,i,j)=({a},{b},{i},{j}): {r}")]
                }
            });
            let c = sweep(
                "winf-check",
                "associated graded of the differential operators is B(1)",
                cases.len(),
                &failures,
            );
            say!("{}", verdict_line(&c));
            checks.push(c);
            "winf-check"
        }
        Command::QfCheck { weight } => {
            let w = io::weight(&json_arg(&weight)?)?;
            let v = w.is_quasifinite();
            say!("{v}");
            let pass = matches!(v, Verdict::Quasifinite(_));
            checks.push(CheckResult::new(
                "qf-check",
                "module is quasifinite",
                pass,
                v.to_string(),
            ));
            "qf-check"
        }
        Command::Charpoly { weight } => {
            let w = io::weight(&json_arg(&weight)?)?;
            let c = match w.char_poly() {
                Ok(h) => {
                    say!("h = {h}");
                    CheckResult::new(
                        "charpoly",
                        "certified label recurrence",
                        true,
                        format!("h = {h}"),
                    )
                }
                Err(e) => {
                    say!("{e}");
                    CheckResult::new(
                        "charpoly",
                        "certified label recurrence",
                        false,
                        e.to_string(),
                    )
                }
            };
            checks.push(c);
            "charpoly"
        }
        Command::SingularCheck { weight, h } => {
            let w = io::weight(&json_arg(&weight)?)?;
            let texts = io::poly_texts(&json_arg(&h)?)?;
            let h = io::upoly(w.ctx(), &texts)?;
            let singular = singular_check(&w, &h)?;
            let rows = w.constraint_rows(&h);
            let rows_vanish = rows.iter().all(Scalar::is_zero);
            say!("singular: {}", if singular { "yes" } else { "no" });
            if verbose {
                for (n, r) in rows.iter().enumerate() {
                    say!("  row {n}: {r}");
                }
            }
            let c = CheckResult::new(
                "singular-check",
                "singular vector test agrees with the constraint rows",
                singular == rows_vanish,
                format!("singular = {singular}, rows vanish = {rows_vanish}"),
            );
            say!("{}", verdict_line(&c));
            checks.push(c);
            "singular-check"
        }
        Command::LabelsFromQp { q, qp, depth, free } => {
            let terms = io::quasi_terms(&json_arg(&qp)?)?;
            let free = match free {
                Some(f) => io::free_texts(&json_arg(&f)?)?,
                None => BTreeMap::new(),
            };
            let texts = std::iter::once(q.as_str())
                .chain(terms.iter().map(|t| t.exponent.as_str()))
                .chain(terms.iter().flat_map(|t| t.poly.iter().map(String::as_str)))
                .chain(free.values().map(String::as_str));
            let ctx = io::context_for(texts, &[])?;
            let qp = io::quasipoly(&ctx, &terms)?;
            let qs = io::scalar(&ctx, &q)?;
            let w = labels_from_quasipoly(&qp, &qs, depth, &io::free_values(&ctx, &free)?)?;
            for (n, l) in w.labels.iter().enumerate() {
                say!("Lambda_{n} = {l}");
            }
            let v = w.is_quasifinite();
            say!("{v}");
            let pass = match (&v, qp.minimal_annihilator()) {
                (Verdict::Quasifinite(r), Some(h)) => r.annihilator == h,
                _ => false,
            };
            checks.push(CheckResult::new(
                "labels-from-qp",
                "labels recover the minimal annihilator of the quasipolynomial",
                pass,
                v.to_string(),
            ));
            "labels-from-qp"
        }
        Command::ModuleVerify {
            module,
            alpha_max,
            level_max,
            mu_max,
        } => {
            let m = io::module(&json_arg(&module)?)?;
            let window = WindowSpec {
                alpha_max,
                level_max,
                mu_max,
            };
            let v = verify_module(&m, &window, exec);
            let failures: Vec<String> = v
                .iter()
                .map(|x| {
                    format!(
                        "x=L[{},{}], y=L[{},{}], v[{}]: {}",
                        x.x.0, x.x.1, x.y.0, x.y.1, x.mu, x.residual
                    )
                })
                .collect();
            if verbose {
                for f in &failures {
                    say!("  {f}");
                }
            }
            let c = CheckResult::new(
                "module-verify",
                format!("{m} satisfies the module axiom on |alpha| <= {alpha_max}, i <= {level_max}, |mu| <= {mu_max}"),
                failures.is_empty(),
                match failures.first() {
                    None => String::new(),
                    Some(f) => format!("{} violations; first: {f}", failures.len()),
                },
            );
            say!("{}", verdict_line(&c));
            checks.push(c);
            "module-verify"
        }
        Command::IrreducibleCheck {
            module,
            window,
            expect,
        } => {
            let m = io::module(&json_arg(&module)?)?;
            let r = irreducible_window(&m, window, exec)?;
            let got = if r.is_irreducible() {
                Reducibility::Irreducible
            } else {
                Reducibility::Reducible
            };
            let word = |x: Reducibility| match x {
                Reducibility::Irreducible => "irreducible",
                Reducibility::Reducible => "reducible",
            };
            say!("{} on |mu| <= {window}", word(got));
            checks.push(CheckResult::new(
                "irreducible-check",
                format!("{m} on |mu| <= {window}"),
                expect.is_none_or(|e| e == got),
                format!("{}, {} unreachable pairs", word(got), r.unreachable.len()),
            ));
            "irreducible-check"
        }
        Command::DetReport { case } => {
            let (prefix, mut cs) = match case {
                DetCase::One => ("constraints.case_one", report::determinants(exec)),
                DetCase::Two => ("constraints.case_two", report::determinants(exec)),
                DetCase::CubeRoot => ("constraints.cube_root", report::cube_root_branch(exec)),
            };
            cs.retain(|c| {
                c.id.starts_with(prefix)
                    || (prefix.ends_with("one") && c.id.starts_with("constraints.identity"))
            });
            let which = match case {
                DetCase::One => Some(Case::One),
                DetCase::Two => Some(Case::Two),
                DetCase::CubeRoot => None,
            };
            if let Some(w) = which {
                let k = symbols();
                say!(
                    "determinant = {}",
                    case_determinant(&k, w)?.to_factor_string()
                );
            }
            for c in &cs {
                say!("{} {}  {}", c.verdict, c.id, c.anchor);
                if let Some(a) = &c.assembled {
                    say!("    computed: {a}");
                }
                if let Some(e) = &c.expected {
                    say!("    shown:    {e}");
                }
                if let Some(w) = &c.witness {
                    say!("    {w}");
                }
            }
            checks = cs;
            "det-report"
        }
        Command::SolveCase { subcase, window } => {
            let sub = Subcase::parse(&subcase).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown subcase `{subcase}`; expected Aa, Ba, Ap01 or main"
                ))
            })?;
            let r = q_minus1_systems(sub, window)?;
            for (label, sys, sol) in &r.systems {
                say!("{label}:");
                if verbose {
                    say!("{sys}");
                }
                match sol {
                    Some(s) => say!("  {}", describe_solution(s)),
                    None => say!("  not solved"),
                }
            }
            let prefix = format!("solve-case.{}", sub.name());
            for (n, c) in r.checks.iter().enumerate() {
                checks.push(CheckResult::from_check(
                    format!("{prefix}.{:03}", n + 1),
                    c,
                    false,
                ));
            }
            for (n, c) in r.findings.iter().enumerate() {
                checks.push(CheckResult::from_check(
                    format!("{prefix}.note.{:03}", n + 1),
                    c,
                    true,
                ));
            }
            for c in &checks {
                say!("{}", verdict_line(c));
            }
            "solve-case"
        }
        Command::VerifyPaper { suite } => {
            let s = Suite::parse(&suite).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown suite `{suite}`; expected one of {}",
                    Suite::NAMES.join(", ")
                ))
            })?;
            let r = report::run_suite(s, exec);
            say_raw(&r.to_text(verbose));
            return Ok(r);
        }
    };
    Ok(Report::new(name, checks))
}

fn scale_check(
    alg: &BlockAlgebra,
    k: u32,
    alpha_max: i64,
    level_max: u32,
    exec: Exec,
) -> Result<CheckResult, CliError> {
    if k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let target = alg.scaled(k);
    let mut basis: Vec<Element> = (-alpha_max..=alpha_max)
        .flat_map(|a| (0..=level_max).map(move |i| (a, i)))
        .map(|(a, i)| alg.gen(a, i))
        .collect();
    basis.push(alg.central());
    let n = basis.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let failures = exec.flat_map(&pairs, |&(x, y)| {
        let (u, v) = (&basis[x], &basis[y]);
        let se = |e: &Element| alg.scale_embed(e, k).expect("k >= 1");
        let lhs = se(&alg.bracket(u, v));
        let rhs = target.bracket(&se(u), &se(v));
        if lhs == rhs {
            vec![]
        } else {
            vec![format!("({u}, {v}): {lhs} vs {rhs}")]
        }
    });
    Ok(sweep(
        "embed-check.scale",
        &format!(
            "B({}) -> B({}) by L[a,i] -> (1/{k}) L[a,{k}i] preserves brackets",
            alg.q(),
            target.q()
        ),
        pairs.len(),
        &failures,
    ))
}

fn virasoro_check(alg: &BlockAlgebra, range: i64, exec: Exec) -> Result<CheckResult, CliError> {
    let kappa = alg.vir_central()?;
    let pairs: Vec<(i64, i64)> = (-range..=range)
        .flat_map(|a| (-range..=range).map(move |b| (a, b)))
        .collect();
    let failures = exec.flat_map(&pairs, |&(a, b)| {
        let l = |x| alg.vir_embed(x).expect("q is invertible");
        let lhs = alg.bracket(&l(a), &l(b));
        let mut rhs = l(a + b).scale(&alg.int(b - a));
        if a + b == 0 {
            rhs = rhs.add(&kappa.scale(&Scalar::ratio(alg.ctx(), a * a * a - a, 12)));
        }
        if lhs == rhs {
            vec![]
        } else {
            vec![format!("(a,b)=({a},{b}): {lhs} vs {rhs}")]
        }
    });
    Ok(sweep(
        "embed-check.virasoro",
        &format!("Virasoro relations for |a|, |b| <= {range}"),
        pairs.len(),
        &failures,
    ))
}

fn verbose_from_env() -> bool {
    std::env::var(VERBOSE_VAR).is_ok_and(|v| !v.is_empty() && v != "0")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let verbose = verbose_from_env();
    let report = match run(cli.command, exec, verbose) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &cli.json {
        if let Err(source) = fs::write(path, report.to_json()) {
            eprintln!(
                "error: {}",
                CliError::Write {
                    path: path.display().to_string(),
                    source
                }
            );
            return ExitCode::from(2);
        }
    }
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
