//! `maw`: command-line front end of the measure-algebra workbench.
//!
//! Every subcommand reads documents in the shared text format, runs one
//! workbench operation and prints the canonical serialization of the result
//! (to stdout, or to `--out`). Exit status: 0 on success, 1 on a domain
//! error (its stable name is printed first on stderr), 2 on malformed input
//! or arguments (with a position-annotated diagnostic).

use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use maw_core::boolalg::{BoolHom, FinBool};
use maw_core::format::{self, Action, Codec, Family, FormatError};
use maw_core::funcalg::{self, Exponent, FiniteState};
use maw_core::kolmo::{self, Cylinder};
use maw_core::lawcheck::suites::{self, Suite, SuiteConfig};
use maw_core::lawcheck::{totals, LawReport};
use maw_core::proba::{self, MeasuredBool, ProbAlgebra, ProbMorphism};
use maw_core::stoned::{self, StoneSpace};
use maw_core::{canmodel, disint, Error, Rational};

#[derive(Parser, Debug)]
#[command(name = "maw", version, about = "Exact finite-scale measure-algebra workbench")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Worker threads for the law suites (default: one per core).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Object size cap for the exhaustive law suites.
    #[arg(long, global = true, value_name = "N", default_value_t = 4)]
    max_atoms: usize,

    /// Law suite to run: stone-duality, prob-duality, disint, kolmo, monoidal or all.
    #[arg(long, global = true, value_name = "NAME", default_value = "all")]
    suite: Suite,

    /// Seed of the randomized property checks.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stone space (ultrafilters = atoms) of a Boolean algebra.
    Spectrum { algebra: PathBuf },
    /// Delete the null atoms of a measured algebra.
    Mes { measured: PathBuf },
    /// Independent product of probability algebras, with its marginals.
    Tensor {
        #[arg(required = true)]
        factors: Vec<PathBuf>,
    },
    /// Canonical (Stone) model of a probability algebra.
    Model { algebra: PathBuf },
    /// The action induced on the Stone model by automorphism generators.
    ModelAction { action: PathBuf },
    /// Continuous map Stone(X) → K representing a hom from the clopens of K.
    Represent { algebra: PathBuf, hom: PathBuf },
    /// Canonical disintegration of a factor map.
    Disintegrate { morphism: PathBuf },
    /// Relative product of two extensions of a common factor.
    Relprod { left: PathBuf, right: PathBuf },
    /// Conditional expectation E(f | Y) along a factor map.
    Condexp { morphism: PathBuf, function: PathBuf },
    /// ∫ f dμ.
    Integrate { algebra: PathBuf, function: PathBuf },
    /// ‖f‖₁, ‖f‖₂² or ‖f‖∞².
    Lpnorm {
        algebra: PathBuf,
        function: PathBuf,
        /// Exponent: 1, 2 or inf.
        #[arg(long, default_value = "1")]
        p: String,
    },
    /// Measure representing a state on a finite point set.
    Riesz { state: PathBuf },
    /// Evaluate a cylinder set under the extension of a consistent family.
    Kolmo {
        /// Family file: `iid`, `markov` or `table`.
        #[arg(long, value_name = "PATH")]
        family: PathBuf,
        /// Cylinder as inline JSON (`{"F":[1,3],"E":[["h","h"]]}`) or a file.
        #[arg(long, value_name = "JSON|PATH")]
        cylinder: String,
    },
    /// Invariant factor of a finitely generated action.
    Invariant { action: PathBuf },
    /// Ergodic decomposition over the invariant factor.
    Ergodic { action: PathBuf },
    /// Run a law suite and print its reports.
    Check,
}

/// A failure mapped to its exit status.
enum Failure {
    Domain(Error),
    Input(String),
    Laws(usize),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Domain(e) => Failure::Domain(e),
            FormatError::Parse(p) => Failure::Input(p.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<(Value, Vec<String>), Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: cannot read: {e}", path.display())))
}

fn load<T: Codec>(path: &Path) -> Result<T, Failure> {
    Ok(format::from_text(&read_text(path)?, &path.display().to_string())?)
}

fn load_with<T>(path: &Path, f: impl FnOnce(format::Node<'_>) -> format::Result<T>) -> Result<T, Failure> {
    Ok(format::read(&read_text(path)?, &path.display().to_string(), f)?)
}

fn summary_enabled() -> bool {
    match std::env::var("MAW_COLOR").as_deref() {
        Ok("1") => true,
        Ok("0") => false,
        _ => std::io::stderr().is_terminal(),
    }
}

fn paint(text: &str, ok: bool) -> String {
    let code = if ok { 32 } else { 31 };
    format!("\x1b[{code}m{text}\x1b[0m")
}

fn check_table(reports: &[LawReport]) -> Vec<String> {
    let width = reports.iter().map(|r| r.law.chars().count()).max().unwrap_or(0).min(96);
    let mut lines: Vec<String> = reports
        .iter()
        .map(|r| {
            let status = if r.passed() { paint("PASS", true) } else { paint("FAIL", false) };
            let law: String = r.law.chars().take(width).collect();
            let pad = width - law.chars().count();
            format!("{status}  {law}{}  {:>8} checked  {:>5} violations", " ".repeat(pad), r.checked, r.violation_count)
        })
        .collect();
    let (checked, violations) = totals(reports);
    lines.push(format!(
        "{} laws, {checked} checks, {violations} violations",
        reports.len()
    ));
    lines
}

fn run(cli: &Cli) -> Outcome {
    type Q = Rational;
    Ok(match &cli.command {
        Command::Spectrum { algebra } => {
            let b: FinBool = load(algebra)?;
            let s = stoned::stone(&b);
            let note = format!("{} atoms → {} points", b.atom_count(), s.len());
            (s.encode(), vec![note])
        }
        Command::Mes { measured } => {
            let m: MeasuredBool<Q> = load(measured)?;
            let r = proba::mes(&m);
            let dropped = m.algebra().atom_count() - r.algebra.atom_count();
            (r.encode(), vec![format!("{dropped} null atoms deleted")])
        }
        Command::Tensor { factors } => {
            let xs = factors.iter().map(|p| load::<ProbAlgebra<Q>>(p)).collect::<Result<Vec<_>, _>>()?;
            let t = proba::tensor(&xs);
            let note = format!("{} factors → {} atoms", xs.len(), t.algebra.atom_count());
            (t.encode(), vec![note])
        }
        Command::Model { algebra } => {
            let x: ProbAlgebra<Q> = load(algebra)?;
            let w = canmodel::stone_model(&x);
            let note = format!("{} points, strong Lusin: {}", w.space().len(), canmodel::strong_lusin(&w));
            (w.encode(), vec![note])
        }
        Command::ModelAction { action } => {
            let a: Action<Q> = load(action)?;
            let maps = canmodel::model_action(&a.algebra, &a.generators)?;
            (maps.encode(), vec![format!("{} point bijections", maps.len())])
        }
        Command::Represent { algebra, hom } => {
            let x: ProbAlgebra<Q> = load(algebra)?;
            let h: BoolHom = load(hom)?;
            let k = StoneSpace::new(h.source().atoms().iter().cloned())?;
            let f = canmodel::represent(&x, &k, &h)?;
            (f.encode(), vec![format!("Stone(X) → K with |K| = {}", k.len())])
        }
        Command::Disintegrate { morphism } => {
            let pi: ProbMorphism<Q> = load(morphism)?;
            let k = disint::disintegrate(&pi);
            let note = format!("{} fibers, verified: {}", k.fibers().len(), disint::verify_uniqueness(&pi, &k));
            (format::encode_kernel(&k), vec![note])
        }
        Command::Relprod { left, right } => {
            let p1: ProbMorphism<Q> = load(left)?;
            let p2: ProbMorphism<Q> = load(right)?;
            let r = disint::rel_product(&p1, &p2)?;
            let note = format!("{} atoms, square commutes: {}", r.algebra.atom_count(), r.commutes(&p1, &p2));
            (r.encode(), vec![note])
        }
        Command::Condexp { morphism, function } => {
            let pi: ProbMorphism<Q> = load(morphism)?;
            let source = funcalg::linfty(pi.source());
            let f = load_with(function, |n| format::decode_func(&source, n))?;
            let e = funcalg::cond_exp(&pi, &f);
            let target = funcalg::linfty(pi.target());
            (format::encode_func(&target, &e), vec![format!("E(f|Y) over {} atoms", target.dim())])
        }
        Command::Integrate { algebra, function } => {
            let x: ProbAlgebra<Q> = load(algebra)?;
            let a = funcalg::linfty(&x);
            let f = load_with(function, |n| format::decode_func(&a, n))?;
            let z = funcalg::integrate(&a, &f);
            let note = format!("∫f = {} + {}i", format::scalar(&z.re), format::scalar(&z.im));
            (format::gaussian(&z), vec![note])
        }
        Command::Lpnorm { algebra, function, p } => {
            let p: Exponent = p.parse()?;
            let x: ProbAlgebra<Q> = load(algebra)?;
            let a = funcalg::linfty(&x);
            let f = load_with(function, |n| format::decode_func(&a, n))?;
            let norm = funcalg::lp_norm(&a, &f, p)?;
            let note = format!("p = {p}{}", if norm.squared { " (squared)" } else { "" });
            (norm.encode(), vec![note])
        }
        Command::Riesz { state } => {
            let s: FiniteState<Q> = load(state)?;
            let m = funcalg::riesz_finite(&s);
            (m.encode(), vec![format!("measure on {} points", m.algebra().atom_count())])
        }
        Command::Kolmo { family, cylinder } => {
            let fam: Family<Q> = load(family)?;
            let cyl: Cylinder = if cylinder.trim_start().starts_with('{') {
                format::from_text(cylinder, "--cylinder")?
            } else {
                load(Path::new(cylinder))?
            };
            let mu = kolmo::extend(fam.into_shared());
            let value = mu.query(&cyl)?;
            let note = format!("μ(cylinder over {:?}) = {}", cyl.indices, format::scalar(&value));
            (format::scalar(&value), vec![note])
        }
        Command::Invariant { action } => {
            let a: Action<Q> = load(action)?;
            let inv = proba::invariant_factor(&a.algebra, &a.generators)?;
            (inv.encode(), vec![format!("{} orbits", inv.orbits.len())])
        }
        Command::Ergodic { action } => {
            let a: Action<Q> = load(action)?;
            let d = disint::ergodic_components(&a.algebra, &a.generators)?;
            let flags = d
                .components
                .fibers()
                .iter()
                .map(|fiber| disint::is_ergodic(&a.algebra, &a.generators, fiber))
                .collect::<Result<Vec<bool>, _>>()?;
            let ergodic = flags.iter().filter(|&&e| e).count();
            let note = format!("{} components, {ergodic} ergodic", flags.len());
            (format::encode_ergodic(&d, &flags), vec![note])
        }
        Command::Check => {
            let config = SuiteConfig {
                seed: cli.seed,
                ..SuiteConfig::with_max_atoms(cli.max_atoms)
            };
            let reports = suites::run(cli.suite, &config);
            let lines = check_table(&reports);
            let (_, violations) = totals(&reports);
            if violations > 0 {
                emit(cli, &reports.encode(), &lines).map_err(Failure::Input)?;
                return Err(Failure::Laws(violations));
            }
            (reports.encode(), lines)
        }
    })
}

fn emit(cli: &Cli, value: &Value, summary: &[String]) -> Result<(), String> {
    let text = format!("{}\n", format::canonical(value));
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: cannot write: {e}", path.display()))?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("stdout: {e}"))?,
    }
    if summary_enabled() {
        let mut err = std::io::stderr().lock();
        for line in summary {
            let _ = writeln!(err, "{line}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((value, summary)) => match emit(&cli, &value, &summary) {
            Ok(()) => ExitCode::SUCCESS,
            Err(message) => {
                eprintln!("error: {message}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Domain(e)) => {
            eprintln!("{}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(Failure::Laws(n)) => {
            eprintln!("LawViolation: {n} law checks failed");
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("parse error: {message}");
            ExitCode::from(2)
        }
    }
}
