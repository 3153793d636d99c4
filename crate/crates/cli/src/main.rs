mod dot;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dmt::checks::{run_suite, Suite};
use dmt::connectivity::{assert_graph, connection_matrix, verify_euler_theorem, GraphView};
use dmt::corpus::{corpus_entry, GraphCorpusEntry};
use dmt::format::{parse_complex, parse_dmf, write_dmf, FormatError};
use dmt::generate::{enumerate_gvfs, for_each_gvf, random_dmf};
use dmt::morse::{critical_simplices, gradient_field, validate_dmf};
use dmt::persistence::{classify_critical, persistence_pairs};
use dmt::{Rational, RationalMorseFunction, SimplicialComplex};

#[derive(Parser)]
#[command(
    name = "dmt",
    version,
    about = "Discrete Morse theory on simplicial complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the discrete Morse function axioms.
    Validate(Single),
    /// List critical simplices with their persistence role.
    Critical(Single),
    /// Persistence pairs of the sub-level filtration.
    Pairs {
        #[command(flatten)]
        input: Single,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Betti numbers over F2.
    Betti(ComplexArg),
    /// Connections between the critical simplices of two functions on a graph.
    Connect {
        #[command(flatten)]
        input: Pair,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Check A0 - A1 = chi for two functions on a graph.
    CheckEuler(Pair),
    /// Enumerate every gradient vector field on a graph.
    Enumerate {
        #[command(flatten)]
        complex: ComplexArg,
        /// Run a theorem suite over all ordered pairs of fields.
        #[arg(long, value_enum)]
        check: Option<CheckArg>,
    },
    /// Generate a random discrete Morse function.
    Gen {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write to this file instead of standard output.
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Graphviz rendering of the complex and, optionally, a gradient field.
    ExportDot {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(short, long)]
        function: Option<String>,
        /// Draw the Hasse diagram even for graphs.
        #[arg(long)]
        hasse: bool,
    },
}

#[derive(Args)]
struct ComplexArg {
    /// A .cplx file, or the name of a builtin graph.
    #[arg(short = 'k', long = "complex")]
    complex: String,
}

#[derive(Args)]
struct Single {
    #[command(flatten)]
    complex: ComplexArg,
    /// A .dmf file, or builtin:<name>.
    #[arg(short, long)]
    function: String,
}

#[derive(Args)]
struct Pair {
    #[command(flatten)]
    complex: ComplexArg,
    #[arg(long)]
    f1: String,
    #[arg(long)]
    f2: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Euler,
    All,
}

/// Fatal input error; exits with status 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

struct Input {
    complex: SimplicialComplex,
    builtin: Option<GraphCorpusEntry>,
}

impl Input {
    fn load(arg: &ComplexArg) -> Result<Self, Fatal> {
        let path = Path::new(&arg.complex);
        if path.is_file() {
            let text = read(path)?;
            let complex = parse_complex(&text)
                .map_err(|e| Fatal(format!("parse error in {}: {e}", path.display())))?;
            return Ok(Input {
                complex,
                builtin: None,
            });
        }
        match corpus_entry(&arg.complex) {
            Some(entry) => Ok(Input {
                complex: entry.graph.clone(),
                builtin: Some(entry),
            }),
            None => Err(Fatal(format!(
                "no file or builtin complex named `{}`",
                arg.complex
            ))),
        }
    }

    fn function(&self, arg: &str) -> Result<RationalMorseFunction, Fatal> {
        if let Some(name) = arg.strip_prefix("builtin:") {
            let entry = self
                .builtin
                .as_ref()
                .ok_or_else(|| Fatal(format!("`{arg}` needs a builtin complex, not a file")))?;
            let f = entry.function(name).ok_or_else(|| {
                Fatal(format!(
                    "builtin complex `{}` has no function `{name}`",
                    entry.name
                ))
            })?;
            return Ok(f.map(|v| Rational::from_integer((*v).into())));
        }
        let path = Path::new(arg);
        let text = read(path)?;
        parse_dmf(&self.complex, &text).map_err(|e| match e {
            FormatError::Missing(_) => {
                Fatal(format!("incomplete function file {}: {e}", path.display()))
            }
            e => Fatal(format!("parse error in {}: {e}", path.display())),
        })
    }

    fn graph(&self) -> Result<GraphView<'_>, Fatal> {
        assert_graph(&self.complex).map_err(|e| Fatal(format!("not a graph: {e}")))
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    fs::read_to_string(path).map_err(|e| Fatal(format!("cannot read {}: {e}", path.display())))
}

/// Output of one command: the text for standard output and whether its
/// checks passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate {
            complex,
            check: None,
        } => stream_fields(&complex),
        command => run(command).and_then(|outcome| {
            io::stdout().lock().write_all(outcome.text.as_bytes())?;
            Ok(outcome.ok)
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fatal(message)) => {
            eprintln!("dmt: error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome, Fatal> {
    match command {
        Command::Validate(args) => validate(&args),
        Command::Critical(args) => critical(&args),
        Command::Pairs { input, dim } => pairs(&input, dim),
        Command::Betti(args) => betti(&args),
        Command::Connect { input, dim } => connect(&input, dim),
        Command::CheckEuler(args) => check_euler(&args),
        Command::Enumerate {
            complex,
            check: Some(check),
        } => check_fields(&complex, check),
        Command::Enumerate { .. } => unreachable!("streamed in main"),
        Command::Gen {
            complex,
            seed,
            output,
        } => generate(&complex, seed, output.as_deref()),
        Command::ExportDot {
            complex,
            function,
            hasse,
        } => export_dot(&complex, function.as_deref(), hasse),
    }
}

fn validate(args: &Single) -> Result<Outcome, Fatal> {
    let input = Input::load(&args.complex)?;
    let f = input.function(&args.function)?;
    let report = validate_dmf(&input.complex, &f)?;
    let mut text = String::new();
    for line in report.describe(&input.complex) {
        writeln!(text, "violation\t{line}")?;
    }
    writeln!(text, "{}", if report.is_ok() { "ok" } else { "invalid" })?;
    Ok(Outcome {
        text,
        ok: report.is_ok(),
    })
}

fn critical(args: &Single) -> Result<Outcome, Fatal> {
    let input = Input::load(&args.complex)?;
    let k = &input.complex;
    let f = input.function(&args.function)?;
    let crit = critical_simplices(k, &f)?;
    let kinds = classify_critical(k, &f)?;
    let mut text = String::from("dim\tsimplex\tvalue\tkind\n");
    for id in crit.iter() {
        let kind = kinds.get(&id).map_or("UNPAIRED", |c| c.label());
        writeln!(
            text,
            "{}\t{}\t{}\t{kind}",
            k.dim_of(id),
            k.name(id),
            f.value(id)
        )?;
    }
    let counts: Vec<String> = (0..=k.dim().unwrap_or(0))
        .map(|q| format!("C{q}={}", crit.count(q)))
        .collect();
    writeln!(text, "{}", counts.join(" "))?;
    Ok(Outcome::ok(text))
}

fn pairs(args: &Single, dim: Option<usize>) -> Result<Outcome, Fatal> {
    let input = Input::load(&args.complex)?;
    let k = &input.complex;
    let f = input.function(&args.function)?;
    let diagram = persistence_pairs(k, &f)?;
    let mut rows: Vec<_> = diagram
        .pairs
        .iter()
        .filter(|p| dim.is_none_or(|q| p.dim == q))
        .collect();
    rows.sort_by_key(|p| (p.dim, p.birth));
    let inf = || "inf".to_string();
    let mut text = String::from("dim\tbirth\tdeath\tbirth_value\tdeath_value\tpersistence\n");
    for p in rows {
        writeln!(
            text,
            "{}\t{}\t{}\t{}\t{}\t{}",
            p.dim,
            k.name(p.birth),
            p.death.map_or_else(inf, |d| k.name(d)),
            p.birth_value,
            p.death_value.as_ref().map_or_else(inf, |v| v.to_string()),
            p.persistence().map_or_else(inf, |v| v.to_string()),
        )?;
    }
    Ok(Outcome::ok(text))
}

fn betti(args: &ComplexArg) -> Result<Outcome, Fatal> {
    let input = Input::load(args)?;
    let mut text = String::from("dim\tbetti\n");
    for (q, b) in input.complex.betti_numbers().iter().enumerate() {
        writeln!(text, "{q}\t{b}")?;
    }
    writeln!(text, "chi={}", input.complex.euler_characteristic())?;
    Ok(Outcome::ok(text))
}

fn connect(args: &Pair, dim: Option<usize>) -> Result<Outcome, Fatal> {
    let input = Input::load(&args.complex)?;
    let graph = input.graph()?;
    let k = &input.complex;
    let f1 = input.function(&args.f1)?;
    let f2 = input.function(&args.f2)?;
    let dims = match dim {
        Some(q) => vec![q],
        None => vec![0, 1],
    };
    let mut text = String::from("q\talpha\tbeta\tdirection\twitness\n");
    let mut summary = Vec::new();
    for q in dims {
        let report = connection_matrix(graph, &f1, &f2, q)?;
        for c in &report.connections {
            let witness: Vec<String> = c
                .forward
                .iter()
                .chain(&c.backward)
                .map(|p| p.display(k))
                .collect();
            writeln!(
                text,
                "{q}\t{}\t{}\t{}\t{}",
                k.name(c.alpha),
                k.name(c.beta),
                c.direction().label(),
                witness.join(" | ")
            )?;
        }
        summary.push(format!("A{q}={}", report.a_q()));
    }
    writeln!(text, "{}", summary.join(" "))?;
    Ok(Outcome::ok(text))
}

fn check_euler(args: &Pair) -> Result<Outcome, Fatal> {
    let input = Input::load(&args.complex)?;
    let graph = input.graph()?;
    let f1 = input.function(&args.f1)?;
    let f2 = input.function(&args.f2)?;
    let report = verify_euler_theorem(graph, &f1, &f2)?;
    Ok(Outcome {
        text: format!("{}\n", report.summary()),
        ok: report.ok(),
    })
}

fn stream_fields(args: &ComplexArg) -> Result<bool, Fatal> {
    let input = Input::load(args)?;
    let graph = input.graph()?;
    let k = &input.complex;
    let mut out = BufWriter::new(io::stdout().lock());
    let mut first = true;
    let mut error = None;
    for_each_gvf(graph, |v| {
        if error.is_some() {
            return;
        }
        let line = if v.is_empty() {
            "-".to_string()
        } else {
            v.named_pairs(k)
                .iter()
                .map(|(l, u)| format!("pair {l} {u}"))
                .collect::<Vec<_>>()
                .join("; ")
        };
        let sep = if first { "" } else { "\n" };
        first = false;
        if let Err(e) = writeln!(out, "{sep}{line}") {
            error = Some(e);
        }
    })?;
    if let Some(e) = error {
        return Err(e.into());
    }
    out.flush()?;
    Ok(true)
}

fn check_fields(args: &ComplexArg, check: CheckArg) -> Result<Outcome, Fatal> {
    let input = Input::load(args)?;
    let graph = input.graph()?;
    let fields = enumerate_gvfs(graph)?;
    let suite = match check {
        CheckArg::Euler => Suite::Euler,
        CheckArg::All => Suite::All,
    };
    let report = run_suite(graph, &fields, suite)?;
    let mut text = String::new();
    for failure in &report.failures {
        writeln!(text, "FAIL\t{failure}")?;
    }
    writeln!(text, "{report}")?;
    Ok(Outcome {
        text,
        ok: report.ok(),
    })
}

fn generate(args: &ComplexArg, seed: u64, output: Option<&str>) -> Result<Outcome, Fatal> {
    let input = Input::load(args)?;
    let text = write_dmf(&input.complex, &random_dmf(&input.complex, seed));
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Fatal(format!("cannot write {path}: {e}")))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn export_dot(args: &ComplexArg, function: Option<&str>, hasse: bool) -> Result<Outcome, Fatal> {
    let input = Input::load(args)?;
    let k = &input.complex;
    let field = match function {
        Some(arg) => Some(gradient_field(k, &input.function(arg)?)?),
        None => None,
    };
    let text = if hasse || k.dim().is_some_and(|d| d > 1) {
        dot::hasse(k, field.as_ref())
    } else {
        dot::graph(k, field.as_ref())
    };
    Ok(Outcome::ok(text))
}
