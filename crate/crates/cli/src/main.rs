use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tiltkit::field::FieldSpec;
use tiltkit_cli::corpus;
use tiltkit_cli::format::{parse, SpecFile};
use tiltkit_cli::run::{run, BuildTarget, Command, Overrides, ReportFile};

/// Exact verification of matrix-ring constructions, tilting modules and dimension bounds.
///
/// SPEC is a path to a spec file or `corpus:NAME` for a bundled entry.
/// Exit codes: 0 all checks pass, 1 input or validation error, 2 a check failed,
/// 3 inconclusive because of a depth or budget cutoff.
#[derive(Parser)]
#[command(name = "tiltkit", version)]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Flags {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every randomized search (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Resolution depth (default 20).
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Finitistic-dimension search budget `max_dim,samples,depth` (default 64,6,8).
    #[arg(long, global = true, value_parser = parse_budget)]
    budget: Option<(usize, usize, usize)>,
    /// Ground field, `Q` or `Fp:p`; overrides the spec file.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    /// Largest algebra dimension that is built (default 512).
    #[arg(long, global = true)]
    max_dim: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the algebra axioms and every ring spec in the file.
    Validate { spec: String },
    /// Build one ring and report its shape.
    Build {
        /// lambda | sigma | gamma | block | tiled
        target: BuildTarget,
        spec: String,
    },
    /// Global dimension, self-injectivity and finitistic-dimension brackets.
    Dims { spec: String },
    /// Tilting module, endomorphism ring isomorphism and the related checks.
    VerifyThm1 { spec: String },
    /// Dimension inequalities; all applicable ones when no names are given.
    VerifyBounds { spec: String, names: Vec<String> },
    /// Hypothesis screen for finiteness of fd on the tiled ring.
    VerifyProp412 { spec: String },
    /// Everything applicable to the file.
    ReportAll { spec: String },
    /// Bundled example corpus.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Names of the bundled entries.
    List,
    /// Print one entry as a spec file.
    Show { name: String },
    /// Write every entry to DIR/NAME.spec.
    Export { dir: PathBuf },
    /// Run report-all on every entry.
    Check,
}

fn parse_budget(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    let nums: Result<Vec<usize>, _> = parts.iter().map(|p| p.trim().parse::<usize>()).collect();
    match nums.as_deref() {
        Ok([a, b, c]) => Ok((*a, *b, *c)),
        _ => Err("expected max_dim,samples,depth".into()),
    }
}

fn load_spec(arg: &str) -> Result<SpecFile, String> {
    if let Some(name) = arg.strip_prefix("corpus:") {
        return corpus::find(name).ok_or_else(|| format!("no corpus entry named `{name}`"));
    }
    let text = std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?;
    parse(&text).map_err(|e| format!("{arg}: {e}"))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn combined_exit(reports: &[ReportFile]) -> i32 {
    [1, 2, 3].into_iter().find(|c| reports.iter().any(|r| r.exit_code == *c)).unwrap_or(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = &cli.flags;
    let overrides = Overrides { depth: f.depth, budget: f.budget, seed: f.seed, field: f.field, max_dim: f.max_dim };
    let (spec_arg, command) = match cli.command {
        Cmd::Validate { spec } => (spec, Command::Validate),
        Cmd::Build { target, spec } => (spec, Command::Build(target)),
        Cmd::Dims { spec } => (spec, Command::Dims),
        Cmd::VerifyThm1 { spec } => (spec, Command::VerifyThm1),
        Cmd::VerifyBounds { spec, names } => (spec, Command::VerifyBounds(names)),
        Cmd::VerifyProp412 { spec } => (spec, Command::VerifyProp412),
        Cmd::ReportAll { spec } => (spec, Command::ReportAll),
        Cmd::Corpus(c) => return corpus_command(c, &f.out, &overrides),
    };
    let file = match load_spec(&spec_arg) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let report = run(&command, &file, &overrides);
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    if let Err(e) = emit(&report.to_json(), &f.out) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(report.exit_code as u8)
}

fn corpus_command(c: CorpusCmd, out: &Option<PathBuf>, overrides: &Overrides) -> ExitCode {
    let result = match c {
        CorpusCmd::List => {
            let names: Vec<String> = corpus::corpus().into_iter().map(|s| s.name).collect();
            emit(&names.join("\n"), out).map(|_| 0)
        }
        CorpusCmd::Show { name } => match corpus::find(&name) {
            Some(s) => emit(s.to_text().trim_end(), out).map(|_| 0),
            None => Err(format!("no corpus entry named `{name}`")),
        },
        CorpusCmd::Export { dir } => (|| {
            std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
            for s in corpus::corpus() {
                let p = dir.join(format!("{}.spec", s.name));
                std::fs::write(&p, s.to_text()).map_err(|e| format!("{}: {e}", p.display()))?;
            }
            Ok(0)
        })(),
        CorpusCmd::Check => {
            let entries = corpus::corpus();
            let reports: Vec<ReportFile> = std::thread::scope(|scope| {
                let handles: Vec<_> =
                    entries.iter().map(|s| scope.spawn(move || run(&Command::ReportAll, s, overrides))).collect();
                handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            });
            for r in &reports {
                eprintln!("{:<24} exit {}  pass {} fail {} inconclusive {}", r.spec_name, r.exit_code, r.summary.pass, r.summary.fail, r.summary.inconclusive);
            }
            let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
            emit(&text, out).map(|_| combined_exit(&reports))
        }
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
