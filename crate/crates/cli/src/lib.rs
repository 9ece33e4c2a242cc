//! The `bhl` command line: subcommands map onto the verifiers of `bhl-core`
//! and print a report as text or JSON.
//!
//! Exit codes: 0 when every check passes, 1 on any FAIL (or any SKIP under
//! `--strict`), 2 on usage errors and unreadable input.

pub mod commands;
pub mod suite;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use bhl_core::report::Report;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use commands::{CmdResult, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "bhl", version, about = "Exact verification of Hopf algebras in (Vec_{Z/N}, χ)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Debug, Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Treat skipped checks as failures.
    #[arg(long, global = true)]
    strict: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify a family of identities.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Kernel dimensions of (1 − ς^H)^k on the regular representation.
    StableDim {
        #[arg(long)]
        p: u64,
        /// A single μ; all μ mod p when omitted.
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<i64>,
    },
    /// Decompositions of module categories.
    Decompose {
        #[command(subcommand)]
        what: Decompose,
    },
    /// Diagram scripts.
    Dsl {
        #[command(subcommand)]
        what: Dsl,
    },
    /// Every acceptance criterion applicable at p.
    Suite {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Debug, Subcommand)]
enum Verify {
    /// Bialgebra and antipode axioms for the anyonic line and the Taft algebra.
    HopfAxioms {
        #[arg(long)]
        p: u64,
        /// Exponent c of the bicharacter ζ^{c·ij}.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        chi: i64,
    },
    /// The dual anyonic line and its isomorphism with k[z]/(z^p).
    DualAlgebra {
        #[arg(long)]
        p: u64,
    },
    /// (n)_ξ! against balanced q-factorials.
    QCombinatorics {
        #[arg(long)]
        p: u64,
    },
    /// D^a_μ ≅ u_q(sl2).
    Uqsl2Iso {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<i64>,
    },
    /// ς^H_μ as a multiple of the ribbon element.
    Ribbon {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<i64>,
    },
    /// Centrality of v_0 and the dimension of the center of u_q(sl2).
    Center {
        #[arg(long)]
        p: u64,
    },
    /// Anti-Yetter-Drinfeld axioms on a module file or the regular representation.
    Ayd {
        #[arg(long, required_unless_present = "module")]
        p: Option<u64>,
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<i64>,
        /// JSON module with keys p, mu, dims, x, z.
        #[arg(long)]
        module: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum Decompose {
    /// Vec_{Z/N} with bicharacter ζ^{c·ij}.
    VecG {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        chi: i64,
    },
    /// Rep(G) from a Cayley table.
    RepG {
        /// JSON array of rows; entry [a][b] is the index of ab.
        #[arg(long)]
        cayley: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum Dsl {
    /// Parse, typecheck and check every assertion of a script.
    Check {
        file: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        chi: i64,
        /// Anti-twist parameter.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        mu: i64,
    },
}

/// The result of one invocation.
#[derive(Debug)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn read_json(path: &Path) -> Result<Value, String> {
    serde_json::from_str(&read(path)?).map_err(|e| format!("{}: invalid JSON: {e}", path.display()))
}

fn execute(command: Command, seed: u64, report: &mut Report) -> CmdResult {
    match command {
        Command::Verify { what } => match what {
            Verify::HopfAxioms { p, chi } => {
                report.command = "verify hopf-axioms".into();
                report.param("p", p);
                report.param("chi", chi);
                report.param("seed", seed);
                commands::hopf_axioms(p, chi, seed)
            }
            Verify::DualAlgebra { p } => {
                report.command = "verify dual-algebra".into();
                report.param("p", p);
                commands::dual_algebra(p)
            }
            Verify::QCombinatorics { p } => {
                report.command = "verify q-combinatorics".into();
                report.param("p", p);
                commands::q_combinatorics(p)
            }
            Verify::Uqsl2Iso { p, mu } => {
                report.command = "verify uqsl2-iso".into();
                report.param("p", p);
                report.param("mu", mu);
                commands::uqsl2_iso(p, mu)
            }
            Verify::Ribbon { p, mu } => {
                report.command = "verify ribbon".into();
                report.param("p", p);
                report.param("mu", mu);
                commands::ribbon(p, mu)
            }
            Verify::Center { p } => {
                report.command = "verify center".into();
                report.param("p", p);
                commands::center(p)
            }
            Verify::Ayd { p, mu, module } => {
                report.command = "verify ayd".into();
                report.param("p", p);
                report.param("mu", mu);
                match module {
                    Some(path) => {
                        report.param("module", path.display().to_string());
                        commands::ayd(p.unwrap_or(0), mu, Some(&read_json(&path)?))
                    }
                    None => commands::ayd(p.expect("required by clap"), mu, None),
                }
            }
        },
        Command::StableDim { p, mu } => {
            report.command = "stable-dim".into();
            report.param("p", p);
            report.param("mu", mu);
            commands::stable_dim(p, mu)
        }
        Command::Decompose { what } => match what {
            Decompose::VecG { n, chi } => {
                report.command = "decompose vec-g".into();
                report.param("n", n);
                report.param("chi", chi);
                commands::decompose_vec(n, chi)
            }
            Decompose::RepG { cayley } => {
                report.command = "decompose rep-g".into();
                report.param("cayley", cayley.display().to_string());
                commands::decompose_rep(&read_json(&cayley)?)
            }
        },
        Command::Dsl { what: Dsl::Check { file, n, chi, mu } } => {
            report.command = "dsl check".into();
            report.param("file", file.display().to_string());
            report.param("n", n);
            report.param("chi", chi);
            report.param("mu", mu);
            commands::dsl_check(&read(&file)?, n, chi, mu)
        }
        Command::Suite { p } => {
            report.command = "suite".into();
            report.param("p", p);
            report.param("seed", seed);
            let (checks, ran) = suite::run(p, seed)?;
            report.param("criteria", ran);
            Ok(Outcome { checks, data: None })
        }
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => {
            let mut s = report.to_string() + "\n";
            if let Some(data) = &report.data {
                if report.command == "decompose vec-g" {
                    s.push_str(&commands::vec_g_table(data));
                } else {
                    s.push_str(&serde_json::to_string_pretty(data).expect("json") );
                    s.push('\n');
                }
            }
            s
        }
    }
}

/// Runs the CLI on `argv` (including the program name) without touching the
/// process streams.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Output { code, stdout, stderr, report: None };
        }
    };
    let Global { format, strict, seed } = cli.global;
    let start = Instant::now();
    let mut report = Report::new("");
    match execute(cli.command, seed, &mut report) {
        Ok(Outcome { checks, data }) => {
            report.extend(checks);
            report.data = data;
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            let code = if report.any_failed() || (strict && report.any_skipped()) { 1 } else { 0 };
            Output { code, stdout: render(&report, format), stderr: String::new(), report: Some(report) }
        }
        Err(msg) => Output { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n"), report: None },
    }
}
