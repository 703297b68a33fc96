use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jacsyz_cli::commands::{cmd_analyze, cmd_family, cmd_hilbert, cmd_search, cmd_verify_paper, SearchArgs};
use jacsyz_cli::{exit, CliError, Config, Format, Output};
use jacsyz_core::families::{parse_pool, DEFAULT_POOL};

#[derive(Parser)]
#[command(name = "jacsyz", version, about = "Jacobian syzygies and Tjurina numbers of plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Compute over F_p for this prime (> 2^20) instead of certifying over Q.
    #[arg(long, global = true, env = "JACSYZ_PRIME")]
    prime: Option<u64>,
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "JACSYZ_SEED", default_value_t = 0)]
    seed: u64,
    /// Generator search bound (default 2d).
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Compute the saturation module N(f).
    #[arg(long, global = true)]
    saturation: bool,
    /// How often the generator bound may grow by d after a closure failure.
    #[arg(long, global = true, default_value_t = 3)]
    escalation_cap: u32,
    /// Add wall-clock timings to reports.
    #[arg(long, global = true)]
    timing: bool,
}

impl Common {
    fn config(&self) -> Config {
        Config {
            prime: self.prime,
            generator_bound: self.bound,
            saturation: self.saturation,
            format: if self.json { Format::Json } else { Format::Text },
            seed: self.seed,
            escalation_cap: self.escalation_cap,
            timing: self.timing,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Resolve the Milnor algebra of a curve and classify it.
    Analyze {
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check every registry curve against its claimed invariants.
    VerifyPaper {
        /// Glob over entry ids, e.g. 'prop4.2:*'.
        filter: Option<String>,
        /// Include entries above the desk-scale degree range.
        #[arg(long)]
        extended: bool,
        /// Registry file instead of the shipped one.
        #[arg(long)]
        registry: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Print a member of a named family, e.g. `family prop4.3 d=8`.
    Family {
        name: String,
        /// Parameters as key=value.
        params: Vec<String>,
        /// Also analyze the curve.
        #[arg(long)]
        analyze: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Hilbert function of the Milnor algebra.
    Hilbert {
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// Search templates for curves of type (d, r, m).
    Search {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: usize,
        /// Coefficient pool, e.g. "-3,-1,1,2,3".
        #[arg(long, allow_hyphen_values = true)]
        pool: Option<String>,
        #[arg(long, default_value_t = 500)]
        budget: usize,
        /// Append certificates to this JSON-lines file.
        #[arg(long)]
        store: Option<PathBuf>,
        /// Template file instead of the shipped one.
        #[arg(long)]
        templates: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Analyze { poly, common } => cmd_analyze(&poly, &common.config()),
        Command::VerifyPaper { filter, extended, registry, common } => {
            cmd_verify_paper(filter.as_deref(), extended, registry.as_deref(), &common.config())
        }
        Command::Family { name, params, analyze, common } => cmd_family(&name, &params, analyze, &common.config()),
        Command::Hilbert { poly, common } => cmd_hilbert(&poly, &common.config()),
        Command::Search { d, r, m, pool, budget, store, templates, common } => {
            let pool = match pool {
                Some(p) => parse_pool(&p).map_err(|e| CliError::usage(e.to_string()))?,
                None => DEFAULT_POOL.to_vec(),
            };
            let args = SearchArgs { d, r, m, pool, budget, store: store.as_deref(), templates: templates.as_deref() };
            cmd_search(&args, &common.config())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::SUCCESS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush());
            let _ = std::io::stderr().write_all(out.stderr.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("jacsyz: {e}");
            ExitCode::from(e.code)
        }
    }
}
