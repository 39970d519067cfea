use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use padic_voa::scalar::Rational;
use padic_voa_cli::commands::{axioms_cmd, character_cmd, eisenstein_cmd, kummer_cmd, virasoro_cmd};
use padic_voa_cli::{CliError, Report, Suite};

#[derive(Parser)]
#[command(name = "padic-voa", version, about = "Exact computations in p-adic Heisenberg and Virasoro vertex algebras")]
struct Cli {
    /// Also write the JSON report to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Jacobi,
    Commutator,
    Locality,
    Isometry,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Jacobi => Suite::Jacobi,
            SuiteArg::Commutator => Suite::Commutator,
            SuiteArg::Locality => Suite::Locality,
            SuiteArg::Isometry => Suite::Isometry,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Graded-trace character Z(v, q), or eta * Z with --eta.
    Character {
        #[arg(long, default_value_t = 5)]
        prime: u64,
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 20)]
        qmax: usize,
        #[arg(long)]
        eta: bool,
    },
    /// Eisenstein series G_k, or the p-stabilized weight-two series.
    Eisenstein {
        #[arg(long, conflicts_with_all = ["star", "stabilized"])]
        k: Option<i64>,
        /// G2* with constant term (p^2 - 1)/24.
        #[arg(long, requires = "prime")]
        star: bool,
        /// G2(q) - p G2(q^p), constant term (p - 1)/24.
        #[arg(long, requires = "prime", conflicts_with = "star")]
        stabilized: bool,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value_t = 20)]
        qmax: usize,
    },
    /// Kummer congruences between u_r states and their characters.
    Kummer {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 2)]
        amax: u32,
        #[arg(long, default_value_t = 10)]
        qmax: usize,
    },
    /// Vertex-algebra identity sweeps on the Heisenberg basis.
    Axioms {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        grade: Option<u32>,
        #[arg(long)]
        window: Option<i64>,
        #[arg(long, default_value_t = 5)]
        prime: u64,
    },
    /// Virasoro bracket sweep on the PBW basis at quasicentral charge c'.
    Virasoro {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        cprime: Rational,
        #[arg(long, default_value_t = 6)]
        grade: u32,
        #[arg(long, default_value_t = 4)]
        window: i64,
        #[arg(long, default_value_t = 5)]
        prime: u64,
    },
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Character { prime, state, qmax, eta } => character_cmd(prime, &state, qmax, eta),
        Command::Eisenstein { k, star, stabilized, prime, qmax } => eisenstein_cmd(k, star, stabilized, prime, qmax),
        Command::Kummer { prime, amax, qmax } => kummer_cmd(prime, amax, qmax),
        Command::Axioms { suite, grade, window, prime } => {
            let suite = Suite::from(suite);
            axioms_cmd(suite, grade.unwrap_or(suite.default_grade()), window.unwrap_or(suite.default_window()), prime)
        }
        Command::Virasoro { cprime, grade, window, prime } => virasoro_cmd(&cprime, grade, window, prime),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, ok) = match run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("reports are plain JSON");
    println!("{text}");
    if let Some(path) = cli.out {
        if let Err(source) = std::fs::write(&path, format!("{text}\n")) {
            eprintln!("error: {}", CliError::Io { path: path.display().to_string(), source });
            return ExitCode::from(2);
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
