mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exact cohomology, twisted groups and Clifford algebra checks.
#[derive(Parser, Debug)]
#[command(name = "dixmier", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SpaceArgs {
    /// Catalog name (S1, RP2xRP2, RP2+S1, Delta3, ...), a JSON file, or `-` for stdin.
    #[arg(long)]
    pub space: String,
    /// Strongly self-absorbing algebra: C, Z, MP:2,3, Q, OInfty, MPOInfty:2,3, O2.
    #[arg(long, default_value = "C")]
    pub algebra: String,
    /// Emit JSON instead of a text report.
    #[arg(long)]
    pub json: bool,
    /// Seed for randomized group-axiom checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random samples used when the group is too large to enumerate.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cohomology groups H^k(X; R).
    Cohomology {
        #[arg(long)]
        space: String,
        /// Z, F2 or ZP:2,3.
        #[arg(long, default_value = "Z")]
        ring: String,
        /// Single degree; prints {"rank","torsion"}.
        #[arg(long)]
        deg: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// The twisted group H^1(X; Z/2) x_tw H^3(X; K0(D)).
    TwistedGroup(SpaceArgs),
    /// The bundle group H^0(X; Z/2) + the twisted group.
    BundleGroup(SpaceArgs),
    /// The graded Brauer group; D must be stably finite.
    Brauer(SpaceArgs),
    /// Run the Clifford algebra verification suite.
    CliffordVerify {
        /// Run every check.
        #[arg(long, conflicts_with = "check")]
        all: bool,
        /// Run only checks whose name contains this text.
        #[arg(long, required_unless_present = "all")]
        check: Option<String>,
        /// Randomized samples per randomized identity.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// K-theory and homotopy data of strongly self-absorbing algebras.
    SsaInfo {
        /// Algebra name; all catalog algebras when omitted.
        name: Option<String>,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Built-in complexes with Euler characteristic and Betti numbers.
    Catalog {
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(out) => {
            let _ = writeln!(std::io::stdout().lock(), "{}", out.text);
            if out.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
