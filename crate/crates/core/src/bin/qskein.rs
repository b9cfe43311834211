use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qskein::oq::RConvention;
use qskein::quotient::{Closure, Variant};
use qskein::report::{exit_code, run_job, Command, Flags, Format, JobConfig};

#[derive(Parser)]
#[command(name = "qskein", version, about = "Truncated quantum representation spaces of braid closures and mapping tori")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Truncated quotient for the closure of a braid.
    Quotient(Common),
    /// Truncated quotient for the mapping torus of a braid.
    MappingTorus(Common),
    /// Coinvariants of the braided tensor power, by both solves.
    Coinvariants(Common),
    /// SL2(F_p) point counts against the Artin-presentation oracle.
    ClassicalPoints(Common),
    /// Run the axiom suite.
    Axioms(Common),
}

#[derive(Args)]
struct Common {
    /// Braid word, e.g. "s1 s2^-1 s1".
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    braid: String,
    #[arg(long, default_value_t = 1)]
    strands: usize,
    /// Truncation degree.
    #[arg(long, default_value_t = 2)]
    degree: usize,
    /// Extra working degree for the closure.
    #[arg(long, default_value_t = 2)]
    slack: usize,
    /// Random trials per axiom check.
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Primes for classical point counts (repeat or comma-separate).
    #[arg(long = "prime", value_delimiter = ',')]
    primes: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "paper-mu-top")]
    variant: Variant,
    #[arg(long, default_value = "swapped-rows")]
    r_convention: RConvention,
    /// Swap which crossing the braiding represents.
    #[arg(long)]
    mirror: bool,
    #[arg(long, default_value = "none")]
    closure: Closure,
    #[arg(long, default_value = "table")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    // usage errors are validation errors (exit 1); 2 is reserved for mismatches
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (command, args) = match cli.command {
        Cmd::Quotient(a) => (Command::Quotient, a),
        Cmd::MappingTorus(a) => (Command::MappingTorus, a),
        Cmd::Coinvariants(a) => (Command::Coinvariants, a),
        Cmd::ClassicalPoints(a) => (Command::ClassicalPoints, a),
        Cmd::Axioms(a) => (Command::Axioms, a),
    };
    let cfg = JobConfig {
        command,
        braid: args.braid,
        strands: args.strands,
        degree: args.degree,
        slack: args.slack,
        trials: args.trials,
        primes: args.primes,
        seed: args.seed,
        flags: Flags { r_convention: args.r_convention, mirror: args.mirror, variant: args.variant, closure: args.closure },
    };
    let outcome = run_job(&cfg);
    match &outcome {
        Ok(report) => {
            let text = match args.format {
                Format::Table => report.table(),
                Format::Json => report.to_json(),
            };
            match &args.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("qskein: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
        }
        Err(e) => eprintln!("qskein: {e}"),
    }
    ExitCode::from(exit_code(&outcome) as u8)
}
