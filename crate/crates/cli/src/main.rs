//! constaq: constacyclic BCH codes in the spectral domain.
//!
//! Exit codes: 0 success, 2 invalid input or plan, 3 CSS containment
//! violated, 4 enumeration budget exceeded, 5 decoding failure,
//! 6 simulation budget exceeded or non-basis error.

mod commands;
mod common;
mod repro;

use clap::{Parser, Subcommand, ValueEnum};

use constaq_core::error::Error;

use commands::Report;
use common::{build_plan, CodeArgs, PlanArgs};

#[derive(Copy, Clone, Debug, ValueEnum)]
enum OutputKind {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "constaq",
    version,
    about = "constacyclic BCH codes in the spectral domain"
)]
struct Cli {
    /// Output rendering
    #[arg(long, global = true, default_value = "text")]
    output: OutputKind,
    /// Enumeration budget for distance searches
    #[arg(long, global = true, default_value_t = 1u128 << 25)]
    budget: u128,
    /// Seed for randomized states (CONSTAQ_SEED overrides)
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor x^n - λ into linear and subfield-irreducible factors
    Factor {
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Build a code and report [n,k,d] and containment
    Code {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Derive the CSS quantum code of a classical code
    Css {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// List q-cyclotomic cosets modulo n
    Cosets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// Minimum distance of a code (exit 4 when the budget is exhausted)
    Distance {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Spectral encode: R = FFFT(zero-padded message)
    Encode {
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long)]
        k: usize,
        /// Message symbols, comma separated
        #[arg(long)]
        message: String,
    },
    /// Spectral decode of a received word (exit 5 on decoding failure)
    Decode {
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: Option<usize>,
        /// Received spectral word, comma separated
        #[arg(long)]
        received: String,
    },
    /// Operation-count model; --table reproduces the reference comparison rows
    Opcount {
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        table: bool,
    },
    /// Qudit circuit simulations
    Qsim {
        #[command(subcommand)]
        sub: QsimCommand,
    },
    /// Reproduce the worked examples and diff against golden transcripts
    Repro {
        /// Rewrite the golden files from the current implementation
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Subcommand, Debug)]
enum QsimCommand {
    /// Verify the eight conjugation relations on a plan
    VerifyRelations {
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Encode a random message state and report the layout
    Encode {
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long, default_value_t = 2)]
        delta: usize,
        #[arg(long, default_value_t = 1)]
        b1: usize,
        #[arg(long, default_value_t = 1)]
        b2: usize,
        /// Print the amplitude dump of the encoded state
        #[arg(long)]
        dump: bool,
    },
    /// Extract the syndrome of an injected basis error
    Syndrome {
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long, default_value_t = 2)]
        delta: usize,
        #[arg(long, default_value_t = 1)]
        b1: usize,
        #[arg(long, default_value_t = 1)]
        b2: usize,
        /// Error spec: `none` or `X:site:value[,Z:site:value,...]`
        #[arg(long, default_value = "none")]
        error: String,
        /// Emit the intermediate circuit states |v1>..|v4>
        #[arg(long)]
        trace: bool,
    },
    /// encode -> inject error -> extract -> recover -> fidelity
    Roundtrip {
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long, default_value_t = 2)]
        delta: usize,
        #[arg(long, default_value_t = 1)]
        b1: usize,
        #[arg(long, default_value_t = 1)]
        b2: usize,
        #[arg(long, default_value = "none")]
        error: String,
    },
}

fn exit_code(err: &Error, in_qsim: bool) -> i32 {
    match err {
        Error::ContainmentViolated => 3,
        Error::BudgetExceeded { .. } => {
            if in_qsim {
                6
            } else {
                4
            }
        }
        Error::NotBasisError => 6,
        Error::DecodeFailure => 5,
        _ => 2,
    }
}

fn main() {
    let cli = Cli::parse();
    let seed = std::env::var("CONSTAQ_SEED")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(cli.seed);
    let in_qsim = matches!(cli.command, Command::Qsim { .. });
    match run(cli, seed) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code(&err, in_qsim));
        }
    }
}

fn emit(report: &Report, output: OutputKind) {
    match output {
        OutputKind::Text => print!("{}", report.text),
        OutputKind::Json => println!("{}", serde_json::to_string_pretty(&report.json).unwrap()),
    }
}

fn run(cli: Cli, seed: u64) -> Result<i32, Error> {
    let output = cli.output;
    let budget = cli.budget;
    match cli.command {
        Command::Factor { plan } => {
            let ctx = build_plan(&plan)?;
            let report = commands::cmd_factor(&ctx, ctx.s)?;
            emit(&report, output);
        }
        Command::Code { code } => {
            let report = commands::cmd_code(&code, budget)?;
            emit(&report, output);
        }
        Command::Css { code } => {
            let report = commands::cmd_css(&code, budget)?;
            emit(&report, output);
        }
        Command::Cosets { n, q } => {
            let report = commands::cmd_cosets(n, q)?;
            emit(&report, output);
        }
        Command::Distance { code } => {
            let report = commands::cmd_distance(&code, budget)?;
            emit(&report, output);
        }
        Command::Encode { plan, k, message } => {
            let ctx = build_plan(&plan)?;
            let report = commands::cmd_encode(&ctx, k, &message)?;
            emit(&report, output);
        }
        Command::Decode {
            plan,
            k,
            t,
            received,
        } => {
            let ctx = build_plan(&plan)?;
            let report = commands::cmd_decode(&ctx, k, t, &received)?;
            let failed = report.json["status"] == "failure";
            emit(&report, output);
            if failed {
                return Ok(5);
            }
        }
        Command::Opcount { n, t, table } => {
            let report = commands::cmd_opcount(n, t, table)?;
            emit(&report, output);
        }
        Command::Qsim { sub } => match sub {
            QsimCommand::VerifyRelations { plan } => {
                let ctx = build_plan(&plan)?;
                let report = commands::cmd_qsim_verify(&ctx)?;
                emit(&report, output);
            }
            QsimCommand::Encode {
                plan,
                delta,
                b1,
                b2,
                dump,
            } => {
                let ctx = build_plan(&plan)?;
                let qc = commands::qsim_layout(ctx, b1, b2, delta)?;
                let report = commands::cmd_qsim_encode(&qc, seed, dump)?;
                emit(&report, output);
            }
            QsimCommand::Syndrome {
                plan,
                delta,
                b1,
                b2,
                error,
                trace,
            } => {
                let ctx = build_plan(&plan)?;
                let qc = commands::qsim_layout(ctx, b1, b2, delta)?;
                let report = commands::cmd_qsim_syndrome(&qc, &error, seed, trace)?;
                emit(&report, output);
            }
            QsimCommand::Roundtrip {
                plan,
                delta,
                b1,
                b2,
                error,
            } => {
                let ctx = build_plan(&plan)?;
                let qc = commands::qsim_layout(ctx, b1, b2, delta)?;
                let report = commands::cmd_qsim_roundtrip(&qc, &error, seed)?;
                emit(&report, output);
            }
        },
        Command::Repro { bless } => {
            if bless {
                repro::bless()?;
                return Ok(0);
            }
            let (results, detail) = repro::run()?;
            let mut all_pass = true;
            for (name, pass) in &results {
                println!("repro {name}: {}", if *pass { "PASS" } else { "FAIL" });
                all_pass &= pass;
            }
            if !all_pass {
                print!("{detail}");
                return Ok(1);
            }
        }
    }
    Ok(0)
}
