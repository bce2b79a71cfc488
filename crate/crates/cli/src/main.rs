mod commands;
mod settings;

use clap::{Parser, Subcommand};
use settings::Settings;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "osc-identity", version, about = "Numerical checks of the ordered oscillatory integral identities")]
struct Cli {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Skip the slow four-fold oracle.
    #[arg(long, global = true)]
    fast: bool,
    /// Divide every tolerance by FACTOR (values below 1 loosen).
    #[arg(long, global = true, value_name = "FACTOR")]
    tol_scale: Option<f64>,
    /// Worker threads (0: one per core).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the identity suite and print a JSON report.
    Check,
    /// Evaluate one function: U, V, P, Q, T0, Tinf (argument t), fresnel
    /// (argument x) or arctan (argument "re,im").
    Eval {
        function: String,
        #[arg(allow_hyphen_values = true)]
        argument: String,
    },
    /// CSV of I_n from the hierarchy against the closed form.
    InTable { n: usize },
    /// CSV of x, T, A, B along the solution for one t.
    Profile {
        #[arg(allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
}

/// Exit 1: something was computed and did not hold. Exit 2: bad input.
pub enum Failure {
    Check(String),
    Usage(String),
}

fn settings(cli: &Cli) -> Result<Settings, Failure> {
    let mut s = Settings::default();
    if let Some(path) = &cli.config {
        s.load(path).map_err(Failure::Usage)?;
    }
    if cli.fast {
        s.fast = true;
    }
    if let Some(f) = cli.tol_scale {
        s.tol_scale = f;
    }
    if let Some(n) = cli.threads {
        s.threads = n;
    }
    Ok(s)
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let s = settings(cli)?;
    let cfg = s.suite().map_err(Failure::Usage)?;
    if s.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(s.threads)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Check => commands::check(&s, &cfg),
        Command::Eval { function, argument } => commands::eval(function, argument, &cfg),
        Command::InTable { n } => commands::in_table(*n, &cfg),
        Command::Profile { t, from, to, step } => commands::profile(*t, *from, *to, *step, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Check(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
