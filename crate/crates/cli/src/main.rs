use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gradal::{parse_session, run, Settings};

#[derive(Parser)]
#[command(name = "gradal", version, about = "Run gradal session scripts")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute a session and print one line per record.
    Run {
        session: PathBuf,
        /// Norm floor for divisions, e.g. 2^(-30).
        #[arg(long)]
        eps: Option<String>,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Default degree bound for `basis`.
        #[arg(long, default_value_t = 4)]
        deg_bound: usize,
    },
    /// Print a session in canonical form.
    Fmt { session: PathBuf },
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Fmt { session } => {
            let src = match read(&session) {
                Ok(s) => s,
                Err(c) => return c,
            };
            match parse_session(&src) {
                Ok(s) => {
                    print!("{s}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{}:{e}", session.display());
                    ExitCode::from(2)
                }
            }
        }
        Cmd::Run { session, eps, json, deg_bound } => {
            let src = match read(&session) {
                Ok(s) => s,
                Err(c) => return c,
            };
            if let Some(e) = &eps {
                if let Err(err) = gradal::parse::parse_radius(e) {
                    eprintln!("--eps: {err}");
                    return ExitCode::from(2);
                }
            }
            let parsed = match parse_session(&src) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{}:{e}", session.display());
                    return ExitCode::from(2);
                }
            };
            let report = run(&parsed, &src, &Settings { eps, deg_bound });
            for r in &report.records {
                let status = serde_json::to_value(r.status).unwrap();
                println!("{:<12} {}: {}", status.as_str().unwrap_or("?"), r.command, r.summary);
            }
            if let Some(path) = json {
                if let Err(e) = std::fs::write(&path, report.to_json() + "\n") {
                    eprintln!("{}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
    }
}
