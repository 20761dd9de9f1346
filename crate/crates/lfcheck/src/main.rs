use clap::{Parser, Subcommand, ValueEnum};
use lf_core::field::LocalField;
use lf_core::harness::{golden_name, mu_chain_stages, run_check, CheckParams, CheckSpec, CHECKS};
use lf_core::schwartz::Ctx;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lfcheck",
    about = "Exact verification of the GL(2) operator identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one registered check, or `all`.
    Run {
        #[arg(long)]
        check: String,
        #[arg(long, default_value_t = 3)]
        q: u32,
        #[arg(long, default_value_t = 2)]
        levels: i32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        budget: i32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
    /// Print worked computations in canonical serialization.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// Each checkpoint of the chain `(w,w,w) → μ′ → ℱ`.
    MuChain {
        #[arg(long, default_value_t = 2)]
        eps_level: i32,
        #[arg(long, default_value_t = 3)]
        q: u32,
        /// Write each checkpoint into this directory as a golden file.
        #[arg(long)]
        write_golden: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::Run {
            check,
            q,
            levels,
            trials,
            seed,
            budget,
            format,
            golden_dir,
        } => {
            let params = CheckParams {
                q,
                levels,
                trials,
                seed,
                budget,
            };
            let names: Vec<&str> = if check == "all" {
                CHECKS.to_vec()
            } else {
                vec![check.as_str()]
            };
            let mut all_pass = true;
            let mut json = Vec::new();
            for name in names {
                let spec = match CheckSpec::new(name, params.clone()) {
                    Ok(s) => s,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                };
                let spec = match &golden_dir {
                    Some(d) => spec.with_golden_dir(d.clone()),
                    None => spec,
                };
                let report = match run_check(&spec) {
                    Ok(r) => r,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                };
                all_pass &= report.passed();
                match format {
                    Format::Text => print!("{}", report.to_text()),
                    Format::Json => json.push(report),
                }
            }
            if let Format::Json = format {
                let out = if json.len() == 1 {
                    serde_json::to_string_pretty(&json[0])
                } else {
                    serde_json::to_string_pretty(&json)
                };
                println!("{}", out.expect("report serializes"));
            }
            ExitCode::from(if all_pass { 0 } else { 1 })
        }
        Command::Demo {
            demo:
                Demo::MuChain {
                    eps_level,
                    q,
                    write_golden,
                },
        } => {
            let ctx = match LocalField::with_q(q) {
                Ok(k) => Ctx::new(k, 6),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if eps_level < 1 {
                eprintln!("error: eps level must be positive");
                return ExitCode::from(2);
            }
            let stages = match mu_chain_stages(&ctx, eps_level) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let mut ok = true;
            for (name, got, want) in stages {
                let matched = got == want;
                ok &= matched;
                println!(
                    "== checkpoint {name} ({}) ==",
                    if matched { "matches" } else { "DIFFERS" }
                );
                print!("{}", got.to_text());
                if let Some(dir) = &write_golden {
                    let path = dir.join(golden_name(eps_level, name));
                    if let Err(e) = std::fs::create_dir_all(dir)
                        .and_then(|_| std::fs::write(&path, want.to_text()))
                    {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
    }
}
