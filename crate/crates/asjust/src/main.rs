use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use asjust::json;
use asjust::server::{self, AppState, Config};
use asjust_core::justification::{
    build_offline_justification, minimal_assumptions, tentative_assumptions, ENode,
    DEFAULT_ASSUMPTION_CAP,
};
use asjust_core::semantics::{brute_force_answer_sets, well_founded, DEFAULT_ATOM_CAP};
use asjust_core::solver::{solve, SignOrder, SolveOptions};
use asjust_core::{load_program, Program};
use clap::{Parser, Subcommand, ValueEnum};

const NO_MODELS: u8 = 10;
const FAILURE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "asjust",
    version,
    about = "Answer sets, well-founded models and their justifications"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProgramFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Assumptions {
    /// The first minimal assumption.
    Min,
    /// All tentative assumptions.
    Ta,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Tf,
    Ft,
}

#[derive(Subcommand)]
enum Command {
    /// Print the ground program.
    Ground {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: ProgramFormat,
    },
    /// Print the well-founded model.
    Wfs {
        file: PathBuf,
        /// Print the model and the K/U sequence as JSON.
        #[arg(long)]
        trace: bool,
    },
    /// Enumerate answer sets by exhaustive search.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ATOM_CAP)]
        cap: usize,
    },
    /// Print the off-line justification of an atom in an answer set.
    Justify {
        file: PathBuf,
        /// 1-based index of the answer set in solver order.
        #[arg(long, default_value_t = 1)]
        model: usize,
        #[arg(long)]
        atom: String,
        /// `+` or `-`; defaults to the atom's value in the model.
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
        #[arg(long, value_enum, default_value = "min")]
        assumptions: Assumptions,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Compute answer sets.
    Solve {
        file: PathBuf,
        #[arg(long)]
        max_models: Option<usize>,
        #[arg(long, value_enum, default_value = "tf")]
        sign_order: Order,
        /// Write the full solver trace as JSON.
        #[arg(long, value_name = "OUT.json")]
        trace: Option<PathBuf>,
        /// Drop models containing the atom `false`.
        #[arg(long)]
        kill_false: bool,
    },
    /// Serve the debugger over HTTP, opening a first session on FILE.
    Debug {
        file: PathBuf,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Idle timeout for sessions, in seconds.
        #[arg(long, default_value_t = 1800)]
        idle_timeout: u64,
    },
}

fn read_program(path: &Path) -> Result<(String, Program)> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")?
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    let p = load_program(&text).with_context(|| format!("loading {}", path.display()))?;
    Ok((text, p))
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn print_models<'a>(p: &Program, models: impl Iterator<Item = &'a asjust_core::AtomSet>) -> usize {
    let mut n = 0;
    for (k, m) in models.enumerate() {
        println!("Answer: {}", k + 1);
        println!("{}", json::names(p, m).join(" "));
        n += 1;
    }
    if n == 0 {
        println!("UNSATISFIABLE");
    } else {
        println!("SATISFIABLE");
    }
    println!("Models: {n}");
    n
}

fn exit_for(models: usize) -> ExitCode {
    if models == 0 {
        ExitCode::from(NO_MODELS)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Ground { file, format } => {
            let (_, p) = read_program(&file)?;
            match format {
                ProgramFormat::Text => print!("{}", p.render()),
                ProgramFormat::Json => print_json(&json::program(&p))?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Wfs { file, trace } => {
            let (_, p) = read_program(&file)?;
            let wf = well_founded(&p);
            if trace {
                print_json(&json::WfsJson {
                    plus: json::names(&p, &wf.model.plus),
                    minus: json::names(&p, &wf.model.minus),
                    trace: wf.trace.iter().map(|k| json::ku(&p, k)).collect(),
                })?;
            } else {
                println!("W+: {}", p.render_set(&wf.model.plus));
                println!("W-: {}", p.render_set(&wf.model.minus));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { file, cap } => {
            let (_, p) = read_program(&file)?;
            let models = brute_force_answer_sets(&p, cap)?;
            Ok(exit_for(print_models(&p, models.iter().map(|m| &m.plus))))
        }
        Command::Justify {
            file,
            model,
            atom,
            sign,
            assumptions,
            format,
        } => {
            let (_, p) = read_program(&file)?;
            let a = p
                .atom(&atom)
                .ok_or_else(|| anyhow!("unknown atom `{atom}`"))?;
            if model == 0 {
                bail!("model indices start at 1");
            }
            let opts = SolveOptions {
                max_models: Some(model),
                trace: false,
                ..SolveOptions::default()
            };
            let m = solve(&p, opts)
                .nth(model - 1)
                .ok_or_else(|| anyhow!("the program has fewer than {model} answer sets"))?
                .model;
            let positive = match sign.as_deref() {
                None => m.plus.contains(a),
                Some(s) => json::parse_sign(s)
                    .ok_or_else(|| anyhow!("sign must be + or -, got `{s}`"))?
                    .is_plus(),
            };
            let u = match assumptions {
                Assumptions::Ta => tentative_assumptions(&p, &m),
                Assumptions::Min => minimal_assumptions(&p, &m, DEFAULT_ASSUMPTION_CAP)?
                    .into_iter()
                    .next()
                    .map(|s| s.atoms)
                    .unwrap_or_default(),
            };
            let g = build_offline_justification(&p, &m, &u, ENode::annotated(a, positive))
                .with_context(|| {
                    format!(
                        "{atom}{} w.r.t. model {model}",
                        if positive { "+" } else { "-" }
                    )
                })?;
            match format {
                GraphFormat::Json => print_json(&json::egraph(&p, &g))?,
                GraphFormat::Dot => print!("{}", asjust::dot::egraph(&p, &g)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            file,
            max_models,
            sign_order,
            trace,
            kill_false,
        } => {
            let (_, p) = read_program(&file)?;
            let opts = SolveOptions {
                max_models,
                sign_order: match sign_order {
                    Order::Tf => SignOrder::TrueFirst,
                    Order::Ft => SignOrder::FalseFirst,
                },
                trace: trace.is_some(),
                kill_false,
            };
            let mut solver = solve(&p, opts);
            let models: Vec<_> = solver.by_ref().map(|m| m.model.plus.clone()).collect();
            if let Some(out) = trace {
                let body = serde_json::to_string_pretty(&json::trace(&p, solver.trace()))?;
                std::fs::write(&out, body).with_context(|| format!("writing {}", out.display()))?;
            }
            Ok(exit_for(print_models(&p, models.iter())))
        }
        Command::Debug {
            file,
            port,
            host,
            idle_timeout,
        } => {
            let (text, _) = read_program(&file)?;
            let state = AppState::new(Config {
                idle_timeout: Duration::from_secs(idle_timeout),
                ..Config::default()
            });
            let id = state.create(&text, SolveOptions::default())?;
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(async move {
                let listener = tokio::net::TcpListener::bind((host.as_str(), port))
                    .await
                    .with_context(|| format!("binding {host}:{port}"))?;
                println!("listening on http://{}", listener.local_addr()?);
                println!("session {id}");
                server::serve(listener, state).await?;
                Ok::<_, anyhow::Error>(())
            })?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(FAILURE)
        }
    }
}
