//! Command-line front end: solves, tracking, continuation, model-equation
//! runs, asymptotic tables and cross-method comparisons, emitting CSV and
//! binary grids for external plotting.
//!
//! Exit codes: 0 success, 1 configuration error, 2 numerical failure,
//! 3 under-resolved result.

mod commands;
mod manifest;

use clap::{Args, Parser, Subcommand};
use nlheat::config::Config;
use nlheat::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nlheat", version, about = "Blow-up laboratory for u_t = u_xx + u^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Key-value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a single key, e.g. --set solver.N=128 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Output directory (under $NLHEAT_OUT when that is set and the path
    /// is relative).
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the spectral system from the configured initial data.
    Solve {
        #[command(flatten)]
        common: Common,
        /// Initial-data family: cosine | flat | two_peak.
        #[arg(long)]
        ic: Option<String>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, value_name = "N")]
        n: Option<usize>,
        #[arg(long)]
        t_end: Option<f64>,
    },
    /// Coefficient-decay singularity tracking over a finished run.
    Track {
        #[command(flatten)]
        common: Common,
        /// Directory written by `solve`.
        #[arg(long)]
        run: PathBuf,
    },
    /// Rational / quadratic continuation of one snapshot into the strip.
    Continue {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        run: PathBuf,
        /// Snapshot time (nearest snapshot is used; default: last).
        #[arg(long)]
        time: Option<f64>,
        /// Also build the square-root-carrying approximant.
        #[arg(long)]
        quadratic: bool,
    },
    /// Pole-field run of the model equation phi'' - phi' = phi^2.
    Ode {
        #[command(flatten)]
        common: Common,
        /// Boundary data: log | exp.
        #[arg(long)]
        ic: Option<String>,
        #[arg(long)]
        anchor: Option<f64>,
        /// Exponential-side amplitude.
        #[arg(long)]
        a: Option<f64>,
        /// Path preset: real-left | real-right.
        #[arg(long)]
        path: Option<String>,
    },
    /// Closed-form asymptotic estimates over a parameter range.
    Asym {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        regime: Option<String>,
    },
    /// Align a tracker CSV with asymptotic estimates.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        track_csv: Option<PathBuf>,
        /// Comma-separated regime tags.
        #[arg(long)]
        regimes: Option<String>,
    },
    /// Run one solve per value of a swept key, in parallel.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        key: String,
        /// Comma-separated values for the swept key.
        #[arg(long)]
        values: String,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn build_config(common: &Common) -> Result<Config, Error> {
    let mut cfg = match &common.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    };
    for s in &common.sets {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--set `{s}`: expected KEY=VALUE")))?;
        cfg.set(k.trim(), v.trim())?;
    }
    Ok(cfg)
}

fn out_dir(common: &Common) -> PathBuf {
    if common.out.is_absolute() {
        return common.out.clone();
    }
    match std::env::var_os("NLHEAT_OUT") {
        Some(root) => PathBuf::from(root).join(&common.out),
        None => common.out.clone(),
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Config(_) | Error::InvalidParameter(_) | Error::InvalidInitialData(_) => 1,
        Error::SeriesTruncation(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli);
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Solve { common, ic, alpha, beta, eps, n, t_end } => {
            let mut cfg = build_config(&common)?;
            if let Some(v) = ic {
                cfg.set("ic.variant", &v)?;
            }
            if let Some(v) = alpha {
                cfg.set("ic.alpha", &format!("{v}"))?;
            }
            if let Some(v) = beta {
                cfg.set("ic.beta", &format!("{v}"))?;
            }
            if let Some(v) = eps {
                cfg.set("ic.eps", &format!("{v}"))?;
            }
            if let Some(v) = n {
                cfg.set("solver.N", &format!("{v}"))?;
            }
            if let Some(v) = t_end {
                cfg.set("solver.t_end", &format!("{v}"))?;
            }
            commands::solve(&cfg, &out_dir(&common))
        }
        Command::Track { common, run } => {
            let cfg = build_config(&common)?;
            commands::track(&cfg, &run, &out_dir(&common))
        }
        Command::Continue { common, run, time, quadratic } => {
            let mut cfg = build_config(&common)?;
            if let Some(t) = time {
                cfg.set("pade.time", &format!("{t}"))?;
            }
            if quadratic {
                cfg.set("pade.quadratic", "true")?;
            }
            commands::continuation(&cfg, &run, &out_dir(&common))
        }
        Command::Ode { common, ic, anchor, a, path } => {
            let mut cfg = build_config(&common)?;
            if let Some(v) = ic {
                let full = match v.as_str() {
                    "log" => "logarithmic",
                    "exp" => "exponential",
                    other => other,
                };
                cfg.set("ode.variant", full)?;
            }
            if let Some(v) = anchor {
                cfg.set("ode.anchor", &format!("{v}"))?;
            }
            if let Some(v) = a {
                cfg.set("ode.a", &format!("{v}"))?;
            }
            if let Some(v) = path {
                let dir = match v.as_str() {
                    "real-left" => "left",
                    "real-right" => "right",
                    other => other,
                };
                cfg.set("ode.direction", dir)?;
            }
            commands::ode(&cfg, &out_dir(&common))
        }
        Command::Asym { common, regime } => {
            let mut cfg = build_config(&common)?;
            if let Some(r) = regime {
                cfg.set("asym.regime", &r)?;
            }
            commands::asym(&cfg, &out_dir(&common))
        }
        Command::Compare { common, track_csv, regimes } => {
            let mut cfg = build_config(&common)?;
            if let Some(p) = track_csv {
                cfg.set("compare.track_csv", &p.display().to_string())?;
            }
            if let Some(r) = regimes {
                cfg.set("compare.regimes", &r)?;
            }
            commands::compare(&cfg, &out_dir(&common))
        }
        Command::Sweep { common, key, values, jobs } => {
            let cfg = build_config(&common)?;
            commands::sweep(&cfg, &key, &values, jobs, &out_dir(&common))
        }
    }
}
