//! `curvlab` command line.
//!
//! Exit status: 0 when every checked property holds, 1 when one fails (the
//! report carries witnesses), 2 on invalid input.

mod render;
mod source;

use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use curvlab::grassmann::Causal;
use curvlab::verify::{check, check_metric, reproduce, CheckSpec, ReproduceOptions, REPRODUCTIONS};

#[derive(Parser)]
#[command(
    name = "curvlab",
    version,
    about = "Exact curvature spectral checks on model spaces and metrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a Jordan IP or Stanilov property of an algebraic model.
    CheckModel {
        /// Model file (JSON) or builtin `v3s:S`.
        model: String,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Run a check at random points of a polynomial metric.
    CheckMetric {
        /// Metric file (JSON) or builtin `g3s:S`, `gf:<poly>`, `gF:<f1>,...,<fs>`.
        metric: String,
        /// Number of random rational points.
        #[arg(long, default_value_t = 3)]
        points: usize,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Re-run one of the scripted reproductions.
    Reproduce {
        #[arg(value_parser = reproduction_name)]
        name: String,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Plane dimension for `--kind stanilov`.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum)]
    causal: CausalArg,
    /// Random planes (per point, for metrics).
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Ip,
    Stanilov,
}

#[derive(Clone, Copy, ValueEnum)]
enum CausalArg {
    Spacelike,
    Timelike,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn reproduction_name(s: &str) -> std::result::Result<String, String> {
    if REPRODUCTIONS.iter().any(|(n, _)| *n == s) {
        Ok(s.to_string())
    } else {
        let names: Vec<&str> = REPRODUCTIONS.iter().map(|r| r.0).collect();
        Err(format!("expected one of: {}", names.join(", ")))
    }
}

impl CheckArgs {
    fn spec(&self) -> Result<CheckSpec> {
        let want = match self.causal {
            CausalArg::Spacelike => Causal::Spacelike,
            CausalArg::Timelike => Causal::Timelike,
        };
        Ok(match (self.kind, self.k) {
            (Kind::Ip, None | Some(2)) => CheckSpec::ip(want),
            (Kind::Ip, Some(k)) => bail!("--kind ip works on 2-planes; got --k {k}"),
            (Kind::Stanilov, Some(k)) => CheckSpec::stanilov(k, want),
            (Kind::Stanilov, None) => bail!("--kind stanilov needs --k"),
        })
    }
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports serialize")
        ),
        Format::Text => print!("{}", text()),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::CheckModel { model, check: args } => {
            let m = source::load_model(&model)?;
            let v = check(&m, args.spec()?, args.samples, args.seed)?;
            emit(args.format, &v, || render::verdict(&v));
            Ok(v.holds)
        }
        Command::CheckMetric {
            metric,
            points,
            check: args,
        } => {
            let g = source::load_metric(&metric)?;
            let r = check_metric(&g, args.spec()?, points, args.samples, args.seed)?;
            emit(args.format, &r, || render::metric_report(&r));
            Ok(r.holds)
        }
        Command::Reproduce {
            name,
            s,
            samples,
            points,
            seed,
            format,
        } => {
            let opts = ReproduceOptions {
                s,
                samples,
                points,
                seed,
            };
            let r = reproduce(&name, &opts)?;
            emit(format, &r, || render::reproduction(&r));
            Ok(r.holds)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
