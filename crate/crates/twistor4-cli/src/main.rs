//! Decide integrability of the four natural almost complex structures on the
//! product twistor space of an oriented Riemannian 4-manifold with a metric
//! connection with skew torsion.
//!
//! Exit codes: 0 on success, 1 when an audit finds a disagreement between
//! the identity, operator-block, and sampled routes, 2 on bad input.

use clap::{Parser, Subcommand, ValueEnum};
use twistor4::reporting::{run_analyze, run_audit, run_scan, CliConfig, Format, TargetSpec};

#[derive(Parser)]
#[command(name = "twistor4")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Residual tolerance; defaults to 1e-9 for exact/Lie backends and
    /// 1e-4 for finite-difference charts.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Seed for the deterministic fiber sampler.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Sample points per twistor sphere.
    #[arg(long, global = true, default_value_t = 26)]
    samples: usize,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// `flip` reverses the orientation and negates τ, swapping Λ²₊ ↔ Λ²₋.
    #[arg(long, global = true, value_enum, default_value_t = OrientationArg::Standard)]
    orientation: OrientationArg,

    /// Perturb one curvature-operator entry before auditing; the audit must
    /// then report a disagreement (a self-test of the audit itself).
    #[arg(long, global = true)]
    inject_fault: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OrientationArg {
    Standard,
    Flip,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one geometry: curvature, Weyl data, all sixteen verdicts.
    Analyze {
        /// Document path, catalog name (flat | hopf | g_lambda), or `chart`.
        target: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        /// τ components in the algebra basis, e.g. "-3,0,0,0".
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
        /// Chart metric: euclidean | round_sphere(r) | conformal(base, expr).
        #[arg(long)]
        metric: Option<String>,
        /// Chart point, e.g. "0.1,0,0,0".
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Sweep k, lambda, or mu1 across the solvable family.
    Scan {
        #[arg(long)]
        param: String,
        /// Comma-separated rational values; empty gives an empty table.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        values: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Cross-check identity, block, and sampled routes on exact targets.
    Audit {
        /// Targets as for analyze; none means the built-in catalog suite.
        targets: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
    },
}

fn run(cmd: Command, cfg: &CliConfig) -> i32 {
    let outcome = match cmd {
        Command::Analyze {
            target,
            lambda,
            k,
            tau,
            metric,
            point,
        } => {
            let spec = TargetSpec {
                target,
                lambda,
                k,
                tau,
                metric,
                point,
            };
            run_analyze(&spec, cfg).map(|out| (out, 0))
        }
        Command::Scan {
            param,
            values,
            lambda,
            k,
        } => run_scan(&param, &values, lambda.as_deref(), k.as_deref(), cfg)
            .map(|out| (out, 0)),
        Command::Audit {
            targets,
            lambda,
            k,
            tau,
        } => {
            let specs: Vec<TargetSpec> = targets
                .into_iter()
                .map(|target| TargetSpec {
                    target,
                    lambda: lambda.clone(),
                    k: k.clone(),
                    tau: tau.clone(),
                    ..TargetSpec::default()
                })
                .collect();
            run_audit(&specs, cfg).map(|(out, ok)| (out, if ok { 0 } else { 1 }))
        }
    };
    match outcome {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let cfg = CliConfig {
        tol: cli.tol,
        seed: cli.seed,
        samples: cli.samples,
        orientation_flip: cli.orientation == OrientationArg::Flip,
        inject_fault: cli.inject_fault,
        format: match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
    };
    std::process::exit(run(cli.command, &cfg));
}
