use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use bgg_core::pipeline::{
    complex_dot, run_bgg, run_bggl, run_characters, run_quantum, run_weyl, with_jobs, Depth, EngineKind,
    GcmInput, MutationConfig, QModeConfig, RunConfig, Status,
};
use bgg_core::weyl::weyl_dot;
use bgg_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

/// Build and verify BGG and parabolic BGG complexes in exact arithmetic.
///
/// Exit codes: 0 success, 2 invalid configuration, 3 invariant violation,
/// 4 d^2 violation, 5 homology or character finding.
#[derive(Parser, Debug)]
#[command(name = "bgg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the Weyl group with arrows, squares and signs.
    Weyl(RunArgs),
    /// Verify d^2 = 0 and exactness of the BGG complex.
    Bgg(RunArgs),
    /// Verify the parabolic quotient complex, its kernel and the filtration.
    Bggl(RunArgs),
    /// BGG run over the quantum engine with flatness and the Hom dichotomy.
    Quantum(RunArgs),
    /// Truncated characters and the denominator identity.
    Characters(RunArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Classical,
    Quantum,
}

#[derive(Args, Debug, Default)]
struct RunArgs {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Cartan matrix: a JSON file, or inline JSON such as '[[2,-1],[-1,2]]'.
    #[arg(long)]
    gcm: Option<String>,
    /// Dominant labels, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    mu: Option<Vec<i64>>,
    /// Parabolic subset, 0-based indices, comma separated.
    #[arg(long = "s", value_delimiter = ',')]
    subset: Option<Vec<usize>>,
    /// Offset height cutoff, or "full" for finite type.
    #[arg(long)]
    depth: Option<String>,
    #[arg(long, value_enum)]
    engine: Option<EngineArg>,
    /// Numeric q for the quantum engine; symbolic when absent.
    #[arg(long)]
    q: Option<String>,
    /// Worker threads for per-slice verification.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write a DOT graph here.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Enumeration length for `weyl`.
    #[arg(long)]
    max_length: Option<usize>,
    /// Debug corruption: `flip:K` or `perturb:K:C` on the K-th arrow.
    #[arg(long)]
    mutate: Vec<String>,
    /// Include per-slice detail in the report.
    #[arg(long)]
    slices: bool,
}

fn read_gcm(arg: &str) -> anyhow::Result<GcmInput> {
    let text = if Path::new(arg).exists() {
        fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    } else if arg.trim_start().starts_with(['[', '{']) {
        arg.to_string()
    } else {
        return Err(Error::Config(format!("GCM file {arg} not found")).into());
    };
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("GCM {arg}: {e}")).into())
}

fn parse_mutation(s: &str) -> anyhow::Result<MutationConfig> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |p: &str| p.parse::<usize>().map_err(|_| Error::Config(format!("bad mutation {s:?}")));
    Ok(match parts.as_slice() {
        ["flip", k] => MutationConfig::Flip { arrow: num(k)? },
        ["perturb", k] => MutationConfig::Perturb { arrow: num(k)?, coordinate: 0 },
        ["perturb", k, c] => MutationConfig::Perturb { arrow: num(k)?, coordinate: num(c)? },
        _ => return Err(Error::Config(format!("bad mutation {s:?}; use flip:K or perturb:K:C")).into()),
    })
}

fn build_config(args: &RunArgs) -> anyhow::Result<RunConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        }
        None => {
            let gcm = args.gcm.as_deref().ok_or_else(|| Error::Config("--gcm or --config is required".into()))?;
            RunConfig { gcm: read_gcm(gcm)?, ..RunConfig::new(vec![vec![2]]) }
        }
    };
    if let (Some(_), Some(g)) = (&args.config, &args.gcm) {
        cfg.gcm = read_gcm(g)?;
    }
    if let Some(mu) = &args.mu {
        cfg.mu = Some(mu.clone());
    }
    if let Some(s) = &args.subset {
        cfg.subset = s.clone();
    }
    if let Some(d) = &args.depth {
        cfg.depth = match d.parse::<i64>() {
            Ok(n) => Depth::Height(n),
            Err(_) => Depth::Named(d.clone()),
        };
    }
    if let Some(e) = args.engine {
        cfg.engine = match e {
            EngineArg::Classical => EngineKind::Classical,
            EngineArg::Quantum => EngineKind::Quantum,
        };
    }
    if let Some(q) = &args.q {
        cfg.q_mode = QModeConfig::Numeric(q.clone());
    }
    if args.max_length.is_some() {
        cfg.max_length = args.max_length;
    }
    for m in &args.mutate {
        cfg.mutations.push(parse_mutation(m)?);
    }
    if args.slices && !cfg.outputs.iter().any(|o| o == "slices") {
        cfg.outputs.push("slices".to_string());
    }
    Ok(cfg)
}

fn emit(args: &RunArgs, report: Value) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(&report)? + "\n";
    match &args.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn write_dot(args: &RunArgs, dot: impl FnOnce() -> anyhow::Result<String>) -> anyhow::Result<()> {
    if let Some(p) = &args.dot {
        fs::write(p, dot()?).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn run(command: Command) -> anyhow::Result<Status> {
    let (kind, args) = match command {
        Command::Weyl(a) => ("weyl", a),
        Command::Bgg(a) => ("bgg", a),
        Command::Bggl(a) => ("bggl", a),
        Command::Quantum(a) => ("quantum", a),
        Command::Characters(a) => ("characters", a),
    };
    let cfg = build_config(&args)?;
    if kind == "weyl" {
        let gcm = cfg.gcm.to_matrix()?;
        let max_length = match cfg.max_length {
            Some(m) => m,
            None => {
                let g = bgg_core::WeylGroup::enumerate_up_to(&gcm, 64)?;
                if !g.is_complete() {
                    return Err(Error::Config("--max-length is required for infinite Weyl groups".into()).into());
                }
                g.max_length()
            }
        };
        let (report, group, signs) = run_weyl(&gcm, max_length)?;
        let subset = (!cfg.subset.is_empty()).then_some(cfg.subset.as_slice());
        write_dot(&args, || Ok(weyl_dot(&group, &signs, subset)))?;
        eprintln!(
            "weyl: {} elements, {} arrows, {} squares",
            group.len(),
            report.weyl.arrows.len(),
            report.weyl.squares.len()
        );
        let status = report.status;
        emit(&args, serde_json::to_value(report)?)?;
        return Ok(status);
    }
    let v = cfg.validate()?;
    let (status, value) = with_jobs(args.jobs, || -> anyhow::Result<(Status, Value)> {
        Ok(match kind {
            "bgg" => {
                let r = run_bgg(&v)?;
                eprintln!(
                    "bgg: {} trusted slices, d^2 {}, degree-0 total {}, status {:?}",
                    r.trusted_slices,
                    if r.d_squared.is_ok() { "ok" } else { "VIOLATED" },
                    r.degree0.total,
                    r.status
                );
                (r.status, serde_json::to_value(r)?)
            }
            "bggl" => {
                let r = run_bggl(&v)?;
                eprintln!(
                    "bggl: {} trusted slices, representatives {:?}, status {:?}",
                    r.trusted_slices, r.quotient.representatives, r.status
                );
                (r.status, serde_json::to_value(r)?)
            }
            "quantum" => {
                let r = run_quantum(&v)?;
                eprintln!("quantum over {}: flat {}, dichotomy {}, status {:?}", r.field, r.flat_dimensions, r.dichotomy_match, r.status);
                (r.status, serde_json::to_value(r)?)
            }
            "characters" => {
                let r = run_characters(&v)?;
                eprintln!("characters: status {:?}", r.status);
                (r.status, serde_json::to_value(r)?)
            }
            _ => bail!("unknown command {kind}"),
        })
    })??;
    if kind != "characters" {
        write_dot(&args, || Ok(complex_dot(&v)?))?;
    } else if args.dot.is_some() {
        return Err(anyhow!(Error::Config("--dot is not available for characters".into())));
    }
    emit(&args, value)?;
    Ok(status)
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::InvalidCartan(_)
            | Error::NotSymmetrizable(_)
            | Error::Config(_)
            | Error::NotDominant(_)
            | Error::CutoffExceeded { .. }
            | Error::LevelTooLarge { .. },
        ) => 2,
        Some(_) => 3,
        None if err.downcast_ref::<std::io::Error>().is_some() => 2,
        None => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
