use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use levilab_cli::config::{parse_csv_f64, parse_tol, CartanRef, RunConfig};
use levilab_cli::{resolve_seed, run, CaseRef, CliError, SEED_ENV};

/// Levi forms, Levi cones and q-counts of closed double-coset orbits.
#[derive(Debug, Parser)]
#[command(name = "levilab", version)]
struct Args {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Catalog case, e.g. `sl2:s11-theta:k=1`.
    #[arg(long)]
    case: Option<String>,
    /// `fundamental` or an index into the case's Cartan menu.
    #[arg(long)]
    cartan: Option<String>,
    /// Base point coordinates in `c`, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    /// Subset of weights,orbit,levi,cone,domains,verify (or `all`).
    #[arg(long)]
    ops: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance override KEY=VAL; repeatable.
    #[arg(long = "tol")]
    tol: Vec<String>,
    /// Add the verify stage.
    #[arg(long)]
    verify: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// No summary on stderr.
    #[arg(long)]
    quiet: bool,
}

fn config_from(args: &Args) -> Result<RunConfig, CliError> {
    let mut cfg = match &args.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Io { path: p.display().to_string(), source: e })?;
            RunConfig::from_json(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(c) = &args.case {
        cfg.case = Some(CaseRef::Named(c.clone()));
    }
    if let Some(c) = &args.cartan {
        cfg.cartan = CartanRef::parse_flag(c)?;
    }
    if let Some(e) = &args.eta {
        cfg.eta = Some(parse_csv_f64(e)?);
    }
    if let Some(o) = &args.ops {
        cfg.ops = Some(o.split(',').map(|s| s.trim().to_string()).collect());
    }
    if args.verify {
        let mut ops = cfg.ops()?.iter().map(|o| o.as_str().to_string()).collect::<Vec<_>>();
        ops.push("verify".into());
        cfg.ops = Some(ops);
    }
    for t in &args.tol {
        let (k, v) = parse_tol(t)?;
        cfg.tol_overrides.insert(k, v);
    }
    let env = std::env::var(SEED_ENV).ok();
    cfg.seed = resolve_seed(args.seed, cfg.seed, env.as_deref())?;
    if let Some(o) = &args.out {
        cfg.output = Some(o.display().to_string());
    }
    Ok(cfg)
}

fn summary(r: &levilab_cli::Report) -> String {
    let mut parts = vec![format!("case {}", r.case)];
    if let Some(o) = &r.orbit {
        parts.push(format!("codim {}", o.codim));
    }
    if let Some(s) = r.levi.as_ref().and_then(|l| l.scalar.as_ref()) {
        parts.push(format!("inertia {:?}", s.inertia));
    }
    if let Some(c) = &r.cone {
        parts.push(format!("cone {}", if c.full { "full" } else if c.pointed { "pointed" } else { "proper" }));
    }
    if let Some(q) = r.domains.as_ref().and_then(|d| d.q_complete.as_ref()) {
        parts.push(format!("q_complete {}", q.statement));
    }
    parts.join(", ")
}

fn main_inner(args: &Args) -> Result<(), CliError> {
    let cfg = config_from(args)?;
    let report = run(&cfg)?;
    let json = report.to_json();
    match &cfg.output {
        Some(p) => std::fs::write(p, &json).map_err(|e| CliError::Io { path: p.clone(), source: e })?,
        None => print!("{json}"),
    }
    if !args.quiet {
        eprintln!("{}", summary(&report));
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match main_inner(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("levilab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
