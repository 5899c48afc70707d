//! `equimap`: batch front end for equimap-core.
//!
//! Exit codes: 0 on success (whatever the verdict), 1 on invalid input or a
//! refused synthesis, 2 when verification fails.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use equimap_core::bounds::{infinite_witness, StreamDoc};
use equimap_core::reps::{isotropy_subgroups, line_partition, LinePartition, RepDoc};
use equimap_core::verify::{verify_map, DimensionOutcome, VerificationReport};
use equimap_core::{
    decide_map_existence, parity_refine, parse_representation, refined_bounds,
    synthesize_equivariant, BoundReport, DecisionReport, Problem, Representation, Status,
    Subgroup, SynthesizedMap, VerificationConfig,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "equimap", version, about = "Equivariant maps between representation spheres")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value = "table")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions, lines, isotropy and zero-set bounds of a problem.
    Analyze { problem: PathBuf },
    /// Decide whether an equivariant map S(V) -> S(W) exists.
    Decide { problem: PathBuf },
    /// Build a witness map and write it to OUT.
    Synthesize { problem: PathBuf, out: PathBuf },
    /// Check a map file numerically against its problem.
    Verify {
        problem: PathBuf,
        map: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Neighborhood radius for the local dimension estimate.
        #[arg(long)]
        radius: Option<f64>,
    },
    /// Bound for the sub-representation of a weight stream reaching a dimension.
    Witness {
        stream: PathBuf,
        #[arg(long)]
        target_dim: usize,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_problem(path: &Path) -> Result<Problem> {
    parse_representation(&read(path)?).with_context(|| format!("invalid problem file {}", path.display()))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

#[derive(Serialize)]
struct Dims {
    #[serde(rename = "V")]
    v: usize,
    #[serde(rename = "W")]
    w: usize,
}

#[derive(Serialize)]
struct Lines {
    #[serde(rename = "V")]
    v: LinePartition,
    #[serde(rename = "W")]
    w: LinePartition,
}

#[derive(Serialize)]
struct Analysis {
    group: String,
    real_dim: Dims,
    complex_dim: Option<Dims>,
    lines: Lines,
    isotropy: Vec<Subgroup>,
    bounds: BoundReport,
    notes: Vec<String>,
}

fn analyze(problem: &Problem) -> Result<Analysis> {
    let (v, w) = (&problem.v, &problem.w);
    let bounds = refined_bounds(v, w)?;
    let complex_dim = match (v.complex_dim(), w.complex_dim()) {
        (Ok(v), Ok(w)) => Some(Dims { v, w }),
        _ => None,
    };
    let mut notes = Vec::new();
    let (_, refined) = parity_refine(v, w, bounds.global_bound);
    if refined {
        notes.push(format!(
            "parity: dim_R V > dim_R W with even dimensions, so the bound {} is at least 1",
            bounds.global_bound
        ));
    }
    for e in &bounds.per_subgroup {
        if e.bound >= 0 {
            notes.push(format!(
                "H = {}: bound {} >= 0, so Z_f is nonempty for every equivariant f",
                e.subgroup, e.bound
            ));
        }
    }
    Ok(Analysis {
        group: problem.group.to_string(),
        real_dim: Dims {
            v: v.real_dim(),
            w: w.real_dim(),
        },
        complex_dim,
        lines: Lines {
            v: line_partition(v),
            w: line_partition(w),
        },
        isotropy: isotropy_subgroups(v),
        bounds,
        notes,
    })
}

fn line_rows(out: &mut String, name: &str, rep: &Representation, lp: &LinePartition) {
    let slots = rep.slots();
    for l in &lp.lines {
        let members: Vec<String> = l.slots.iter().map(|&s| slots[s].to_string()).collect();
        let _ = writeln!(
            out,
            "  {name}  line {}  dim {}  slots {:?}  weights {}",
            l.representative,
            l.real_dim,
            l.slots,
            members.join(" ")
        );
    }
}

fn analysis_table(problem: &Problem, a: &Analysis) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group        {}", a.group);
    let _ = writeln!(out, "V            {}", problem.v);
    let _ = writeln!(out, "W            {}", problem.w);
    let _ = writeln!(out, "dim_R        V {}  W {}", a.real_dim.v, a.real_dim.w);
    if let Some(c) = &a.complex_dim {
        let _ = writeln!(out, "dim_C        V {}  W {}", c.v, c.w);
    }
    let _ = writeln!(out, "lines");
    line_rows(&mut out, "V", &problem.v, &a.lines.v);
    line_rows(&mut out, "W", &problem.w, &a.lines.w);
    let _ = writeln!(out, "isotropy subgroups of V ({})", a.isotropy.len());
    for h in &a.isotropy {
        let _ = writeln!(out, "  {h}  rank {}", h.rank());
    }
    let parity = if a.bounds.parity_refined { "  (parity)" } else { "" };
    let _ = writeln!(out, "global bound {}{parity}", a.bounds.global_bound);
    let _ = writeln!(out, "best bound   {}", a.bounds.best_bound);
    let _ = writeln!(out, "{:<28} {:>6} {:>6} {:>6}", "H", "V^H", "W^H", "bound");
    for e in &a.bounds.per_subgroup {
        let mark = if e.derived_by_restriction { " *" } else { "" };
        let _ = writeln!(
            out,
            "{:<28} {:>6} {:>6} {:>6}{mark}",
            e.subgroup.to_string(),
            e.dim_v,
            e.dim_w,
            e.bound
        );
    }
    for n in &a.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

fn decision_table(d: &DecisionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict  {:?}", d.verdict);
    let _ = writeln!(out, "dim_R    V {}  W {}", d.dim_v, d.dim_w);
    if !d.ledger.is_empty() {
        let _ = writeln!(out, "{:<16} {:>6} {:>6}  ok", "line", "V_L", "W_L");
        for r in &d.ledger {
            let _ = writeln!(
                out,
                "{:<16} {:>6} {:>6}  {}",
                r.line.to_string(),
                r.dim_v,
                r.dim_w,
                if r.satisfied { "yes" } else { "no" }
            );
        }
    }
    out
}

fn verification_table(r: &VerificationReport) -> String {
    let mut out = String::new();
    let e = &r.equivariance;
    let _ = writeln!(out, "trials           {}  seed {}", r.config.trials, r.config.seed);
    let _ = writeln!(out, "max residual     {:.3e}", e.max_residual);
    if let Some(d) = e.max_norm_deviation {
        let _ = writeln!(out, "norm deviation   {d:.3e}");
    }
    let _ = writeln!(out, "equivariance     {}", if e.passed { "ok" } else { "violated" });
    let b = &r.bound;
    let _ = writeln!(out, "global bound     {}{}", b.global_bound, if b.vacuous { " (vacuous)" } else { "" });
    match b.analytic_dim {
        Some(d) => {
            let _ = writeln!(out, "analytic dim     {d}");
        }
        None => {
            let _ = writeln!(out, "analytic dim     unknown");
        }
    }
    match &b.numerical {
        DimensionOutcome::Estimate(est) => {
            let _ = writeln!(
                out,
                "numerical dim    {} ({} samples, {} neighborhoods)",
                est.estimated_dim, est.n_zero_samples, est.n_neighborhoods
            );
        }
        DimensionOutcome::Inconclusive { n_zero_samples, reason } => {
            let _ = writeln!(out, "numerical dim    inconclusive ({n_zero_samples} samples): {reason}");
        }
    }
    let _ = writeln!(out, "status           {}", status_name(r.status));
    out
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Inconclusive => "INCONCLUSIVE",
    }
}

#[derive(Serialize)]
struct WitnessDoc {
    group: String,
    sub_rep: RepDoc,
    real_dim: usize,
    bound: i64,
}

fn emit(format: Format, table: impl FnOnce() -> String, doc: impl FnOnce() -> String) {
    match format {
        Format::Table => print!("{}", table()),
        Format::Json => println!("{}", doc()),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let format = cli.format;
    match cli.command {
        Command::Analyze { problem } => {
            let p = load_problem(&problem)?;
            let a = analyze(&p)?;
            emit(format, || analysis_table(&p, &a), || json(&a));
        }
        Command::Decide { problem } => {
            let p = load_problem(&problem)?;
            let d = decide_map_existence(&p.v, &p.w)?;
            emit(format, || decision_table(&d), || json(&d));
        }
        Command::Synthesize { problem, out } => {
            let p = load_problem(&problem)?;
            let f = synthesize_equivariant(&p.v, &p.w).context("no witness map")?;
            fs::write(&out, f.to_json()).with_context(|| format!("cannot write {}", out.display()))?;
            emit(
                format,
                || format!("wrote {} ({} blocks)\n", out.display(), f.blocks().len()),
                || json(&f.to_doc()),
            );
        }
        Command::Verify {
            problem,
            map,
            trials,
            seed,
            radius,
        } => {
            let p = load_problem(&problem)?;
            let f = SynthesizedMap::from_json(&read(&map)?)
                .with_context(|| format!("invalid map file {}", map.display()))?;
            let mut cfg = VerificationConfig {
                trials,
                seed,
                ..Default::default()
            };
            if let Some(r) = radius {
                cfg.neighborhood_radius = r;
            }
            let report = verify_map(&p.v, &p.w, &f, &cfg)?;
            emit(format, || verification_table(&report), || json(&report));
            if report.status == Status::Fail {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Witness { stream, target_dim } => {
            let (w, s) = StreamDoc::parse(&read(&stream)?)
                .with_context(|| format!("invalid stream file {}", stream.display()))?;
            let wit = infinite_witness(s.iter(), &w, target_dim)?;
            let doc = WitnessDoc {
                group: w.group().to_string(),
                sub_rep: wit.sub_rep.to_doc(),
                real_dim: wit.sub_rep.real_dim(),
                bound: wit.bound,
            };
            emit(
                format,
                || {
                    format!(
                        "V(d)   {}\ndim_R  {}\nbound  {}\n",
                        wit.sub_rep, doc.real_dim, wit.bound
                    )
                },
                || json(&doc),
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
