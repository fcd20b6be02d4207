//! `aeq`: command-line front end.
//!
//! Standard output always carries one JSON document; human-readable summaries
//! go to standard error. Exit codes: 0 pass, 1 verdict failure, 2 usage or
//! input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aeq_core::audit::{audit, AuditOptions};
use aeq_core::bounds::{bounds_for_dimension, BoundsTable};
use aeq_core::clique::{CliqueMode, DEFAULT_CLIQUE_LIMIT};
use aeq_core::constructions::{double_simplex, generalized_spindle, moser_spindle, unit_simplex_points};
use aeq_core::error::AeqError;
use aeq_core::geometry::{build_unit_distance_graph, is_almost_equidistant, PointSet, TolerancePolicy, Verdict};
use aeq_core::io::{self, to_stable_json};
use aeq_core::realize::{realize_graph, RealizeConfig};
use aeq_core::render::render_svg;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "aeq", version, about = "Almost-equidistant point sets")]
struct Cli {
    /// JSON file overriding the tolerance policy.
    #[arg(long, global = true, env = "AEQ_TOL_FILE")]
    tol_file: Option<PathBuf>,
    /// Worker threads for parallel scans (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Simplex,
    DoubleSimplex,
    Spindle,
    Moser,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a point set is almost-equidistant.
    Verify {
        file: PathBuf,
        /// Unit-distance slack.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Write a constructed point set.
    Construct {
        kind: Kind,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Audit the cardinality-bound argument on a point set.
    Audit {
        file: PathBuf,
        #[arg(long)]
        heuristic_clique: bool,
        #[arg(long, default_value_t = DEFAULT_CLIQUE_LIMIT)]
        clique_limit: usize,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Realize a graph as a unit-distance graph.
    Realize {
        graph: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Known bounds on the largest almost-equidistant set.
    Bounds {
        #[arg(long)]
        dim: usize,
        /// Bounds table overriding the shipped one.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Draw a planar point set and its unit edges as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

struct Outcome {
    code: u8,
    body: Value,
}

impl Outcome {
    fn ok(body: Value) -> Self {
        Outcome { code: 0, body }
    }

    fn verdict(pass: bool, body: Value) -> Self {
        Outcome {
            code: if pass { 0 } else { 1 },
            body,
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            body: json!({ "status": "error", "error": msg.to_string() }),
        }
    }
}

fn tolerance(cli_tol: &Option<PathBuf>, eps: Option<f64>) -> Result<TolerancePolicy, AeqError> {
    let mut tol = match cli_tol {
        Some(p) => io::load_tolerance(p)?,
        None => TolerancePolicy::default(),
    };
    if let Some(e) = eps {
        tol = tol.with_eps_unit(e);
    }
    tol.validate()?;
    Ok(tol)
}

fn write_file(path: &Path, text: &str) -> Result<(), AeqError> {
    std::fs::write(path, text).map_err(|e| AeqError::Format(format!("cannot write {}: {e}", path.display())))
}

fn value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn run(cli: &Cli) -> Outcome {
    let res = match &cli.command {
        Command::Verify { file, eps } => verify(cli, file, *eps),
        Command::Construct { kind, dim, out } => construct(*kind, *dim, out),
        Command::Audit {
            file,
            heuristic_clique,
            clique_limit,
            eps,
        } => run_audit(cli, file, *heuristic_clique, *clique_limit, *eps),
        Command::Realize {
            graph,
            dim,
            restarts,
            seed,
            out,
        } => realize(cli, graph, *dim, *restarts, *seed, out.as_deref()),
        Command::Bounds { dim, config } => bounds(*dim, config.as_deref()),
        Command::Render { file, out } => render(cli, file, out),
    };
    res.unwrap_or_else(Outcome::usage)
}

fn verify(cli: &Cli, file: &Path, eps: Option<f64>) -> Result<Outcome, AeqError> {
    let tol = tolerance(&cli.tol_file, eps)?;
    let ps = io::load_point_set(file)?;
    let g = build_unit_distance_graph(&ps, &tol)?;
    let verdict = is_almost_equidistant(&ps, &tol);
    match verdict {
        Verdict::Holds => eprintln!("almost-equidistant: {} points, {} unit edges", ps.len(), g.edge_count()),
        Verdict::Violated(w) => eprintln!("not almost-equidistant: no unit pair among {w:?}"),
    }
    Ok(Outcome::verdict(
        verdict.holds(),
        json!({
            "almost_equidistant": verdict.holds(),
            "witness": verdict.witness(),
            "n": ps.len(),
            "dim": ps.dim(),
            "unit_edges": g.edge_count(),
        }),
    ))
}

fn construct(kind: Kind, dim: Option<usize>, out: &Path) -> Result<Outcome, AeqError> {
    let need_dim = || dim.ok_or_else(|| AeqError::InvalidArgument("--dim is required for this kind".into()));
    let ps: PointSet = match kind {
        Kind::Simplex => {
            let d = need_dim()?;
            unit_simplex_points(d + 1, d)?
        }
        Kind::DoubleSimplex => double_simplex(need_dim()?)?,
        Kind::Spindle => generalized_spindle(need_dim()?)?,
        Kind::Moser => {
            if dim.is_some_and(|d| d != 2) {
                return Err(AeqError::InvalidArgument("the Moser spindle is planar".into()));
            }
            moser_spindle()
        }
    };
    let g = build_unit_distance_graph(&ps, &TolerancePolicy::default())?;
    write_file(out, &io::point_set_json(&ps)?)?;
    eprintln!(
        "wrote {} points ({} unit edges) to {}",
        ps.len(),
        g.edge_count(),
        out.display()
    );
    Ok(Outcome::ok(json!({
        "kind": format!("{kind:?}").to_lowercase(),
        "dim": ps.dim(),
        "points": ps.len(),
        "unit_edges": g.edge_count(),
        "out": out.display().to_string(),
    })))
}

fn run_audit(cli: &Cli, file: &Path, heuristic: bool, limit: usize, eps: Option<f64>) -> Result<Outcome, AeqError> {
    let tol = tolerance(&cli.tol_file, eps)?;
    let ps = io::load_point_set(file)?;
    let opts = AuditOptions {
        clique_mode: if heuristic {
            CliqueMode::Heuristic
        } else {
            CliqueMode::Exact { limit }
        },
    };
    match audit(&ps, &tol, &opts) {
        Ok(report) => {
            let pass = report.all_passed();
            eprintln!(
                "audit: |V| = {}, k = {}, |N| = {}, {} of {} exact checks failed",
                report.n_total,
                report.k,
                report.n_indices.len(),
                report.failures().len(),
                report.exact_checks.len()
            );
            Ok(Outcome::verdict(pass, value(&report)))
        }
        Err(AeqError::NotAlmostEquidistant(i, j, k)) => {
            eprintln!("not almost-equidistant: no unit pair among [{i}, {j}, {k}]");
            Ok(Outcome::verdict(
                false,
                json!({ "almost_equidistant": false, "witness": [i, j, k] }),
            ))
        }
        Err(e) => Err(e),
    }
}

fn realize(
    cli: &Cli,
    graph: &Path,
    dim: usize,
    restarts: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<Outcome, AeqError> {
    let tol = tolerance(&cli.tol_file, None)?;
    let g = io::load_graph(graph)?;
    let outcome = realize_graph(&g, &RealizeConfig::new(dim, restarts, seed), &tol)?;
    if outcome.success {
        if let (Some(path), Some(ps)) = (out, &outcome.points) {
            write_file(path, &io::point_set_json(ps)?)?;
        }
        eprintln!(
            "realized in R^{dim} at restart {} (stress {:.3e})",
            outcome.restart, outcome.best_stress
        );
    } else {
        eprintln!("no realization found; best stress {:.6e}", outcome.best_stress);
    }
    let mut body = json!({
        "success": outcome.success,
        "restart": outcome.restart,
        "best_stress": outcome.best_stress,
    });
    if outcome.success {
        body["points"] = value(&outcome.points);
    }
    Ok(Outcome::verdict(outcome.success, body))
}

fn bounds(dim: usize, config: Option<&Path>) -> Result<Outcome, AeqError> {
    let table = match config {
        Some(p) => BoundsTable::load(p)?,
        None => BoundsTable::default(),
    };
    let b = bounds_for_dimension(dim, &table)?;
    eprintln!("{}", b.summary);
    Ok(Outcome::ok(value(&b)))
}

fn render(cli: &Cli, file: &Path, out: &Path) -> Result<Outcome, AeqError> {
    let tol = tolerance(&cli.tol_file, None)?;
    let ps = io::load_point_set(file)?;
    let svg = render_svg(&ps, &tol)?;
    write_file(out, &svg)?;
    let circles = svg.matches("<circle").count();
    let segments = svg.matches("<line").count();
    eprintln!("wrote {circles} points and {segments} unit edges to {}", out.display());
    Ok(Outcome::ok(json!({
        "circles": circles,
        "segments": segments,
        "out": out.display().to_string(),
    })))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            println!("{}", json!({ "status": "error", "error": e.kind().to_string() }));
            return ExitCode::from(2);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("cannot configure threads: {e}");
        }
    }
    let outcome = run(&cli);
    if outcome.code == 2 {
        if let Some(msg) = outcome.body.get("error") {
            eprintln!("error: {}", msg.as_str().unwrap_or_default());
        }
    }
    match to_stable_json(&outcome.body) {
        Ok(s) => println!("{s}"),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(outcome.code)
}
