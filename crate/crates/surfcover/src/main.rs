//! Thin command-line front end. Everything here delegates to the
//! library; see the examples/ directory for the API itself.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use surfcover::linsys::linear_system;
use surfcover::poly::{
    absolute_factor_count, intersection_multiplicity, is_squarefree, parse_curve_file,
    Intersection, MultiPoly,
};
use surfcover::scenario::{parse_conditions_text, parse_point_str, run_scenario};
use surfcover::singularity::{classify_singularity, resolve_point, DEFAULT_DEPTH_CAP};

#[derive(Parser)]
#[command(
    name = "surfcover",
    version,
    about = "exact plane-curve singularities, blow-up divisor classes and cover invariants"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a bundled scenario (pgq0, pgq1 or pgq2) and report its checks
    Verify {
        scenario: String,
        /// seed for the choices the fixture leaves open
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// also write the JSON report to this path ("-" for stdout)
        #[arg(long)]
        json: Option<PathBuf>,
        /// read fixtures from a directory instead of the bundled ones
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Resolve a curve at a point and print the infinitely near tree
    Resolve {
        /// curve file (one polynomial in x, y, z; # comments allowed)
        #[arg(long)]
        curve: PathBuf,
        /// the point, e.g. "(0, 0, 1)"
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        depth: usize,
    },
    /// Decide squarefreeness and count absolute irreducible factors
    Irreducible {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Local intersection multiplicity of two curves at a point
    Intersect {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        other: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Dimension (and members) of a linear system with base conditions
    Linsys {
        #[arg(long)]
        degree: u32,
        /// condition file: `at (x, y, z) multiplicity M [tangent ...]`
        #[arg(long)]
        conditions: PathBuf,
        /// print the basis member with this index
        #[arg(long)]
        member: Option<usize>,
    },
}

fn load_curve(path: &PathBuf) -> Result<MultiPoly, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_curve_file(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cmd: Cmd) -> Result<ExitCode, String> {
    match cmd {
        Cmd::Verify {
            scenario,
            seed,
            json,
            fixtures,
        } => {
            let report = run_scenario(&scenario, seed, fixtures.as_deref())
                .map_err(|e| e.to_string())?;
            println!("{}", report.render_text());
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report.to_json())
                    .expect("report serializes");
                if path.as_os_str() == "-" {
                    println!("{text}");
                } else {
                    fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
                }
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Cmd::Resolve {
            curve,
            point,
            depth,
        } => {
            let f = load_curve(&curve)?;
            let p = parse_point_str(&point).map_err(|e| e.to_string())?;
            let tree = resolve_point(&f, &p, depth).map_err(|e| e.to_string())?;
            let class = classify_singularity(&f, &p).map_err(|e| e.to_string())?;
            let out = json!({
                "point": point.trim(),
                "class": class.to_string(),
                "delta": tree.delta(),
                "tree": tree.to_json(),
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Irreducible { curve } => {
            let f = load_curve(&curve)?;
            let squarefree = is_squarefree(&f).map_err(|e| e.to_string())?;
            let factors = if squarefree {
                Some(absolute_factor_count(&f).map_err(|e| e.to_string())?)
            } else {
                None
            };
            let out = json!({ "squarefree": squarefree, "absolute_factors": factors });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
            Ok(if factors == Some(1) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Cmd::Intersect {
            curve,
            other,
            point,
        } => {
            let f = load_curve(&curve)?;
            let g = load_curve(&other)?;
            let p = parse_point_str(&point).map_err(|e| e.to_string())?;
            let m = intersection_multiplicity(&f, &g, &p).map_err(|e| e.to_string())?;
            let out = match m {
                Intersection::Finite(k) => json!({ "multiplicity": k }),
                Intersection::Infinite => json!({ "multiplicity": "infinite" }),
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Linsys {
            degree,
            conditions,
            member,
        } => {
            let text = fs::read_to_string(&conditions)
                .map_err(|e| format!("{}: {e}", conditions.display()))?;
            let conds = parse_conditions_text(&text).map_err(|e| e.to_string())?;
            let ls = linear_system(degree, &conds).map_err(|e| e.to_string())?;
            let mut out = json!({
                "degree": degree,
                "conditions": conds.iter().map(|c| c.rows()).sum::<usize>(),
                "projective_dimension": ls.projective_dimension(),
            });
            if let Some(i) = member {
                let m = ls.member(i).map_err(|e| e.to_string())?;
                out["member"] = json!(m.to_string());
            }
            println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("surfcover: {msg}");
            ExitCode::from(2)
        }
    }
}
