mod input;
mod svg;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use discreta::continuity::ContinuityGraph;
use discreta::distortion::{
    component_space, displacement, distortion_bound, is_graph_like, metric_edge_set, round_sig, BoundConfig,
    DescentConfig, EdgeSetMode,
};
use discreta::jordan::{diagnostic_components, jordan_decompose, validate_circuit, DecompositionReport};
use discreta::oracles::{brute_components, brute_displacement, brute_edge_set, OracleBudget};
use discreta::{ComponentId, Error, ErrorKind, MetricSpace, Result};

use input::{Document, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    Components,
    Jordan,
    Edges,
    Distortion,
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EdgeSetArg {
    AllGeodesics,
    Canonical,
}

impl From<EdgeSetArg> for EdgeSetMode {
    fn from(a: EdgeSetArg) -> Self {
        match a {
            EdgeSetArg::AllGeodesics => EdgeSetMode::AllGeodesics,
            EdgeSetArg::Canonical => EdgeSetMode::Canonical,
        }
    }
}

/// Continuity, digital Jordan curves and distortion bounds for finite metric spaces.
///
/// Reports are JSON on standard output. Exit status is 0 on success, 2 for
/// invalid input, 3 when the input violates a mathematical precondition and
/// 1 for internal failures. DISCRETA_SEED sets the descent seed (default 0).
#[derive(Debug, Parser)]
#[command(name = "discreta", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Metric space (JSON object or CSV matrix) or circuit (JSON array of [x, y]).
    input: PathBuf,
    /// Exponent of the target ℓ^p space.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Random restarts for the descent used when p ≠ 2.
    #[arg(long, default_value_t = DescentConfig::default().restarts)]
    restarts: usize,
    #[arg(long, value_enum, default_value_t = EdgeSetArg::AllGeodesics)]
    edge_set: EdgeSetArg,
    /// Padding around the circuit's bounding box for the flood fill.
    #[arg(long, default_value_t = 1)]
    margin: i64,
    /// Write an SVG picture of the decomposition (jordan only).
    #[arg(long)]
    emit_svg: Option<PathBuf>,
    /// Cross-check results against brute-force oracles.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(w) = witness(&e) {
                eprintln!("witness: {w}");
            }
            ExitCode::from(match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Precondition => 3,
                ErrorKind::Internal => 1,
            })
        }
    }
}

fn witness(e: &Error) -> Option<Value> {
    match e {
        Error::NotSimple(w) => Some(json!(w)),
        Error::ContainsSquare(c) => Some(json!(c)),
        Error::SimplicityBroken(a, b) => Some(json!([a, b])),
        _ => None,
    }
}

fn run(cli: &Cli) -> Result<Value> {
    if !(cli.p >= 1.0 && cli.p.is_finite()) {
        return Err(Error::InvalidParameter(format!("--p must be a finite value >= 1, got {}", cli.p)));
    }
    if cli.margin < 1 {
        return Err(Error::InvalidParameter(format!("--margin must be >= 1, got {}", cli.margin)));
    }
    match cli.command {
        Command::Components => components(&input::load_space(&cli.input, cli.format)?, cli.oracle),
        Command::Edges => edges(&input::load_space(&cli.input, cli.format)?, cli.edge_set.into(), cli.oracle),
        Command::Distortion => distortion(&input::load_space(&cli.input, cli.format)?, cli),
        Command::Jordan => jordan(cli),
        Command::Validate => validate(cli),
    }
}

fn seed() -> Result<u64> {
    match std::env::var("DISCRETA_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("DISCRETA_SEED must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(0),
    }
}

fn ids(space: &MetricSpace, points: &[usize]) -> Vec<String> {
    points.iter().map(|&i| space.id(i).0.clone()).collect()
}

fn components(space: &MetricSpace, oracle: bool) -> Result<Value> {
    let g = ContinuityGraph::build(space)?;
    let points: Vec<Value> = (0..space.len())
        .map(|x| {
            json!({
                "id": space.id(x).as_str(),
                "component": g.component_of(x).0,
                "neighbor_radius": round_sig(g.neighbor_radius(x)),
                "neighbors": ids(space, g.neighbors(x)),
            })
        })
        .collect();
    let comps: Vec<Value> = g
        .components()
        .iter()
        .map(|c| {
            json!({
                "component": c.id.0,
                "representative": space.id(c.representative()).as_str(),
                "points": ids(space, &c.points),
                "step": round_sig(g.step(c.id)),
            })
        })
        .collect();
    let mut report = json!({
        "points": points,
        "components": comps,
        "normal_form": g.is_normal_form(),
    });
    if oracle {
        let mut brute: Vec<BTreeSet<usize>> = brute_components(space, &OracleBudget::default())?
            .into_iter()
            .map(|c| c.into_iter().collect())
            .collect();
        let mut ours: Vec<BTreeSet<usize>> = g.components().iter().map(|c| c.points.iter().copied().collect()).collect();
        brute.sort();
        ours.sort();
        if brute != ours {
            return Err(Error::Inconsistent("components differ from the brute-force oracle".into()));
        }
        report["oracle"] = json!({ "components": "agree" });
    }
    Ok(report)
}

/// Non-singleton components in normal form, and representatives of the skipped singletons.
type Split = (Vec<(ComponentId, MetricSpace)>, Vec<String>);

fn normal_components(space: &MetricSpace) -> Result<Split> {
    let g = ContinuityGraph::build(space)?;
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for c in g.components() {
        if c.is_singleton() {
            skipped.push(space.id(c.representative()).0.clone());
        } else {
            out.push((c.id, component_space(space, &c.points)?));
        }
    }
    Ok((out, skipped))
}

fn check_edges(cs: &MetricSpace, found: &BTreeSet<(usize, usize)>, mode: EdgeSetMode) -> Result<()> {
    let all: Vec<usize> = (0..cs.len()).collect();
    let brute = brute_edge_set(cs, &all, &OracleBudget::default())?;
    let ok = match mode {
        EdgeSetMode::AllGeodesics => &brute == found,
        EdgeSetMode::Canonical => found.is_subset(&brute),
    };
    if !ok {
        return Err(Error::Inconsistent(format!(
            "edge set of component containing {:?} differs from the brute-force oracle",
            cs.id(0).0
        )));
    }
    Ok(())
}

fn edges(space: &MetricSpace, mode: EdgeSetMode, oracle: bool) -> Result<Value> {
    let (comps, skipped) = normal_components(space)?;
    let mut out = Vec::new();
    for (id, cs) in &comps {
        let g = ContinuityGraph::build(cs)?;
        let e = metric_edge_set(&g, ComponentId(0), mode)?;
        if oracle {
            check_edges(cs, &e.pairs(), mode)?;
        }
        let list: Vec<Value> = e
            .edges
            .iter()
            .map(|x| json!({ "a": cs.id(x.a).as_str(), "b": cs.id(x.b).as_str(), "distance": round_sig(x.distance) }))
            .collect();
        out.push(json!({
            "component": id.0,
            "representative": cs.id(0).as_str(),
            "size_x": cs.len(),
            "size_e": e.len(),
            "d_x": round_sig(discreta::distortion::graph_deviation(&e)?),
            "graph_like": is_graph_like(&g, ComponentId(0))?,
            "edges": list,
        }));
    }
    let mut report = json!({
        "edge_set": match mode {
            EdgeSetMode::AllGeodesics => "all-geodesics",
            EdgeSetMode::Canonical => "canonical",
        },
        "components": out,
        "skipped": skipped,
    });
    if oracle {
        report["oracle"] = json!({ "edge_sets": "agree" });
    }
    Ok(report)
}

fn distortion(space: &MetricSpace, cli: &Cli) -> Result<Value> {
    let cfg = BoundConfig {
        p: cli.p,
        edge_set: cli.edge_set.into(),
        descent: DescentConfig {
            restarts: cli.restarts,
            seed: seed()?,
            ..DescentConfig::default()
        },
    };
    let report = distortion_bound(space, &cfg)?;
    let mut value = report.to_json();
    if cli.oracle {
        let budget = OracleBudget::default();
        let (comps, _) = normal_components(space)?;
        for (_, cs) in &comps {
            let g = ContinuityGraph::build(cs)?;
            let e = metric_edge_set(&g, ComponentId(0), cfg.edge_set)?;
            check_edges(cs, &e.pairs(), cfg.edge_set)?;
            let all: Vec<usize> = (0..cs.len()).collect();
            let (fast, slow) = (displacement(cs, &all)?, brute_displacement(cs, &all, &budget)?);
            if fast != slow {
                return Err(Error::Inconsistent(format!(
                    "displacement {fast} differs from the brute-force value {slow}"
                )));
            }
        }
        value["oracle"] = json!({ "edge_sets": "agree", "displacement": "agree" });
    }
    Ok(value)
}

fn jordan(cli: &Cli) -> Result<Value> {
    let c = input::load_circuit(&cli.input)?;
    let d = jordan_decompose(&c, cli.margin)?;
    if let Some(path) = &cli.emit_svg {
        svg::emit(&d, path)?;
    }
    Ok(json!(DecompositionReport::from(&d)))
}

fn validate(cli: &Cli) -> Result<Value> {
    match input::load_any(&cli.input, cli.format)? {
        Document::Circuit(c) => {
            let v = validate_circuit(&c);
            let mut report = json!(v);
            report["diagnostic_component_count"] = json!(diagnostic_components(&c, cli.margin).len());
            Ok(report)
        }
        Document::Space(s) => Ok(json!({
            "valid_metric": true,
            "points": s.len(),
        })),
    }
}
