//! Command-line front end: decision and value solvers for max-min separation
//! on curves, polygons, trees, and graphs, plus instance generators, grid
//! oracles, and small benchmark suites.
//!
//! Exit codes: 0 = YES / value computed, 1 = NO, 2 = input error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sdw::discrete::{dff_value, dff_witness, traversal_min_distance};
use sdw::ff1d::{decide_1d, decide_1d_witness, ff_value_1d, witness_min_separation};
use sdw::freespace::{critical_values, decide_ff, decide_ff_witness, ff_value};
use sdw::generators::{
    gen_ov_1d_discrete, gen_ov_2d, random_curve, random_geometric_graph, random_polygon,
    random_tree, OVInstance,
};
use sdw::geom::{
    parse_curve, serialize_curve, serialize_schedule, simulate_min_distance, BlueDomain,
};
use sdw::graph::{
    decide_abstract, decide_blue_on_graph, parse_abstract_graph, parse_geometric_graph,
    sdw_graphs_small, serialize_geometric_graph, GraphMetric,
};
use sdw::oracles::{oracle_grid_curves, GridConfig};
use sdw::polygon::{
    decide_escape_arbitrary_red, decide_escape_geodesic_red, parse_polygon, sdw_polygon,
    serialize_polygon, GeodesicIndex,
};
use sdw::report::RunReport;
use sdw::tree::{blue_strategy, canonical_dfs_tour, parse_tree, serialize_tree, simulate_blue_strategy, tree_sdw};
use sdw::{PolylineCurve, Schedule, SeparationMetric};

#[derive(Parser)]
#[command(name = "sdw", version, about = "Max-min separation and social distance width solvers")]
struct Cli {
    /// Suppress the JSON run report (the answer line is still printed).
    #[arg(long, global = true)]
    quiet: bool,
    /// Write the witness (schedule, traversal, strategy, ...) to this path.
    #[arg(long, global = true)]
    witness: Option<PathBuf>,
    /// RNG seed for randomized commands.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Sampling resolution for grid oracles.
    #[arg(long, global = true, default_value_t = 64)]
    resolution: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Discrete flipped Fréchet (vertex-to-vertex traversals).
    Dff {
        #[command(subcommand)]
        cmd: DffCmd,
    },
    /// Continuous flipped Fréchet for 1D curves.
    Ff1d {
        #[command(subcommand)]
        cmd: Ff1dCmd,
    },
    /// Continuous flipped Fréchet for curves in R^d.
    Ff {
        #[command(subcommand)]
        cmd: FfCmd,
    },
    /// Simple-polygon games: escape from a red path, boundary SDW.
    Poly {
        #[command(subcommand)]
        cmd: PolyCmd,
    },
    /// Social distance width on trees.
    Tree {
        #[command(subcommand)]
        cmd: TreeCmd,
    },
    /// Pursuit games on abstract and geometric graphs.
    Graph {
        #[command(subcommand)]
        cmd: GraphCmd,
    },
    /// Instance generators.
    Gen {
        #[command(subcommand)]
        cmd: GenCmd,
    },
    /// Independent brute-force oracles.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Built-in benchmark / self-check suites.
    Bench {
        #[arg(long, value_enum)]
        suite: BenchSuite,
        /// Instance count for randomized suites.
        #[arg(long, default_value_t = 25)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum DffCmd {
    /// Optimal max-min separation over discrete traversals.
    Value {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
}

#[derive(Subcommand)]
enum Ff1dCmd {
    /// Can the agents keep separation >= delta? Exit 0 yes, 1 no.
    Decide {
        #[arg(long)]
        red: PathBuf,
        #[arg(long)]
        blue: PathBuf,
        #[arg(long)]
        delta: f64,
    },
    /// Optimal separation value.
    Value {
        #[arg(long)]
        red: PathBuf,
        #[arg(long)]
        blue: PathBuf,
    },
}

#[derive(Subcommand)]
enum FfCmd {
    Decide {
        #[arg(long)]
        red: PathBuf,
        #[arg(long)]
        blue: PathBuf,
        #[arg(long)]
        delta: f64,
    },
    Value {
        #[arg(long)]
        red: PathBuf,
        #[arg(long)]
        blue: PathBuf,
    },
    /// Candidate critical separation values (sorted, deduplicated).
    Criticals {
        #[arg(long)]
        red: PathBuf,
        #[arg(long)]
        blue: PathBuf,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Can Blue keep geodesic distance >= delta from Red forever?
    Escape {
        #[arg(long)]
        polygon: PathBuf,
        /// Blue start point "x,y".
        #[arg(long)]
        blue_start: String,
        #[arg(long)]
        red: PathBuf,
        #[arg(long)]
        delta: f64,
        /// Require the red path to be geodesic and use the static criterion.
        #[arg(long)]
        require_geodesic: bool,
    },
    /// Social distance width of the polygon boundary.
    Sdw {
        #[arg(long)]
        polygon: PathBuf,
    },
}

#[derive(Subcommand)]
enum TreeCmd {
    Sdw {
        #[arg(long)]
        tree: PathBuf,
        /// Write Blue's optimal strategy (root, witnesses, value) here.
        #[arg(long)]
        strategy: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Hop-metric pursuit on an abstract graph.
    Abstract {
        #[arg(long)]
        graph: PathBuf,
        /// Red's vertex path, e.g. "0,3,2".
        #[arg(long)]
        red: String,
        /// Blue's speed in hops per red step.
        #[arg(long)]
        speed: usize,
        /// Required hop separation.
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        blue_start: Option<usize>,
    },
    /// Blue moves continuously on a geometric graph against a red polyline.
    Geometric {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        red: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
        metric: MetricArg,
    },
    /// Small-instance SDW(H, G) decision via explicit state search.
    SdwSmall {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        delta: f64,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Planar curve pair encoding an orthogonal-vectors instance.
    Ov2d {
        /// Left vectors as bit strings, e.g. "010,110".
        #[arg(long)]
        u: String,
        /// Right vectors as bit strings.
        #[arg(long)]
        v: String,
        #[arg(long)]
        out_red: PathBuf,
        #[arg(long)]
        out_blue: PathBuf,
    },
    /// 1D discrete curve pair encoding an orthogonal-vectors instance.
    Ov1d {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        out_red: PathBuf,
        #[arg(long)]
        out_blue: PathBuf,
    },
    /// Random instance of the given kind (seeded; deterministic).
    Random {
        #[arg(long, value_enum)]
        kind: RandomKind,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Output path; omit to print the instance to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Dense monotone-grid decision for the curve game.
    GridCurves {
        #[arg(long)]
        red: PathBuf,
        #[arg(long)]
        blue: PathBuf,
        #[arg(long)]
        delta: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Euclidean,
    Geodesic,
}

#[derive(Clone, Copy, ValueEnum)]
enum RandomKind {
    Curve,
    Polygon,
    Tree,
    Graph,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchSuite {
    Ov,
    RandomCurves,
    Trees,
    Polygons,
}

/// What a command produced: the answer line, the process exit code, and an
/// optional witness document for --witness.
struct Outcome {
    answer: String,
    exit: u8,
    witness: Option<String>,
}

impl Outcome {
    fn value(v: f64) -> Self {
        Outcome { answer: format!("{v}"), exit: 0, witness: None }
    }
    fn yes_no(yes: bool) -> Self {
        Outcome {
            answer: if yes { "YES" } else { "NO" }.into(),
            exit: if yes { 0 } else { 1 },
            witness: None,
        }
    }
    fn with_witness(mut self, w: Option<String>) -> Self {
        self.witness = w;
        self
    }
}

/// Input error carrying the diagnostic shown on exit code 2.
struct InputError(String);

type CmdResult = Result<Outcome, InputError>;

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

fn read_input(flag: &str, path: &PathBuf, report: &mut RunReport) -> Result<String, InputError> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| bad(format!("{flag} {}: {e}", path.display())))?;
    report.add_digest(flag.trim_start_matches('-'), &s);
    Ok(s)
}

fn load_curve(flag: &str, path: &PathBuf, report: &mut RunReport) -> Result<PolylineCurve, InputError> {
    let s = read_input(flag, path, report)?;
    parse_curve(&s).map_err(|e| bad(format!("{flag} {}: {e}", path.display())))
}

fn load_curve_1d(flag: &str, path: &PathBuf, report: &mut RunReport) -> Result<Vec<f64>, InputError> {
    let c = load_curve(flag, path, report)?;
    if c.dim != 1 {
        return Err(bad(format!("{flag} {}: expected dim 1, got {}", flag, c.dim)));
    }
    Ok(c.points.iter().map(|p| p[0]).collect())
}

fn parse_point(flag: &str, s: &str) -> Result<(f64, f64), InputError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(bad(format!("{flag}: expected \"x,y\", got \"{s}\"")));
    }
    let x = parts[0].trim().parse::<f64>().map_err(|e| bad(format!("{flag}: {e}")))?;
    let y = parts[1].trim().parse::<f64>().map_err(|e| bad(format!("{flag}: {e}")))?;
    Ok((x, y))
}

fn parse_vertex_list(flag: &str, s: &str) -> Result<Vec<usize>, InputError> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| bad(format!("{flag}: {e}"))))
        .collect()
}

fn parse_bit_vectors(flag: &str, s: &str) -> Result<Vec<Vec<u8>>, InputError> {
    s.split(',')
        .map(|w| {
            w.trim()
                .chars()
                .map(|c| match c {
                    '0' => Ok(0u8),
                    '1' => Ok(1u8),
                    _ => Err(bad(format!("{flag}: vectors must be 0/1 strings, got \"{w}\""))),
                })
                .collect()
        })
        .collect()
}

/// Sanity-check an emitted curve-game schedule before writing it out.
fn check_schedule(
    schedule: &Schedule,
    red: &PolylineCurve,
    blue: &PolylineCurve,
    delta: f64,
) -> Result<(), InputError> {
    let sep = simulate_min_distance(
        schedule,
        red,
        &BlueDomain::Curve(blue),
        &SeparationMetric::Euclidean,
        16,
    )
    .map_err(|e| bad(format!("internal: witness validation failed: {e}")))?;
    if sep < delta - 1e-6 {
        return Err(bad(format!(
            "internal: witness separation {sep} below requested {delta}"
        )));
    }
    Ok(())
}

fn run(cli: &Cli, report: &mut RunReport) -> CmdResult {
    match &cli.cmd {
        Cmd::Dff { cmd: DffCmd::Value { p, q } } => {
            let pc = load_curve("--p", p, report)?;
            let qc = load_curve("--q", q, report)?;
            if pc.dim != qc.dim {
                return Err(bad(format!("--q: dim {} does not match --p dim {}", qc.dim, pc.dim)));
            }
            let v = dff_value(&pc, &qc);
            let wit = if cli.witness.is_some() {
                let tr = dff_witness(&pc, &qc);
                let got = traversal_min_distance(&pc, &qc, &tr);
                if got + 1e-9 < v {
                    return Err(bad(format!("internal: traversal achieves {got}, expected {v}")));
                }
                Some(serde_json::json!({ "traversal": tr }).to_string())
            } else {
                None
            };
            Ok(Outcome::value(v).with_witness(wit))
        }
        Cmd::Ff1d { cmd } => match cmd {
            Ff1dCmd::Decide { red, blue, delta } => {
                let r = load_curve_1d("--red", red, report)?;
                let b = load_curve_1d("--blue", blue, report)?;
                if cli.witness.is_some() {
                    match decide_1d_witness(&r, &b, *delta) {
                        Some(wps) => {
                            let sep = witness_min_separation(&r, &b, &wps);
                            if sep < delta - 1e-6 {
                                return Err(bad(format!(
                                    "internal: witness separation {sep} below requested {delta}"
                                )));
                            }
                            let w = serde_json::json!({ "waypoints": wps }).to_string();
                            Ok(Outcome::yes_no(true).with_witness(Some(w)))
                        }
                        None => Ok(Outcome::yes_no(false)),
                    }
                } else {
                    Ok(Outcome::yes_no(decide_1d(&r, &b, *delta)))
                }
            }
            Ff1dCmd::Value { red, blue } => {
                let r = load_curve_1d("--red", red, report)?;
                let b = load_curve_1d("--blue", blue, report)?;
                Ok(Outcome::value(ff_value_1d(&r, &b)))
            }
        },
        Cmd::Ff { cmd } => match cmd {
            FfCmd::Decide { red, blue, delta } => {
                let r = load_curve("--red", red, report)?;
                let b = load_curve("--blue", blue, report)?;
                if cli.witness.is_some() {
                    match decide_ff_witness(&r, &b, *delta).map_err(|e| bad(format!("--red/--blue: {e}")))? {
                        Some(schedule) => {
                            check_schedule(&schedule, &r, &b, *delta)?;
                            Ok(Outcome::yes_no(true).with_witness(Some(serialize_schedule(&schedule))))
                        }
                        None => Ok(Outcome::yes_no(false)),
                    }
                } else {
                    let yes = decide_ff(&r, &b, *delta).map_err(|e| bad(format!("--red/--blue: {e}")))?;
                    Ok(Outcome::yes_no(yes))
                }
            }
            FfCmd::Value { red, blue } => {
                let r = load_curve("--red", red, report)?;
                let b = load_curve("--blue", blue, report)?;
                let v = ff_value(&r, &b).map_err(|e| bad(format!("--red/--blue: {e}")))?;
                let wit = if cli.witness.is_some() && v > 0.0 {
                    // Back off slightly so the decision at the optimum is YES.
                    let d = v * (1.0 - 1e-9);
                    let schedule = decide_ff_witness(&r, &b, d)
                        .map_err(|e| bad(format!("--red/--blue: {e}")))?
                        .ok_or_else(|| bad("internal: no witness at the computed optimum"))?;
                    check_schedule(&schedule, &r, &b, d)?;
                    Some(serialize_schedule(&schedule))
                } else {
                    None
                };
                Ok(Outcome::value(v).with_witness(wit))
            }
            FfCmd::Criticals { red, blue } => {
                let r = load_curve("--red", red, report)?;
                let b = load_curve("--blue", blue, report)?;
                let vals = critical_values(&r, &b, 2_000_000)
                    .ok_or_else(|| bad("--red/--blue: too many critical values to enumerate"))?;
                let wit = Some(serde_json::json!({ "critical_values": vals }).to_string());
                Ok(Outcome::value(vals.len() as f64).with_witness(wit))
            }
        },
        Cmd::Poly { cmd } => match cmd {
            PolyCmd::Escape { polygon, blue_start, red, delta, require_geodesic } => {
                let ps = read_input("--polygon", polygon, report)?;
                let poly = parse_polygon(&ps)
                    .map_err(|e| bad(format!("--polygon {}: {e}", polygon.display())))?;
                let b = parse_point("--blue-start", blue_start)?;
                let r = load_curve("--red", red, report)?;
                if r.dim != 2 {
                    return Err(bad(format!("--red {}: expected dim 2, got {}", red.display(), r.dim)));
                }
                let idx = GeodesicIndex::new(&poly);
                if *require_geodesic {
                    match decide_escape_geodesic_red(&idx, b, &r, *delta) {
                        Ok(Some(safe)) => {
                            let w = serde_json::json!({ "safe_point": [safe.0, safe.1] }).to_string();
                            Ok(Outcome::yes_no(true).with_witness(Some(w)))
                        }
                        Ok(None) => Ok(Outcome::yes_no(false)),
                        Err(e) => Err(bad(format!("--red {}: {e}", red.display()))),
                    }
                } else {
                    let yes = decide_escape_arbitrary_red(&idx, b, &r, *delta)
                        .map_err(|e| bad(format!("--blue-start/--red: {e}")))?;
                    Ok(Outcome::yes_no(yes))
                }
            }
            PolyCmd::Sdw { polygon } => {
                let ps = read_input("--polygon", polygon, report)?;
                let poly = parse_polygon(&ps)
                    .map_err(|e| bad(format!("--polygon {}: {e}", polygon.display())))?;
                let v = sdw_polygon(&poly).map_err(|e| bad(format!("--polygon: {e}")))?;
                Ok(Outcome::value(v))
            }
        },
        Cmd::Tree { cmd: TreeCmd::Sdw { tree, strategy } } => {
            let ts = read_input("--tree", tree, report)?;
            let t = parse_tree(&ts).map_err(|e| bad(format!("--tree {}: {e}", tree.display())))?;
            let strat = blue_strategy(&t);
            if let Some(path) = strategy {
                let doc = serde_json::json!({
                    "root": strat.root,
                    "witnesses": strat.witnesses,
                    "value": strat.value,
                })
                .to_string();
                std::fs::write(path, doc)
                    .map_err(|e| bad(format!("--strategy {}: {e}", path.display())))?;
            }
            Ok(Outcome::value(strat.value))
        }
        Cmd::Graph { cmd } => match cmd {
            GraphCmd::Abstract { graph, red, speed, delta, blue_start } => {
                let gs = read_input("--graph", graph, report)?;
                let g = parse_abstract_graph(&gs)
                    .map_err(|e| bad(format!("--graph {}: {e}", graph.display())))?;
                let path = parse_vertex_list("--red", red)?;
                let yes = decide_abstract(&g, &path, *speed, *delta, *blue_start)
                    .map_err(|e| bad(format!("--red/--delta: {e}")))?;
                Ok(Outcome::yes_no(yes))
            }
            GraphCmd::Geometric { graph, red, delta, metric } => {
                let gs = read_input("--graph", graph, report)?;
                let g = parse_geometric_graph(&gs)
                    .map_err(|e| bad(format!("--graph {}: {e}", graph.display())))?;
                let r = load_curve("--red", red, report)?;
                let m = match metric {
                    MetricArg::Euclidean => GraphMetric::Euclidean,
                    MetricArg::Geodesic => GraphMetric::GraphGeodesic,
                };
                let yes = decide_blue_on_graph(&r, &g, *delta, m)
                    .map_err(|e| bad(format!("--red: {e}")))?;
                Ok(Outcome::yes_no(yes))
            }
            GraphCmd::SdwSmall { h, g, delta } => {
                let hs = read_input("--h", h, report)?;
                let hg = parse_geometric_graph(&hs)
                    .map_err(|e| bad(format!("--h {}: {e}", h.display())))?;
                let gs = read_input("--g", g, report)?;
                let gg = parse_geometric_graph(&gs)
                    .map_err(|e| bad(format!("--g {}: {e}", g.display())))?;
                let yes = sdw_graphs_small(&hg, &gg, *delta, cli.resolution)
                    .map_err(|e| bad(format!("--h/--g: {e}")))?;
                Ok(Outcome::yes_no(yes))
            }
        },
        Cmd::Gen { cmd } => match cmd {
            GenCmd::Ov2d { u, v, out_red, out_blue } | GenCmd::Ov1d { u, v, out_red, out_blue } => {
                let uv = parse_bit_vectors("--u", u)?;
                let vv = parse_bit_vectors("--v", v)?;
                let inst = OVInstance::new(uv, vv).map_err(|e| bad(format!("--u/--v: {e}")))?;
                let (r, b) = match &cli.cmd {
                    Cmd::Gen { cmd: GenCmd::Ov2d { .. } } => gen_ov_2d(&inst),
                    _ => gen_ov_1d_discrete(&inst),
                };
                let rs = serialize_curve(&r);
                let bs = serialize_curve(&b);
                std::fs::write(out_red, &rs)
                    .map_err(|e| bad(format!("--out-red {}: {e}", out_red.display())))?;
                std::fs::write(out_blue, &bs)
                    .map_err(|e| bad(format!("--out-blue {}: {e}", out_blue.display())))?;
                report.add_digest("out-red", &rs);
                report.add_digest("out-blue", &bs);
                Ok(Outcome {
                    answer: format!("red={} blue={} points", r.len(), b.len()),
                    exit: 0,
                    witness: None,
                })
            }
            GenCmd::Random { kind, n, out } => {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                let doc = match kind {
                    RandomKind::Curve => serialize_curve(&random_curve(&mut rng, 2, (*n).max(1), 10.0)),
                    RandomKind::Polygon => {
                        if *n < 3 {
                            return Err(bad(format!("--n: polygon needs at least 3 vertices, got {n}")));
                        }
                        serialize_polygon(&random_polygon(&mut rng, *n))
                    }
                    RandomKind::Tree => serialize_tree(&random_tree(&mut rng, (*n).max(1), true)),
                    RandomKind::Graph => {
                        serialize_geometric_graph(&random_geometric_graph(&mut rng, (*n).max(2), 2))
                    }
                };
                report.add_digest("out", &doc);
                match out {
                    Some(path) => std::fs::write(path, &doc)
                        .map_err(|e| bad(format!("--out {}: {e}", path.display())))?,
                    None => println!("{doc}"),
                }
                Ok(Outcome { answer: "OK".into(), exit: 0, witness: None })
            }
        },
        Cmd::Oracle { cmd: OracleCmd::GridCurves { red, blue, delta } } => {
            let r = load_curve("--red", red, report)?;
            let b = load_curve("--blue", blue, report)?;
            let cfg = GridConfig::with_resolution(cli.resolution);
            let yes = oracle_grid_curves(&r, &b, *delta, &cfg)
                .map_err(|e| bad(format!("--red/--blue: {e}")))?;
            Ok(Outcome::yes_no(yes))
        }
        Cmd::Bench { suite, count } => run_bench(*suite, *count, cli.seed),
    }
}

fn run_bench(suite: BenchSuite, count: usize, seed: u64) -> CmdResult {
    let started = Instant::now();
    let mut cases = 0usize;
    match suite {
        BenchSuite::Ov => {
            // Every instance with at most 2 vectors per side in dimension 2.
            let vecs = sdw::generators::all_binary_vectors(2);
            let mut sides: Vec<Vec<Vec<u8>>> = Vec::new();
            for i in 0..vecs.len() {
                sides.push(vec![vecs[i].clone()]);
                for j in i + 1..vecs.len() {
                    sides.push(vec![vecs[i].clone(), vecs[j].clone()]);
                }
            }
            for u in &sides {
                for v in &sides {
                    let inst = OVInstance::new(u.clone(), v.clone())
                        .map_err(|e| bad(format!("internal: {e}")))?;
                    let expect = inst.has_orthogonal_pair();
                    let (r, b) = gen_ov_2d(&inst);
                    let got = decide_ff(&r, &b, 1.0).map_err(|e| bad(format!("internal: {e}")))?;
                    if got != expect {
                        return Err(bad(format!(
                            "bench ov: decide_ff disagrees with orthogonality on u={u:?} v={v:?}"
                        )));
                    }
                    cases += 1;
                }
            }
        }
        BenchSuite::RandomCurves => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let r = random_curve(&mut rng, 2, 6, 4.0);
                let b = random_curve(&mut rng, 2, 6, 4.0);
                let v = ff_value(&r, &b).map_err(|e| bad(format!("internal: {e}")))?;
                if v > 0.0 {
                    let schedule = decide_ff_witness(&r, &b, v * (1.0 - 1e-9))
                        .map_err(|e| bad(format!("internal: {e}")))?
                        .ok_or_else(|| bad("bench random-curves: no witness at optimum"))?;
                    check_schedule(&schedule, &r, &b, v * (1.0 - 1e-9))?;
                }
                cases += 1;
            }
        }
        BenchSuite::Trees => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let t = random_tree(&mut rng, 10, true);
                let v = tree_sdw(&t);
                let strat = blue_strategy(&t);
                for root in 0..t.n {
                    let tour = canonical_dfs_tour(&t, root);
                    let sep = simulate_blue_strategy(&t, &strat, &tour);
                    if sep + 1e-9 < v {
                        return Err(bad(format!(
                            "bench trees: strategy achieves {sep} against a tour, value is {v}"
                        )));
                    }
                }
                cases += 1;
            }
        }
        BenchSuite::Polygons => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count.min(8) {
                let poly = random_polygon(&mut rng, 8);
                let v = sdw_polygon(&poly).map_err(|e| bad(format!("internal: {e}")))?;
                if !(v.is_finite() && v >= 0.0) {
                    return Err(bad(format!("bench polygons: bad value {v}")));
                }
                cases += 1;
            }
        }
    }
    let ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(Outcome {
        answer: format!("ok: {cases} cases in {ms:.1} ms"),
        exit: 0,
        witness: None,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut report = RunReport::new(
        std::env::args().collect::<Vec<_>>().join(" "),
    );
    match run(&cli, &mut report) {
        Ok(outcome) => {
            if let Some(doc) = &outcome.witness {
                if let Some(path) = &cli.witness {
                    if let Err(e) = std::fs::write(path, doc) {
                        eprintln!("error: --witness {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                    report.witness_path = Some(path.display().to_string());
                }
            }
            report.answer = outcome.answer.clone();
            report.finish(started);
            println!("{}", outcome.answer);
            if !cli.quiet {
                println!("{}", report.to_json());
            }
            ExitCode::from(outcome.exit)
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
