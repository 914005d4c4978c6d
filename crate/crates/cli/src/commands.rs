use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use potato::geom::{polygon_from_json, Point2, SimplePolygon};
use potato::oracles::{
    make_comb, oracle_convex, oracle_lshape, random_convex_polygon, regular_polygon, staircase,
    OracleInstance,
};
use potato::peeler::{large_potato, scaling_benchmark, BenchRow, PeelConfig};
use potato::problab::{estimate_visibility_probability, visibility_bound, visibility_bound_log};
use potato::sampling::{purpose, triangulate, RandomSource};
use potato::visibility::build_visibility_graph;
use serde::Serialize;

use crate::manifest::{content_hash, RunManifest};
use crate::svg::{render_svg, Overlays};
use crate::{
    BenchArgs, BenchFamily, CliError, Command, Family, OracleArgs, PeelArgs, PeelOptions, ProbeArgs, VgraphArgs,
    EXIT_ALL_ABORTED, EXIT_OK,
};

pub(crate) fn run(cmd: Command) -> Result<i32, CliError> {
    match cmd {
        Command::Peel(a) => peel(&a),
        Command::Vgraph(a) => vgraph(&a),
        Command::Probe(a) => probe(&a),
        Command::Oracle(a) => oracle(&a),
        Command::Bench(a) => bench(&a),
    }
}

struct Input {
    polygon: SimplePolygon<f64>,
    hash: String,
}

fn read_input(path: &Path) -> Result<Input, CliError> {
    let bytes =
        std::fs::read(path).map_err(|e| CliError::Validation(format!("input: {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| CliError::Validation(format!("input: {} is not UTF-8", path.display())))?;
    let polygon = polygon_from_json(text).map_err(|e| CliError::Validation(format!("input: {e}")))?;
    Ok(Input {
        polygon,
        hash: content_hash(&bytes),
    })
}

fn peel_config(o: &PeelOptions) -> Result<PeelConfig, CliError> {
    let mut cfg = PeelConfig::new(o.mode.into(), o.epsilon, o.delta, o.seed);
    if let Some(v) = o.c1 {
        cfg.c1 = v;
    }
    if let Some(v) = o.c2 {
        cfg.c2 = v;
    }
    if let Some(v) = o.c3 {
        cfg.c3 = v;
    }
    cfg.area_estimate = o.area_estimate;
    cfg.max_repeat_override = o.max_repeat;
    if o.no_skip_dominated {
        cfg.skip_dominated = false;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))
}

/// Writes `text` to `path`, or prints it when there is no path.
fn emit(path: Option<&PathBuf>, text: &str, outputs: &mut Vec<PathBuf>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            write_file(p, text)?;
            outputs.push(p.clone());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn write_manifest<A: Serialize>(
    subcommand: &str,
    args: &A,
    config: Option<PeelConfig>,
    input_hash: Option<String>,
    outputs: Vec<PathBuf>,
    explicit: Option<&PathBuf>,
) -> Result<(), CliError> {
    let m = RunManifest {
        subcommand: subcommand.into(),
        args: serde_json::to_value(args).expect("arguments serialize"),
        config,
        input_hash,
        outputs,
    };
    if let Some(loc) = m.location(explicit.map(|p| p.as_path())) {
        write_file(&loc, &m.to_json())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct PeelOutput {
    area: f64,
    vertices: Vec<Point2<f64>>,
    iterations_run: usize,
    iterations_aborted_by_cap: usize,
    seed: u64,
    wall_time_ms: u64,
}

fn peel(a: &PeelArgs) -> Result<i32, CliError> {
    let cfg = peel_config(&a.opts)?;
    let input = read_input(&a.input)?;
    let p = &input.polygon;
    let mut outputs = Vec::new();
    if let Some(path) = &a.dump_triangulation {
        let tri = triangulate(p)?;
        let tris: Vec<&[Point2<f64>; 3]> = tri.triangles().iter().collect();
        write_file(path, &to_json(&serde_json::json!({ "triangles": tris })))?;
        outputs.push(path.clone());
    }

    let res = large_potato(p, &cfg)?;
    let out = PeelOutput {
        area: res.area,
        vertices: res.polygon.vertices().to_vec(),
        iterations_run: res.iterations_run,
        iterations_aborted_by_cap: res.iterations_aborted_by_cap,
        seed: res.seed,
        wall_time_ms: if a.no_timing { 0 } else { res.wall_time.as_millis() as u64 },
    };
    emit(a.json.as_ref(), &to_json(&out), &mut outputs)?;
    if let Some(path) = &a.svg {
        let overlays = Overlays {
            solution: Some(res.polygon.vertices()),
            gamma: res.gamma.map(|g| g.corners()),
            samples: &res.samples,
            segments: &[],
        };
        write_file(path, &render_svg(p, &overlays))?;
        outputs.push(path.clone());
    }
    write_manifest("peel", a, Some(cfg), Some(input.hash), outputs, a.manifest.as_ref())?;

    if res.all_aborted() {
        eprintln!(
            "error: all {} iterations exceeded the edge cap of {} edges; no solution",
            res.iterations_run, res.cap
        );
        return Ok(EXIT_ALL_ABORTED);
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VgraphOutput {
    points: Vec<Point2<f64>>,
    edges: Vec<(usize, usize)>,
    completed: bool,
    edges_seen: usize,
}

fn vgraph(a: &VgraphArgs) -> Result<i32, CliError> {
    let input = read_input(&a.input)?;
    let p = &input.polygon;
    let tri = triangulate(p)?;
    let mut rng = RandomSource::new(a.seed, 0).derive(&[purpose::POINTS]);
    let points = tri.sample(a.points, &mut rng);
    let outcome = build_visibility_graph(p, &points, a.cap)?;
    let edges: Vec<(usize, usize)> = outcome.graph.as_ref().map(|g| g.edges().collect()).unwrap_or_default();
    let mut outputs = Vec::new();
    let out = VgraphOutput {
        points,
        edges,
        completed: outcome.completed,
        edges_seen: outcome.edges_seen,
    };
    emit(a.json.as_ref(), &to_json(&out), &mut outputs)?;
    if let Some(path) = &a.svg {
        let segments: Vec<_> = out.edges.iter().map(|&(i, j)| (out.points[i], out.points[j])).collect();
        let overlays = Overlays {
            samples: &out.points,
            segments: &segments,
            ..Default::default()
        };
        write_file(path, &render_svg(p, &overlays))?;
        outputs.push(path.clone());
    }
    write_manifest("vgraph", a, None, Some(input.hash), outputs, a.manifest.as_ref())?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ProbeOutput {
    p_hat: f64,
    ci95: f64,
    trials: usize,
}

fn probe(a: &ProbeArgs) -> Result<i32, CliError> {
    let input = read_input(&a.input)?;
    let rng = RandomSource::new(a.seed, 0);
    let e = estimate_visibility_probability(&input.polygon, a.trials, &rng)?;
    let mut outputs = Vec::new();
    let out = ProbeOutput {
        p_hat: e.p_hat,
        ci95: e.ci95_halfwidth,
        trials: e.trials,
    };
    emit(a.json.as_ref(), &to_json(&out), &mut outputs)?;
    if let Some(path) = &a.sweep_csv {
        write_file(path, &probe_sweep(a.trials, &rng)?)?;
        outputs.push(path.clone());
    }
    write_manifest("probe", a, None, Some(input.hash), outputs, a.manifest.as_ref())?;
    Ok(EXIT_OK)
}

/// Visibility estimates over the oracle families, with the bounds evaluated
/// at the normalized upper bound on the optimum.
fn probe_sweep(trials: usize, rng: &RandomSource) -> Result<String, CliError> {
    let mut instances: Vec<(String, OracleInstance<f64>)> = vec![("lshape".into(), oracle_lshape()?)];
    for teeth in [2, 4, 8, 16] {
        instances.push((format!("comb{teeth}"), make_comb(teeth, 1.0, 1.0, 4.0, 0.5)?));
    }
    instances.push(("regular16".into(), oracle_convex(&regular_polygon(16, 1.0)?)?));
    let mut csv = String::from("family,astar_lower,astar_upper,p_hat,ci95,bound_18,bound_log\n");
    for (k, (name, o)) in instances.iter().enumerate() {
        let area = o.polygon.area();
        let (lo, hi) = (o.astar_lower / area, o.astar_upper / area);
        let e = estimate_visibility_probability(&o.polygon, trials, &rng.derive(&[k as u64]))?;
        let _ = writeln!(
            csv,
            "{name},{lo},{hi},{},{},{},{}",
            e.p_hat,
            e.ci95_halfwidth,
            visibility_bound(hi),
            visibility_bound_log(hi)
        );
    }
    Ok(csv)
}

#[derive(Serialize)]
struct OracleOutput<'a> {
    vertices: &'a [Point2<f64>],
    astar_lower: f64,
    astar_upper: f64,
    provenance: potato::oracles::Provenance,
    witness: &'a [Point2<f64>],
}

fn oracle(a: &OracleArgs) -> Result<i32, CliError> {
    let o = match a.family {
        Family::Convex => {
            let mut rng = RandomSource::new(a.seed, 0);
            oracle_convex(&random_convex_polygon(a.n, &mut rng)?)?
        }
        Family::Lshape => oracle_lshape()?,
        Family::Comb => make_comb(a.teeth, a.tooth_width, a.gap, a.tooth_height, a.base_height)?,
    };
    let out = OracleOutput {
        vertices: o.polygon.vertices(),
        astar_lower: o.astar_lower,
        astar_upper: o.astar_upper,
        provenance: o.provenance,
        witness: o.witness.vertices(),
    };
    let mut outputs = Vec::new();
    emit(a.json.as_ref(), &to_json(&out), &mut outputs)?;
    write_manifest("oracle", a, None, None, outputs, a.manifest.as_ref())?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct BenchOutput {
    family: BenchFamily,
    rows: Vec<BenchRow>,
    /// Median time of the largest size over that of the smallest.
    ratio: Option<f64>,
}

fn bench(a: &BenchArgs) -> Result<i32, CliError> {
    let cfg = peel_config(&a.opts)?;
    if a.sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(CliError::Validation("sizes: must be ascending".into()));
    }
    let rows = match a.family {
        BenchFamily::Staircase => scaling_benchmark(staircase::<f64>, &a.sizes, &cfg)?,
        BenchFamily::Regular => scaling_benchmark(|n| regular_polygon::<f64>(n, 1.0), &a.sizes, &cfg)?,
        BenchFamily::Comb => scaling_benchmark(
            |n| make_comb::<f64>((n / 4).max(2), 1.0, 1.0, 4.0, 0.5).map(|o| o.polygon),
            &a.sizes,
            &cfg,
        )?,
    };
    let ratio = match (rows.first(), rows.last()) {
        (Some(f), Some(l)) if rows.len() > 1 && f.wall_time_ms > 0.0 => Some(l.wall_time_ms / f.wall_time_ms),
        _ => None,
    };
    let out = BenchOutput {
        family: a.family,
        rows,
        ratio,
    };
    let mut outputs = Vec::new();
    emit(a.json.as_ref(), &to_json(&out), &mut outputs)?;
    write_manifest("bench", a, Some(cfg), None, outputs, a.manifest.as_ref())?;
    Ok(EXIT_OK)
}
