use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use potato::geom::{polygon_from_json, segment_in_polygon, Point2, Segment, SimplePolygon};
use potato::oracles::l_shape;
use potato_cli::{parse_and_dispatch, render_svg, Overlays};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_potato"));
    c.env_remove("PEEL_SEED").env_remove("PEEL_MODE");
    c
}

fn write_polygon(dir: &Path, name: &str, pts: &[(f64, f64)]) -> PathBuf {
    let path = dir.join(name);
    let v: Vec<[f64; 2]> = pts.iter().map(|&(x, y)| [x, y]).collect();
    std::fs::write(&path, serde_json::json!({ "vertices": v }).to_string()).unwrap();
    path
}

fn square_file(dir: &Path) -> PathBuf {
    write_polygon(dir, "sq.json", &[(0., 0.), (1., 0.), (1., 1.), (0., 1.)])
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.output().unwrap();
    (
        status.code().unwrap(),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

#[test]
fn peel_unit_square() {
    let dir = tempfile::tempdir().unwrap();
    let sq = square_file(dir.path());
    let (code, out, _) = run(bin().args(["peel", "--input"]).arg(&sq).args([
        "--epsilon", "0.2", "--delta", "0.1", "--seed", "1",
    ]));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["area"].as_f64().unwrap() >= 0.8);
    assert_eq!(v["iterations_run"], 10);
    assert_eq!(v["seed"], 1);
    for key in ["vertices", "iterations_aborted_by_cap", "wall_time_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let sq = square_file(dir.path());
    let (code, _, err) = run(bin().args(["peel", "--input"]).arg(&sq).args(["--epsilon", "1.5"]));
    assert_eq!(code, 2);
    assert!(err.contains("epsilon"), "{err}");
    assert_eq!(err.lines().count(), 1);

    let (code, _, err) = run(bin().args(["peel", "--input"]).arg(dir.path().join("missing.json")));
    assert_eq!(code, 2);
    assert!(err.contains("input"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": [[0,0],[1,").unwrap();
    let (code, _, err) = run(bin().args(["peel", "--input"]).arg(&bad));
    assert_eq!(code, 2);
    assert!(err.contains("JSON"), "{err}");

    let bowtie = write_polygon(dir.path(), "bowtie.json", &[(0., 0.), (1., 1.), (1., 0.), (0., 1.)]);
    let (code, _, err) = run(bin().args(["peel", "--input"]).arg(&bowtie));
    assert_eq!(code, 2);
    assert!(err.contains("not simple"), "{err}");

    let (code, _, err) = run(bin().args(["peel", "--input"]).arg(&sq).args(["--delta", "0"]));
    assert_eq!(code, 2);
    assert!(err.contains("delta"));

    let (code, _, _) = run(bin().args(["peel", "--bogus"]));
    assert_eq!(code, 2);
}

#[test]
fn all_aborted_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let sq = square_file(dir.path());
    let (code, out, err) = run(bin().args(["peel", "--input"]).arg(&sq).args(["--delta", "0.5", "--c3", "1e-4"]));
    assert_eq!(code, 3);
    assert!(err.contains("edge cap"));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["iterations_aborted_by_cap"], 3);
    assert_eq!(v["area"], 0.0);
}

#[test]
fn seed_and_mode_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let sq = square_file(dir.path());
    let args = ["--delta", "0.5", "--no-timing"];
    let (_, by_flag, _) = run(bin().args(["peel", "--input"]).arg(&sq).args(args).args(["--seed", "5"]));
    let (_, by_env, _) = run(bin().args(["peel", "--input"]).arg(&sq).args(args).env("PEEL_SEED", "5"));
    assert_eq!(by_flag, by_env);
    // The flag wins over the environment.
    let (_, both, _) = run(bin().args(["peel", "--input"]).arg(&sq).args(args).args(["--seed", "5"]).env("PEEL_SEED", "6"));
    assert_eq!(by_flag, both);

    let m = dir.path().join("m.json");
    let (code, _, _) = run(bin()
        .args(["peel", "--input"])
        .arg(&sq)
        .args(args)
        .args(["--max-repeat", "1", "--manifest"])
        .arg(&m)
        .env("PEEL_MODE", "paper")
        .args(["--c1", "1", "--epsilon", "0.9"]));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&m).unwrap()).unwrap();
    assert_eq!(v["config"]["mode"], "paper");
    assert_eq!(v["config"]["skip_dominated"], false);
    assert_eq!(v["config"]["c1"], 1.0);
}

#[test]
fn manifest_next_to_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let sq = square_file(dir.path());
    let json = dir.path().join("r.json");
    let svg = dir.path().join("r.svg");
    let (code, _, _) = run(bin()
        .args(["peel", "--input"])
        .arg(&sq)
        .args(["--delta", "0.5", "--json"])
        .arg(&json)
        .arg("--svg")
        .arg(&svg));
    assert_eq!(code, 0);
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["subcommand"], "peel");
    assert_eq!(m["input_hash"].as_str().unwrap().len(), 16);
    assert_eq!(m["outputs"].as_array().unwrap().len(), 2);
    assert_eq!(m["config"]["delta"], 0.5);
}

#[test]
fn other_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let sq = square_file(dir.path());

    let (code, out, _) = run(bin().args(["vgraph", "--input"]).arg(&sq).args(["--points", "5", "--seed", "3"]));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 5);
    assert_eq!(v["edges"].as_array().unwrap().len(), 10);

    let (code, out, _) = run(bin().args(["probe", "--input"]).arg(&sq).args(["--trials", "300"]));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["p_hat"], 1.0);
    assert_eq!(v["trials"], 300);
    let (code, _, err) = run(bin().args(["probe", "--input"]).arg(&sq).args(["--trials", "10"]));
    assert_eq!(code, 2);
    assert!(err.contains("trials"));

    let (code, out, _) = run(bin().args(["oracle", "--family", "comb", "--teeth", "4"]));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["astar_lower"].as_f64().unwrap() <= v["astar_upper"].as_f64().unwrap());
    // The oracle output is itself a valid polygon input.
    let p: SimplePolygon<f64> = polygon_from_json(&out).unwrap();
    assert_eq!(p.len(), 16);

    let (code, out, _) = run(bin().args(["bench", "--sizes", "8", "--delta", "0.5"]));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    let (code, _, _) = run(bin().args(["bench", "--sizes", "16,8"]));
    assert_eq!(code, 2);
}

#[test]
fn in_process_dispatch() {
    assert_eq!(parse_and_dispatch(["potato", "oracle", "--family", "nope"]), 2);
}

/// Coordinates of the `d` attribute of the path with the given id.
fn path_points(svg: &str, id: &str) -> Vec<Point2<f64>> {
    let start = svg.find(&format!("id=\"{id}\" d=\"")).unwrap() + id.len() + 9;
    let d = &svg[start..start + svg[start..].find('"').unwrap()];
    let nums: Vec<f64> = d
        .split([' ', 'M', 'L', 'Z'])
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().unwrap())
        .collect();
    nums.chunks(2).map(|c| Point2::new(c[0], c[1])).collect()
}

#[test]
fn lshape_solution_inside_polygon_bounds() {
    let p = l_shape::<f64>();
    let sol = [
        Point2::new(0.0, 0.0),
        Point2::new(2.0, 0.0),
        Point2::new(2.0, 1.0),
        Point2::new(0.0, 1.0),
    ];
    for i in 0..4 {
        assert!(segment_in_polygon(&p, Segment::new(sol[i], sol[(i + 1) % 4])));
    }
    let svg = render_svg(
        &p,
        &Overlays {
            solution: Some(&sol),
            ..Default::default()
        },
    );
    let poly = path_points(&svg, "polygon");
    let s = path_points(&svg, "solution");
    assert_eq!(poly.len(), 6);
    let (min_x, max_x) = poly.iter().fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.x), b.max(p.x)));
    let (min_y, max_y) = poly.iter().fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.y), b.max(p.y)));
    for q in s {
        assert!(q.x >= min_x && q.x <= max_x && q.y >= min_y && q.y <= max_y);
    }
}
