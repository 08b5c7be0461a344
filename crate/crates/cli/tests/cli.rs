use std::path::Path;
use std::process::{Command, Output};

fn stackvis(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stackvis"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = stackvis(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn last_value(csv: &str) -> f64 {
    csv.lines().nth(1).unwrap().split(',').last().unwrap().parse().unwrap()
}

#[test]
fn generate_order_and_score() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "grid", "--k", "2", "--out", "p.csv"]);
    assert_eq!(std::fs::read_to_string(d.join("p.csv")).unwrap(), "x,y\n0.0,0.0\n1.0,0.0\n0.0,1.0\n1.0,1.0\n");
    ok(d, &["order", "p.csv", "--strategy", "optimal", "--out", "f.csv", "--diagnostics", "diag.json"]);
    let limit = last_value(&ok(d, &["limit", "p.csv", "f.csv"]));
    assert!((limit - 17.0 * std::f64::consts::PI / 4.0).abs() < 1e-9);
    let diag = std::fs::read_to_string(d.join("diag.json")).unwrap();
    assert!(diag.contains("\"optimal\""));

    let probe = ok(d, &["probe", "p.csv", "f.csv", "--eps", "0.1,0.01,0.001"]);
    let values: Vec<f64> = probe.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values.len(), 3);
    assert!(values.windows(2).all(|w| w[1] <= w[0] + 1e-9));
    assert!(values[2] >= limit - 1e-9);
}

#[test]
fn two_disk_total() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("two.csv"), "x,y\n0,0\n1,0\n").unwrap();
    let total = last_value(&ok(dir.path(), &["vis", "two.csv"]));
    assert!((total - 10.0 * std::f64::consts::PI / 3.0).abs() < 1e-9);
    let per_disk = ok(dir.path(), &["vis", "two.csv", "--per-disk", "--json"]);
    assert_eq!(per_disk.lines().count(), 2);
    assert!(per_disk.starts_with("{\"disk\":0,"));
}

#[test]
fn experiment_output_is_reproducible_and_fits() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["experiment", "grid", "-n", "100,400,900", "-s", "greedy", "--seed", "3"];
    let a = ok(d, &args);
    let b = ok(d, &args);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 4);
    assert!(a.starts_with("generator,n,strategy,metric,value,seed\n"));
    std::fs::write(d.join("r.csv"), &a).unwrap();
    let fit = ok(d, &["fit", "r.csv"]);
    let slope: f64 = fit.lines().nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
    assert!((0.55..0.8).contains(&slope), "{slope}");

    let json = ok(d, &["experiment", "random_dense", "-n", "20,40,80", "-s", "sector", "--seeds", "1,2", "--format", "json", "--timing"]);
    assert_eq!(json.lines().count(), 6);
    assert!(json.lines().all(|l| l.contains("wall_time_s")));
    std::fs::write(d.join("r.jsonl"), &json).unwrap();
    ok(d, &["fit", "r.jsonl", "--json"]);
}

#[test]
fn native_orders_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "concentric", "--k", "4", "--native", "canonical", "--order-out", "f.csv", "--out", "p.csv"]);
    let limit = last_value(&ok(d, &["limit", "p.csv", "f.csv"]));
    assert!(limit >= 16f64.powf(0.75));
    let trace = ok(d, &["limit", "p.csv", "f.csv", "--trace"]);
    assert_eq!(trace.lines().count(), 17);
    ok(d, &["render", "p.csv", "f.csv", "--overlay", "--out", "a.svg"]);
    let svg = std::fs::read_to_string(d.join("a.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), 16);
    assert!(svg.contains("class=\"visible\""));
}

#[test]
fn failures_exit_nonzero_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cases: [&[&str]; 5] = [
        &["experiment", "hexagon", "-n", "9", "-s", "greedy"],
        &["experiment", "grid", "-n", "9", "-s", "fastest"],
        &["vis", "missing.csv"],
        &["gen", "grid", "--k", "3", "--format", "xml"],
        &["gen", "grid", "--k", "3", "--native", "ray", "--order-out", "o.csv"],
    ];
    for args in cases {
        let out = stackvis(d, args);
        assert!(!out.status.success(), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.starts_with("stackvis: "), "{err}");
    }
    let err = String::from_utf8(stackvis(d, &["experiment", "hexagon", "-n", "9", "-s", "greedy"]).stderr).unwrap();
    assert!(err.contains("grid") && err.contains("random_dense"));

    std::fs::write(d.join("p.csv"), "x,y\n0,0\n1,0\n").unwrap();
    std::fs::write(d.join("f.csv"), "rank\n0\n").unwrap();
    assert!(!stackvis(d, &["vis", "p.csv", "f.csv"]).status.success());
}
