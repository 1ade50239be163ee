use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bidisk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bidisk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn first_line(path: &Path) -> String {
    fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

const ON_AXIS: [&str; 8] = [
    "--z1", "0,1,0,1", "--w1", "0,2,0,3", "--z2", "0,1,0,1", "--w2", "0,0.5,0,0.3333333333333333",
];

#[test]
fn distance_prints_seventeen_digits() {
    let out = bidisk(&["distance", "--z", "0,1", "--w", "0,2"]);
    assert_eq!(code(&out), 0);
    let v: f64 = stdout(&out).trim().parse().unwrap();
    assert!((v - 2f64.ln()).abs() < 1e-15);

    let out = bidisk(&["distance", "--z", "0,1,0,1", "--w", "0,2,0,2"]);
    let v: f64 = stdout(&out).trim().parse().unwrap();
    assert!((v - 2f64.sqrt() * 2f64.ln()).abs() < 1e-15);
}

#[test]
fn invalid_input_is_a_usage_error() {
    assert_eq!(code(&bidisk(&["distance", "--z", "0,-1", "--w", "0,2"])), 2);
    assert_eq!(code(&bidisk(&["distance", "--z", "0,1", "--w", "0,2,0,2"])), 2);
    assert_eq!(code(&bidisk(&["curve", "--z", "0,1,2"])), 2);
    assert_eq!(code(&bidisk(&["verify", "everything"])), 2);
    assert_eq!(code(&bidisk(&["faces", "--g1", "1,1,0,1"])), 2);
    assert_eq!(code(&bidisk(&["nonsense"])), 2);
}

#[test]
fn curve_writes_csv_and_deterministic_svg() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["curve", "--k", "4,0,-4", "--samples", "50", "--out-dir", d];
    assert_eq!(code(&bidisk(&args)), 0);
    let svg = fs::read(dir.path().join("curve.svg")).unwrap();
    for k in ["4", "0", "-4"] {
        assert_eq!(first_line(&dir.path().join(format!("curve_k{k}.csv"))), "t,branch,x,y");
    }
    assert_eq!(code(&bidisk(&args)), 0);
    assert_eq!(fs::read(dir.path().join("curve.svg")).unwrap(), svg);

    let text = String::from_utf8(svg).unwrap();
    assert_eq!(text.matches("<polyline").count(), 3);
    assert_eq!(text.matches("stroke-dasharray").count(), 1);
}

#[test]
fn curve_overlay_adds_a_second_family() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = bidisk(&[
        "curve", "--z", "0,0.5", "--w", "0,1", "--k", "2", "--overlay-z", "0,1", "--overlay-w", "0,2",
        "--overlay-k", "-2", "--out-dir", d,
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(dir.path().join("curve.svg")).unwrap();
    assert_eq!(text.matches(r#"class="curve""#).count(), 1);
    assert_eq!(text.matches(r#"class="overlay""#).count(), 1);
    assert!(dir.path().join("overlay_k-2.csv").exists());
}

#[test]
fn unwritable_output_reports_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let target = blocker.join("sub");
    let out = bidisk(&["curve", "--out-dir", target.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("sub"));
}

#[test]
fn fig4_marks_two_points_and_refuses_on_axis() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fig4.svg");
    let out = bidisk(&["fig4", "--out", svg.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches(r#"class="mark""#).count(), 2);
    assert!(stdout(&out).contains("kappa = 0.124"));

    let out = bidisk(&["fig4", "--z0", "0,1", "--out", svg.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

#[test]
fn intersect_reports_not_found_and_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("w.csv");
    let mut args = vec!["intersect", "--k-min", "-4", "--k-max", "4", "--k-step", "2"];
    args.extend(ON_AXIS);
    assert_eq!(code(&bidisk(&args)), 3);

    let out = bidisk(&[
        "intersect", "--z1", "0.5,0.125,0.5,0.125", "--w1", "1,0.25,1,0.25", "--z2", "1,0.25,1,0.25", "--w2",
        "2,0.5,2,0.5", "--k-min", "10", "--k-max", "10", "--out", csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(first_line(&csv), "l,k,t1,t2,branch1,branch2,x1,y1,x2,y2,residual");
    assert!(fs::read_to_string(&csv).unwrap().lines().count() > 1);
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("search.cfg");
    fs::write(&cfg, "# small grid\nk_min = -3\nk_max = 3\nk_step = 1\n").unwrap();
    let mut args = vec!["intersect", "--config", cfg.to_str().unwrap(), "--k-max", "1"];
    args.extend(ON_AXIS);
    let out = bidisk(&args);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).starts_with("cells: 25 "));

    fs::write(&cfg, "k_stride = 1\n").unwrap();
    assert_eq!(code(&bidisk(&["verify", "metric", "--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn faces_writes_the_experiment_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("faces.csv");
    let out = bidisk(&["faces", "--n", "2", "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("faces: 2\n"));
    assert_eq!(first_line(&csv), "n,k,t1,t2,branch1,branch2,x1,y1,x2,y2,residual");
}

#[test]
fn verify_metric_passes() {
    let out = bidisk(&["verify", "metric"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with("[PASS]")));
    assert!(text.lines().count() >= 5);
}
