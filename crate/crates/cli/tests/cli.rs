use std::process::{Command, Output};

const ORDER10: &str = "(10,0;(1,2),(2,5),(1,10))";
const ORDER8: &str = "(8,0;(1,2),(3,8),(1,8))";
const ORDER5: &str = "(5,0;(2,5),(2,5),(1,5))";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_branchloci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn validate_examples() {
    let o = run(&["validate", ORDER10]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["valid"], true);
    assert_eq!(v["genus"], 2);
    assert_eq!(v["class"]["kind"], "Type1");
    assert_eq!(v["class"]["irreducible"], true);

    let o = run(&["validate", "(10,0;(1,2),(1,5),(1,10))"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["condition"], "v");

    let o = run(&["validate", "("]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
}

#[test]
fn pretty_output() {
    let o = run(&["validate", ORDER10, "--pretty"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Type1-irreducible"));
    let o = run(&["fn", ORDER8, "--pretty"]);
    assert!(stdout(&o).contains("2*arcosh(1+sqrt(2))"));
}

#[test]
fn classify_examples() {
    let o = run(&["classify", "(4,0;(1,2),(1,2),(1,4),(3,4))"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["kind"], "Type2");
    let o = run(&["classify", "(6,1,1;)"]);
    assert_eq!(json(&o)["kind"], "Rotational");
    assert_eq!(code(&run(&["classify", "(10,0;(1,2),(1,5),(1,10))"])), 1);
}

#[test]
fn fn_examples() {
    let o = run(&["fn", ORDER10]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let expected = [2.765143, 2.765143, 3.233843, 2.216169, 2.216169, -1.616922];
    let got: Vec<f64> = v["lengths"]
        .as_array()
        .unwrap()
        .iter()
        .chain(v["twists"].as_array().unwrap())
        .map(|x| x.as_f64().unwrap())
        .collect();
    for (g, e) in got.iter().zip(expected) {
        assert!((g - e).abs() < 1e-6);
    }
    assert_eq!(v["closed_forms"][5], "-arcosh((3+sqrt(5))/2)");
    assert_eq!(v["decimals"][0], "2.76514261815806");
    assert_eq!(v["convention"], "twist-as-signed-length");

    let five = run(&["fn", ORDER5]);
    assert_eq!(code(&five), 0);
    assert_eq!(five.stdout, o.stdout);

    let o = run(&["fn", "(12,0;(1,3),(1,4),(5,12))"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("polygon module"));
    assert_eq!(code(&run(&["fn", "(4,0;(1,2),(1,2),(1,4),(3,4))"])), 2);
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["fn", ORDER8],
        vec![
            "locus", "--alpha", "0.5", "0.9", "--s", "3", "5", "--steps", "4",
        ],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

fn locus_rows(o: &Output) -> Vec<Vec<f64>> {
    let text = stdout(o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("alpha,s,gamma1,gamma2,t,gamma2_residual")
    );
    lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn locus_round_trip() {
    let o = run(&[
        "locus", "--alpha", "0.3", "1.0", "--s", "2.6", "4.0", "--steps", "10",
    ]);
    assert_eq!(code(&o), 0);
    let rows = locus_rows(&o);
    assert!(!rows.is_empty() && rows.len() <= 100);
    for r in &rows {
        let p = branchloci_core::fnpipe::branch_locus_point(r[0], r[1]).unwrap();
        assert_eq!((p.gamma1(), p.gamma2(), p.t()), (r[2], r[3], r[4]));
        assert_eq!(p.coords.twists[2], -p.coords.twists[0]);
        assert_eq!(p.coords.lengths[0], p.coords.lengths[2]);
    }
}

/// The residual column compares the two routes to `cosh γ2`; the stated
/// budget is kept.
#[test]
fn locus_residuals_within_budget() {
    let o = run(&[
        "locus", "--alpha", "0.3", "1.0", "--s", "2.6", "4.0", "--steps", "10",
    ]);
    let worst = locus_rows(&o).iter().map(|r| r[5]).fold(0.0, f64::max);
    assert!(worst < 1e-9, "max residual {worst:e}");
}

#[test]
fn locus_rejections() {
    let o = run(&["locus", "--alpha", "1.2", "--s", "3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped"));
}

#[test]
fn locus_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("locus.csv");
    let o = run(&[
        "locus",
        "--alpha",
        "0.7",
        "--s",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn render_pants_diagram() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.svg");
    let o = run(&[
        "render",
        ORDER10,
        "--what",
        "polygon+pants",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"class="side""#).count(), 10);
    assert_eq!(svg.matches(r#"class="pants-curve""#).count(), 3);
    assert_eq!(svg.matches(r#"class="boundary""#).count(), 1);
    for j in 1..=10 {
        assert!(svg.contains(&format!(">M{j}</text>")), "M{j}");
    }
    assert!(svg.contains(">P1</text>") && svg.contains(">Q1</text>"));
    // sides are true arcs
    assert!(svg.contains(" A "));
}

#[test]
fn render_polygon_and_rejections() {
    let o = run(&["render", ORDER8]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches(r#"class="side""#).count(), 8);
    assert_eq!(code(&run(&["render", ORDER8, "--size", "0"])), 1);
    assert_eq!(code(&run(&["render", ORDER8, "--size", "63"])), 1);
    assert_eq!(code(&run(&["render", ORDER8, "--size", "64"])), 0);
    assert_eq!(code(&run(&["render", "--what", "polygon"])), 1);
    let o = run(&["render", ORDER8, "--out", "/nonexistent-dir/x.svg"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn render_locus_plot() {
    let o = run(&[
        "render",
        "--what",
        "locus-plot",
        "--alpha",
        "0.5",
        "0.9",
        "--s",
        "3",
        "6",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).matches("<polyline").count() >= 3);
    assert_eq!(
        code(&run(&["render", "--what", "locus-plot", "--alpha", "1.2"])),
        2
    );
}

#[test]
fn selftest_negative_control() {
    let o = run(&["selftest", "--tolerance", "1e-15"]);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_eq!(v["passed"], false);
    assert!(!v["failed"].as_array().unwrap().is_empty());
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
}

#[test]
fn selftest_fresh_build_passes() {
    let start = std::time::Instant::now();
    let o = run(&["selftest"]);
    assert!(start.elapsed().as_secs_f64() < 10.0);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}
