use std::process::{Command, Output};

use tensor_roadmap::sampling::GridParams;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensor-roadmap"))
        .args(args)
        .env("TENSOR_ROADMAP_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_cell(table: &str, key: [&str; 3], column: &str) -> String {
    let mut lines = table.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == column).unwrap();
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        if f[0] == key[0] && f[1] == key[1] && f[2] == key[2] {
            return f[col].to_string();
        }
    }
    panic!("no row {key:?}");
}

#[test]
fn table1_cells() {
    let o = run(&["bounds", "--table1"]);
    assert!(o.status.success());
    let t = stdout(&o);
    assert!(t.starts_with("delta,d,epsilon,lb,curr,prev\n"));
    assert_eq!(t.lines().count(), 1 + 4 * 5 * 4);
    assert_eq!(csv_cell(&t, ["0.25", "4", "0.25"], "curr"), "3697");
    assert_eq!(csv_cell(&t, ["0.01", "2", "inf"], "lb"), "734");
    assert_eq!(csv_cell(&t, ["0.1", "2", "1.0"], "curr"), "85");
}

#[test]
fn bounds_json_and_multi_robot() {
    let o = run(&["bounds", "--delta", "0.1", "--epsilon", "inf,5", "--dim", "2", "--multi-robot", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["samples"], "181");
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn empty_epsilon_list_is_a_usage_error() {
    let o = run(&["bounds", "--delta", "0.1", "--epsilon", "", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["bounds", "--delta", "0.1", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn conflicting_flags_rejected_at_parse_time() {
    let o = run(&["bounds", "--table1", "--delta", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["experiment", "--scenario", "open2", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn grid_json_count_matches_closed_form() {
    let o = run(&["grid", "--beta", "0.08", "--gamma", "0.1", "--dim", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let want = GridParams::new(0.08, 0.1, 2).unwrap().point_count().unwrap() as u64;
    assert_eq!(v["count"].as_u64(), Some(want));
    assert_eq!(v["points"].as_array().unwrap().len() as u64, want);
}

#[test]
fn grid_csv_is_byte_stable() {
    let args = ["grid", "--beta", "0.05", "--gamma", "0.07", "--dim", "3"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("x0,x1,x2\n"));
}

#[test]
fn cover_check_passes_on_the_standard_grid() {
    let o = run(&["cover-check", "--beta", "0.08", "--gamma", "0.1", "--dim", "2", "--trials", "100000"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).trim_end().ends_with(": ok"));
}

#[test]
fn plan_with_start_equal_goal_costs_nothing() {
    let o = run(&["plan", "--start", "0.3,0.4", "--goal", "0.3,0.4", "--epsilon", "1", "--delta", "0.1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["path"]["length"].as_f64(), Some(0.0));
}

#[test]
fn plan_respects_the_stretch_bound_in_free_space() {
    let o = run(&["plan", "--start", "0.2,0.2", "--goal", "0.8,0.7", "--epsilon", "0.5", "--delta", "0.1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let opt = (0.6f64 * 0.6 + 0.5 * 0.5).sqrt();
    let len = v["path"]["length"].as_f64().unwrap();
    assert!(len >= opt - 1e-12 && len <= 1.5 * opt, "{len}");
}

#[test]
fn plan_exit_codes() {
    // A wall splitting the square leaves no path.
    let dir = std::env::temp_dir().join(format!("tr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ws = dir.join("wall.json");
    std::fs::write(
        &ws,
        r#"{"dim":2,"obstacles":[{"type":"hyper_box","lo":[0.45,0.0],"hi":[0.55,1.0]}],"inflation":0.0}"#,
    )
    .unwrap();
    let o = run(&[
        "plan",
        "--workspace",
        ws.to_str().unwrap(),
        "--start",
        "0.2,0.5",
        "--goal",
        "0.8,0.5",
        "--epsilon",
        "1",
        "--delta",
        "0.1",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let o = run(&["plan", "--start", "0.2,0.5", "--goal", "0.8,0.5", "--epsilon", "1", "--delta", "0.7"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["plan", "--start", "0.2,0.5", "--goal", "0.8,0.5,0.5", "--epsilon", "1", "--delta", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["mrmp-plan", "--scenario", "no-such-scene", "--epsilon", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["mrmp-plan", "--scenario", "circle4", "--epsilon", "5", "--max-expansions", "10"]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(dir).ok();
}

fn mrmp_cost(args: &[&str]) -> f64 {
    let o = run(args);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    v["path"]["cost"].as_f64().unwrap()
}

#[test]
fn circle4_within_the_stretch_bound() {
    let o = run(&["mrmp-plan", "--scenario", "circle4", "--epsilon", "20", "--validate-steps", "200"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary = stderr(&o);
    let ratio: f64 = summary.split("ratio ").nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
    assert!(ratio <= 21.0 && ratio >= 1.0, "{summary}");
    for field in ["cost", "samples/robot", "expansions", "total"] {
        assert!(summary.contains(field), "{summary}");
    }
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["path"]["trajectories"].as_array().unwrap().len(), 4);
}

#[test]
fn single_move_astar_beats_prioritized() {
    for scene in ["lanes7", "spiral2"] {
        let common = ["mrmp-plan", "--scenario", scene, "--epsilon", "5", "--validate-steps", "200"];
        let astar = mrmp_cost(&[&common[..], &["--move-cap", "1"]].concat());
        let prio = mrmp_cost(&[&common[..], &["--mode", "prioritized"]].concat());
        assert!(astar <= prio + 1e-9, "{scene}: {astar} vs {prio}");
    }
}

#[test]
fn mrmp_plan_is_deterministic_and_renders() {
    let dir = std::env::temp_dir().join(format!("tr-cli-render-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let plan = dir.join("plan.json");
    let svg = dir.join("plan.svg");
    let args = ["mrmp-plan", "--scenario", "open2", "--epsilon", "2", "--validate-steps", "200"];
    let a = run(&[&args[..], &["--output", plan.to_str().unwrap(), "--svg", svg.to_str().unwrap()]].concat());
    assert!(a.status.success(), "{}", stderr(&a));
    let b = run(&args);
    assert_eq!(std::fs::read_to_string(&plan).unwrap(), stdout(&b));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    let r = run(&["render", "--scenario", "open2", "--path", plan.to_str().unwrap()]);
    assert!(r.status.success());
    assert!(stdout(&r).contains("<polyline"));
    let r = run(&["render", "--scenario", "circle4", "--path", plan.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(2));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn experiment_csv_outputs() {
    let args = ["experiment", "--scenario", "lanes7", "--epsilons", "inf,20", "--validate-steps", "100"];
    let a = run(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    let t = stdout(&a);
    assert!(t.starts_with(
        "scenario,epsilon,samples,cost,reference,lower_bound,ratio,runtime_s,expansions,success,status\n"
    ));
    assert_eq!(t.lines().count(), 3);
    assert!(stderr(&a).contains("status=ok"));

    let args = [
        "experiment",
        "--scenario",
        "spiral2",
        "--epsilons",
        "inf,5",
        "--compare-random",
        "--trials",
        "3",
        "--seed",
        "9",
        "--validate-steps",
        "100",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let t = stdout(&a);
    assert!(t.lines().next().unwrap().contains("random_success_rate"));
    assert_eq!(t.lines().count(), 3);
}
