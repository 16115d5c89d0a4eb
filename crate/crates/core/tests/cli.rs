use std::process::{Command, Output};

use sextic_freud::cli::{read_csv_rows, ReportEnvelope};
use sextic_freud::numerics::PrecisionContext;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sextic-freud"));
    cmd.env_remove("SEXTIC_FREUD_DIGITS").env("SOURCE_DATE_EPOCH", "1700000000");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> ReportEnvelope {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    ReportEnvelope::from_json(&stdout(&out)).unwrap()
}

#[test]
fn moments_table() {
    let out = run(&["moments", "--t1", "0", "--t2", "0", "--max-order", "8", "--digits", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = read_csv_rows(&stdout(&out)).unwrap();
    assert_eq!(header, vec!["j", "mu_j"]);
    assert_eq!(rows.len(), 9);
    for row in rows.iter().filter(|r| r[0].parse::<usize>().unwrap() % 2 == 1) {
        assert_eq!(row[1], "0");
    }
    // sqrt(pi)/3 to 30 digits
    let ctx = PrecisionContext::new(30, 30).unwrap();
    let expected = ctx.format(&(ctx.pi().sqrt() / 3u32), 30);
    assert_eq!(rows[2][1], expected);
}

#[test]
fn json_has_rows_and_config_and_round_trips() {
    let out = run(&["moments", "--max-order", "4", "--format", "json"]);
    let text = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(value["rows"].is_array());
    assert_eq!(value["config"]["max-order"], "4");
    let env = ReportEnvelope::from_json(&text).unwrap();
    assert_eq!(env.to_json() + "\n", text);
}

#[test]
fn recurrence_rows() {
    let env = json(&["recurrence", "--t1", "0", "--t2", "0", "--n", "6"]);
    assert_eq!(env.columns, vec!["n", "beta_n", "h_n", "p_n", "r_n", "R_n", "log_D_n"]);
    assert_eq!(env.rows.len(), 7);
    let first = &env.rows[0];
    assert_eq!((first[1].as_str(), first[3].as_str(), first[6].as_str()), ("0", "0", "0"));
    assert!(env.rows[1][1].starts_with("3.18424"), "{}", env.rows[1][1]);

    // log D_2 = ln(mu_0 mu_2)
    let ctx = PrecisionContext::default();
    let moments = json(&["moments", "--max-order", "2"]);
    let mu0 = ctx.parse(&moments.rows[0][1]).unwrap();
    let mu2 = ctx.parse(&moments.rows[2][1]).unwrap();
    let log_d2 = ctx.parse(&env.rows[2][6]).unwrap();
    assert!((log_d2 - (mu0 * mu2).ln()).abs() < ctx.ten_pow_neg(45));
}

#[test]
fn verify_dpi_passes() {
    let out = run(&["verify", "--check", "dpi", "--t1", "1", "--t2", "-1", "--n", "30", "--digits", "50"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_all_lists_six_checks() {
    let env = json(&["verify", "--check", "all", "--t1", "0", "--t2", "0", "--n", "20"]);
    assert_eq!(env.rows.len(), 6);
    assert_eq!(env.summary["checks"], "dpi,ladder,ode,compat,pform,dt2");
    assert_eq!(env.pass(), Some(true));
    for row in &env.rows {
        assert_eq!((row[1].as_str(), row[2].as_str()), ("2", "18"));
    }
}

#[test]
fn tolerance_flag_changes_the_verdict() {
    let strict = run(&["verify", "--check", "ode", "--n", "12", "--tol", "1e-200"]);
    assert_eq!(strict.status.code(), Some(1));
    let env = ReportEnvelope::from_json(&stdout(&run(&["verify", "--check", "ode", "--n", "12", "--tol", "1e-200", "--format", "json"]))).unwrap();
    assert!(env.summary["worst"].as_str().unwrap().starts_with("ode at n="));
    assert_eq!(env.summary["failed"], "ode");
    let loose = run(&["verify", "--check", "ode", "--n", "12", "--tol", "1e-10"]);
    assert_eq!(loose.status.code(), Some(0));
}

#[test]
fn asympt_reports_orders_and_regime() {
    let env = json(&["asympt", "--quantity", "beta", "--t1", "0", "--t2", "0", "--n-list", "32,64", "--digits", "60"]);
    assert_eq!(env.columns, vec!["n", "exact", "asym", "abs_error", "fitted_order", "regime_flag"]);
    assert_eq!(env.rows[0][5], "single-cut");
    let order: f64 = env.rows[0][4].parse().unwrap();
    assert!(order > 1.0 && order < 5.0);
    assert_eq!(env.rows[1][4], "");

    let env = json(&["asympt", "--quantity", "logD", "--t1", "-1", "--t2", "-1", "--n-list", "8,16"]);
    assert!(env.rows.iter().all(|r| r[5] == "out-of-single-cut"));
    assert_eq!(env.summary["regime"], "out-of-single-cut");
}

#[test]
fn asympt_needs_a_doubling_pair() {
    assert_eq!(run(&["asympt", "--n-list", "10,15"]).status.code(), Some(2));
    assert_eq!(run(&["asympt", "--n-list", "20,10"]).status.code(), Some(2));
}

#[test]
fn sweep_grid_is_row_major_and_deterministic() {
    let args = ["sweep", "--t1-range", "-1:1:3", "--t2-range", "-1:1:3", "--n", "10", "--digits", "30"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let (header, rows) = read_csv_rows(&stdout(&a)).unwrap();
    assert_eq!(header, vec!["t1", "t2", "n", "beta_n"]);
    assert_eq!(rows.len(), 9);
    let ctx = PrecisionContext::new(30, 30).unwrap();
    let coords: Vec<(i64, i64)> = rows
        .iter()
        .map(|r| {
            let t1 = ctx.parse(&r[0]).unwrap().to_f64() as i64;
            let t2 = ctx.parse(&r[1]).unwrap().to_f64() as i64;
            (t1, t2)
        })
        .collect();
    assert_eq!(coords[..3], [(-1, -1), (-1, 0), (-1, 1)]);
    assert_eq!(coords[8], (1, 1));
}

#[test]
fn single_point_sweep_matches_recurrence() {
    for quantity in ["beta_n", "log_D_n", "R_n"] {
        let sweep = json(&["sweep", "--t1", "0.5", "--t2", "-0.25", "--n", "9", "--quantity", quantity]);
        let rec = json(&["recurrence", "--t1", "0.5", "--t2", "-0.25", "--n", "9"]);
        let col = rec.column(quantity).unwrap();
        assert_eq!(sweep.rows.len(), 1);
        assert_eq!(sweep.rows[0][3], rec.rows[9][col]);
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, "# experiment\nt1 = 1\nt2 = -1\nmax_order = 6\ndigits = 20\n").unwrap();
    let env = json(&["moments", "--config", path.to_str().unwrap(), "--digits", "25"]);
    assert_eq!(env.config["t1"], "1");
    assert_eq!(env.config["digits"], "25");
    assert_eq!(env.rows.len(), 7);

    std::fs::write(&path, "colour = blue\n").unwrap();
    assert_eq!(run(&["moments", "--config", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn digits_from_environment_yield_to_flag() {
    let out = bin().env("SEXTIC_FREUD_DIGITS", "20").args(["moments", "--max-order", "2", "--format", "json"]).output().unwrap();
    let env = ReportEnvelope::from_json(&stdout(&out)).unwrap();
    assert_eq!(env.config["digits"], "20");
    let out = bin()
        .env("SEXTIC_FREUD_DIGITS", "20")
        .args(["moments", "--max-order", "2", "--digits", "35", "--format", "json"])
        .output()
        .unwrap();
    let env = ReportEnvelope::from_json(&stdout(&out)).unwrap();
    assert_eq!(env.config["digits"], "35");
}

#[test]
fn output_file_and_fixed_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = run(&["moments", "--max-order", "2", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let env = ReportEnvelope::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(env.timestamp, "2023-11-14T22:13:20Z");
}

#[test]
fn csv_header_is_versioned() {
    let text = stdout(&run(&["moments", "--max-order", "2"]));
    let first = text.lines().next().unwrap();
    assert!(first.starts_with(&format!("# sextic-freud {} schema=1 command=moments", env!("CARGO_PKG_VERSION"))));
}

#[test]
fn exit_codes_for_bad_input_and_exhausted_precision() {
    assert_eq!(run(&["moments", "--t1", "one"]).status.code(), Some(2));
    assert_eq!(run(&["moments", "--digits", "10"]).status.code(), Some(2));
    assert_eq!(run(&["recurrence", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "3"]).status.code(), Some(2));
    let starved = run(&["recurrence", "--n", "80", "--digits", "15", "--guard", "10"]);
    assert_eq!(starved.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&starved.stderr).contains("guard digits"));
}
