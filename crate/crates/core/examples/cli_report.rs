//! Drives the command-line front end in-process and reads the JSON report back.
//!
//!     cargo run --example cli_report

use sextic_freud::cli::{run, ReportEnvelope};

fn main() {
    let args = ["sextic-freud", "recurrence", "--t1", "1", "--t2", "-1", "--n", "6", "--digits", "20", "--format", "json"];
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(args, &mut out, &mut err);
    if code != 0 {
        eprintln!("{}", String::from_utf8_lossy(&err));
        std::process::exit(code);
    }
    let report = ReportEnvelope::from_json(std::str::from_utf8(&out).expect("utf-8")).expect("valid report");
    println!("{} {} ({} rows)", report.tool, report.command, report.rows.len());
    let beta = report.column("beta_n").expect("beta column");
    for row in &report.rows {
        println!("n = {:>2}  beta_n = {}", row[0], row[beta]);
    }
}
