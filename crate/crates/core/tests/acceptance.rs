//! One line per acceptance criterion, each decided by exact equality.

use lf_core::harness::{run_check, CheckParams, CheckReport, CheckSpec};
use std::io::Write;
use std::path::PathBuf;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

fn run(name: &str, params: CheckParams) -> CheckReport {
    let spec = CheckSpec::new(name, params)
        .expect("registered check")
        .with_golden_dir(golden_dir());
    run_check(&spec).expect("check runs")
}

fn line(n: usize, what: &str, reports: &[CheckReport]) -> bool {
    let pass = reports.iter().all(CheckReport::passed);
    let detail: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{} trials={} failures={} elapsed_ms={}",
                r.check,
                r.trials,
                r.failures.len(),
                r.elapsed_ms
            )
        })
        .collect();
    let _ = writeln!(
        std::io::stdout().lock(),
        "criterion {n} {what}: {} ({})",
        if pass { "PASS" } else { "FAIL" },
        detail.join("; ")
    );
    pass
}

#[test]
fn acceptance() {
    let base = CheckParams::default();
    let with = |levels: i32, trials: usize| CheckParams {
        levels,
        trials,
        ..base.clone()
    };
    let results = [
        line(
            1,
            "mu-chain",
            &[run("mu-chain", with(2, 1)), run("mu-chain", with(1, 1))],
        ),
        line(
            2,
            "intertwiner-trace",
            &[run("intertwiner-trace", with(2, 1))],
        ),
        line(3, "unitality", &[run("unitality", base.clone())]),
        line(
            4,
            "associativity-symmetry",
            &[run("associativity-symmetry", base.clone())],
        ),
        line(
            5,
            "mu-equivariance",
            &[run("mu-equivariance", base.clone())],
        ),
        line(6, "action-laws", &[run("action-laws", base.clone())]),
        line(
            7,
            "fourier suite",
            &[
                run("fourier-involution", base.clone()),
                run("parseval", base.clone()),
            ],
        ),
        line(
            8,
            "oracle-integration",
            &[run("oracle-integration", base.clone())],
        ),
        line(
            9,
            "intertwiner-unit",
            &[run("intertwiner-unit", with(2, 10))],
        ),
    ];
    let passed = results.iter().filter(|p| **p).count();
    let _ = writeln!(
        std::io::stdout().lock(),
        "acceptance: {passed}/{} criteria pass",
        results.len()
    );
    assert!(results.iter().all(|p| *p));
}
