// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! End-to-end acceptance criteria. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

use std::time::{Duration, Instant};

use maxplus_tc::suite::{run_property, SuiteConfig};
use maxplus_tc::table::{reproduce_table1, CurveTerm};
use maxplus_tc_core::generators::gen_periodic;
use maxplus_tc_core::{
    fit_lambda_nu, merge_traces, superpose_lambda_nu, FitTarget, LambdaNuModel, MergePolicy,
    Rational, TrafficModel,
};

const SEED: u64 = 0x6d61_7870_6c75_7321;

struct Criterion {
    id: u8,
    name: &'static str,
    passed: bool,
    detail: String,
}

fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d).unwrap()
}

fn term(coeff: Rational, offset: i128) -> CurveTerm {
    CurveTerm { coeff, offset }
}

fn table_reproduction() -> (bool, String) {
    // coefficients are multiples of τ
    let expected = [
        (1, None, term(q(1, 2), 1)),
        (2, Some(term(q(1, 2), 2)), term(q(1, 2), 1)),
        (3, Some(term(q(2, 3), 2)), term(q(2, 3), 1)),
        (4, Some(term(q(1, 2), 3)), term(q(2, 3), 1)),
    ];
    let started = Instant::now();
    let rows = match reproduce_table1() {
        Ok(rows) => rows,
        Err(e) => return (false, e.to_string()),
    };
    let cli = maxplus_tc::cli::run(["maxplus-tc", "table1", "--format", "text"]);
    let elapsed = started.elapsed();
    let mut mismatches = Vec::new();
    if rows.len() != expected.len() {
        mismatches.push(format!("{} rows", rows.len()));
    }
    for (row, (case, indirect, direct)) in rows.iter().zip(expected) {
        if row.case_id != case || row.indirect_curve != indirect || row.direct_curve != direct {
            mismatches.push(format!("case {case}: {row:?}"));
        }
    }
    if cli.code != 0 || cli.stdout.lines().count() != 5 {
        mismatches.push(format!(
            "table1 command exited {} with {:?}",
            cli.code, cli.stdout
        ));
    }
    if elapsed >= Duration::from_secs(1) {
        mismatches.push(format!("took {elapsed:?}"));
    }
    (
        mismatches.is_empty(),
        format!("{elapsed:?} {}", mismatches.join("; ")),
    )
}

fn tightness_witness() -> (bool, String) {
    let mut bad = Vec::new();
    let mut cases = 0;
    for tau in [1u64, 2, 7, 10, 64] {
        for count in [2usize, 3, 50] {
            let flow = gen_periodic(tau, 0, count).unwrap();
            let aggregate = merge_traces(&[flow.clone(), flow], MergePolicy::ByFlowIndex)
                .unwrap()
                .trace;
            cases += 1;
            let fit = fit_lambda_nu(&aggregate, FitTarget::Lambda(q(2, tau as i128))).unwrap();
            let single = LambdaNuModel::new(q(1, tau as i128), Rational::ZERO).unwrap();
            let direct = superpose_lambda_nu(&[single, single]).unwrap();
            let fitted_nu = match fit.model {
                TrafficModel::LambdaNu(m) => m.nu(),
                other => panic!("unexpected fit {other:?}"),
            };
            if fitted_nu != Rational::ONE
                || direct.nu() != Rational::ONE
                || direct.lambda() != q(2, tau as i128)
            {
                bad.push(format!(
                    "tau={tau} N={count}: fitted {fitted_nu}, direct {direct}"
                ));
            }
        }
    }
    (
        bad.is_empty(),
        format!("{cases} (tau, N) cases {}", bad.join("; ")),
    )
}

/// Runs named suite properties and requires zero failures within `budget`.
fn properties(names: &[&str], cfg: SuiteConfig, budget: Option<Duration>) -> (bool, String) {
    let started = Instant::now();
    let mut passed = true;
    let mut notes = Vec::new();
    for name in names {
        let outcome = run_property(name, &cfg).expect("known property");
        notes.push(format!(
            "{name}: {}/{} failed",
            outcome.failures, outcome.trials
        ));
        if !outcome.passed() {
            passed = false;
            for c in &outcome.counterexamples {
                let text = c.to_string();
                notes.push(text.chars().take(400).collect());
            }
        }
    }
    let elapsed = started.elapsed();
    if let Some(limit) = budget {
        if elapsed >= limit {
            passed = false;
            notes.push(format!("exceeded {limit:?}"));
        }
    }
    (passed, format!("{elapsed:.2?} {}", notes.join("; ")))
}

fn cfg(trials: u64, max_flows: usize, max_packets: usize) -> SuiteConfig {
    SuiteConfig {
        seed: SEED,
        trials,
        max_flows,
        max_packets,
    }
}

fn main() {
    let mut results = Vec::new();
    let mut record = |id, name, (passed, detail): (bool, String)| {
        results.push(Criterion {
            id,
            name,
            passed,
            detail,
        });
    };

    record(1, "table reproduction", table_reproduction());
    record(
        2,
        "direct superposition soundness",
        properties(
            &["lambda_nu_superposition"],
            cfg(500, 5, 500),
            Some(Duration::from_secs(30)),
        ),
    );
    record(3, "direct superposition tightness", tightness_witness());
    record(
        4,
        "mappings between (lambda, nu) and TSpec",
        properties(
            &["tspec_to_lambda_nu_mapping", "lambda_nu_to_tspec_mapping"],
            cfg(200, 5, 500),
            None,
        ),
    );
    record(
        5,
        "composition equals merge",
        properties(&["aggregate_composition"], cfg(100, 3, 12), None),
    );
    record(
        6,
        "convolution check equivalence",
        properties(&["convolution_check_equivalence"], cfg(200, 5, 500), None),
    );
    record(
        7,
        "(sigma, rho) superposition soundness",
        properties(&["sigma_rho_superposition"], cfg(200, 5, 500), None),
    );
    record(
        8,
        "indirect dominance",
        properties(&["indirect_dominance"], cfg(200, 5, 500), None),
    );
    record(
        9,
        "TSpec superposition soundness",
        properties(&["tspec_superposition"], cfg(200, 5, 500), None),
    );
    record(
        10,
        "curve reduction validity",
        properties(&["curve_reduction_validity"], cfg(100, 5, 500), None),
    );

    for c in &results {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        println!("{verdict} [{:>2}] {} ({})", c.id, c.name, c.detail.trim());
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
