//! Acceptance gate: one test per advertised guarantee, each printing a
//! single pass/fail line (visible with `--nocapture`, and on failure).
//!
//! The first two criteria drive the compiled binary the way a user would
//! and enforce their wall-clock budgets; the rest exercise the library on
//! seeded corpora so any failure replays deterministically.

use hpinv_core::algebra::{substitute_arc, BivariatePoly, GaussianRational, Trunc};
use hpinv_core::corpus;
use hpinv_core::germ::singular_cone_lines;
use hpinv_core::invariant::{compare, invariant, invariants_equal, DistinctReason, Verdict};
use hpinv_core::newton_puiseux::expand_branches;
use hpinv_core::oracle::cross_check;
use hpinv_core::parser::{format_poly, parse_poly};
use hpinv_core::Ctx;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

/// Print the criterion's verdict line; fail the test if anything broke.
fn conclude(name: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("[acceptance] {name}: pass");
        return;
    }
    println!("[acceptance] {name}: FAIL");
    for f in &failures {
        println!("  - {f}");
    }
    panic!("{name}: {} check(s) failed", failures.len());
}

fn run_cli(args: &[&str]) -> (String, bool, Duration) {
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_hpinv"))
        .args(args)
        .output()
        .expect("binary should run");
    let elapsed = started.elapsed();
    let stdout = String::from_utf8(out.stdout).expect("stdout should be UTF-8");
    (stdout, out.status.success(), elapsed)
}

/// Criterion 1: the reference family member at d = 2, t = 1 has exactly
/// two polar arcs x = ±y², both tangential to x = 0, with leading terms
/// -y⁶ and 3y⁶ before canonicalization — exact, and in under a second.
#[test]
fn family_reproduction_is_exact_and_fast() {
    let mut failures = Vec::new();
    let (stdout, ok, elapsed) = run_cli(&["invariant", "x^3 - 3*x*y^4 + y^6", "--json"]);
    if !ok {
        failures.push("non-zero exit status".to_string());
    }
    if elapsed > Duration::from_secs(1) {
        failures.push(format!("took {elapsed:?}, budget is 1 s"));
    }
    let doc: Value = serde_json::from_str(stdout.trim()).expect("JSON output");
    let arcs = doc["arcs"].as_array().expect("arcs array");
    if arcs.len() != 2 {
        failures.push(format!("{} polar arcs, expected exactly 2", arcs.len()));
    }
    for (series, c0) in [("y^2", "-1"), ("-y^2", "3")] {
        match arcs.iter().find(|a| a["series"] == series) {
            None => failures.push(format!("no polar arc x = {series}")),
            Some(a) => {
                if a["h0"] != "6" {
                    failures.push(format!("arc {series}: h0 = {}, expected 6", a["h0"]));
                }
                if a["c0"]["exact"] != c0 {
                    failures.push(format!(
                        "arc {series}: c0 = {}, expected {c0}",
                        a["c0"]
                    ));
                }
                if a["tangential"] != true {
                    failures.push(format!("arc {series} not marked tangential"));
                }
            }
        }
    }
    let classes = doc["classes"].as_array().expect("classes array");
    if classes.len() != 1 || classes[0]["line"] != "x=0" {
        failures.push("arcs are not grouped on the single line x=0".to_string());
    }
    conclude("family reproduction (d=2, t=1)", failures);
}

/// Criterion 2: on the Gaussian-integer grid a+bi, a,b in -2..=2, moduli
/// clusters coincide exactly with the relation t⁶ = s⁶, with at least 5
/// distinct classes, in under 30 seconds.
#[test]
fn moduli_grid_matches_sixth_power_classes() {
    let mut failures = Vec::new();
    let (stdout, ok, elapsed) = run_cli(&[
        "moduli",
        "x^3 - 3*t^2*x*y^4 + y^6",
        "--grid-square",
        "-2..2",
        "--json",
    ]);
    if !ok {
        failures.push("non-zero exit status".to_string());
    }
    if elapsed > Duration::from_secs(30) {
        failures.push(format!("took {elapsed:?}, budget is 30 s"));
    }
    let doc: Value = serde_json::from_str(stdout.trim()).expect("JSON output");
    if !doc["degenerate"].as_array().expect("degenerate").is_empty() {
        failures.push(format!("unexpected degenerate points: {}", doc["degenerate"]));
    }
    if !doc["indeterminate"].as_array().expect("indeterminate").is_empty() {
        failures.push(format!("indeterminate points: {}", doc["indeterminate"]));
    }
    let actual: BTreeSet<BTreeSet<String>> = doc["clusters"]
        .as_array()
        .expect("clusters")
        .iter()
        .map(|cl| {
            cl.as_array()
                .expect("cluster list")
                .iter()
                .map(|v| v.as_str().expect("label").to_string())
                .collect()
        })
        .collect();
    let mut by_sixth: BTreeMap<GaussianRational, BTreeSet<String>> = BTreeMap::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            let t = GaussianRational::from_parts(a, 1, b, 1);
            let t2 = &t * &t;
            let t3 = &t2 * &t;
            let t6 = &t3 * &t3;
            by_sixth.entry(t6).or_default().insert(t.to_display_string());
        }
    }
    let expected: BTreeSet<BTreeSet<String>> = by_sixth.into_values().collect();
    if actual != expected {
        failures.push(format!(
            "clusters do not coincide with t^6 classes ({} vs {} classes)",
            actual.len(),
            expected.len()
        ));
    }
    if actual.len() < 5 {
        failures.push(format!("only {} classes, expected at least 5", actual.len()));
    }
    conclude("moduli separation on the 5x5 Gaussian grid", failures);
}

/// Criterion 3: germs of distinct orders always compare as Distinct with
/// the MultiplicityMismatch witness — 50 random pairs, no false passes.
#[test]
fn distinct_orders_always_trip_the_multiplicity_gate() {
    let ctx = Ctx::default();
    let mut r = corpus::rng(714_501);
    let mut failures = Vec::new();
    for case in 0..50 {
        let (f, g) = corpus::distinct_order_pair(&mut r);
        match compare(&f, &g, &ctx) {
            Ok(Verdict::Distinct(DistinctReason::MultiplicityMismatch)) => {}
            other => failures.push(format!(
                "case {case}: {} vs {} gave {other:?}",
                format_poly(&f),
                format_poly(&g)
            )),
        }
    }
    conclude("multiplicity gate on 50 distinct-order pairs", failures);
}

/// Criterion 4: the invariant is empty exactly when the tangent cone is
/// squarefree — 200 random reduced germs, no exceptions.
#[test]
fn empty_invariant_iff_squarefree_cone() {
    let ctx = Ctx::default();
    let mut r = corpus::rng(714_502);
    let mut failures = Vec::new();
    for case in 0..200 {
        let k = r.gen_range(2u32..=4);
        let f = corpus::reduced_germ(&mut r, k);
        let gi = match invariant(&f, &ctx) {
            Ok(gi) => gi,
            Err(e) => {
                failures.push(format!("case {case}: {} failed: {e}", format_poly(&f)));
                continue;
            }
        };
        let singular = match ctx.with_escalation(|c| singular_cone_lines(&gi.profile, c)) {
            Ok(lines) => lines,
            Err(e) => {
                failures.push(format!("case {case}: cone analysis failed: {e}"));
                continue;
            }
        };
        if gi.classes.is_empty() != singular.is_empty() {
            failures.push(format!(
                "case {case}: {}: invariant empty = {}, singular cone lines = {}",
                format_poly(&f),
                gi.classes.is_empty(),
                singular.len()
            ));
        }
    }
    conclude("empty invariant iff squarefree cone (200 germs)", failures);
}

/// Criterion 5: invertible linear changes of coordinates never move the
/// canonical invariant — 100 random germ/map pairs where both sides pass
/// validation.
#[test]
fn linear_coordinate_changes_preserve_the_invariant() {
    let ctx = Ctx::default();
    let mut r = corpus::rng(714_503);
    let mut failures = Vec::new();
    let mut checked = 0usize;
    let mut attempts = 0usize;
    while checked < 100 && attempts < 500 {
        attempts += 1;
        let k = r.gen_range(2u32..=4);
        let f = corpus::reduced_germ(&mut r, k);
        let (a, b, c, d) = corpus::invertible_map(&mut r);
        let g = f.compose_linear(&a, &b, &c, &d);
        let (gi_f, gi_g) = match (invariant(&f, &ctx), invariant(&g, &ctx)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => continue, // the criterion only counts pairs that both validate
        };
        checked += 1;
        let map_text = format!(
            "(x, y) -> ({}*x + {}*y, {}*x + {}*y)",
            a.to_display_string(),
            b.to_display_string(),
            c.to_display_string(),
            d.to_display_string()
        );
        if gi_f.profile.order != gi_g.profile.order {
            failures.push(format!(
                "{} under {map_text}: order changed {} -> {}",
                format_poly(&f),
                gi_f.profile.order,
                gi_g.profile.order
            ));
            continue;
        }
        match ctx.with_escalation(|c2| invariants_equal(&gi_f, &gi_g, c2)) {
            Ok(true) => {}
            Ok(false) => failures.push(format!(
                "{} under {map_text}: canonical invariants differ",
                format_poly(&f)
            )),
            Err(e) => failures.push(format!(
                "{} under {map_text}: undecidable: {e}",
                format_poly(&f)
            )),
        }
    }
    if checked < 100 {
        failures.push(format!(
            "only {checked} valid pairs in {attempts} attempts"
        ));
    }
    conclude("coordinate invariance on 100 germ/map pairs", failures);
}

/// Criterion 6: the floating-point oracle reproduces every symbolic
/// leading exponent within 1e-3 relative and every |c0| within 1e-2
/// relative on the reference corpus.
#[test]
fn numeric_oracle_agrees_on_reference_corpus() {
    let ctx = Ctx::default();
    let mut failures = Vec::new();
    let mut germs: Vec<(String, BivariatePoly)> = Vec::new();
    for (re, im) in [(1i64, 0i64), (2, 0), (1, 1)] {
        for d in [2u32, 3] {
            let t = GaussianRational::from_parts(re, 1, im, 1);
            let name = format!("family t = {}, d = {d}", t.to_display_string());
            germs.push((name, corpus::family_member(&t, d)));
        }
    }
    for text in ["x^2 - y^3", "x^2 - y^5", "x^3 - y^4"] {
        germs.push((text.to_string(), parse_poly(text).expect("reference germ")));
    }
    for (name, f) in &germs {
        match cross_check(f, &ctx) {
            Ok(rep) if rep.pass => {}
            Ok(rep) => {
                for row in rep.rows.iter().filter(|row| !row.pass) {
                    failures.push(format!(
                        "{name}: arc {}: h0 {:.6} vs {:.6}, |c0| {:.6} vs {:.6}",
                        row.arc, row.h0_sym, row.h0_est, row.c0_mod_sym, row.c0_mod_est
                    ));
                }
                if rep.rows.iter().all(|row| row.pass) {
                    failures.push(format!("{name}: oracle gave up: {:?}", rep.notes));
                }
            }
            Err(e) => failures.push(format!("{name}: oracle error: {e}")),
        }
    }
    conclude("numeric oracle on the 9-germ reference corpus", failures);
}

/// Criterion 7: Puiseux expansion conserves multiplicity (branch
/// multiplicities sum to the x-order) and every arc's back-substitution
/// residual vanishes strictly beyond its certificate — 200 random
/// mini-regular germs of x-order up to 6.
#[test]
fn puiseux_expansion_conserves_multiplicity() {
    let ctx = Ctx::default();
    let mut r = corpus::rng(714_504);
    let mut failures = Vec::new();
    for case in 0..200 {
        let m = r.gen_range(2u32..=6);
        let extra = r.gen_range(1usize..=4);
        let g = corpus::mini_regular_germ(&mut r, m, extra);
        // A modest truncation order: conservation is exact whether or not
        // agreeing roots were split apart yet, and shallow prefixes keep
        // the certified zero-tests affordable on planted multiple lines.
        let t0 = BigRational::from_integer(BigInt::from(3));
        let arcs = match ctx.with_escalation(|c| expand_branches(&g, &t0, c)) {
            Ok(arcs) => arcs,
            Err(e) => {
                failures.push(format!(
                    "case {case}: {}: expansion failed: {e}",
                    format_poly(&g)
                ));
                continue;
            }
        };
        let total: usize = arcs.iter().map(|arc| arc.multiplicity).sum();
        if total != m as usize {
            failures.push(format!(
                "case {case}: {}: multiplicities sum to {total}, x-order is {m}",
                format_poly(&g)
            ));
        }
        for arc in &arcs {
            let mut residual = match ctx.with_escalation(|c| substitute_arc(&g, &arc.series, c))
            {
                Ok(s) => s,
                Err(e) => {
                    failures.push(format!(
                        "case {case}: substitution failed on {}: {e}",
                        arc.series.to_text()
                    ));
                    continue;
                }
            };
            let beyond = match residual.resolve_leading(&ctx) {
                Ok(Some((e, _))) => e > arc.residual_floor,
                Ok(None) => match residual.trunc() {
                    Trunc::Infinite => true,
                    Trunc::At(b) => *b > arc.residual_floor,
                },
                Err(e) => {
                    failures.push(format!(
                        "case {case}: residual of {} unresolved: {e}",
                        arc.series.to_text()
                    ));
                    continue;
                }
            };
            if !beyond {
                failures.push(format!(
                    "case {case}: {}: arc {} residual order not beyond floor {}",
                    format_poly(&g),
                    arc.series.to_text(),
                    arc.residual_floor
                ));
            }
        }
    }
    conclude("Puiseux conservation on 200 mini-regular germs", failures);
}
