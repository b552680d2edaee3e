//! Acceptance criteria. Each test prints one `[PASS]` or `[FAIL]` line,
//! followed by witness rows when it fails, then asserts.
//!
//! cargo test -p wpolar-core --test acceptance -- --nocapture --test-threads=1

mod common;

use std::collections::BTreeSet;

use common::prufer_chemical_codes;
use wpolar_core::enumerate::all_chemical_trees;
use wpolar_core::extremal::{family_catalog, wp_from_census, EdgeTypeCensus, FamilyError};
use wpolar_core::harness::{
    verify_bounds, verify_rules, verify_wp_equivalence, BoundCampaign, BoundRow, ReportRows,
    VerificationReport, Violation,
};

const SHOWN: usize = 12;

fn verdict(id: u32, title: &str, ok: bool, summary: &str, witnesses: &[String]) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {title}: {summary}");
    if !ok {
        for w in witnesses.iter().take(SHOWN) {
            println!("    {w}");
        }
        if witnesses.len() > SHOWN {
            println!("    ... {} more", witnesses.len() - SHOWN);
        }
    }
    assert!(ok, "criterion {id} failed: {summary}");
}

fn describe(v: &Violation) -> String {
    match &v.witness {
        Some(w) => format!("{} {} {} | {}", v.kind, v.key, v.detail, w),
        None => format!("{} {} {}", v.kind, v.key, v.detail),
    }
}

fn bound_rows(report: &VerificationReport) -> &[BoundRow] {
    match &report.rows {
        ReportRows::Bounds(rows) => rows,
        _ => panic!("{} did not produce bound rows", report.campaign),
    }
}

/// Checks a bound campaign: every row inside `in_scope` carries a formula,
/// matches, and has an attaining witness.
fn bound_criterion(
    id: u32,
    title: &str,
    report: &VerificationReport,
    in_scope: impl Fn(&BoundRow) -> bool,
) {
    let rows = bound_rows(report);
    let scoped: Vec<&BoundRow> = rows.iter().filter(|r| in_scope(r)).collect();
    let unevaluated: Vec<String> = scoped
        .iter()
        .filter(|r| r.formula.is_none())
        .map(|r| format!("no formula at n={} param={}: {}", r.n, r.parameter, r.note))
        .collect();
    let failing: Vec<&&BoundRow> = scoped
        .iter()
        .filter(|r| r.matches == Some(false) || r.witness_attains == Some(false))
        .collect();
    let empirical = rows.len() - scoped.len();
    let mut witnesses = unevaluated.clone();
    witnesses.extend(report.violations.iter().map(describe));
    let ok = !scoped.is_empty() && unevaluated.is_empty() && failing.is_empty();
    let summary = format!(
        "{} checked rows, {} failing, {} empirical-only rows, {} violations",
        scoped.len(),
        failing.len(),
        empirical,
        report.violations.len()
    );
    verdict(id, title, ok, &summary, &witnesses);
}

#[test]
fn criterion_1_dual_definition() {
    let report = verify_wp_equivalence(4, 14).unwrap();
    let ReportRows::WpEquiv(rows) = &report.rows else {
        panic!("wrong rows");
    };
    let trees: usize = rows.iter().map(|r| r.trees).sum();
    let ok = report.passed() && rows.len() == 11 && trees == 3321;
    let witnesses: Vec<String> = report.violations.iter().map(describe).collect();
    verdict(
        1,
        "W_p edge formula equals distance-3 pair count, 4 <= n <= 14",
        ok,
        &format!("{trees} trees, {} mismatches", report.violations.len()),
        &witnesses,
    );
}

#[test]
fn criterion_2_max_given_branching() {
    let report = verify_bounds(7, 14, BoundCampaign::MaxB).unwrap();
    // Formula range: b >= 1 and b < (n - 2) / 2.
    bound_criterion(2, "max W_p over CT*(n,b), 7 <= n <= 14", &report, |r| {
        r.parameter >= 1 && 2 * r.parameter + 2 < r.n
    });
}

#[test]
fn criterion_3_min_given_branching() {
    let report = verify_bounds(7, 14, BoundCampaign::MinB).unwrap();
    bound_criterion(3, "min W_p over CT*(n,b), 7 <= n <= 14, 1 <= b <= n/2 - 1", &report, |r| {
        r.parameter >= 1 && 2 * r.parameter + 2 <= r.n
    });
}

#[test]
fn criterion_4_max_given_segments() {
    let report = verify_bounds(7, 16, BoundCampaign::MaxK).unwrap();
    bound_criterion(4, "max W_p over CT(n,k), 7 <= n <= 16, 3 <= k <= n - 2", &report, |r| {
        r.parameter >= 3 && r.parameter + 2 <= r.n
    });
}

#[test]
fn criterion_5_enumeration_oracle() {
    let expected = [2, 3, 5, 9, 18, 35, 75, 159, 355];
    let mut witnesses = Vec::new();
    for (n, &count) in (4..=12).zip(&expected) {
        let codes: Vec<_> = all_chemical_trees(n).map(|t| t.canonical_form()).collect();
        let distinct: BTreeSet<_> = codes.iter().cloned().collect();
        if codes.len() != count || distinct.len() != count {
            witnesses.push(format!("n={n}: {} trees ({} distinct), expected {count}", codes.len(), distinct.len()));
        }
        if n <= 9 && distinct != prufer_chemical_codes(n) {
            witnesses.push(format!("n={n}: differs from Prüfer oracle"));
        }
    }
    verdict(
        5,
        "counts 2..355 for n = 4..12, Prüfer oracle agreement for n <= 9",
        witnesses.is_empty(),
        &format!("{} discrepancies", witnesses.len()),
        &witnesses,
    );
}

fn rule_rows(report: &VerificationReport) -> &[wpolar_core::harness::RuleRow] {
    match &report.rows {
        ReportRows::Rules(rows) => rows,
        _ => panic!("wrong rows"),
    }
}

#[test]
fn criterion_6_sign_fidelity() {
    let report = verify_rules(4, 12).unwrap();
    let rows = rule_rows(&report);
    let uncovered: Vec<String> = rows
        .iter()
        .filter(|r| r.sites == 0)
        .map(|r| format!("{} has no sites", r.rule))
        .collect();
    let mut witnesses = uncovered.clone();
    witnesses.extend(
        report
            .violations
            .iter()
            .filter(|v| v.kind == "sign" || v.kind == "constraint")
            .map(describe),
    );
    let per_rule: Vec<String> = rows
        .iter()
        .filter(|r| r.sign_violations + r.constraint_violations > 0)
        .map(|r| format!("{}: {} of {} sites", r.rule, r.sign_violations + r.constraint_violations, r.sites))
        .collect();
    let sites: usize = rows.iter().map(|r| r.sites).sum();
    let bad = witnesses.len() - uncovered.len();
    verdict(
        6,
        "rewrite deltas have the declared sign and keep the constraint, n <= 12",
        witnesses.is_empty(),
        &format!("{sites} sites over {} rules, {bad} violations [{}]", rows.len(), per_rule.join(", ")),
        &witnesses,
    );
}

#[test]
fn criterion_7_closed_forms() {
    let report = verify_rules(4, 12).unwrap();
    let rows = rule_rows(&report);
    let with_formula = ["R1", "R2", "R4", "R5", "R7", "R11", "R13"];
    let mut witnesses = Vec::new();
    let mut summary = Vec::new();
    for id in with_formula {
        let row = rows.iter().find(|r| r.rule == id).unwrap();
        if row.sites == 0 || row.closed_form_sites != row.sites {
            witnesses.push(format!("{id}: closed form evaluated at {} of {} sites", row.closed_form_sites, row.sites));
        }
        summary.push(format!("{id} {}/{}", row.closed_form_sites - row.closed_form_mismatches, row.closed_form_sites));
    }
    witnesses.extend(report.violations.iter().filter(|v| v.kind == "closed-form").map(describe));
    verdict(
        7,
        "closed-form delta equals measured delta, n <= 12",
        witnesses.is_empty(),
        &format!("exact sites: {}", summary.join(", ")),
        &witnesses,
    );
}

#[test]
fn criterion_8_family_census() {
    let mut checked = 0;
    let mut skipped = Vec::new();
    let mut witnesses = Vec::new();
    for family in family_catalog() {
        let name = family.name();
        for n in 1..=20 {
            for p in 0..n {
                if family.validate(n, p).is_err() {
                    continue;
                }
                let predicted = match family.predicted_census(n, p) {
                    Ok(c) => c,
                    Err(FamilyError::Unrealizable { .. }) => {
                        skipped.push(format!("{name}({n},{p})"));
                        continue;
                    }
                    Err(e) => {
                        witnesses.push(format!("{name}({n},{p}): {e}"));
                        continue;
                    }
                };
                let tree = match family.construct(n, p) {
                    Ok(t) => t,
                    Err(e) => {
                        witnesses.push(format!("{name}({n},{p}): census predicted but construction failed: {e}"));
                        continue;
                    }
                };
                checked += 1;
                let measured = EdgeTypeCensus::of(&tree);
                if tree.degree_census() != predicted.degrees {
                    witnesses.push(format!("{name}({n},{p}) degree census {:?} vs {:?} | {tree}", tree.degree_census(), predicted.degrees));
                }
                if measured != predicted.edges {
                    witnesses.push(format!("{name}({n},{p}) edge census {measured:?} vs {:?} | {tree}", predicted.edges));
                }
                if wp_from_census(&predicted.edges) as i64 != predicted.wp || tree.wp_edge() as i64 != predicted.wp {
                    witnesses.push(format!(
                        "{name}({n},{p}) regime {} formula {} = {}, census gives {}, tree gives {}",
                        predicted.regime,
                        predicted.formula,
                        predicted.wp,
                        wp_from_census(&predicted.edges),
                        tree.wp_edge()
                    ));
                }
                if family.constraint().value(&tree) != p {
                    witnesses.push(format!("{name}({n},{p}) has the wrong {}", family.constraint().symbol()));
                }
            }
        }
    }
    let summary = format!(
        "{checked} members checked, {} mismatches, {} unrealizable skipped [{}]",
        witnesses.len(),
        skipped.len(),
        skipped.join(" ")
    );
    verdict(
        8,
        "constructed families match predicted censuses, n <= 20",
        checked > 0 && witnesses.is_empty(),
        &summary,
        &witnesses,
    );
}

#[test]
fn criterion_9_min_for_segments() {
    let report = verify_bounds(7, 14, BoundCampaign::MinKEmpirical).unwrap();
    let ReportRows::MinK(rows) = &report.rows else {
        panic!("wrong rows");
    };
    let checked: Vec<_> = rows.iter().filter(|r| r.checked).collect();
    let expected_cells: usize = (7..=14usize).map(|n| n.saturating_sub(8)).sum();
    let minimizers: usize = checked.iter().map(|r| r.minimizers).sum();
    println!("    n  k  min_wp  class  minimizers");
    for r in &checked {
        println!("    {:<2} {:<2} {:<7} {:<6} {}", r.n, r.k, r.min_wp, r.class_size, r.minimizers);
    }
    let witnesses: Vec<String> = report.violations.iter().map(describe).collect();
    let ok = checked.len() == expected_cells && checked.iter().all(|r| r.all_conform()) && report.passed();
    verdict(
        9,
        "every minimal tree for 7 <= k <= n - 2 has pendent paths of length 1, a degree-4 vertex and the internal-path condition",
        ok,
        &format!("{} (n,k) cells, {minimizers} minimal trees, {} structure violations", checked.len(), report.violations.len()),
        &witnesses,
    );
}
