//! Verification campaigns: closed-form bounds against exhaustive
//! enumeration, rewrite rules against their declared signs and formulas,
//! and the two Wiener polarity definitions against each other.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::canon::CanonicalCode;
use crate::enumerate::{all_chemical_trees, class_extrema, Constraint};
use crate::extremal::{bound_by_name, family_by_name, BoundError, Direction};
use crate::transforms::{apply, find_sites, rule_catalog, SignClass};
use crate::tree::{ChemicalTree, PathKind, Tree};

/// Largest order the campaigns accept.
pub const ENUMERATION_CEILING: usize = 18;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("invalid order range {n_min}..={n_max} (need 1 <= n_min <= n_max <= {ceiling})")]
    Range { n_min: usize, n_max: usize, ceiling: usize },
    #[error("unknown bound campaign '{0}' (expected max-b, min-b, max-k or min-k-empirical)")]
    UnknownCampaign(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundCampaign {
    MaxB,
    MinB,
    MaxK,
    MinKEmpirical,
}

impl BoundCampaign {
    pub const ALL: [BoundCampaign; 4] = [
        BoundCampaign::MaxB,
        BoundCampaign::MinB,
        BoundCampaign::MaxK,
        BoundCampaign::MinKEmpirical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundCampaign::MaxB => "max-b",
            BoundCampaign::MinB => "min-b",
            BoundCampaign::MaxK => "max-k",
            BoundCampaign::MinKEmpirical => "min-k-empirical",
        }
    }
}

impl FromStr for BoundCampaign {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| HarnessError::UnknownCampaign(s.to_string()))
    }
}

/// One value in a rendered report table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Int(i64),
    Bool(bool),
    Text(String),
    /// Inapplicable; rendered as `n/a`.
    Missing,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Bool(v) => write!(f, "{v}"),
            Cell::Text(v) => f.write_str(v),
            Cell::Missing => f.write_str("n/a"),
        }
    }
}

fn int(v: impl TryInto<i64>) -> Cell {
    Cell::Int(v.try_into().unwrap_or(i64::MAX))
}

fn opt<T>(v: Option<T>, f: impl FnOnce(T) -> Cell) -> Cell {
    v.map_or(Cell::Missing, f)
}

fn text(v: impl ToString) -> Cell {
    Cell::Text(v.to_string())
}

/// Enumerated extremum of one `(n, parameter)` class beside the formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub bound: &'static str,
    pub n: usize,
    pub parameter: usize,
    pub formula: Option<i64>,
    pub regime: Option<u8>,
    pub enumerated: u64,
    pub class_size: usize,
    pub witness_code: CanonicalCode,
    pub family: Option<&'static str>,
    /// `W_p` of the family's constructed witness, when it could be built.
    pub family_wp: Option<u64>,
    pub family_code: Option<CanonicalCode>,
    /// Formula equals enumerated extremum; `None` on empirical rows.
    pub matches: Option<bool>,
    /// Constructed witness attains the formula; `None` on empirical rows.
    pub witness_attains: Option<bool>,
    pub note: String,
}

impl BoundRow {
    const HEADER: [&'static str; 14] = [
        "bound",
        "n",
        "param",
        "formula",
        "regime",
        "enumerated",
        "class_size",
        "witness_code",
        "family",
        "family_wp",
        "family_code",
        "match",
        "witness_attains",
        "note",
    ];

    fn cells(&self) -> Vec<Cell> {
        vec![
            text(self.bound),
            int(self.n),
            int(self.parameter),
            opt(self.formula, int),
            opt(self.regime, int),
            int(self.enumerated),
            int(self.class_size),
            text(&self.witness_code),
            opt(self.family, text),
            opt(self.family_wp, int),
            opt(self.family_code.as_ref(), text),
            opt(self.matches, Cell::Bool),
            opt(self.witness_attains, Cell::Bool),
            text(&self.note),
        ]
    }
}

/// Brute-force minimum for fixed segment count, with the structure of
/// every tree attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinKRow {
    pub n: usize,
    pub k: usize,
    pub min_wp: u64,
    pub class_size: usize,
    pub minimizers: usize,
    /// Minimizers whose pendent paths all have length 1.
    pub pendent_len_one: usize,
    /// Minimizers containing a degree-4 vertex.
    pub with_degree_four: usize,
    /// Minimizers where an internal path of length 1 excludes internal paths longer than 2.
    pub internal_condition: usize,
    /// Whether the structural properties are expected for this `(n, k)`.
    pub checked: bool,
    pub witness_code: CanonicalCode,
}

impl MinKRow {
    const HEADER: [&'static str; 10] = [
        "n",
        "k",
        "min_wp",
        "class_size",
        "minimizers",
        "pendent_len_one",
        "with_degree_four",
        "internal_condition",
        "checked",
        "witness_code",
    ];

    fn cells(&self) -> Vec<Cell> {
        vec![
            int(self.n),
            int(self.k),
            int(self.min_wp),
            int(self.class_size),
            int(self.minimizers),
            int(self.pendent_len_one),
            int(self.with_degree_four),
            int(self.internal_condition),
            Cell::Bool(self.checked),
            text(&self.witness_code),
        ]
    }

    pub fn all_conform(&self) -> bool {
        self.pendent_len_one == self.minimizers
            && self.with_degree_four == self.minimizers
            && self.internal_condition == self.minimizers
    }
}

/// Sweep totals for one rewrite rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleRow {
    pub rule: &'static str,
    pub sign: SignClass,
    pub preserves: Constraint,
    pub trees_with_sites: usize,
    pub sites: usize,
    pub sign_violations: usize,
    pub constraint_violations: usize,
    /// Sites where a closed form was evaluated; zero if the rule has none.
    pub closed_form_sites: usize,
    pub closed_form_mismatches: usize,
    pub min_delta: Option<i64>,
    pub max_delta: Option<i64>,
}

impl RuleRow {
    const HEADER: [&'static str; 11] = [
        "rule",
        "sign",
        "preserves",
        "trees_with_sites",
        "sites",
        "sign_violations",
        "constraint_violations",
        "closed_form_sites",
        "closed_form_mismatches",
        "min_delta",
        "max_delta",
    ];

    fn cells(&self) -> Vec<Cell> {
        vec![
            text(self.rule),
            text(self.sign),
            text(self.preserves.symbol()),
            int(self.trees_with_sites),
            int(self.sites),
            int(self.sign_violations),
            int(self.constraint_violations),
            int(self.closed_form_sites),
            int(self.closed_form_mismatches),
            opt(self.min_delta, int),
            opt(self.max_delta, int),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpRow {
    pub n: usize,
    pub trees: usize,
    pub mismatches: usize,
    pub max_wp: u64,
}

impl WpRow {
    const HEADER: [&'static str; 4] = ["n", "trees", "mismatches", "max_wp"];

    fn cells(&self) -> Vec<Cell> {
        vec![int(self.n), int(self.trees), int(self.mismatches), int(self.max_wp)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReportRows {
    Bounds(Vec<BoundRow>),
    MinK(Vec<MinKRow>),
    Rules(Vec<RuleRow>),
    WpEquiv(Vec<WpRow>),
}

/// A disagreement between a claim and brute force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: &'static str,
    /// Which row it belongs to, e.g. `n=7,b=1` or a rule id.
    pub key: String,
    pub detail: String,
    /// Offending tree in `n:u-v,...` form, when there is one.
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub campaign: String,
    pub n_min: usize,
    pub n_max: usize,
    pub rows: ReportRows,
    pub violations: Vec<Violation>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn header(&self) -> Vec<&'static str> {
        match &self.rows {
            ReportRows::Bounds(_) => BoundRow::HEADER.to_vec(),
            ReportRows::MinK(_) => MinKRow::HEADER.to_vec(),
            ReportRows::Rules(_) => RuleRow::HEADER.to_vec(),
            ReportRows::WpEquiv(_) => WpRow::HEADER.to_vec(),
        }
    }

    pub fn cells(&self) -> Vec<Vec<Cell>> {
        match &self.rows {
            ReportRows::Bounds(r) => r.iter().map(BoundRow::cells).collect(),
            ReportRows::MinK(r) => r.iter().map(MinKRow::cells).collect(),
            ReportRows::Rules(r) => r.iter().map(RuleRow::cells).collect(),
            ReportRows::WpEquiv(r) => r.iter().map(WpRow::cells).collect(),
        }
    }

    /// Concatenates reports of one row kind into a single campaign.
    pub fn merge(campaign: &str, parts: Vec<VerificationReport>) -> VerificationReport {
        let mut out = VerificationReport {
            campaign: campaign.to_string(),
            n_min: parts.iter().map(|p| p.n_min).min().unwrap_or(0),
            n_max: parts.iter().map(|p| p.n_max).max().unwrap_or(0),
            rows: ReportRows::Bounds(Vec::new()),
            violations: Vec::new(),
            elapsed: Duration::ZERO,
        };
        let mut bounds = Vec::new();
        for part in parts {
            out.elapsed += part.elapsed;
            out.violations.extend(part.violations);
            match part.rows {
                ReportRows::Bounds(rows) => bounds.extend(rows),
                other => out.rows = other,
            }
        }
        if !bounds.is_empty() {
            out.rows = ReportRows::Bounds(bounds);
        }
        out
    }
}

fn check_range(n_min: usize, n_max: usize) -> Result<(), HarnessError> {
    if n_min == 0 || n_min > n_max || n_max > ENUMERATION_CEILING {
        return Err(HarnessError::Range {
            n_min,
            n_max,
            ceiling: ENUMERATION_CEILING,
        });
    }
    Ok(())
}

fn describe(err: &BoundError) -> String {
    match err {
        BoundError::Inapplicable { reason, .. } => (*reason).to_string(),
        other => other.to_string(),
    }
}

/// Compares one bound formula with enumeration, or publishes the empirical
/// minimum table for fixed segment count.
pub fn verify_bounds(n_min: usize, n_max: usize, which: BoundCampaign) -> Result<VerificationReport, HarnessError> {
    check_range(n_min, n_max)?;
    let start = Instant::now();
    let (rows, violations) = match which {
        BoundCampaign::MinKEmpirical => {
            let (rows, violations) = min_k_table(n_min, n_max);
            (ReportRows::MinK(rows), violations)
        }
        _ => {
            let (rows, violations) = bound_rows(n_min, n_max, which);
            (ReportRows::Bounds(rows), violations)
        }
    };
    Ok(VerificationReport {
        campaign: which.name().to_string(),
        n_min,
        n_max,
        rows,
        violations,
        elapsed: start.elapsed(),
    })
}

fn bound_rows(n_min: usize, n_max: usize, which: BoundCampaign) -> (Vec<BoundRow>, Vec<Violation>) {
    let bound = bound_by_name(which.name()).expect("every formula campaign has a registered bound");
    let constraint = bound.constraint();
    let symbol = constraint.symbol();
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for n in n_min..=n_max {
        for (p, extrema) in class_extrema(n, constraint) {
            let (enumerated, witness) = match bound.direction() {
                Direction::Upper => (extrema.max_wp, &extrema.max_witness),
                Direction::Lower => (extrema.min_wp, &extrema.min_witness),
            };
            let mut row = BoundRow {
                bound: bound.name(),
                n,
                parameter: p,
                formula: None,
                regime: None,
                enumerated,
                class_size: extrema.class_size,
                witness_code: witness.canonical_form(),
                family: None,
                family_wp: None,
                family_code: None,
                matches: None,
                witness_attains: None,
                note: String::new(),
            };
            let key = format!("n={n},{symbol}={p}");
            match bound.evaluate(n, p) {
                Err(err) => row.note = format!("empirical only: {}", describe(&err)),
                Ok(_) if which == BoundCampaign::MaxK && p + 1 == n => {
                    let value = bound.evaluate(n, p).map(|r| r.value).unwrap_or_default();
                    row.note = format!("empirical only: k = n-1 boundary, case value {value}");
                }
                Ok(result) => {
                    row.formula = Some(result.value);
                    row.regime = Some(result.regime);
                    row.family = Some(result.family);
                    let matches = result.value == enumerated as i64;
                    row.matches = Some(matches);
                    if !matches {
                        violations.push(Violation {
                            kind: "formula",
                            key: key.clone(),
                            detail: format!(
                                "{} gives {} (regime {}), enumeration gives {}",
                                result.formula, result.value, result.regime, enumerated
                            ),
                            witness: Some(witness.to_string()),
                        });
                    }
                    let family = family_by_name(result.family).expect("bounds name registered families");
                    match family.construct(n, p) {
                        Ok(t) => {
                            let wp = t.wp_edge();
                            let attains = wp as i64 == result.value;
                            row.family_wp = Some(wp);
                            row.family_code = Some(t.canonical_form());
                            row.witness_attains = Some(attains);
                            if !attains {
                                violations.push(Violation {
                                    kind: "witness",
                                    key: key.clone(),
                                    detail: format!("{} witness has W_p {} but the bound is {}", result.family, wp, result.value),
                                    witness: Some(t.to_string()),
                                });
                            }
                        }
                        Err(err) => {
                            row.witness_attains = Some(false);
                            row.note = err.to_string();
                            violations.push(Violation {
                                kind: "witness",
                                key: key.clone(),
                                detail: format!("no {} witness: {err}", result.family),
                                witness: None,
                            });
                        }
                    }
                }
            }
            rows.push(row);
        }
    }
    (rows, violations)
}

fn satisfies_internal_condition(tree: &Tree) -> bool {
    let Ok(paths) = tree.classify_paths() else {
        return true;
    };
    let internal: Vec<usize> = paths
        .iter()
        .filter(|p| p.kind == PathKind::Internal)
        .map(|p| p.length)
        .collect();
    !(internal.contains(&1) && internal.iter().any(|&l| l > 2))
}

fn pendent_paths_are_edges(tree: &Tree) -> bool {
    tree.classify_paths()
        .map(|paths| paths.iter().all(|p| p.kind != PathKind::Pendent || p.length == 1))
        .unwrap_or(false)
}

fn min_k_table(n_min: usize, n_max: usize) -> (Vec<MinKRow>, Vec<Violation>) {
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for n in n_min..=n_max {
        // k -> (min W_p, class size, trees attaining the min)
        let mut classes: BTreeMap<usize, (u64, usize, Vec<ChemicalTree>)> = BTreeMap::new();
        for tree in all_chemical_trees(n) {
            let k = tree.segment_count();
            let wp = tree.wp_edge();
            let entry = classes.entry(k).or_insert((wp, 0, Vec::new()));
            entry.1 += 1;
            if wp < entry.0 {
                entry.0 = wp;
                entry.2.clear();
            }
            if wp == entry.0 {
                entry.2.push(tree);
            }
        }
        for (k, (min_wp, class_size, minimizers)) in classes {
            let checked = k >= 7 && k + 2 <= n;
            let row = MinKRow {
                n,
                k,
                min_wp,
                class_size,
                minimizers: minimizers.len(),
                pendent_len_one: minimizers.iter().filter(|t| pendent_paths_are_edges(t)).count(),
                with_degree_four: minimizers.iter().filter(|t| t.max_degree() == 4).count(),
                internal_condition: minimizers.iter().filter(|t| satisfies_internal_condition(t)).count(),
                checked,
                witness_code: minimizers[0].canonical_form(),
            };
            if checked {
                for t in &minimizers {
                    let failed: Vec<&str> = [
                        (pendent_paths_are_edges(t), "pendent path longer than 1"),
                        (t.max_degree() == 4, "no degree-4 vertex"),
                        (satisfies_internal_condition(t), "internal paths of lengths 1 and > 2"),
                    ]
                    .into_iter()
                    .filter(|(ok, _)| !ok)
                    .map(|(_, what)| what)
                    .collect();
                    if !failed.is_empty() {
                        violations.push(Violation {
                            kind: "structure",
                            key: format!("n={n},k={k}"),
                            detail: failed.join("; "),
                            witness: Some(t.to_string()),
                        });
                    }
                }
            }
            rows.push(row);
        }
    }
    (rows, violations)
}

/// Applies every rule at every site of every tree in the range and checks
/// the declared sign, the preserved parameter, and any closed form.
pub fn verify_rules(n_min: usize, n_max: usize) -> Result<VerificationReport, HarnessError> {
    check_range(n_min, n_max)?;
    let start = Instant::now();
    let catalog = rule_catalog();
    let mut rows: Vec<RuleRow> = catalog
        .iter()
        .map(|r| RuleRow {
            rule: r.id(),
            sign: r.sign(),
            preserves: r.preserves(),
            trees_with_sites: 0,
            sites: 0,
            sign_violations: 0,
            constraint_violations: 0,
            closed_form_sites: 0,
            closed_form_mismatches: 0,
            min_delta: None,
            max_delta: None,
        })
        .collect();
    let mut violations = Vec::new();
    for n in n_min..=n_max {
        for tree in all_chemical_trees(n) {
            let before = tree.wp_edge() as i64;
            for (rule, row) in catalog.iter().zip(rows.iter_mut()) {
                let sites = find_sites(&tree, rule.as_ref());
                if sites.is_empty() {
                    continue;
                }
                row.trees_with_sites += 1;
                let preserved = rule.preserves().value(&tree);
                for site in sites {
                    let after = apply(&tree, rule.as_ref(), &site).expect("found sites apply");
                    let delta = before - after.wp_edge() as i64;
                    row.sites += 1;
                    row.min_delta = Some(row.min_delta.map_or(delta, |m| m.min(delta)));
                    row.max_delta = Some(row.max_delta.map_or(delta, |m| m.max(delta)));
                    let witness = || Some(tree.to_string());
                    if !rule.sign().admits(delta) {
                        row.sign_violations += 1;
                        violations.push(Violation {
                            kind: "sign",
                            key: rule.id().to_string(),
                            detail: format!("site {site}: delta {delta}, expected {}", rule.sign()),
                            witness: witness(),
                        });
                    }
                    if rule.preserves().value(&after) != preserved {
                        row.constraint_violations += 1;
                        violations.push(Violation {
                            kind: "constraint",
                            key: rule.id().to_string(),
                            detail: format!("site {site}: {} changed", rule.preserves().symbol()),
                            witness: witness(),
                        });
                    }
                    if let Some(predicted) = rule.closed_form(&tree, &site) {
                        row.closed_form_sites += 1;
                        if predicted != delta {
                            row.closed_form_mismatches += 1;
                            violations.push(Violation {
                                kind: "closed-form",
                                key: rule.id().to_string(),
                                detail: format!("site {site}: delta {delta}, closed form {predicted}"),
                                witness: witness(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(VerificationReport {
        campaign: "rules".to_string(),
        n_min,
        n_max,
        rows: ReportRows::Rules(rows),
        violations,
        elapsed: start.elapsed(),
    })
}

/// Checks the edge formula against distance-3 pair counting on every tree.
pub fn verify_wp_equivalence(n_min: usize, n_max: usize) -> Result<VerificationReport, HarnessError> {
    check_range(n_min, n_max)?;
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for n in n_min..=n_max {
        let mut row = WpRow {
            n,
            trees: 0,
            mismatches: 0,
            max_wp: 0,
        };
        for tree in all_chemical_trees(n) {
            row.trees += 1;
            let (edge, distance) = (tree.wp_edge(), tree.wp_distance());
            row.max_wp = row.max_wp.max(edge);
            if edge != distance {
                row.mismatches += 1;
                violations.push(Violation {
                    kind: "wp",
                    key: format!("n={n}"),
                    detail: format!("edge formula {edge}, distance count {distance}"),
                    witness: Some(tree.to_string()),
                });
            }
        }
        rows.push(row);
    }
    Ok(VerificationReport {
        campaign: "wp-equiv".to_string(),
        n_min,
        n_max,
        rows: ReportRows::WpEquiv(rows),
        violations,
        elapsed: start.elapsed(),
    })
}
