//! Edge rewrites that move between chemical trees while holding the
//! branching count or the segment count fixed.
//!
//! Each rule binds a tuple of vertices, checks its hypotheses, and yields the
//! edges to delete and insert. A binding only counts as a site when the
//! rewritten edge set is again a chemical tree on the same vertices.

mod branching;
mod segments;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::enumerate::Constraint;
use crate::tree::{ChemicalTree, Tree, Vertex};

pub use branching::{R1, R2, R3a, R3b, R4, R5, R6};
pub use segments::{R10, R11, R12, R13, R7, R8, R9};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("site {site} is not a valid {rule} site in this tree")]
    StaleSite { rule: &'static str, site: RewriteSite },
    #[error("unknown rule '{0}'")]
    UnknownRule(String),
}

/// Expected sign of `W_p(before) - W_p(after)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignClass {
    Negative,
    NonPositive,
    Positive,
    NonNegative,
}

impl SignClass {
    pub fn admits(self, delta: i64) -> bool {
        match self {
            SignClass::Negative => delta < 0,
            SignClass::NonPositive => delta <= 0,
            SignClass::Positive => delta > 0,
            SignClass::NonNegative => delta >= 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SignClass::Negative => "negative",
            SignClass::NonPositive => "non-positive",
            SignClass::Positive => "positive",
            SignClass::NonNegative => "non-negative",
        }
    }
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Vertices bound to a rule's pattern variables, in the rule's variable order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RewriteSite(pub Vec<Vertex>);

impl RewriteSite {
    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }
}

impl fmt::Display for RewriteSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for RewriteSite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeEdit {
    pub remove: Vec<(Vertex, Vertex)>,
    pub add: Vec<(Vertex, Vertex)>,
}

impl EdgeEdit {
    /// The rewritten tree, or `None` if the edit does not yield a chemical
    /// tree on the same vertex set.
    pub fn apply_to(&self, tree: &Tree) -> Option<ChemicalTree> {
        let norm = |(u, v): (Vertex, Vertex)| (u.min(v), u.max(v));
        let mut edges = tree.edge_list();
        for &e in &self.remove {
            let e = norm(e);
            let pos = edges.iter().position(|&x| x == e)?;
            edges.swap_remove(pos);
        }
        for &e in &self.add {
            let e = norm(e);
            if e.0 == e.1 || edges.contains(&e) {
                return None;
            }
            edges.push(e);
        }
        ChemicalTree::from_edges(tree.order(), &edges).ok()
    }
}

pub trait RewriteRule: Send + Sync {
    fn id(&self) -> &'static str;
    fn label(&self) -> &'static str;
    fn preserves(&self) -> Constraint;
    fn hypothesis(&self) -> &'static str;
    fn sign(&self) -> SignClass;
    /// Names of the bound pattern variables, in site order.
    fn variables(&self) -> &'static [&'static str];
    /// Bindings worth checking; may include bindings that fail `bind`.
    fn candidates(&self, tree: &Tree) -> Vec<RewriteSite>;
    /// Checks every hypothesis at `site` and returns the rewrite.
    fn bind(&self, tree: &Tree, site: &RewriteSite) -> Option<EdgeEdit>;
    /// The change in `W_p` predicted by the rule's own algebra, where it
    /// states one. Evaluated on the degrees before the rewrite.
    fn closed_form(&self, _tree: &Tree, _site: &RewriteSite) -> Option<i64> {
        None
    }
}

impl fmt::Debug for dyn RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

pub fn rule_catalog() -> Vec<Box<dyn RewriteRule>> {
    vec![
        Box::new(R1),
        Box::new(R2),
        Box::new(R3a),
        Box::new(R3b),
        Box::new(R4),
        Box::new(R5),
        Box::new(R6),
        Box::new(R7),
        Box::new(R8),
        Box::new(R9),
        Box::new(R10),
        Box::new(R11),
        Box::new(R12),
        Box::new(R13),
    ]
}

pub fn rule_by_id(id: &str) -> Result<Box<dyn RewriteRule>, TransformError> {
    rule_catalog()
        .into_iter()
        .find(|r| r.id().eq_ignore_ascii_case(id))
        .ok_or_else(|| TransformError::UnknownRule(id.to_string()))
}

fn rewrite(tree: &Tree, rule: &dyn RewriteRule, site: &RewriteSite) -> Option<ChemicalTree> {
    rule.bind(tree, site)?.apply_to(tree)
}

/// All sites of `rule` in `tree`, sorted lexicographically.
pub fn find_sites(tree: &Tree, rule: &dyn RewriteRule) -> Vec<RewriteSite> {
    let mut sites: Vec<RewriteSite> = rule
        .candidates(tree)
        .into_iter()
        .filter(|s| rewrite(tree, rule, s).is_some())
        .collect();
    sites.sort_unstable();
    sites.dedup();
    sites
}

pub fn apply(tree: &Tree, rule: &dyn RewriteRule, site: &RewriteSite) -> Result<ChemicalTree, TransformError> {
    rewrite(tree, rule, site).ok_or_else(|| TransformError::StaleSite {
        rule: rule.id(),
        site: site.clone(),
    })
}

/// `W_p(tree) - W_p(apply(tree, rule, site))`.
pub fn delta_wp(tree: &Tree, rule: &dyn RewriteRule, site: &RewriteSite) -> Result<i64, TransformError> {
    let after = apply(tree, rule, site)?;
    Ok(tree.wp_edge() as i64 - after.wp_edge() as i64)
}

/// Closed-form prediction at a valid site; `Ok(None)` if the rule has none.
pub fn closed_form_delta(
    tree: &Tree,
    rule: &dyn RewriteRule,
    site: &RewriteSite,
) -> Result<Option<i64>, TransformError> {
    apply(tree, rule, site)?;
    Ok(rule.closed_form(tree, site))
}

// Shared helpers for the rule matchers.

fn deg(tree: &Tree, v: Vertex) -> i64 {
    tree.degree(v) as i64
}

fn is_branching(tree: &Tree, v: Vertex) -> bool {
    tree.degree(v) >= 3
}

/// `sum over x in N(v) of (d_x - 1)`.
fn neighbor_excess(tree: &Tree, v: Vertex) -> i64 {
    tree.neighbors(v).iter().map(|&x| deg(tree, x) - 1).sum()
}

fn vertices_of_degree(tree: &Tree, d: usize) -> Vec<Vertex> {
    tree.vertices().filter(|&v| tree.degree(v) == d).collect()
}

fn site(vertices: &[Vertex]) -> RewriteSite {
    RewriteSite(vertices.to_vec())
}

/// Pendent path from leaf `u0` up to its branching end `v`, when it has
/// at least two edges: returns the walk `u0, u1, .., ut, v`.
fn long_pendent_path(tree: &Tree, u0: Vertex) -> Option<Vec<Vertex>> {
    if tree.degree(u0) != 1 {
        return None;
    }
    let walk = tree.walk(u0, tree.neighbors(u0)[0]);
    let end = *walk.last()?;
    (is_branching(tree, end) && walk.len() >= 3).then_some(walk)
}

/// Internal path starting at branching `u1` through `u2`, with at least
/// three edges.
fn long_internal_path(tree: &Tree, u1: Vertex, u2: Vertex) -> Option<Vec<Vertex>> {
    if !is_branching(tree, u1) || !tree.is_adjacent(u1, u2) || tree.degree(u2) != 2 {
        return None;
    }
    let walk = tree.walk(u1, u2);
    (is_branching(tree, *walk.last()?) && walk.len() >= 4).then_some(walk)
}

/// Shared matcher for pendent-path shortening (`u0`, `v`, `w`).
fn bind_pendent_shortening(tree: &Tree, s: &RewriteSite) -> Option<EdgeEdit> {
    let &[u0, v, w] = s.vertices() else {
        return None;
    };
    let walk = long_pendent_path(tree, u0)?;
    let t = walk.len() - 2;
    if walk[t + 1] != v || !tree.is_adjacent(v, w) || w == walk[t] {
        return None;
    }
    let beyond = tree.walk(v, w);
    if !is_branching(tree, *beyond.last()?) {
        return None;
    }
    Some(EdgeEdit {
        remove: vec![(walk[t - 1], walk[t]), (v, w)],
        add: vec![(v, u0), (walk[t - 1], w)],
    })
}

fn pendent_shortening_candidates(tree: &Tree) -> Vec<RewriteSite> {
    let mut out = Vec::new();
    for u0 in vertices_of_degree(tree, 1) {
        if let Some(walk) = long_pendent_path(tree, u0) {
            let v = *walk.last().unwrap();
            for &w in tree.neighbors(v) {
                out.push(site(&[u0, v, w]));
            }
        }
    }
    out
}

fn pendent_shortening_delta(tree: &Tree, s: &RewriteSite) -> i64 {
    let (v, w) = (s.0[1], s.0[2]);
    (deg(tree, w) - 1) * (deg(tree, v) - 2)
}

/// Shared matcher for moving a degree-2 vertex from a long internal path
/// onto an edge between adjacent branching vertices (`u1`, `u2`, `u`, `v`).
fn bind_internal_split(tree: &Tree, s: &RewriteSite) -> Option<EdgeEdit> {
    let &[u1, u2, u, v] = s.vertices() else {
        return None;
    };
    let walk = long_internal_path(tree, u1, u2)?;
    if u >= v || !tree.is_adjacent(u, v) || !is_branching(tree, u) || !is_branching(tree, v) {
        return None;
    }
    let u3 = walk[2];
    Some(EdgeEdit {
        remove: vec![(u1, u2), (u2, u3), (u, v)],
        add: vec![(u1, u3), (u, u2), (u2, v)],
    })
}

fn internal_split_candidates(tree: &Tree) -> Vec<RewriteSite> {
    let pairs: Vec<(Vertex, Vertex)> = tree
        .edges()
        .filter(|&(u, v)| is_branching(tree, u) && is_branching(tree, v))
        .collect();
    let mut out = Vec::new();
    for u1 in tree.vertices().filter(|&v| is_branching(tree, v)) {
        for &u2 in tree.neighbors(u1) {
            if long_internal_path(tree, u1, u2).is_some() {
                out.extend(pairs.iter().map(|&(u, v)| site(&[u1, u2, u, v])));
            }
        }
    }
    out
}

fn internal_split_delta(tree: &Tree, s: &RewriteSite) -> i64 {
    let (du, dv) = (deg(tree, s.0[2]), deg(tree, s.0[3]));
    du * dv - 2 * du - 2 * dv + 4
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> ChemicalTree {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        ChemicalTree::from_edges(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn catalog_is_complete() {
        let catalog = rule_catalog();
        assert_eq!(catalog.len(), 14);
        let ids: Vec<_> = catalog.iter().map(|r| r.id()).collect();
        assert_eq!(
            ids,
            ["R1", "R2", "R3a", "R3b", "R4", "R5", "R6", "R7", "R8", "R9", "R10", "R11", "R12", "R13"]
        );
        for (i, r) in catalog.iter().enumerate() {
            let expected = if i < 7 { Constraint::Branching } else { Constraint::Segments };
            assert_eq!(r.preserves(), expected, "{}", r.id());
        }
        assert_eq!(rule_by_id("r5").unwrap().preserves(), Constraint::Branching);
        assert_eq!(rule_by_id("R13").unwrap().preserves(), Constraint::Segments);
        assert!(rule_by_id("R14").is_err());
    }

    #[test]
    fn star_has_no_degree_two_sites() {
        let t = star(4);
        for id in ["R3a", "R3b", "R4", "R5", "R13"] {
            assert!(find_sites(&t, &*rule_by_id(id).unwrap()).is_empty(), "{id}");
        }
    }

    #[test]
    fn path_has_no_pendent_shortening() {
        let t = ChemicalTree::path_graph(7);
        assert!(find_sites(&t, &R4).is_empty());
    }

    #[test]
    fn minimal_branching_witness_has_no_r4_site() {
        let t = crate::extremal::construct_family("Bnb", 10, 3).unwrap();
        assert!(find_sites(&t, &R4).is_empty());
    }

    #[test]
    fn r3a_moves_the_branch() {
        // 0-1-2 with leaves 3, 4 on 2 and a tail 0-5-6.
        let t = ChemicalTree::from_edges(7, &[(0, 1), (1, 2), (2, 3), (2, 4), (0, 5), (5, 6)]).unwrap();
        let s = RewriteSite(vec![1, 2]);
        let after = apply(&t, &R3a, &s).unwrap();
        assert_eq!(after.degree(2), 1);
        assert_eq!(after.degree(1), 4);
        assert_eq!(after.branching_count(), t.branching_count());
    }

    #[test]
    fn r5_balances_internal_paths() {
        // Branching 0 and 3 joined by 0-1-2-3; branching 7 adjacent to 3.
        let edges = [
            (0, 1),
            (1, 2),
            (2, 3),
            (0, 4),
            (0, 5),
            (3, 6),
            (3, 11),
            (3, 7),
            (7, 8),
            (7, 9),
            (7, 10),
        ];
        let t = ChemicalTree::from_edges(12, &edges).unwrap();
        let s = RewriteSite(vec![0, 1, 3, 7]);
        assert!(find_sites(&t, &R5).contains(&s));
        let after = apply(&t, &R5, &s).unwrap();
        let mut internal: Vec<_> = after
            .classify_paths()
            .unwrap()
            .into_iter()
            .filter(|p| p.kind == crate::tree::PathKind::Internal)
            .map(|p| p.length)
            .collect();
        internal.sort_unstable();
        assert_eq!(internal, vec![2, 2]);
        // d_u = d_v = 4.
        assert_eq!(delta_wp(&t, &R5, &s).unwrap(), 16 - 8 - 8 + 4);
        assert_eq!(closed_form_delta(&t, &R5, &s).unwrap(), Some(4));
    }

    #[test]
    fn r6_keeps_edge_count() {
        // Degree-4 vertex 0 with non-pendent neighbor 1.
        let t = ChemicalTree::from_edges(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (5, 6)]).unwrap();
        let sites = find_sites(&t, &R6);
        assert!(!sites.is_empty());
        let after = apply(&t, &R6, &sites[0]).unwrap();
        assert_eq!(after.size(), 6);
    }

    #[test]
    fn stale_site_is_rejected() {
        let t = ChemicalTree::path_graph(7);
        let err = apply(&t, &R5, &RewriteSite(vec![0, 1, 2, 3])).unwrap_err();
        assert!(matches!(err, TransformError::StaleSite { rule: "R5", .. }));
        assert!(delta_wp(&t, &R4, &RewriteSite(vec![0, 1])).is_err());
    }

    #[test]
    fn r2_and_r4_deltas() {
        // Degree-3 vertex 0 between degree-4 vertices 1 and 2; leaf 3 hangs
        // on degree-3 vertex 4 in the branch of 1.
        let edges = [
            (0, 1),
            (0, 2),
            (0, 12),
            (12, 7),
            (1, 5),
            (1, 6),
            (1, 4),
            (4, 3),
            (4, 11),
            (2, 8),
            (2, 9),
            (2, 10),
        ];
        let t = ChemicalTree::from_edges(13, &edges).unwrap();
        let s = RewriteSite(vec![1, 0, 2, 3, 4]);
        assert!(find_sites(&t, &R2).contains(&s));
        assert_eq!(delta_wp(&t, &R2, &s).unwrap(), -1);
        assert_eq!(R2.closed_form(&t, &s), Some(-1));

        // Pendent path 5-6-2 at degree-3 vertex 2, internal path 2-3-0.
        let edges = [(0, 1), (0, 7), (0, 3), (3, 2), (2, 6), (6, 5), (2, 4)];
        let t = ChemicalTree::from_edges(8, &edges).unwrap();
        let s = RewriteSite(vec![5, 2, 3]);
        assert!(find_sites(&t, &R4).contains(&s));
        assert_eq!(delta_wp(&t, &R4, &s).unwrap(), 1);
        assert_eq!(R4.closed_form(&t, &s), Some(1));
    }
}
