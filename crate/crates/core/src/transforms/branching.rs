//! Rewrites that keep the number of branching vertices fixed.

use super::*;

/// Two adjacent degree-3 vertices `w`, `z`; `w` hands its other two
/// neighbors to a non-branching vertex `u` that has a degree-4 neighbor.
pub struct R1;

impl R1 {
    fn others(tree: &Tree, w: Vertex, z: Vertex) -> Vec<Vertex> {
        tree.neighbors(w).iter().copied().filter(|&x| x != z).collect()
    }
}

impl RewriteRule for R1 {
    fn id(&self) -> &'static str {
        "R1"
    }
    fn label(&self) -> &'static str {
        "split adjacent degree-3 pair"
    }
    fn preserves(&self) -> Constraint {
        Constraint::Branching
    }
    fn hypothesis(&self) -> &'static str {
        "d_w = d_z = 3, w ~ z; d_u <= 2 and u has a degree-4 neighbor"
    }
    fn sign(&self) -> SignClass {
        SignClass::Negative
    }
    fn variables(&self) -> &'static [&'static str] {
        &["w", "z", "u"]
    }

    fn candidates(&self, tree: &Tree) -> Vec<RewriteSite> {
        let threes = vertices_of_degree(tree, 3);
        let mut out = Vec::new();
        for &w in &threes {
            for &z in tree.neighbors(w).iter().filter(|&&z| tree.degree(z) == 3) {
                for u in tree.vertices().filter(|&u| tree.degree(u) <= 2) {
                    out.push(site(&[w, z, u]));
                }
            }
        }
        out
    }

    fn bind(&self, tree: &Tree, s: &RewriteSite) -> Option<EdgeEdit> {
        let &[w, z, u] = s.vertices() else {
            return None;
        };
        let ok = tree.degree(w) == 3
            && tree.degree(z) == 3
            && tree.is_adjacent(w, z)
            && tree.degree(u) <= 2
            && tree.neighbors(u).iter().any(|&x| tree.degree(x) == 4);
        if !ok {
            return None;
        }
        let o = Self::others(tree, w, z);
        Some(EdgeEdit {
            remove: vec![(w, o[0]), (w, o[1])],
            add: vec![(u, o[0]), (u, o[1])],
        })
    }

    fn closed_form(&self, tree: &Tree, s: &RewriteSite) -> Option<i64> {
        let (w, z, u) = (s.0[0], s.0[1], s.0[2]);
        let o = Self::others(tree, w, z);
        let (a, b) = (deg(tree, o[0]) - 1, deg(tree, o[1]) - 1);
        let du = deg(tree, u);
        let sigma = neighbor_excess(tree, u);
        Some(4 + 2 * a + 2 * b + (du - 1) * sigma - (du + 1) * (a + b) - (du + 1) * sigma)
    }
}

/// A degree-3 vertex `z` between degree-4 vertices `x`, `y` is moved onto
/// the edge between non-branching `u` and branching `v`.
pub struct R2;

impl RewriteRule for R2 {
    fn id(&self) -> &'static str {
        "R2"
    }
    fn label(&self) -> &'static str {
        "detach degree-3 vertex from two degree-4 neighbors"
    }
    fn preserves(&self) -> Constraint {
        Constraint::Branching
    }
    fn hypothesis(&self) -> &'static str {
        "d_z = 3 with neighbors x < y of degree 4; u ~ v with d_u <= 2, d_v >= 3; u, v not in {x, y, z}"
    }
    fn sign(&self) -> SignClass {
        SignClass::Negative
    }
    fn variables(&self) -> &'static [&'static str] {
        &["x", "z", "y", "u", "v"]
    }

    fn candidates(&self, tree: &Tree) -> Vec<RewriteSite> {
        let mut out = Vec::new();
        let uv: Vec<(Vertex, Vertex)> = tree
            .vertices()
            .filter(|&u| tree.degree(u) <= 2)
            .flat_map(|u| {
                tree.neighbors(u)
                    .iter()
                    .filter(|&&v| is_branching(tree, v))
                    .map(move |&v| (u, v))
            })
            .collect();
        for z in vertices_of_degree(tree, 3) {
            let fours: Vec<Vertex> = tree.neighbors(z).iter().copied().filter(|&x| tree.degree(x) == 4).collect();
            for (i, &x) in fours.iter().enumerate() {
                for &y in &fours[i + 1..] {
                    out.extend(uv.iter().map(|&(u, v)| site(&[x, z, y, u, v])));
                }
            }
        }
        out
    }

    fn bind(&self, tree: &Tree, s: &RewriteSite) -> Option<EdgeEdit> {
        let &[x, z, y, u, v] = s.vertices() else {
            return None;
        };
        let ok = tree.degree(z) == 3
            && x < y
            && tree.degree(x) == 4
            && tree.degree(y) == 4
            && tree.is_adjacent(x, z)
            && tree.is_adjacent(z, y)
            && tree.degree(u) <= 2
            && is_branching(tree, v)
            && tree.is_adjacent(u, v)
            && ![x, y, z].contains(&u)
            && ![x, y, z].contains(&v);
        ok.then(|| EdgeEdit {
            remove: vec![(x, z), (z, y), (u, v)],
            add: vec![(x, y), (u, z), (z, v)],
        })
    }

    fn closed_form(&self, tree: &Tree, s: &RewriteSite) -> Option<i64> {
        let (du, dv) = (deg(tree, s.0[3]), deg(tree, s.0[4]));
        Some(8 + du * dv - 3 * du - 3 * dv)
    }
}

/// A degree-2 vertex `v` takes over both far neighbors of its degree-3
/// neighbor `w`.
pub struct R3a;

impl RewriteRule for R3a {
    fn id(&self) -> &'static str {
        "R3a"
    }
    fn label(&self) -> &'static str {
        "absorb degree-3 neighbor into degree-2 vertex"
    }
    fn preserves(&self) -> Constraint {
        Constraint::Branching
    }
    fn hypothesis(&self) -> &'static str {
        "n >= 7; d_v = 2, d_w = 3, v ~ w"
    }
    fn sign(&self) -> SignClass {
        SignClass::NonPositive
    }
    fn variables(&self) -> &'static [&'static str] {
        &["v", "w"]
    }

    fn candidates(&self, tree: &Tree) -> Vec<RewriteSite> {
        vertices_of_degree(tree, 2)
            .into_iter()
            .flat_map(|v| tree.neighbors(v).iter().map(move |&w| site(&[v, w])))
            .collect()
    }

    fn bind(&self, tree: &Tree, s: &RewriteSite) -> Option<EdgeEdit> {
        let &[v, w] = s.vertices() else {
            return None;
        };
        if tree.order() < 7 || tree.degree(v) != 2 || tree.degree(w) != 3 || !tree.is_adjacent(v, w) {
            return None;
        }
        let o: Vec<Vertex> = tree.neighbors(w).iter().copied().filter(|&x| x != v).collect();
        Some(EdgeEdit {
            remove: vec![(w, o[0]), (w, o[1])],
            add: vec![(v, o[0]), (v, o[1])],
        })
    }
}

/// A degree-2 vertex `v` next to degree-4 `w` takes over the two neighbors
/// of degree-3 `z` that lie off the `w`-`z` path.
pub struct R3b;

impl RewriteRule for R3b {
    fn id(&self) -> &'static str {
        "R3b"
    }
    fn label(&self) -> &'static str {
        "relocate degree-3 vertex beside a 2-4 pair"
    }
    fn preserves(&self) -> Constraint {
        Constraint::Branching
    }
    fn hypothesis(&self) -> &'static str {
        "n >= 7; d_v = 2, d_w = 4, v ~ w; d_z = 3"
    }
    fn sign(&self) -> SignClass {
        SignClass::NonPositive
    }
    fn variables(&self) -> &'static [&'static str] {
        &["v", "w", "z"]
    }

    fn candidates(&self, tree: &Tree) -> Vec<RewriteSite> {
        let threes = vertices_of_degree(tree, 3);
        let mut out = Vec::new();
        for v in vertices_of_degree(tree, 2) {
            for &w in tree.neighbors(v).iter().filter(|&&w| tree.degree(w) == 4) {
                out.extend(threes.iter().map(|&z| site(&[v, w, z])));
            }
        }
        out
    }

    fn bind(&self, tree: &Tree, s: &RewriteSite) -> Option<EdgeEdit> {
        let &[v, w, z] = s.vertices() else {
            return None;
        };
        let ok = tree.order() >= 7
            && tree.degree(v) == 2
            && tree.degree(w) == 4
            && tree.is_adjacent(v, w)
            && tree.degree(z) == 3;
        if !ok {
            return None;
        }
        let path = tree.path(w, z);
        let toward_w = path[path.len() - 2];
        let o: Vec<Vertex> = tree.neighbors(z).iter().copied().filter(|&x| x != toward_w).collect();
        Some(EdgeEdit {
            remove: vec![(z, o[0]), (z, o[1])],
            add: vec![(v, o[0]), (v, o[1])],
        })
    }
}

/// Shortens a pendent path of length at least 2 by moving its leaf next to
/// the branching end `v`, and lengthens the internal path through `w`.
pub struct R4;

impl RewriteRule for R4 {
    fn id(&self) -> &'static str {
        "R4"
    }
    fn label(&self) -> &'static str {
        "shorten long pendent path"
    }
    fn preserves(&self) -> Constraint {
        Constraint::Branching
    }
    fn hypothesis(&self) -> &'static str {
        "pendent path u0..ut v of length >= 2 with d_v >= 3; w ~ v lies on an internal path"
    }
    fn sign(&self) -> SignClass {
        SignClass::Positive
    }
    fn variables(&self) -> &'static [&'static str] {
        &["u0", "v", "w"]
    }
    fn candidates(&self, tree: &Tree) -> Vec<RewriteSite> {
        pendent_shortening_candidates(tree)
    }
    fn bind(&self, tree: &Tree, s: &RewriteSite) -> Option<EdgeEdit> {
        bind_pendent_shortening(tree, s)
    }
    fn closed_form(&self, tree: &Tree, s: &RewriteSite) -> Option<i64> {
        Some(pendent_shortening_delta(tree, s))
    }
}

/// Moves a degree-2 vertex from an internal path of length at least 3 onto
/// the edge between adjacent branching vertices `u < v`.
pub struct R5;

impl RewriteRule for R5 {
    fn id(&self) -> &'static str {
        "R5"
    }
    fn label(&self) -> &'static str {
        "split long internal path"
    }
    fn preserves(&self) -> Constraint {
        Constraint::Branching
    }
    fn hypothesis(&self) -> &'static str {
        "internal path u1 u2 u3 .. of length >= 3 from branching u1; u ~ v both branching, u < v"
    }
    fn sign(&self) -> SignClass {
        SignClass::Positive
    }
    fn variables(&self) -> &'static [&'static str] {
        &["u1", "u2", "u", "v"]
    }
    fn candidates(&self, tree: &Tree) -> Vec<RewriteSite> {
        internal_split_candidates(tree)
    }
    fn bind(&self, tree: &Tree, s: &RewriteSite) -> Option<EdgeEdit> {
        bind_internal_split(tree, s)
    }
    fn closed_form(&self, tree: &Tree, s: &RewriteSite) -> Option<i64> {
        Some(internal_split_delta(tree, s))
    }
}

/// Degree-4 `u` drops its non-pendent neighbor `u1`, which is re-hung on a
/// leaf `w1` of the branch through `u2`.
pub struct R6;

impl RewriteRule for R6 {
    fn id(&self) -> &'static str {
        "R6"
    }
    fn label(&self) -> &'static str {
        "reduce degree-4 vertex to degree 3"
    }
    fn preserves(&self) -> Constraint {
        Constraint::Branching
    }
    fn hypothesis(&self) -> &'static str {
        "d_u = 4; u1 ~ u non-pendent; u2 ~ u, u2 != u1; w1 a leaf in the branch of u through u2"
    }
    fn sign(&self) -> SignClass {
        SignClass::NonNegative
    }
    fn variables(&self) -> &'static [&'static str] {
        &["u", "u1", "u2", "w1"]
    }

    fn candidates(&self, tree: &Tree) -> Vec<RewriteSite> {
        let mut out = Vec::new();
        for u in vertices_of_degree(tree, 4) {
            for &u1 in tree.neighbors(u).iter().filter(|&&x| tree.degree(x) >= 2) {
                for &u2 in tree.neighbors(u).iter().filter(|&&x| x != u1) {
                    for w1 in tree.branch(u, u2) {
                        if tree.degree(w1) == 1 {
                            out.push(site(&[u, u1, u2, w1]));
                        }
                    }
                }
            }
        }
        out
    }

    fn bind(&self, tree: &Tree, s: &RewriteSite) -> Option<EdgeEdit> {
        let &[u, u1, u2, w1] = s.vertices() else {
            return None;
        };
        let ok = tree.degree(u) == 4
            && tree.is_adjacent(u, u1)
            && tree.degree(u1) >= 2
            && tree.is_adjacent(u, u2)
            && u2 != u1
            && tree.degree(w1) == 1
            && tree.branch_contains(u, u2, w1);
        ok.then(|| EdgeEdit {
            remove: vec![(u, u1)],
            add: vec![(w1, u1)],
        })
    }
}
