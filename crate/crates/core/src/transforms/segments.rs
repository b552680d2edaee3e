//! Rewrites that keep the number of segments fixed.

use super::*;

fn off_path_neighbors(tree: &Tree, w: Vertex, paths: &[&[Vertex]]) -> Vec<Vertex> {
    tree.neighbors(w)
        .iter()
        .copied()
        .filter(|x| paths.iter().all(|p| !p.contains(x)))
        .collect()
}

fn hand_off_edit(w: Vertex, w1: Vertex, w2: Vertex, u: Vertex, v: Vertex) -> EdgeEdit {
    EdgeEdit {
        remove: vec![(w, w1), (w, w2)],
        add: vec![(u, w1), (v, w2)],
    }
}

/// Interior vertices of `path` having degree 3.
fn interior_threes(tree: &Tree, path: &[Vertex]) -> Vec<Vertex> {
    path[1..path.len() - 1]
        .iter()
        .copied()
        .filter(|&x| tree.degree(x) == 3)
        .collect()
}

/// Three degree-3 vertices `u`, `v`, `w` on one path; `w` hands its two
/// off-path neighbors to `u` (gets `w1`) and `v`.
pub struct R7;

impl R7 {
    fn split(tree: &Tree, s: &RewriteSite) -> Option<(Vertex, Vertex, Vertex, Vertex, Vertex)> {
        let &[u, v, w, w1] = s.vertices() else {
            return None;
        };
        if u == w || tree.degree(u) != 3 || tree.degree(w) != 3 {
            return None;
        }
        let path = tree.path(u, w);
        if interior_threes(tree, &path) != [v] {
            return None;
        }
        let off = off_path_neighbors(tree, w, &[&path]);
        let w2 = *off.iter().find(|&&x| x != w1)?;
        off.contains(&w1).then_some((u, v, w, w1, w2))
    }
}

impl RewriteRule for R7 {
    fn id(&self) -> &'static str {
        "R7"
    }
    fn label(&self) -> &'static str {
        "break a path through three degree-3 vertices"
    }
    fn preserves(&self) -> Constraint {
        Constraint::Segments
    }
    fn hypothesis(&self) -> &'static str {
        "d_u = d_v = d_w = 3; the u-w path holds exactly these three degree-3 vertices; internal paths have length 1"
    }
    fn sign(&self) -> SignClass {
        SignClass::Negative
    }
    fn variables(&self) -> &'static [&'static str] {
        &["u", "v", "w", "w1"]
    }

    fn candidates(&self, tree: &Tree) -> Vec<RewriteSite> {
        let threes = vertices_of_degree(tree, 3);
        let mut out = Vec::new();
        for &u in &threes {
            for &w in threes.iter().filter(|&&w| w != u) {
                let path = tree.path(u, w);
                if let [v] = interior_threes(tree, &path)[..] {
                    for w1 in off_path_neighbors(tree, w, &[&path]) {
                        out.push(site(&[u, v, w, w1]));
                    }
                }
            }
        }
        out
    }

    fn bind(&self, tree: &Tree, s: &RewriteSite) -> Option<EdgeEdit> {
        if !tree.internal_paths_are_edges() {
            return None;
        }
        let (u, v, w, w1, w2) = Self::split(tree, s)?;
        Some(hand_off_edit(w, w1, w2, u, v))
    }

    fn closed_form(&self, tree: &Tree, s: &RewriteSite) -> Option<i64> {
        let (u, v, w, w1, w2) = Self::split(tree, s)?;
        let on_path: i64 = tree
            .neighbors(w)
            .iter()
            .filter(|&&z| z != w1 && z != w2)
            .map(|&z| deg(tree, z) - 1)
            .sum();
        Some(
            -neighbor_excess(tree, u) - neighbor_excess(tree, v) + 2 * on_path
                - (deg(tree, w1) - 1)
                - (deg(tree, w2) - 1),
        )
    }
}

/// Three or more degree-3 vertices, no path through three of them: `w`
/// hands its neighbors off both paths to `u` (gets `w1`) and `v`.
pub struct R8;

impl R8 {
    fn global_ok(tree: &Tree) -> bool {
        let threes = vertices_of_degree(tree, 3);
        threes.len() > 2
            && tree.internal_paths_are_edges()
            && threes.iter().enumerate().all(|(i, &a)| {
                threes[i + 1..]
                    .iter()
                    .all(|&c| interior_threes(tree, &tree.path(a, c)).is_empty())
            })
    }
}

impl RewriteRule for R8 {
    fn id(&self) -> &'static str {
        "R8"
    }
    fn label(&self) -> &'static str {
        "merge scattered degree-3 vertices"
    }
    fn preserves(&self) -> Constraint {
        Constraint::Segments
    }
    fn hypothesis(&self) -> &'static str {
        "more than two degree-3 vertices, no path holds three of them, internal paths have length 1; u < v, w distinct of degree 3"
    }
    fn sign(&self) -> SignClass {
        SignClass::NonPositive
    }
    fn variables(&self) -> &'static [&'static str] {
        &["u", "v", "w", "w1"]
    }

    fn candidates(&self, tree: &Tree) -> Vec<RewriteSite> {
        if !Self::global_ok(tree) {
            return Vec::new();
        }
        let threes = vertices_of_degree(tree, 3);
        let mut out = Vec::new();
        for (i, &u) in threes.iter().enumerate() {
            for &v in &threes[i + 1..] {
                for &w in threes.iter().filter(|&&w| w != u && w != v) {
                    let (pu, pv) = (tree.path(u, w), tree.path(v, w));
                    for w1 in off_path_neighbors(tree, w, &[&pu, &pv]) {
                        out.push(site(&[u, v, w, w1]));
                    }
                }
            }
        }
        out
    }

    fn bind(&self, tree: &Tree, s: &RewriteSite) -> Option<EdgeEdit> {
        let &[u, v, w, w1] = s.vertices() else {
            return None;
        };
        let ok = u < v && w != u && w != v && [u, v, w].iter().all(|&x| tree.degree(x) == 3);
        if !ok || !Self::global_ok(tree) {
            return None;
        }
        let (pu, pv) = (tree.path(u, w), tree.path(v, w));
        let off = off_path_neighbors(tree, w, &[&pu, &pv]);
        let w2 = *off.iter().find(|&&x| x != w1)?;
        off.contains(&w1).then(|| hand_off_edit(w, w1, w2, u, v))
    }
}

/// Degree-3 `u` with two branching neighbors `v`, `w` is pulled out of the
/// `v`-`w` line and reinserted between degree-4 `x` and its non-branching
/// neighbor `y`.
pub struct R9;

impl RewriteRule for R9 {
    fn id(&self) -> &'static str {
        "R9"
    }
    fn label(&self) -> &'static str {
        "move degree-3 vertex off a branching pair"
    }
    fn preserves(&self) -> Constraint {
        Constraint::Segments
    }
    fn hypothesis(&self) -> &'static str {
        "d_u = 3 with branching neighbors v != w; d_x = 4, x in the branch of u through w (x = w allowed) with exactly one branching neighbor; y ~ x non-branching, away from u"
    }
    fn sign(&self) -> SignClass {
        SignClass::Negative
    }
    fn variables(&self) -> &'static [&'static str] {
        &["v", "u", "w", "x", "y"]
    }

    fn candidates(&self, tree: &Tree) -> Vec<RewriteSite> {
        let mut out = Vec::new();
        for u in vertices_of_degree(tree, 3) {
            let branching: Vec<Vertex> = tree.neighbors(u).iter().copied().filter(|&x| is_branching(tree, x)).collect();
            for &v in &branching {
                for &w in branching.iter().filter(|&&w| w != v) {
                    for x in tree.branch(u, w).into_iter().filter(|&x| tree.degree(x) == 4) {
                        for &y in tree.neighbors(x).iter().filter(|&&y| !is_branching(tree, y)) {
                            out.push(site(&[v, u, w, x, y]));
                        }
                    }
                }
            }
        }
        out
    }

    fn bind(&self, tree: &Tree, s: &RewriteSite) -> Option<EdgeEdit> {
        let &[v, u, w, x, y] = s.vertices() else {
            return None;
        };
        let ok = tree.degree(u) == 3
            && v != w
            && tree.is_adjacent(u, v)
            && tree.is_adjacent(u, w)
            && is_branching(tree, v)
            && is_branching(tree, w)
            && tree.degree(x) == 4
            && (x == w || tree.branch_contains(u, w, x))
            && tree.neighbors(x).iter().filter(|&&z| is_branching(tree, z)).count() == 1
            && tree.is_adjacent(x, y)
            && !is_branching(tree, y)
            && !tree.branch_contains(x, y, u);
        ok.then(|| EdgeEdit {
            remove: vec![(v, u), (u, w), (x, y)],
            add: vec![(v, w), (x, u), (u, y)],
        })
    }
}

/// Pendent-path shortening, read in the fixed-segment setting.
pub struct R10;

impl RewriteRule for R10 {
    fn id(&self) -> &'static str {
        "R10"
    }
    fn label(&self) -> &'static str {
        "shorten long pendent path"
    }
    fn preserves(&self) -> Constraint {
        Constraint::Segments
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
}

/// On a tree of maximum degree 3, the branching vertex `vi` inside a
/// longest path `v1..vr` is taken out of the path, and both ends of the
/// path gain a neighbor (`vr-1` gets `vi`, `v2` gets `vi`'s leaf `w`).
pub struct R11;

impl R11 {
    /// The longest path and the 0-based index of `vi` on it.
    fn locate(tree: &Tree, s: &RewriteSite) -> Option<(Vec<Vertex>, usize)> {
        let &[v1, vr, vi, w] = s.vertices() else {
            return None;
        };
        if tree.max_degree() != 3 || tree.degree(v1) != 1 || tree.degree(vr) != 1 {
            return None;
        }
        let path = tree.path(v1, vr);
        let r = path.len();
        if r < 7 || r - 1 != diameter(tree) {
            return None;
        }
        // 1-based positions 2, r-1 and r-2.
        let ok = tree.degree(path[1]) == 3 && tree.degree(path[r - 2]) == 3 && tree.degree(path[r - 3]) == 2;
        let idx = path.iter().position(|&x| x == vi)?;
        // 1-based 4 <= i <= r-3.
        let placed = idx >= 3 && idx + 4 <= r;
        let leaf = tree.degree(w) == 1 && tree.is_adjacent(w, vi) && !path.contains(&w);
        let ordered = placed
            && tree.degree(path[2]) <= tree.degree(path[idx - 1])
            && tree.degree(path[idx - 1]) <= tree.degree(path[idx + 1]);
        (ok && placed && ordered && leaf && tree.degree(vi) == 3).then_some((path, idx))
    }
}

fn diameter(tree: &Tree) -> usize {
    let far = |src: Vertex| {
        let d = tree.distances_from(src);
        let m = *d.iter().max().unwrap();
        (d.iter().position(|&x| x == m).unwrap(), m)
    };
    far(far(0).0).1
}

impl RewriteRule for R11 {
    fn id(&self) -> &'static str {
        "R11"
    }
    fn label(&self) -> &'static str {
        "create a degree-4 vertex"
    }
    fn preserves(&self) -> Constraint {
        Constraint::Segments
    }
    fn hypothesis(&self) -> &'static str {
        "max degree 3; v1..vr a longest path with d_v2 = d_vr-1 = 3, d_vr-2 = 2; 4 <= i <= r-3; d_v3 <= d_vi-1 <= d_vi+1; w a leaf on vi"
    }
    fn sign(&self) -> SignClass {
        SignClass::Positive
    }
    fn variables(&self) -> &'static [&'static str] {
        &["v1", "vr", "vi", "w"]
    }

    fn candidates(&self, tree: &Tree) -> Vec<RewriteSite> {
        if tree.max_degree() != 3 {
            return Vec::new();
        }
        let d = diameter(tree);
        let leaves = vertices_of_degree(tree, 1);
        let mut out = Vec::new();
        for &v1 in &leaves {
            let dist = tree.distances_from(v1);
            for &vr in leaves.iter().filter(|&&x| dist[x] == d) {
                let path = tree.path(v1, vr);
                for &vi in &path {
                    for &w in tree.neighbors(vi).iter().filter(|&&w| tree.degree(w) == 1) {
                        out.push(site(&[v1, vr, vi, w]));
                    }
                }
            }
        }
        out
    }

    fn bind(&self, tree: &Tree, s: &RewriteSite) -> Option<EdgeEdit> {
        let (p, i) = Self::locate(tree, s)?;
        let r = p.len();
        let w = s.0[3];
        Some(EdgeEdit {
            remove: vec![(w, p[i]), (p[i - 1], p[i]), (p[i], p[i + 1])],
            add: vec![(p[i - 1], p[i + 1]), (p[i], p[r - 2]), (p[1], w)],
        })
    }

    fn closed_form(&self, tree: &Tree, s: &RewriteSite) -> Option<i64> {
        let (p, i) = Self::locate(tree, s)?;
        let a = deg(tree, p[i - 1]);
        let c = deg(tree, p[i + 1]);
        let d3 = deg(tree, p[2]);
        Some(2 * (a - 1) + 2 * (c - 1) + 2 + 2 * (d3 - 1) - 3 * (d3 - 1) - (a - 1) * (c - 1) - 3)
    }
}

/// Internal-path splitting, read in the fixed-segment setting.
pub struct R12;

impl RewriteRule for R12 {
    fn id(&self) -> &'static str {
        "R12"
    }
    fn label(&self) -> &'static str {
        "split long internal path"
    }
    fn preserves(&self) -> Constraint {
        Constraint::Segments
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
}

/// Degree-2 `z` between non-pendent `x`, `y` moves onto the edge between
/// a heavier adjacent branching pair `x'`, `y'`.
pub struct R13;

impl RewriteRule for R13 {
    fn id(&self) -> &'static str {
        "R13"
    }
    fn label(&self) -> &'static str {
        "move degree-2 vertex to heavier branching pair"
    }
    fn preserves(&self) -> Constraint {
        Constraint::Segments
    }
    fn hypothesis(&self) -> &'static str {
        "d_z = 2 with non-pendent neighbors x < y, 4 < d_x + d_y < 8; x' ~ y' branching, x' < y', d_x' + d_y' > d_x + d_y"
    }
    fn sign(&self) -> SignClass {
        SignClass::Positive
    }
    fn variables(&self) -> &'static [&'static str] {
        &["z", "x", "y", "x'", "y'"]
    }

    fn candidates(&self, tree: &Tree) -> Vec<RewriteSite> {
        let pairs: Vec<(Vertex, Vertex)> = tree
            .edges()
            .filter(|&(a, b)| is_branching(tree, a) && is_branching(tree, b))
            .collect();
        let mut out = Vec::new();
        for z in vertices_of_degree(tree, 2) {
            let (x, y) = (tree.neighbors(z)[0], tree.neighbors(z)[1]);
            out.extend(pairs.iter().map(|&(a, b)| site(&[z, x, y, a, b])));
        }
        out
    }

    fn bind(&self, tree: &Tree, s: &RewriteSite) -> Option<EdgeEdit> {
        let &[z, x, y, xp, yp] = s.vertices() else {
            return None;
        };
        let sum = tree.degree(x) + tree.degree(y);
        let ok = tree.degree(z) == 2
            && x < y
            && tree.is_adjacent(z, x)
            && tree.is_adjacent(z, y)
            && tree.degree(x) >= 2
            && tree.degree(y) >= 2
            && 4 < sum
            && sum < 8
            && xp < yp
            && tree.is_adjacent(xp, yp)
            && is_branching(tree, xp)
            && is_branching(tree, yp)
            && tree.degree(xp) + tree.degree(yp) > sum;
        ok.then(|| EdgeEdit {
            remove: vec![(x, z), (z, y), (xp, yp)],
            add: vec![(x, y), (xp, z), (z, yp)],
        })
    }

    fn closed_form(&self, tree: &Tree, s: &RewriteSite) -> Option<i64> {
        let d = |i: usize| deg(tree, s.0[i]);
        let (dx, dy, dxp, dyp) = (d(1), d(2), d(3), d(4));
        Some(2 * (dx + dy) - 2 * (dxp + dyp) + dxp * dyp - dx * dy)
    }
}
