//! Labeled trees, chemical trees, and the structural queries the rest of the
//! crate is built on: degree census, segments, pendent/internal paths and the
//! Wiener polarity index.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Deref;

use serde::Serialize;
use thiserror::Error;

pub type Vertex = usize;

/// Largest vertex degree allowed in a chemical tree.
pub const MAX_CHEMICAL_DEGREE: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("expected {expected} edges for order {order}, found {found}")]
    EdgeCount {
        order: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge set is disconnected or cyclic")]
    NotConnected,
    #[error("vertex {vertex} has degree {degree}; chemical trees allow at most 4")]
    DegreeTooHigh { vertex: Vertex, degree: usize },
    #[error("tree has no branching vertex")]
    NoBranchingVertex,
}

/// A tree on the vertex set `0..n`, stored as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<Vertex>>,
}

impl Tree {
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(TreeError::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            if adj[u].contains(&v) {
                return Err(TreeError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::EdgeCount {
                order: n,
                expected: n - 1,
                found: edges.len(),
            });
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let tree = Tree { adj };
        // n - 1 edges plus connectivity rules out cycles.
        if tree.distances_from(0).contains(&usize::MAX) {
            return Err(TreeError::NotConnected);
        }
        Ok(tree)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.len() - 1
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(Vertex, Vertex)> {
        self.edges().collect()
    }

    /// Shortest-path distances from `source`; `usize::MAX` marks unreachable
    /// vertices (only possible while validating).
    pub fn distances_from(&self, source: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// The unique path from `from` to `to`, both endpoints included.
    pub fn path(&self, from: Vertex, to: Vertex) -> Vec<Vertex> {
        let mut parent = vec![usize::MAX; self.order()];
        parent[to] = to;
        let mut queue = VecDeque::from([to]);
        while let Some(u) = queue.pop_front() {
            if u == from {
                break;
            }
            for &v in &self.adj[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            cur = parent[cur];
            path.push(cur);
        }
        path
    }

    /// Whether `target` lies in the component containing `via` once the edge
    /// `root`-`via` is removed.
    pub fn branch_contains(&self, root: Vertex, via: Vertex, target: Vertex) -> bool {
        if target == root {
            return false;
        }
        let mut stack = vec![(via, root)];
        while let Some((u, from)) = stack.pop() {
            if u == target {
                return true;
            }
            stack.extend(self.adj[u].iter().filter(|&&w| w != from).map(|&w| (w, u)));
        }
        false
    }

    /// Vertices of the branch hanging off `root` through `via` (including `via`).
    pub fn branch(&self, root: Vertex, via: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut stack = vec![(via, root)];
        while let Some((u, from)) = stack.pop() {
            out.push(u);
            stack.extend(self.adj[u].iter().filter(|&&w| w != from).map(|&w| (w, u)));
        }
        out.sort_unstable();
        out
    }

    /// Starting at `from` and stepping to its neighbor `next`, keep going
    /// through degree-2 vertices until a vertex of degree other than 2 is hit.
    pub fn walk(&self, from: Vertex, next: Vertex) -> Vec<Vertex> {
        let mut path = vec![from, next];
        while self.degree(*path.last().unwrap()) == 2 {
            let len = path.len();
            let (prev, cur) = (path[len - 2], path[len - 1]);
            let step = self.adj[cur].iter().copied().find(|&w| w != prev).unwrap();
            path.push(step);
        }
        path
    }

    pub fn degree_census(&self) -> DegreeCensus {
        let mut census = DegreeCensus::default();
        for v in self.vertices() {
            match self.degree(v) {
                1 => census.n1 += 1,
                2 => census.n2 += 1,
                3 => census.n3 += 1,
                4 => census.n4 += 1,
                _ => {}
            }
        }
        census
    }

    pub fn branching_count(&self) -> usize {
        self.vertices().filter(|&v| self.degree(v) >= 3).count()
    }

    /// Wiener polarity index via the edge formula: sum over edges of
    /// `(d_u - 1)(d_v - 1)`.
    pub fn wp_edge(&self) -> u64 {
        self.edges()
            .map(|(u, v)| ((self.degree(u) - 1) * (self.degree(v) - 1)) as u64)
            .sum()
    }

    /// Wiener polarity index as the number of unordered vertex pairs at
    /// distance exactly 3, by breadth-first search truncated at depth 3.
    pub fn wp_distance(&self) -> u64 {
        let n = self.order();
        let mut depth = vec![usize::MAX; n];
        let mut count = 0u64;
        for source in self.vertices() {
            let mut frontier = vec![source];
            let mut seen = vec![source];
            depth[source] = 0;
            for level in 1..=3 {
                let mut next = Vec::new();
                for &u in &frontier {
                    for &v in &self.adj[u] {
                        if depth[v] == usize::MAX {
                            depth[v] = level;
                            seen.push(v);
                            next.push(v);
                        }
                    }
                }
                frontier = next;
            }
            count += frontier.iter().filter(|&&v| v > source).count() as u64;
            for v in seen {
                depth[v] = usize::MAX;
            }
        }
        count
    }

    /// Maximal paths whose endpoints have degree other than 2 and whose
    /// interior vertices all have degree 2. They partition the edge set.
    pub fn segments(&self) -> Vec<Segment> {
        let mut out = Vec::new();
        for start in self.vertices() {
            if self.degree(start) == 2 {
                continue;
            }
            for &next in &self.adj[start] {
                let walk = self.walk(start, next);
                if start < *walk.last().unwrap() {
                    out.push(Segment { vertices: walk });
                }
            }
        }
        out
    }

    pub fn segment_count(&self) -> usize {
        self.segments().len()
    }

    /// Classifies every segment as a pendent or internal path. Fails on a tree
    /// without branching vertices, where neither notion applies.
    pub fn classify_paths(&self) -> Result<Vec<PathClassification>, TreeError> {
        if self.branching_count() == 0 {
            return Err(TreeError::NoBranchingVertex);
        }
        Ok(self
            .segments()
            .into_iter()
            .map(|segment| {
                let (a, b) = segment.endpoints();
                let kind = if self.degree(a) >= 3 && self.degree(b) >= 3 {
                    PathKind::Internal
                } else {
                    PathKind::Pendent
                };
                PathClassification {
                    kind,
                    length: segment.len(),
                    segment,
                }
            })
            .collect())
    }

    /// True when no internal path has more than one edge.
    pub fn internal_paths_are_edges(&self) -> bool {
        self.vertices().filter(|&v| self.degree(v) >= 3).all(|v| {
            self.adj[v].iter().all(|&w| {
                let walk = self.walk(v, w);
                walk.len() == 2 || self.degree(*walk.last().unwrap()) < 3
            })
        })
    }
}

impl fmt::Display for Tree {
    /// Compact single-line form, e.g. `4:0-1,1-2,2-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.order())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        Ok(())
    }
}

/// A tree whose maximum degree is at most 4.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChemicalTree(Tree);

impl ChemicalTree {
    pub fn new(tree: Tree) -> Result<Self, TreeError> {
        if let Some(v) = tree.vertices().find(|&v| tree.degree(v) > MAX_CHEMICAL_DEGREE) {
            return Err(TreeError::DegreeTooHigh {
                vertex: v,
                degree: tree.degree(v),
            });
        }
        Ok(ChemicalTree(tree))
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, TreeError> {
        Self::new(Tree::from_edges(n, edges)?)
    }

    pub fn path_graph(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges).expect("paths are chemical trees")
    }

    pub fn as_tree(&self) -> &Tree {
        &self.0
    }

    pub fn into_tree(self) -> Tree {
        self.0
    }
}

impl Deref for ChemicalTree {
    type Target = Tree;

    fn deref(&self) -> &Tree {
        &self.0
    }
}

impl fmt::Display for ChemicalTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Vertex counts by degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct DegreeCensus {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub n4: usize,
}

impl DegreeCensus {
    pub fn new(n1: usize, n2: usize, n3: usize, n4: usize) -> Self {
        DegreeCensus { n1, n2, n3, n4 }
    }

    pub fn order(&self) -> usize {
        self.n1 + self.n2 + self.n3 + self.n4
    }

    pub fn count(&self, degree: usize) -> usize {
        match degree {
            1 => self.n1,
            2 => self.n2,
            3 => self.n3,
            4 => self.n4,
            _ => 0,
        }
    }

    pub fn branching(&self) -> usize {
        self.n3 + self.n4
    }

    /// Segment count implied by the census: `n1 + n3 + n4 - 1`.
    pub fn segments(&self) -> usize {
        (self.n1 + self.n3 + self.n4).saturating_sub(1)
    }

    /// Degree sum equals twice the edge count of a tree on `order()` vertices.
    pub fn satisfies_handshake(&self) -> bool {
        let n = self.order();
        n >= 2 && self.n1 + 2 * self.n2 + 3 * self.n3 + 4 * self.n4 == 2 * (n - 1)
    }
}

/// A maximal path between vertices of degree other than 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub vertices: Vec<Vertex>,
}

impl Segment {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() < 2
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1])))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PathKind {
    Pendent,
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathClassification {
    pub kind: PathKind,
    pub length: usize,
    pub segment: Segment,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> ChemicalTree {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        ChemicalTree::from_edges(leaves + 1, &edges).unwrap()
    }

    // v1 v2 v3 v4 as 0-1-2-3 with an extra leaf 4 on vertex 1.
    fn methylbutane() -> ChemicalTree {
        ChemicalTree::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn census_examples() {
        assert_eq!(
            ChemicalTree::path_graph(7).degree_census(),
            DegreeCensus::new(2, 5, 0, 0)
        );
        assert_eq!(star(4).degree_census(), DegreeCensus::new(4, 0, 0, 1));
        assert_eq!(methylbutane().degree_census(), DegreeCensus::new(3, 1, 1, 0));
    }

    #[test]
    fn wp_examples_agree() {
        for (tree, expected) in [
            (ChemicalTree::path_graph(7), 4),
            (star(4), 0),
            (methylbutane(), 2),
        ] {
            assert_eq!(tree.wp_edge(), expected);
            assert_eq!(tree.wp_distance(), expected);
        }
    }

    #[test]
    fn tiny_trees_have_zero_wp() {
        for n in 1..=3 {
            let t = ChemicalTree::path_graph(n);
            assert_eq!(t.wp_edge(), 0);
            assert_eq!(t.wp_distance(), 0);
        }
    }

    #[test]
    fn segment_examples() {
        let p7 = ChemicalTree::path_graph(7).segments();
        assert_eq!(p7.len(), 1);
        assert_eq!(p7[0].len(), 6);
        let s = star(4).segments();
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|seg| seg.len() == 1));
        assert_eq!(methylbutane().segments().len(), 3);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            ChemicalTree::path_graph(7).classify_paths(),
            Err(TreeError::NoBranchingVertex)
        );
        let star_paths = star(4).classify_paths().unwrap();
        assert_eq!(star_paths.len(), 4);
        assert!(star_paths
            .iter()
            .all(|p| p.kind == PathKind::Pendent && p.length == 1));

        let mb = methylbutane().classify_paths().unwrap();
        assert_eq!(mb.iter().filter(|p| p.kind == PathKind::Pendent).count(), 3);

        // Degree-3 vertices 0 and 2 joined through 1, two leaves each.
        let t = ChemicalTree::from_edges(7, &[(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6)])
            .unwrap();
        let paths = t.classify_paths().unwrap();
        let pendent: Vec<_> = paths.iter().filter(|p| p.kind == PathKind::Pendent).collect();
        let internal: Vec<_> = paths.iter().filter(|p| p.kind == PathKind::Internal).collect();
        assert_eq!(pendent.len(), 4);
        assert!(pendent.iter().all(|p| p.length == 1));
        assert_eq!(internal.len(), 1);
        assert_eq!(internal[0].length, 2);
    }

    #[test]
    fn branching_examples() {
        assert_eq!(ChemicalTree::path_graph(7).branching_count(), 0);
        assert_eq!(star(4).branching_count(), 1);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Tree::from_edges(0, &[]), Err(TreeError::Empty));
        assert_eq!(
            Tree::from_edges(3, &[(0, 1), (1, 3)]),
            Err(TreeError::VertexOutOfRange { vertex: 3, order: 3 })
        );
        assert_eq!(Tree::from_edges(2, &[(1, 1)]), Err(TreeError::SelfLoop(1)));
        assert_eq!(
            Tree::from_edges(3, &[(0, 1), (1, 0)]),
            Err(TreeError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Tree::from_edges(4, &[(0, 1), (1, 2), (2, 0)]),
            Err(TreeError::NotConnected)
        );
        assert!(matches!(
            Tree::from_edges(4, &[(0, 1)]),
            Err(TreeError::EdgeCount { expected: 3, found: 1, .. })
        ));
        assert!(matches!(
            ChemicalTree::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]),
            Err(TreeError::DegreeTooHigh { vertex: 0, degree: 5 })
        ));
    }

    #[test]
    fn path_and_branch_queries() {
        let t = methylbutane();
        assert_eq!(t.path(0, 3), vec![0, 1, 2, 3]);
        assert_eq!(t.path(4, 4), vec![4]);
        assert!(t.branch_contains(1, 2, 3));
        assert!(!t.branch_contains(1, 2, 4));
        assert_eq!(t.branch(1, 2), vec![2, 3]);
        assert_eq!(t.walk(1, 2), vec![1, 2, 3]);
        assert_eq!(t.to_string(), "5:0-1,1-2,1-4,2-3");
    }
}
