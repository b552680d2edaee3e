//! Isomorph-free generation of all chemical trees of a given order.
//!
//! Every free tree has either one centroid, with all branches of size below
//! `n/2`, or two adjacent centroids splitting it into halves of size `n/2`.
//! Trees are therefore generated as multisets of canonical planted subtrees
//! hung from a centroid (or as an unordered pair joined across the centroid
//! edge). A planted subtree's root has at most three children, and the
//! centroid at most four, so the degree bound holds by construction and
//! no two yielded trees are isomorphic.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::canon::CanonicalCode;
use crate::tree::{ChemicalTree, Tree, Vertex, MAX_CHEMICAL_DEGREE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("order must be at least 1")]
    EmptyOrder,
    #[error("segment count must be at least 1")]
    ZeroSegments,
    #[error("n_min ({n_min}) must not exceed n_max ({n_max})")]
    EmptyRange { n_min: usize, n_max: usize },
}

/// Structural parameter used to split trees of one order into classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Constraint {
    /// Number of vertices of degree 3 or 4 (`b`).
    Branching,
    /// Number of segments (`k`).
    Segments,
}

impl Constraint {
    pub fn value(self, tree: &Tree) -> usize {
        match self {
            Constraint::Branching => tree.branching_count(),
            Constraint::Segments => tree.segment_count(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Constraint::Branching => "b",
            Constraint::Segments => "k",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationQuery {
    pub n: usize,
    pub filter: Option<(Constraint, usize)>,
    pub cap: Option<usize>,
}

impl EnumerationQuery {
    pub fn all(n: usize) -> Self {
        EnumerationQuery {
            n,
            filter: None,
            cap: None,
        }
    }

    pub fn with_branching(n: usize, b: usize) -> Self {
        EnumerationQuery {
            filter: Some((Constraint::Branching, b)),
            ..Self::all(n)
        }
    }

    pub fn with_segments(n: usize, k: usize) -> Self {
        EnumerationQuery {
            filter: Some((Constraint::Segments, k)),
            ..Self::all(n)
        }
    }

    pub fn with_constraint(n: usize, constraint: Constraint, value: usize) -> Self {
        EnumerationQuery {
            filter: Some((constraint, value)),
            ..Self::all(n)
        }
    }

    pub fn capped(self, cap: usize) -> Self {
        EnumerationQuery {
            cap: Some(cap),
            ..self
        }
    }

    pub fn validate(&self) -> Result<(), EnumerationError> {
        if self.n == 0 {
            return Err(EnumerationError::EmptyOrder);
        }
        if self.filter == Some((Constraint::Segments, 0)) {
            return Err(EnumerationError::ZeroSegments);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct PlantedId {
    size: usize,
    index: usize,
}

/// Canonical planted trees (root keeps one slot for its parent), by size.
struct Catalog {
    by_size: Vec<Vec<Vec<PlantedId>>>,
}

impl Catalog {
    fn up_to(max_size: usize) -> Self {
        let mut by_size: Vec<Vec<Vec<PlantedId>>> = vec![Vec::new(); max_size + 1];
        for size in 1..=max_size {
            let mut trees = Vec::new();
            for parts in partitions(size - 1, MAX_CHEMICAL_DEGREE - 1, size - 1) {
                let limits: Vec<usize> = parts.iter().map(|&p| by_size[p].len()).collect();
                let mut odometer = Odometer::new(parts.clone(), limits);
                while let Some(indices) = odometer.next_tuple() {
                    trees.push(
                        parts
                            .iter()
                            .zip(indices)
                            .map(|(&size, &index)| PlantedId { size, index })
                            .collect(),
                    );
                }
            }
            by_size[size] = trees;
        }
        Catalog { by_size }
    }

    fn children(&self, id: PlantedId) -> &[PlantedId] {
        &self.by_size[id.size][id.index]
    }

    fn count(&self, size: usize) -> usize {
        self.by_size.get(size).map_or(0, Vec::len)
    }

    /// Appends the planted tree `id` below `parent`, labeling in DFS order.
    fn grow(&self, id: PlantedId, parent: Option<Vertex>, edges: &mut Vec<(Vertex, Vertex)>, next: &mut Vertex) {
        let mut stack = vec![(id, parent)];
        while let Some((id, parent)) = stack.pop() {
            let me = *next;
            *next += 1;
            if let Some(p) = parent {
                edges.push((p, me));
            }
            for &child in self.children(id).iter().rev() {
                stack.push((child, Some(me)));
            }
        }
    }
}

/// Partitions of `total` into at most `max_parts` parts no larger than
/// `max_part`, each listed in nonincreasing order.
fn partitions(total: usize, max_parts: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, slots: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            cur.push(part);
            rec(rest - part, slots - 1, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, max_parts, max_part, &mut Vec::new(), &mut out);
    out
}

/// Walks index tuples over catalog slots. Slots of equal size hold
/// nondecreasing indices so every multiset is visited once.
struct Odometer {
    sizes: Vec<usize>,
    limits: Vec<usize>,
    indices: Vec<usize>,
    state: OdometerState,
}

#[derive(PartialEq)]
enum OdometerState {
    Fresh,
    Running,
    Done,
}

impl Odometer {
    fn new(sizes: Vec<usize>, limits: Vec<usize>) -> Self {
        let state = if limits.contains(&0) {
            OdometerState::Done
        } else {
            OdometerState::Fresh
        };
        let indices = vec![0; sizes.len()];
        Odometer {
            sizes,
            limits,
            indices,
            state,
        }
    }

    fn next_tuple(&mut self) -> Option<&[usize]> {
        match self.state {
            OdometerState::Done => return None,
            OdometerState::Fresh => {
                self.state = OdometerState::Running;
                return Some(&self.indices);
            }
            OdometerState::Running => {}
        }
        for pos in (0..self.indices.len()).rev() {
            if self.indices[pos] + 1 < self.limits[pos] {
                self.indices[pos] += 1;
                for q in pos + 1..self.indices.len() {
                    self.indices[q] = if self.sizes[q] == self.sizes[q - 1] {
                        self.indices[q - 1]
                    } else {
                        0
                    };
                }
                return Some(&self.indices);
            }
        }
        self.state = OdometerState::Done;
        None
    }
}

/// Top-level layout of a free tree: branch sizes around a single centroid,
/// or two halves joined across the centroid edge.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Shape {
    parts: Vec<usize>,
    bicentroidal: bool,
}

fn shapes(n: usize) -> Vec<Shape> {
    let mut out: Vec<Shape> = partitions(n - 1, MAX_CHEMICAL_DEGREE, (n - 1) / 2)
        .into_iter()
        .map(|parts| Shape {
            parts,
            bicentroidal: false,
        })
        .collect();
    if n == 1 {
        out = vec![Shape {
            parts: Vec::new(),
            bicentroidal: false,
        }];
    }
    if n >= 2 && n.is_multiple_of(2) {
        out.push(Shape {
            parts: vec![n / 2, n / 2],
            bicentroidal: true,
        });
    }
    out
}

/// Streaming generator yielding one representative per isomorphism class.
pub struct ChemicalTrees {
    query: EnumerationQuery,
    catalog: Catalog,
    shapes: Vec<Shape>,
    shape_pos: usize,
    odometer: Option<Odometer>,
    yielded: usize,
}

impl ChemicalTrees {
    /// Restricts the stream to shapes whose position is `part` modulo
    /// `parts`. The partitions are disjoint and jointly exhaustive.
    pub fn partition(mut self, part: usize, parts: usize) -> Self {
        assert!(part < parts, "partition index out of range");
        self.shapes = std::mem::take(&mut self.shapes)
            .into_iter()
            .enumerate()
            .filter(|(i, _)| i % parts == part)
            .map(|(_, s)| s)
            .collect();
        self
    }

    /// Number of independent top-level shapes the stream is split into.
    pub fn shape_count(&self) -> usize {
        self.shapes.len()
    }

    fn build(&self, shape: &Shape, indices: &[usize]) -> ChemicalTree {
        let n = self.query.n;
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        let mut next = 0;
        if shape.bicentroidal {
            let left = PlantedId {
                size: shape.parts[0],
                index: indices[0],
            };
            let right = PlantedId {
                size: shape.parts[1],
                index: indices[1],
            };
            self.catalog.grow(left, None, &mut edges, &mut next);
            let right_root = next;
            self.catalog.grow(right, None, &mut edges, &mut next);
            edges.push((0, right_root));
        } else {
            next = 1;
            for (&size, &index) in shape.parts.iter().zip(indices) {
                self.catalog.grow(PlantedId { size, index }, Some(0), &mut edges, &mut next);
            }
        }
        debug_assert_eq!(next, n);
        ChemicalTree::from_edges(n, &edges).expect("generated edge sets are chemical trees")
    }

    fn accepts(&self, tree: &ChemicalTree) -> bool {
        match self.query.filter {
            None => true,
            Some((constraint, value)) => constraint.value(tree) == value,
        }
    }
}

impl Iterator for ChemicalTrees {
    type Item = ChemicalTree;

    fn next(&mut self) -> Option<ChemicalTree> {
        if self.query.cap.is_some_and(|cap| self.yielded >= cap) {
            return None;
        }
        while self.shape_pos < self.shapes.len() {
            let shape = &self.shapes[self.shape_pos];
            let odometer = self.odometer.get_or_insert_with(|| {
                let limits = shape.parts.iter().map(|&p| self.catalog.count(p)).collect();
                Odometer::new(shape.parts.clone(), limits)
            });
            match odometer.next_tuple().map(<[usize]>::to_vec) {
                Some(indices) => {
                    let tree = self.build(&self.shapes[self.shape_pos], &indices);
                    if self.accepts(&tree) {
                        self.yielded += 1;
                        return Some(tree);
                    }
                }
                None => {
                    self.odometer = None;
                    self.shape_pos += 1;
                }
            }
        }
        None
    }
}

/// Streams every chemical tree of order `query.n` matching the filter, one
/// per isomorphism class, in a fixed deterministic order.
pub fn enumerate_chemical_trees(query: EnumerationQuery) -> Result<ChemicalTrees, EnumerationError> {
    query.validate()?;
    let n = query.n;
    Ok(ChemicalTrees {
        query,
        catalog: Catalog::up_to(n / 2),
        shapes: shapes(n),
        shape_pos: 0,
        odometer: None,
        yielded: 0,
    })
}

/// All trees of order `n`; panics only on `n == 0`.
pub fn all_chemical_trees(n: usize) -> ChemicalTrees {
    enumerate_chemical_trees(EnumerationQuery::all(n)).expect("order must be positive")
}

/// Extremes of the Wiener polarity index over one class.
#[derive(Clone, Debug)]
pub struct ClassExtrema {
    pub min_wp: u64,
    pub max_wp: u64,
    /// First tree in enumeration order attaining the minimum.
    pub min_witness: ChemicalTree,
    /// First tree in enumeration order attaining the maximum.
    pub max_witness: ChemicalTree,
    pub class_size: usize,
}

impl ClassExtrema {
    fn seed(tree: ChemicalTree) -> Self {
        let wp = tree.wp_edge();
        ClassExtrema {
            min_wp: wp,
            max_wp: wp,
            min_witness: tree.clone(),
            max_witness: tree,
            class_size: 1,
        }
    }

    fn absorb(&mut self, tree: ChemicalTree) {
        let wp = tree.wp_edge();
        self.class_size += 1;
        if wp < self.min_wp {
            self.min_wp = wp;
            self.min_witness = tree.clone();
        }
        if wp > self.max_wp {
            self.max_wp = wp;
            self.max_witness = tree;
        }
    }

    pub fn min_code(&self) -> CanonicalCode {
        self.min_witness.canonical_form()
    }

    pub fn max_code(&self) -> CanonicalCode {
        self.max_witness.canonical_form()
    }
}

/// Keyed by `(n, constraint value)`.
pub type ExtremalTable = BTreeMap<(usize, usize), ClassExtrema>;

/// Per-class extremes for one order, keyed by constraint value.
pub fn class_extrema(n: usize, constraint: Constraint) -> BTreeMap<usize, ClassExtrema> {
    let mut classes: BTreeMap<usize, ClassExtrema> = BTreeMap::new();
    for tree in all_chemical_trees(n) {
        let value = constraint.value(&tree);
        match classes.get_mut(&value) {
            Some(entry) => entry.absorb(tree),
            None => {
                classes.insert(value, ClassExtrema::seed(tree));
            }
        }
    }
    classes
}

pub fn extremal_table(
    n_min: usize,
    n_max: usize,
    constraint: Constraint,
) -> Result<ExtremalTable, EnumerationError> {
    if n_min == 0 {
        return Err(EnumerationError::EmptyOrder);
    }
    if n_min > n_max {
        return Err(EnumerationError::EmptyRange { n_min, n_max });
    }
    let mut table = ExtremalTable::new();
    for n in n_min..=n_max {
        for (value, extrema) in class_extrema(n, constraint) {
            table.insert((n, value), extrema);
        }
    }
    Ok(table)
}

/// Constraint values whose class is non-empty, read off the enumeration.
pub fn realizable_values(n: usize, constraint: Constraint) -> BTreeSet<usize> {
    all_chemical_trees(n.max(1))
        .map(|t| constraint.value(&t))
        .collect()
}
