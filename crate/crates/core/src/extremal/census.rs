use serde::Serialize;

use crate::tree::{DegreeCensus, Tree};

/// Edge counts `x_ij` by endpoint degrees `{i, j}`, `1 <= i <= j <= 4`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeTypeCensus {
    pub x11: u64,
    pub x12: u64,
    pub x13: u64,
    pub x14: u64,
    pub x22: u64,
    pub x23: u64,
    pub x24: u64,
    pub x33: u64,
    pub x34: u64,
    pub x44: u64,
}

impl EdgeTypeCensus {
    pub fn of(tree: &Tree) -> Self {
        let mut census = EdgeTypeCensus::default();
        for (u, v) in tree.edges() {
            *census.slot_mut(tree.degree(u), tree.degree(v)) += 1;
        }
        census
    }

    /// Panics if either degree lies outside `1..=4`.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        let mut copy = *self;
        *copy.slot_mut(i, j)
    }

    pub fn set(&mut self, i: usize, j: usize, count: u64) {
        *self.slot_mut(i, j) = count;
    }

    fn slot_mut(&mut self, i: usize, j: usize) -> &mut u64 {
        match (i.min(j), i.max(j)) {
            (1, 1) => &mut self.x11,
            (1, 2) => &mut self.x12,
            (1, 3) => &mut self.x13,
            (1, 4) => &mut self.x14,
            (2, 2) => &mut self.x22,
            (2, 3) => &mut self.x23,
            (2, 4) => &mut self.x24,
            (3, 3) => &mut self.x33,
            (3, 4) => &mut self.x34,
            (4, 4) => &mut self.x44,
            other => panic!("edge type {other:?} is outside chemical degrees"),
        }
    }

    /// `(i, j, x_ij)` in lexicographic order of `(i, j)`.
    pub fn entries(&self) -> [(usize, usize, u64); 10] {
        [
            (1, 1, self.x11),
            (1, 2, self.x12),
            (1, 3, self.x13),
            (1, 4, self.x14),
            (2, 2, self.x22),
            (2, 3, self.x23),
            (2, 4, self.x24),
            (3, 3, self.x33),
            (3, 4, self.x34),
            (4, 4, self.x44),
        ]
    }

    pub fn total(&self) -> u64 {
        self.entries().iter().map(|e| e.2).sum()
    }

    /// Edge ends landing on degree-`d` vertices, with `x_dd` counted twice.
    pub fn endpoint_count(&self, d: usize) -> u64 {
        (1..=4).map(|j| if j == d { 2 * self.get(d, d) } else { self.get(d, j) }).sum()
    }

    /// Whether this census can belong to a tree with the given degree census.
    pub fn consistent_with(&self, degrees: &DegreeCensus) -> bool {
        let n = degrees.order() as u64;
        n >= 1
            && self.total() + 1 == n
            && (1..=4).all(|d| self.endpoint_count(d) == (d * degrees.count(d)) as u64)
    }
}

/// `W_p = sum over edge types of x_ij (i - 1)(j - 1)`.
pub fn wp_from_census(census: &EdgeTypeCensus) -> u64 {
    census
        .entries()
        .iter()
        .map(|&(i, j, x)| x * ((i - 1) * (j - 1)) as u64)
        .sum()
}
