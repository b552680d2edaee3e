//! Relabeling-invariant canonical codes for free trees.
//!
//! A tree is rooted at its center (or at each of its two centers), every
//! rooted subtree is encoded as its preorder level sequence with children
//! ordered by descending code, and the lexicographically largest root code is
//! kept. Two trees share a code exactly when they are isomorphic.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::tree::{Tree, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u32>);

impl CanonicalCode {
    pub fn levels(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, level) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{level}")?;
        }
        Ok(())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The one or two central vertices, found by repeatedly stripping leaves.
pub fn centers(tree: &Tree) -> Vec<Vertex> {
    let n = tree.order();
    if n <= 2 {
        return tree.vertices().collect();
    }
    let mut degree: Vec<usize> = tree.vertices().map(|v| tree.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut layer: Vec<Vertex> = tree.vertices().filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            removed[leaf] = true;
        }
        for &leaf in &layer {
            for &w in tree.neighbors(leaf) {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    tree.vertices().filter(|&v| !removed[v]).collect()
}

/// Canonical level sequence of `tree` rooted at `root`.
pub fn rooted_code(tree: &Tree, root: Vertex) -> Vec<u32> {
    let n = tree.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in tree.neighbors(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }

    let mut codes: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &u in order.iter().rev() {
        let mut children: Vec<Vec<u32>> = tree
            .neighbors(u)
            .iter()
            .filter(|&&v| parent[v] == u)
            .map(|&v| std::mem::take(&mut codes[v]))
            .collect();
        children.sort_unstable_by(|a, b| b.cmp(a));
        let mut code = Vec::with_capacity(1 + children.iter().map(Vec::len).sum::<usize>());
        code.push(0);
        for child in children {
            code.extend(child.into_iter().map(|level| level + 1));
        }
        codes[u] = code;
    }
    std::mem::take(&mut codes[root])
}

pub fn canonical_form(tree: &Tree) -> CanonicalCode {
    let best = centers(tree)
        .into_iter()
        .map(|c| rooted_code(tree, c))
        .max()
        .expect("trees have at least one center");
    CanonicalCode(best)
}

impl Tree {
    pub fn canonical_form(&self) -> CanonicalCode {
        canonical_form(self)
    }
}
