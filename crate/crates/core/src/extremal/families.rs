//! Extremal tree families: one deterministic witness per `(n, parameter)`
//! and the edge-type census each regime is expected to produce.
//!
//! Witnesses share one layout. Branching vertices of the largest degree
//! form a spine joined by single edges (or, for `Bnb`, by internal paths).
//! Every remaining neighbor slot carries a pendent path, or a hanging
//! degree-3 vertex. Degree-2 vertices are spread over slots in creation
//! order, one per slot before any slot gets a second.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::enumerate::Constraint;
use crate::extremal::census::EdgeTypeCensus;
use crate::tree::{ChemicalTree, DegreeCensus, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family} is not defined for n={n}, {symbol}={parameter}: {reason}")]
    OutOfRange {
        family: &'static str,
        n: usize,
        symbol: &'static str,
        parameter: usize,
        reason: &'static str,
    },
    #[error("{family} has no tree for n={n}, {symbol}={parameter}: {reason}")]
    Unrealizable {
        family: &'static str,
        n: usize,
        symbol: &'static str,
        parameter: usize,
        reason: &'static str,
    },
    #[error("unknown family '{0}'")]
    Unknown(String),
}

/// Predicted degree and edge-type censuses for one regime of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegimeCensus {
    pub family: &'static str,
    pub regime: &'static str,
    pub degrees: DegreeCensus,
    pub edges: EdgeTypeCensus,
    /// Non-branching neighbors of degree-4 vertices, where the family names one.
    pub theta: Option<u64>,
    /// `W_p` stated for this regime.
    pub formula: &'static str,
    pub wp: i64,
}

pub trait ExtremalFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn constraint(&self) -> Constraint;
    /// Checks the family's parameter range, before any placement question.
    fn validate(&self, n: usize, parameter: usize) -> Result<(), FamilyError>;
    fn predicted_census(&self, n: usize, parameter: usize) -> Result<RegimeCensus, FamilyError>;
    fn construct(&self, n: usize, parameter: usize) -> Result<ChemicalTree, FamilyError>;
}

fn out_of_range(f: &dyn ExtremalFamily, n: usize, p: usize, reason: &'static str) -> FamilyError {
    FamilyError::OutOfRange {
        family: f.name(),
        n,
        symbol: f.constraint().symbol(),
        parameter: p,
        reason,
    }
}

fn unrealizable(f: &dyn ExtremalFamily, n: usize, p: usize, reason: &'static str) -> FamilyError {
    FamilyError::Unrealizable {
        family: f.name(),
        n,
        symbol: f.constraint().symbol(),
        parameter: p,
        reason,
    }
}

/// Splits `total` over `slots` as evenly as possible, earlier slots first.
fn spread(total: usize, slots: usize) -> Vec<usize> {
    if slots == 0 {
        return Vec::new();
    }
    (0..slots)
        .map(|i| total / slots + usize::from(i < total % slots))
        .collect()
}

#[derive(Default)]
struct Builder {
    edges: Vec<(Vertex, Vertex)>,
    next: Vertex,
}

impl Builder {
    fn vertex(&mut self) -> Vertex {
        self.next += 1;
        self.next - 1
    }

    fn attach(&mut self, parent: Vertex) -> Vertex {
        let v = self.vertex();
        self.edges.push((parent, v));
        v
    }

    /// `twos` degree-2 vertices below `anchor`, ending in a leaf.
    fn pendent(&mut self, anchor: Vertex, twos: usize) {
        let mut at = anchor;
        for _ in 0..=twos {
            at = self.attach(at);
        }
    }

    /// `count` spine vertices, with `gaps[i]` degree-2 vertices between the
    /// `i`-th and the next.
    fn spine(&mut self, count: usize, gaps: &[usize]) -> Vec<Vertex> {
        let mut spine = Vec::with_capacity(count);
        let first = self.vertex();
        spine.push(first);
        for i in 1..count {
            let mut at = spine[i - 1];
            for _ in 0..gaps.get(i - 1).copied().unwrap_or(0) {
                at = self.attach(at);
            }
            spine.push(self.attach(at));
        }
        spine
    }

    fn finish(self, n: usize) -> ChemicalTree {
        debug_assert_eq!(self.next, n);
        ChemicalTree::from_edges(n, &self.edges).expect("family layouts are chemical trees")
    }
}

/// Free neighbor slots of spine vertices of degree `d`, in creation order.
fn spine_slots(spine: &[Vertex], d: usize, taken: &[usize]) -> Vec<Vertex> {
    spine
        .iter()
        .enumerate()
        .flat_map(|(i, &v)| {
            let used = usize::from(i > 0) + usize::from(i + 1 < spine.len()) + taken[i];
            std::iter::repeat_n(v, d - used)
        })
        .collect()
}

/// A spine of `n4` degree-4 vertices whose `2 n4 + 2` slots all end in
/// pendent paths, holding `n2` degree-2 vertices between them.
fn pendent_star_chain(n4: usize, n2: usize) -> ChemicalTree {
    let mut b = Builder::default();
    let spine = b.spine(n4, &[]);
    let slots = spine_slots(&spine, 4, &vec![0; n4]);
    for (&anchor, twos) in slots.iter().zip(spread(n2, slots.len())) {
        b.pendent(anchor, twos);
    }
    b.finish(3 * n4 + 2 + n2)
}

fn census(entries: &[((usize, usize), usize)]) -> EdgeTypeCensus {
    let mut c = EdgeTypeCensus::default();
    for &((i, j), x) in entries {
        c.set(i, j, x as u64);
    }
    c
}

/// Degree-4 vertices with degree-3 vertices hanging from their slots.
pub struct Bt1;

impl Bt1 {
    fn shape(n: usize, b: usize) -> (usize, usize, usize) {
        let n4 = n - 2 * b - 2;
        let n3 = 3 * b + 2 - n;
        (n4, n3, 2 * n4 + 2)
    }
}

impl ExtremalFamily for Bt1 {
    fn name(&self) -> &'static str {
        "BT1"
    }

    fn constraint(&self) -> Constraint {
        Constraint::Branching
    }

    fn validate(&self, n: usize, b: usize) -> Result<(), FamilyError> {
        if 3 * b + 2 < n {
            return Err(out_of_range(self, n, b, "requires 3b >= n - 2"));
        }
        if 2 * b + 2 >= n {
            return Err(out_of_range(self, n, b, "requires 2b < n - 2"));
        }
        Ok(())
    }

    fn predicted_census(&self, n: usize, b: usize) -> Result<RegimeCensus, FamilyError> {
        self.validate(n, b)?;
        let (n4, n3, theta) = Self::shape(n, b);
        let degrees = DegreeCensus::new(n - b, 0, n3, n4);
        let (ni, bi) = (n as i64, b as i64);
        Ok(if 7 * b + 4 < 3 * n {
            RegimeCensus {
                family: self.name(),
                regime: "7b < 3n-4",
                degrees,
                edges: census(&[
                    ((3, 4), n3),
                    ((4, 4), n4 - 1),
                    ((1, 3), 2 * n3),
                    ((1, 4), theta - n3),
                ]),
                theta: Some(theta as u64),
                formula: "3n-15",
                wp: 3 * ni - 15,
            }
        } else {
            RegimeCensus {
                family: self.name(),
                regime: "7b >= 3n-4",
                degrees,
                edges: census(&[
                    ((3, 4), theta),
                    ((4, 4), n4 - 1),
                    ((3, 3), n3 - theta),
                    ((1, 3), n3 + theta),
                ]),
                theta: Some(theta as u64),
                formula: "9n-14b-23",
                wp: 9 * ni - 14 * bi - 23,
            }
        })
    }

    fn construct(&self, n: usize, b: usize) -> Result<ChemicalTree, FamilyError> {
        self.validate(n, b)?;
        let (n4, n3, theta) = Self::shape(n, b);
        let mut builder = Builder::default();
        let spine = builder.spine(n4, &[]);
        let slots = spine_slots(&spine, 4, &vec![0; n4]);
        debug_assert_eq!(slots.len(), theta);
        let mut open = VecDeque::new();
        let mut placed = 0;
        for &anchor in &slots {
            if placed < n3 {
                let c = builder.attach(anchor);
                open.extend([c, c]);
                placed += 1;
            } else {
                builder.attach(anchor);
            }
        }
        while placed < n3 {
            let parent = open.pop_front().expect("hanging vertices keep open slots");
            let c = builder.attach(parent);
            open.extend([c, c]);
            placed += 1;
        }
        for parent in open {
            builder.attach(parent);
        }
        Ok(builder.finish(n))
    }
}

/// Degree-4 spine with degree-2 vertices on its pendent paths.
pub struct Bt2;

impl ExtremalFamily for Bt2 {
    fn name(&self) -> &'static str {
        "BT2"
    }

    fn constraint(&self) -> Constraint {
        Constraint::Branching
    }

    fn validate(&self, n: usize, b: usize) -> Result<(), FamilyError> {
        if b == 0 {
            return Err(out_of_range(self, n, b, "requires b >= 1"));
        }
        if 3 * b + 2 >= n {
            return Err(out_of_range(self, n, b, "requires 3b < n - 2"));
        }
        Ok(())
    }

    fn predicted_census(&self, n: usize, b: usize) -> Result<RegimeCensus, FamilyError> {
        self.validate(n, b)?;
        let n2 = n - 3 * b - 2;
        let theta = 2 * b + 2;
        let degrees = DegreeCensus::new(theta, n2, 0, b);
        let (ni, bi) = (n as i64, b as i64);
        Ok(if 5 * b + 4 <= n {
            RegimeCensus {
                family: self.name(),
                regime: "5b <= n-4",
                degrees,
                edges: census(&[
                    ((4, 4), b - 1),
                    ((2, 4), theta),
                    ((2, 2), n - 5 * b - 4),
                    ((1, 2), theta),
                ]),
                theta: Some(theta as u64),
                formula: "n+10b-7",
                wp: ni + 10 * bi - 7,
            }
        } else {
            RegimeCensus {
                family: self.name(),
                regime: "5b > n-4",
                degrees,
                edges: census(&[
                    ((4, 4), b - 1),
                    ((2, 4), n2),
                    ((1, 2), n2),
                    ((1, 4), theta - n2),
                ]),
                theta: Some(theta as u64),
                formula: "3n-15",
                wp: 3 * ni - 15,
            }
        })
    }

    fn construct(&self, n: usize, b: usize) -> Result<ChemicalTree, FamilyError> {
        self.validate(n, b)?;
        Ok(pendent_star_chain(b, n - 3 * b - 2))
    }
}

/// Degree-3 vertices on a path, degree-2 vertices on the internal paths.
pub struct Bnb;

impl ExtremalFamily for Bnb {
    fn name(&self) -> &'static str {
        "Bnb"
    }

    fn constraint(&self) -> Constraint {
        Constraint::Branching
    }

    fn validate(&self, n: usize, b: usize) -> Result<(), FamilyError> {
        if b == 0 {
            return Err(out_of_range(self, n, b, "requires b >= 1"));
        }
        if 2 * b + 2 > n {
            return Err(out_of_range(self, n, b, "requires b <= n/2 - 1"));
        }
        Ok(())
    }

    fn predicted_census(&self, n: usize, b: usize) -> Result<RegimeCensus, FamilyError> {
        self.validate(n, b)?;
        let n2 = n - 2 * b - 2;
        if b == 1 && n2 > 0 {
            return Err(unrealizable(self, n, b, "no internal path to hold degree-2 vertices"));
        }
        let degrees = DegreeCensus::new(b + 2, n2, b, 0);
        let (ni, bi) = (n as i64, b as i64);
        Ok(if n > 3 * b {
            RegimeCensus {
                family: self.name(),
                regime: "n >= 3b+1",
                degrees,
                edges: census(&[
                    ((2, 3), 2 * b - 2),
                    ((3, 3), 0),
                    ((2, 2), n - 3 * b - 1),
                    ((1, 3), b + 2),
                ]),
                theta: None,
                formula: "b+n-5",
                wp: bi + ni - 5,
            }
        } else {
            RegimeCensus {
                family: self.name(),
                regime: "n < 3b+1",
                degrees,
                edges: census(&[
                    ((2, 3), 2 * n2),
                    ((3, 3), b - 1 - n2),
                    ((1, 3), b + 2),
                ]),
                theta: None,
                formula: "4b-4",
                wp: 4 * bi - 4,
            }
        })
    }

    fn construct(&self, n: usize, b: usize) -> Result<ChemicalTree, FamilyError> {
        self.validate(n, b)?;
        let n2 = n - 2 * b - 2;
        if b == 1 && n2 > 0 {
            return Err(unrealizable(self, n, b, "no internal path to hold degree-2 vertices"));
        }
        let mut builder = Builder::default();
        let spine = builder.spine(b, &spread(n2, b - 1));
        for anchor in spine_slots(&spine, 3, &vec![0; b]) {
            builder.attach(anchor);
        }
        Ok(builder.finish(n))
    }
}

fn segment_range(f: &dyn ExtremalFamily, n: usize, k: usize, residue: usize, min_k: usize) -> Result<(), FamilyError> {
    if k % 3 != residue {
        return Err(out_of_range(f, n, k, "wrong residue of k mod 3"));
    }
    if k < min_k {
        return Err(out_of_range(f, n, k, "k too small for this family"));
    }
    if k >= n {
        return Err(out_of_range(f, n, k, "requires k <= n - 1"));
    }
    Ok(())
}

/// Degree-4 spine, every slot a pendent path; `k = 1 mod 3`.
pub struct Ct1;

impl ExtremalFamily for Ct1 {
    fn name(&self) -> &'static str {
        "CT1"
    }

    fn constraint(&self) -> Constraint {
        Constraint::Segments
    }

    fn validate(&self, n: usize, k: usize) -> Result<(), FamilyError> {
        segment_range(self, n, k, 1, 4)
    }

    fn predicted_census(&self, n: usize, k: usize) -> Result<RegimeCensus, FamilyError> {
        self.validate(n, k)?;
        let n4 = (k - 1) / 3;
        let n2 = n - k - 1;
        let n1 = (2 * k + 4) / 3;
        let degrees = DegreeCensus::new(n1, n2, 0, n4);
        let (ni, ki) = (n as i64, k as i64);
        Ok(if 3 * n < 5 * k + 7 {
            RegimeCensus {
                family: self.name(),
                regime: "3n < 5k+7",
                degrees,
                edges: census(&[
                    ((1, 2), n2),
                    ((2, 4), n2),
                    ((1, 4), (5 * k + 7 - 3 * n) / 3),
                    ((2, 2), 0),
                    ((4, 4), (k - 4) / 3),
                ]),
                theta: Some(2 * n4 as u64 + 2),
                formula: "3n-15",
                wp: 3 * ni - 15,
            }
        } else {
            RegimeCensus {
                family: self.name(),
                regime: "3n >= 5k+7",
                degrees,
                edges: census(&[
                    ((1, 2), n1),
                    ((2, 4), n1),
                    ((1, 4), 0),
                    ((2, 2), (3 * n - 5 * k - 7) / 3),
                    ((4, 4), (k - 4) / 3),
                ]),
                theta: Some(2 * n4 as u64 + 2),
                formula: "(3n+10k-31)/3",
                wp: (3 * ni + 10 * ki - 31) / 3,
            }
        })
    }

    fn construct(&self, n: usize, k: usize) -> Result<ChemicalTree, FamilyError> {
        self.validate(n, k)?;
        Ok(pendent_star_chain((k - 1) / 3, n - k - 1))
    }
}

/// Degree-4 spine plus one degree-3 vertex at its end; `k = 0 mod 3`.
pub struct Ct2;

impl ExtremalFamily for Ct2 {
    fn name(&self) -> &'static str {
        "CT2"
    }

    fn constraint(&self) -> Constraint {
        Constraint::Segments
    }

    fn validate(&self, n: usize, k: usize) -> Result<(), FamilyError> {
        segment_range(self, n, k, 0, 6)
    }

    fn predicted_census(&self, n: usize, k: usize) -> Result<RegimeCensus, FamilyError> {
        self.validate(n, k)?;
        let n4 = (k - 3) / 3;
        let n2 = n - k - 1;
        let big_theta = (2 * k - 3) / 3;
        let degrees = DegreeCensus::new((2 * k + 3) / 3, n2, 1, n4);
        let (ni, ki) = (n as i64, k as i64);
        let x44 = (k - 6) / 3;
        Ok(if 3 * n <= 5 * k {
            RegimeCensus {
                family: self.name(),
                regime: "3n <= 5k",
                degrees,
                edges: census(&[
                    ((2, 4), n2),
                    ((3, 4), 1),
                    ((4, 4), x44),
                    ((1, 2), n2),
                    ((1, 3), 2),
                    ((1, 4), big_theta - n2),
                ]),
                theta: Some(big_theta as u64),
                formula: "3n-15",
                wp: 3 * ni - 15,
            }
        } else if 3 * n == 5 * k + 3 {
            RegimeCensus {
                family: self.name(),
                regime: "3n = 5k+3",
                degrees,
                edges: census(&[
                    ((2, 3), 1),
                    ((2, 4), n - k - 2),
                    ((3, 4), 1),
                    ((4, 4), x44),
                    ((1, 2), n2),
                    ((1, 3), 1),
                ]),
                theta: Some(big_theta as u64),
                formula: "3n-16",
                wp: 3 * ni - 16,
            }
        } else {
            RegimeCensus {
                family: self.name(),
                regime: "3n > 5k+3",
                degrees,
                edges: census(&[
                    ((2, 2), (3 * n - 5 * k - 6) / 3),
                    ((2, 3), 2),
                    ((2, 4), big_theta),
                    ((3, 4), 1),
                    ((4, 4), x44),
                    ((1, 2), big_theta + 2),
                ]),
                theta: Some(big_theta as u64),
                formula: "(3n+10k-39)/3",
                wp: (3 * ni + 10 * ki - 39) / 3,
            }
        })
    }

    fn construct(&self, n: usize, k: usize) -> Result<ChemicalTree, FamilyError> {
        self.validate(n, k)?;
        let n4 = (k - 3) / 3;
        let mut builder = Builder::default();
        let spine = builder.spine(n4, &[]);
        let mut taken = vec![0; n4];
        taken[n4 - 1] = 1;
        let mut slots = spine_slots(&spine, 4, &taken);
        let c = builder.attach(spine[n4 - 1]);
        slots.extend([c, c]);
        for (&anchor, twos) in slots.iter().zip(spread(n - k - 1, slots.len())) {
            builder.pendent(anchor, twos);
        }
        Ok(builder.finish(n))
    }
}

/// Two degree-3 vertices, each with one branching neighbor; `k = 2 mod 3`.
pub struct Ct3;

impl ExtremalFamily for Ct3 {
    fn name(&self) -> &'static str {
        "CT3"
    }

    fn constraint(&self) -> Constraint {
        Constraint::Segments
    }

    fn validate(&self, n: usize, k: usize) -> Result<(), FamilyError> {
        segment_range(self, n, k, 2, 5)
    }

    fn predicted_census(&self, n: usize, k: usize) -> Result<RegimeCensus, FamilyError> {
        self.validate(n, k)?;
        let n4 = (k - 5) / 3;
        let n2 = n - k - 1;
        let degrees = DegreeCensus::new((2 * k).div_ceil(3), n2, 2, n4);
        let (ni, ki) = (n as i64, k as i64);
        if k == 5 {
            return Ok(if n < k + 5 {
                RegimeCensus {
                    family: self.name(),
                    regime: "k = 5, n < k+5",
                    degrees,
                    edges: census(&[
                        ((1, 2), n2),
                        ((2, 3), n2),
                        ((2, 2), 0),
                        ((1, 3), k + 5 - n),
                        ((3, 3), 1),
                    ]),
                    theta: Some(0),
                    formula: "2n-2k+2",
                    wp: 2 * ni - 2 * ki + 2,
                }
            } else {
                RegimeCensus {
                    family: self.name(),
                    regime: "k = 5, n >= k+5",
                    degrees,
                    edges: census(&[
                        ((1, 2), 4),
                        ((2, 3), 4),
                        ((2, 2), n - k - 5),
                        ((1, 3), 0),
                        ((3, 3), 1),
                    ]),
                    theta: Some(0),
                    formula: "n-k+7",
                    wp: ni - ki + 7,
                }
            });
        }
        let theta = 2 * n4;
        let x44 = (k - 8) / 3;
        Ok(if 3 * n + 7 <= 5 * k {
            RegimeCensus {
                family: self.name(),
                regime: "3n <= 5k-7",
                degrees,
                edges: census(&[
                    ((2, 4), n2),
                    ((3, 4), 2),
                    ((4, 4), x44),
                    ((1, 2), n2),
                    ((1, 3), 4),
                    ((1, 4), theta - n2),
                ]),
                theta: Some(theta as u64),
                formula: "3n-15",
                wp: 3 * ni - 15,
            }
        } else if 3 * n <= 5 * k + 2 {
            let x23 = (3 * n + 7 - 5 * k) / 3;
            RegimeCensus {
                family: self.name(),
                regime: "5k-4 <= 3n <= 5k+2",
                degrees,
                edges: census(&[
                    ((2, 3), x23),
                    ((2, 4), theta),
                    ((3, 4), 2),
                    ((4, 4), x44),
                    ((1, 2), n2),
                    ((1, 3), 4 - x23),
                ]),
                theta: Some(theta as u64),
                formula: "(6n+5k-52)/3",
                wp: (6 * ni + 5 * ki - 52) / 3,
            }
        } else {
            RegimeCensus {
                family: self.name(),
                regime: "3n > 5k+2",
                degrees,
                edges: census(&[
                    ((2, 2), (3 * n - 5 * k - 5) / 3),
                    ((2, 3), 4),
                    ((2, 4), theta),
                    ((3, 4), 2),
                    ((4, 4), x44),
                    ((1, 2), theta + 4),
                ]),
                theta: Some(theta as u64),
                formula: "(3n+10k-47)/3",
                wp: (3 * ni + 10 * ki - 47) / 3,
            }
        })
    }

    fn construct(&self, n: usize, k: usize) -> Result<ChemicalTree, FamilyError> {
        self.validate(n, k)?;
        let n4 = (k - 5) / 3;
        let mut builder = Builder::default();
        let mut slots = Vec::new();
        let (c1, c2) = if n4 == 0 {
            let c1 = builder.vertex();
            (c1, builder.attach(c1))
        } else {
            let spine = builder.spine(n4, &[]);
            let mut taken = vec![0; n4];
            taken[0] += 1;
            taken[n4 - 1] += 1;
            slots = spine_slots(&spine, 4, &taken);
            (builder.attach(spine[0]), builder.attach(spine[n4 - 1]))
        };
        slots.extend([c1, c1, c2, c2]);
        for (&anchor, twos) in slots.iter().zip(spread(n - k - 1, slots.len())) {
            builder.pendent(anchor, twos);
        }
        Ok(builder.finish(n))
    }
}

pub fn family_catalog() -> Vec<Box<dyn ExtremalFamily>> {
    vec![
        Box::new(Bt1),
        Box::new(Bt2),
        Box::new(Bnb),
        Box::new(Ct1),
        Box::new(Ct2),
        Box::new(Ct3),
    ]
}

pub fn family_by_name(name: &str) -> Result<Box<dyn ExtremalFamily>, FamilyError> {
    family_catalog()
        .into_iter()
        .find(|f| f.name().eq_ignore_ascii_case(name))
        .ok_or_else(|| FamilyError::Unknown(name.to_string()))
}

pub fn construct_family(name: &str, n: usize, parameter: usize) -> Result<ChemicalTree, FamilyError> {
    family_by_name(name)?.construct(n, parameter)
}

pub fn predicted_census(name: &str, n: usize, parameter: usize) -> Result<RegimeCensus, FamilyError> {
    family_by_name(name)?.predicted_census(n, parameter)
}
