//! Closed-form extremal values of `W_p` for fixed branching count or fixed
//! segment count. All regime tests are cross-multiplied integer comparisons.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::enumerate::Constraint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upper,
    Lower,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    pub bound: &'static str,
    pub n: usize,
    pub parameter: usize,
    pub value: i64,
    pub direction: Direction,
    /// 1-based index of the matching case.
    pub regime: u8,
    pub formula: &'static str,
    pub family: &'static str,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("{bound} does not apply to n={n}, {symbol}={parameter}: {reason}")]
    Inapplicable {
        bound: &'static str,
        n: usize,
        symbol: &'static str,
        parameter: usize,
        reason: &'static str,
    },
    #[error("unknown bound '{0}'")]
    Unknown(String),
}

pub trait BoundFormula: Send + Sync {
    /// Registry key, e.g. `max-b`.
    fn name(&self) -> &'static str;
    fn constraint(&self) -> Constraint;
    fn direction(&self) -> Direction;
    fn evaluate(&self, n: usize, parameter: usize) -> Result<BoundResult, BoundError>;
}

struct Case {
    regime: u8,
    formula: &'static str,
    value: i64,
}

fn inapplicable(
    bound: &dyn BoundFormula,
    n: usize,
    parameter: usize,
    reason: &'static str,
) -> BoundError {
    BoundError::Inapplicable {
        bound: bound.name(),
        n,
        symbol: bound.constraint().symbol(),
        parameter,
        reason,
    }
}

fn result(bound: &dyn BoundFormula, n: usize, parameter: usize, case: Case, family: &'static str) -> BoundResult {
    BoundResult {
        bound: bound.name(),
        n,
        parameter,
        value: case.value,
        direction: bound.direction(),
        regime: case.regime,
        formula: case.formula,
        family,
    }
}

/// Largest `W_p` among chemical trees with `b` branching vertices.
pub struct MaxGivenBranching;

impl BoundFormula for MaxGivenBranching {
    fn name(&self) -> &'static str {
        "max-b"
    }

    fn constraint(&self) -> Constraint {
        Constraint::Branching
    }

    fn direction(&self) -> Direction {
        Direction::Upper
    }

    fn evaluate(&self, n: usize, b: usize) -> Result<BoundResult, BoundError> {
        if n < 7 {
            return Err(inapplicable(self, n, b, "requires n >= 7"));
        }
        if b == 0 {
            return Err(inapplicable(self, n, b, "requires b >= 1"));
        }
        if 2 * b + 2 >= n {
            return Err(inapplicable(self, n, b, "requires b < n/2 - 1"));
        }
        let (ni, bi) = (n as i64, b as i64);
        let case = if 5 * b + 4 <= n {
            Case {
                regime: 1,
                formula: "n+10b-7",
                value: ni + 10 * bi - 7,
            }
        } else if 7 * b + 4 < 3 * n {
            Case {
                regime: 2,
                formula: "3n-15",
                value: 3 * ni - 15,
            }
        } else {
            Case {
                regime: 3,
                formula: "9n-14b-23",
                value: 9 * ni - 14 * bi - 23,
            }
        };
        let family = if 3 * b + 2 < n { "BT2" } else { "BT1" };
        Ok(result(self, n, b, case, family))
    }
}

/// Smallest `W_p` among chemical trees with `b` branching vertices.
pub struct MinGivenBranching;

impl BoundFormula for MinGivenBranching {
    fn name(&self) -> &'static str {
        "min-b"
    }

    fn constraint(&self) -> Constraint {
        Constraint::Branching
    }

    fn direction(&self) -> Direction {
        Direction::Lower
    }

    fn evaluate(&self, n: usize, b: usize) -> Result<BoundResult, BoundError> {
        if n < 7 {
            return Err(inapplicable(self, n, b, "requires n >= 7"));
        }
        if b == 0 {
            return Err(inapplicable(self, n, b, "requires b >= 1"));
        }
        if 2 * b + 2 > n {
            return Err(inapplicable(self, n, b, "requires b <= n/2 - 1"));
        }
        let (ni, bi) = (n as i64, b as i64);
        let case = if n > 3 * b {
            Case {
                regime: 1,
                formula: "b+n-5",
                value: bi + ni - 5,
            }
        } else {
            Case {
                regime: 2,
                formula: "4b-4",
                value: 4 * bi - 4,
            }
        };
        Ok(result(self, n, b, case, "Bnb"))
    }
}

/// Largest `W_p` among chemical trees with `k` segments.
pub struct MaxGivenSegments;

impl BoundFormula for MaxGivenSegments {
    fn name(&self) -> &'static str {
        "max-k"
    }

    fn constraint(&self) -> Constraint {
        Constraint::Segments
    }

    fn direction(&self) -> Direction {
        Direction::Upper
    }

    fn evaluate(&self, n: usize, k: usize) -> Result<BoundResult, BoundError> {
        if n < 6 {
            return Err(inapplicable(self, n, k, "requires n >= 6"));
        }
        if k < 3 {
            return Err(inapplicable(self, n, k, "requires k >= 3"));
        }
        if k >= n {
            return Err(inapplicable(self, n, k, "requires k <= n - 1"));
        }
        let (ni, ki) = (n as i64, k as i64);
        let (case, family) = match k % 3 {
            0 => {
                let case = if 3 * n <= 5 * k {
                    Case {
                        regime: 1,
                        formula: "3n-15",
                        value: 3 * ni - 15,
                    }
                } else if 3 * n == 5 * k + 3 {
                    Case {
                        regime: 2,
                        formula: "3n-16",
                        value: 3 * ni - 16,
                    }
                } else {
                    Case {
                        regime: 3,
                        formula: "(3n+10k-39)/3",
                        value: (3 * ni + 10 * ki - 39) / 3,
                    }
                };
                (case, "CT2")
            }
            1 => {
                let case = if 3 * n < 5 * k + 7 {
                    Case {
                        regime: 4,
                        formula: "3n-15",
                        value: 3 * ni - 15,
                    }
                } else {
                    Case {
                        regime: 5,
                        formula: "(3n+10k-31)/3",
                        value: (3 * ni + 10 * ki - 31) / 3,
                    }
                };
                (case, "CT1")
            }
            _ => {
                let case = if 3 * n + 7 <= 5 * k {
                    Case {
                        regime: 6,
                        formula: "3n-15",
                        value: 3 * ni - 15,
                    }
                } else if 3 * n <= 5 * k + 2 {
                    Case {
                        regime: 7,
                        formula: "(6n+5k-52)/3",
                        value: (6 * ni + 5 * ki - 52) / 3,
                    }
                } else {
                    Case {
                        regime: 8,
                        formula: "(3n+10k-47)/3",
                        value: (3 * ni + 10 * ki - 47) / 3,
                    }
                };
                (case, "CT3")
            }
        };
        Ok(result(self, n, k, case, family))
    }
}

pub fn bound_catalog() -> Vec<Box<dyn BoundFormula>> {
    vec![
        Box::new(MaxGivenBranching),
        Box::new(MinGivenBranching),
        Box::new(MaxGivenSegments),
    ]
}

pub fn bound_by_name(name: &str) -> Result<Box<dyn BoundFormula>, BoundError> {
    bound_catalog()
        .into_iter()
        .find(|b| b.name().eq_ignore_ascii_case(name))
        .ok_or_else(|| BoundError::Unknown(name.to_string()))
}

pub fn max_wp_given_b(n: usize, b: usize) -> Result<BoundResult, BoundError> {
    MaxGivenBranching.evaluate(n, b)
}

pub fn min_wp_given_b(n: usize, b: usize) -> Result<BoundResult, BoundError> {
    MinGivenBranching.evaluate(n, b)
}

pub fn max_wp_given_k(n: usize, k: usize) -> Result<BoundResult, BoundError> {
    MaxGivenSegments.evaluate(n, k)
}
