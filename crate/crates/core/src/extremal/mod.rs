//! Extremal values of the Wiener polarity index and the trees attaining them.

pub mod bounds;
pub mod census;
pub mod families;

pub use bounds::{
    bound_by_name, bound_catalog, max_wp_given_b, max_wp_given_k, min_wp_given_b, BoundError,
    BoundFormula, BoundResult, Direction,
};
pub use census::{wp_from_census, EdgeTypeCensus};
pub use families::{
    construct_family, family_by_name, family_catalog, predicted_census, ExtremalFamily,
    FamilyError, RegimeCensus,
};
