//! Wiener polarity index of chemical trees: structural queries, exhaustive
//! enumeration, extremal bounds with their witness families, and the
//! rewrite rules that move between them.

pub mod canon;
pub mod enumerate;
pub mod extremal;
pub mod harness;
pub mod io;
pub mod transforms;
pub mod tree;

pub use canon::{canonical_form, CanonicalCode};
pub use enumerate::{
    enumerate_chemical_trees, extremal_table, realizable_values, ChemicalTrees, ClassExtrema,
    Constraint, EnumerationError, EnumerationQuery, ExtremalTable,
};
pub use extremal::{
    bound_by_name, bound_catalog, construct_family, family_by_name, family_catalog,
    BoundFormula, BoundResult, ExtremalFamily,
};
pub use harness::{
    verify_bounds, verify_rules, verify_wp_equivalence, BoundCampaign, HarnessError,
    VerificationReport,
};
pub use io::{parse_edge_list, report_to_csv, report_to_json, serialize, ParseError};
pub use transforms::{find_sites, rule_by_id, rule_catalog, RewriteRule, RewriteSite};
pub use tree::{
    ChemicalTree, DegreeCensus, PathClassification, PathKind, Segment, Tree, TreeError, Vertex,
};
