//! Exact lattice-polytope analysis: Fine interiors, canonical hulls,
//! crepant fan refinements and the birational invariants they carry.
//!
//! Everything is computed in exact rational arithmetic; no floating
//! point is used anywhere, and all enumeration orders are
//! deterministic.

pub mod num;
pub mod matrix;
pub mod lp;
pub mod dd;
pub mod polytope;
pub mod fan;
pub mod fine;
pub mod canonical;
pub mod invariants;
pub mod input;
pub mod report;

#[cfg(test)]
pub(crate) mod testutil;

// Compile and run every code block in the book as a doc-test, so the
// guide can never drift from the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/getting-started.md")]
    mod getting_started {}
    #[doc = include_str!("../../../book/src/polytopes.md")]
    mod polytopes {}
    #[doc = include_str!("../../../book/src/fine-interior.md")]
    mod fine_interior {}
    #[doc = include_str!("../../../book/src/canonical-hull.md")]
    mod canonical_hull {}
    #[doc = include_str!("../../../book/src/fans.md")]
    mod fans {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/thresholds.md")]
    mod thresholds {}
}
