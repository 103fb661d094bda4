//! Exact classification of graded affine semigroup rings.
//!
//! Given a finitely generated sub-semigroup of `N^d` with a positive
//! grading, this crate decides the Gorenstein, level, nearly Gorenstein
//! and almost Gorenstein properties of its semigroup ring, along with the
//! supporting invariants: exact membership, extremal rays, normalization
//! holes, the canonical module with its minimal generators, the h-vector,
//! the Cohen-Macaulay type and trace-ideal membership. Every verdict is
//! computed with certified finite algorithms over exact integer and
//! rational arithmetic; nothing is floating point and nothing is sampled.
//!
//! The pipeline starts from the [`semigroup::AffineSemigroup`] object,
//! represents it as a certified [`staircase::Staircase`] over its degree-1
//! extremal generators, reads the Cohen-Macaulay and depth verdicts off
//! the staircase, computes the canonical module from the translation
//! invariant ray predicates, and finally combines the h-vector with the
//! Cohen-Macaulay type into the generalized Gorenstein classifications.
//! [`classify::classify_document`] runs everything and produces the
//! machine-readable [`classify::ClassificationReport`].

pub mod canonical;
pub mod classify;
pub mod document;
pub mod error;
pub mod families;
pub mod invariants;
pub mod lattice;
pub mod semigroup;
pub mod staircase;
pub mod trace;
pub mod validate;
pub mod verdict;

pub use canonical::{canonical_generators, canonical_hilbert_check, CanonicalModule};
pub use classify::{
    classify_document, Classification, ClassificationReport, ClassifyOptions, Maybe,
};
pub use document::SemigroupDocument;
pub use error::{Error, Result};
pub use families::{
    corpus_generate, family_snk, family_snk_document, fixture_catalog, CorpusBounds, FamilyParams,
};
pub use invariants::{
    cokernel_data, h_vector, hilbert_function, is_almost_gorenstein, stanley_inequalities, HVector,
};
pub use lattice::{
    coset_system, extremal_rays, hermite_basis, in_nonnegative_span, Cone, GroupLattice,
    LatticeVector,
};
pub use semigroup::{build_semigroup, AffineSemigroup, Grading, SemiStandard};
pub use staircase::{build_staircase, certify_staircase, enumerate_staircase, Staircase};
pub use trace::{
    anti_ideal_member, ideal_degree_dimension, is_nearly_gorenstein, trace_contains, MonomialIdeal,
};
pub use validate::{oracle_compare, run_check, CheckInstance, CheckRow, TheoremId};
pub use verdict::Verdict;
