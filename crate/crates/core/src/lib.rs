//! Exact-arithmetic construction and analysis of few-weight p-ary linear
//! codes obtained from quadratic functions over small finite fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`] — deterministic GF(p^m) arithmetic in the polynomial basis;
//! * [`quadform`] — quadratic functions given by trace terms, their bilinear
//!   forms, ranks, spectra, and classification;
//! * [`catalog`] — named families of such functions behind a common trait,
//!   looked up by name in a registry;
//! * [`codes`] — defining-set codes, weight distributions, closed-form
//!   cross-checks, puncturing, and the Griesmer bound.
//!
//! Everything is exact integer arithmetic; there is no floating point
//! anywhere, and every enumeration runs in a fixed deterministic order so
//! that repeated runs produce byte-identical output.

pub mod catalog;
pub mod codes;
pub mod error;
pub mod field;
mod linalg;
pub mod quadform;

pub use catalog::{BentFamily, EpsilonPrediction, FamilyParams, FamilyRegistry};
pub use codes::{
    build_report, defining_set, CodeReport, DefiningSet, FamilyRecord, GriesmerRecord, SetFlag,
    TheoryVerdict,
};
pub use error::{Error, Result};
pub use field::{make_field, make_field_unguarded, FieldElement, FieldRecord, FieldSpec};
pub use quadform::{CanonicalType, FormClassification, GramMatrix, MuClass, QFunction, WalshValue};
