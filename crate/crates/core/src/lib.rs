//! Exact factor systems, extensions and low-degree cohomology for seven
//! varieties of algebras: Lie, Leibniz, associative, commutative, Zinbiel,
//! diassociative and dendriform.
//!
//! Scalars are exact ([`FieldElem`] over Q or GF(p)) and every check reports
//! all violations it finds rather than stopping at the first.

pub mod algebra;
pub mod cohomology;
pub mod error;
pub mod extension;
pub mod factor_system;
pub mod field;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod random;
pub mod report;

pub use algebra::{Algebra, BilinearMap, Side, Variety};
pub use cohomology::{
    central_h2, ext_dim, fact_space, leibniz_coboundary, leibniz_hn, same_coset, split_space, Cochain,
};
pub use error::{Error, Result};
pub use extension::{check_ext_equivalence, tau_from_E, ExtEquivalence, Extension, Section};
pub use factor_system::{
    check_belonging, check_equivalence_with, extract_factor_system, find_equivalence, find_split_witness, Action,
    FactorSystem, FactorSystemReport, Verdict, DEFAULT_BUDGET,
};
pub use field::{FieldElem, FieldSpec};
pub use io::{emit_document, parse_document, Document};
pub use linalg::{Matrix, Vector};
pub use report::{Report, Violation};
