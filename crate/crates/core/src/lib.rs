//! Exact Clebsch-Gordan coefficients for gl₃ in the Gelfand-Tsetlin basis.

pub mod error;
pub mod exact_core;
pub mod gamma_series;
pub mod gl3_model;
pub mod tensor_space;
pub mod contiguity;
pub mod cg_engine;
pub mod oracle;
pub mod suites;

pub use error::{Cg3Error, Result};
pub use exact_core::{Composition, Rational, SparsePolynomial, VarSet};
pub use gamma_series::{GammaParams, LatticeB};
pub use gl3_model::{DetPolynomial, DetVariable, Factor, GTDiagram, HighestWeight};
pub use tensor_space::{HighestVectorLabel, VectorType, WeightPair};
pub use contiguity::Reading;
pub use cg_engine::{
    cg_expansion, cg_expansion_case1, cg_expansion_case2, collect_terms, valid_descents, CGTerm, DescentTriple, PartitionChoice, Readings,
};
pub use oracle::{compare, expand_in_product_basis, oracle_expansion, tensor_gt_vector, DiffEntry, ExpansionReport};
