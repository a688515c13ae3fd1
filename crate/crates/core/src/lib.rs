//! Finite-dimensional representations of `U_q(sl(N))` at odd roots of unity
//! in an adapted Gelfand-Zetlin basis, with numerical verification of the
//! defining relations, m-th power centrality, family classification and the
//! polynomial relations in the centre.

pub mod action;
pub mod centre;
pub mod cli;
pub mod error;
pub mod families;
pub mod patterns;
pub mod qcontext;
pub mod sparse;
pub mod verify;

pub use action::{build_module, rescale_to_eta, Direction, GeneratorSet, RepModule, Variant};
pub use error::{Error, Result};
pub use patterns::{
    check_admissible, enumerate_states, predicted_dimension, CTable, DimensionQuery, Eta, EtaTable, FracClass,
    GzPattern, IndexValue, Pos, RepSpec,
};
pub use qcontext::QContext;
pub use sparse::SparseOperator;
