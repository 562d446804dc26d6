//! Monic binomials, monomial orders and Buchberger's algorithm.

mod engine;
mod monomial;
mod order;
mod set;
mod var;

pub use engine::{
    buchberger, groebner_witness, ideals_equal, is_groebner, normal_form, normal_form_monomial,
    reduces_to_zero, s_binomial,
};
#[allow(unused_imports)]
pub(crate) use engine::{reduced_basis_dense, Reducer};
pub use monomial::{Binomial, Monomial};
pub use order::{MonomialOrder, OrderSpec, TieBreak};
pub use set::{restrict_to_vars, BinomialSet};
pub use var::{VariableId, VariableParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GbError {
    #[error("variable {0} is not ranked by the monomial order")]
    UnknownVariable(VariableId),
    #[error("variable {0} lies outside the ambient variable set")]
    VariableOutsideAmbient(VariableId),
    #[error("binomial sets live in different polynomial rings")]
    AmbientMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}
