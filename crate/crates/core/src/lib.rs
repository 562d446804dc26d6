//! Toric ideals of matroids: bases, binomial Gröbner bases, an elimination
//! oracle, symmetric exchange binomials and lifting constructions for series
//! and parallel extensions and connections.

pub mod catalog;
pub mod exchange;
pub mod gb;
pub mod lift;
pub mod matroid;
pub mod oracle;

pub use gb::{Binomial, BinomialSet, GbError, Monomial, MonomialOrder, OrderSpec, TieBreak, VariableId};
pub use matroid::{AnchoredMatroid, ElementSet, Matroid, MatroidError};
