// `!(x > a)` rejects NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod corpus;
pub mod error;
pub mod exponent;
pub mod extremal;
pub mod littlewood_paley;
pub mod luecking;
pub mod norm;
pub mod operators;
pub mod quadrature;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use exponent::{ExtExponent, PQPair};
pub use quadrature::{DiscGrid, NormReport};
pub use series::{CoeffVector, FunctionSpec};
