//! Exact computation in the quantum plane: the algebra over Q or Q(sqrt s)
//! generated by `x` and `y` subject to `yx = qxy`.
//!
//! The crate covers normal-form arithmetic ([`poly`]), one-sided Euclidean
//! division ([`division`]), factorization of quadratic forms, homogeneous and
//! univariate polynomials ([`factor`]), and primality classification with
//! checkable certificates ([`primality`]). The `qplane` binary exposes all of
//! it on the command line ([`cli`]).

pub mod cli;
pub mod division;
pub mod elim;
pub mod error;
pub mod factor;
pub mod parse;
pub mod poly;
pub mod primality;
pub mod quaternion;
pub mod roots;
pub mod scalars;
pub mod upoly;

pub use error::{Error, Result};
pub use poly::{monomial_mul, Degree, ExponentPair, QPlane, QPoly};
pub use scalars::{Field, FieldElem};
