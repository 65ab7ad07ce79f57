//! Exact arithmetic kernel: arbitrary-precision rationals, sparse multivariate
//! polynomials with rewrite rules, resultants and fraction-free matrix algebra.
//!
//! Everything here is immutable after construction and pure; values can be
//! shared freely across threads.

mod expr;
mod matrix;
mod poly;
mod rational;

pub use expr::{parse_poly, poly, PolyParseError};
pub use matrix::{det_bareiss, PolyMatrix};
pub use poly::{
    e_cubic_rule, product_over_cubic_roots, product_over_weierstrass_roots, reduce_e, resultant,
    MultiPoly, RewriteRule,
};
pub use rational::{Rational, RationalParseError};
