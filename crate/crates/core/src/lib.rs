//! Spectral curves of ordinary differential operators with elliptic
//! coefficients: exact construction of Lamé spectral curves by the finite-form
//! eigenfunction ansatz, symbolic verification of elliptic cover maps and
//! differential reductions, numeric period matrices for the genus-2 and
//! genus-3 (Halphen) families, and Martens-style symplectic reduction of
//! Riemann theta functions.
//!
//! Layout mirrors the pipeline:
//!
//! - [`exact`]: rationals, sparse multivariate polynomials, rewrite rules,
//!   resultants, fraction-free characteristic polynomials;
//! - [`curve`]: function-field arithmetic on plane curves `wᵏ = p(z)`;
//! - [`lame`]: the finite-form ansatz, operator matrices and spectral curves;
//! - [`covers`]: the verified catalog of elliptic covers plus bounded search;
//! - [`periods`]: AGM elliptic integrals, branch-tracked contour quadrature,
//!   genus-2 and genus-3 period matrices;
//! - [`theta`]: theta functions with characteristics, integer symplectic
//!   normal forms, and the reduction identities.

pub mod curve;
pub mod exact;
pub mod lame;
pub mod numeric;

pub mod covers;
pub mod periods;
pub mod theta;
