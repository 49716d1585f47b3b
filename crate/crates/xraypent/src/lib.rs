//! Exact computer-algebra core for reconstructing convex pentagons from
//! Steiner symmetrals (chord functions), together with the numeric layer
//! used to trace and sample the resulting parameter curve.
//!
//! The crate is organized in layers:
//!
//! * [`poly`]: sparse exact polynomials over arbitrary-precision integers
//!   in the fixed six-variable universe `u, v, w, x, y, z`.
//! * [`eliminate`]: Sylvester matrices, fraction-free and
//!   evaluation-interpolation determinants, resultants, and substitution
//!   of linear solutions.
//! * [`system`]: the bundled equal-chord equation system for pentagon
//!   pairs, its staged eliminants, and machinery that compares computed
//!   eliminants against the bundled reference polynomials.
//! * [`solver`]: float-level root isolation, curve tracing by marching
//!   squares, and back-solving traced points to full parameter tuples.
//! * [`tomo`]: exact rational plane geometry: convex polygons, chord
//!   functions, Steiner symmetrals, and the search for non-congruent
//!   triangle pairs with identical X-rays in two directions.
//! * [`cache`]: a small content-addressed disk cache for the expensive
//!   final resultant.

pub mod cache;
pub mod eliminate;
pub mod poly;
pub mod solver;
pub mod system;
pub mod tomo;
