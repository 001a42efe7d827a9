//! Tensor-calculus engine for the Finsler-like geometry that the conformal
//! Minkowski metric induces on the 1-jet space J¹(ℝ, M⁴).
//!
//! The metric is F(t,x,y) = e^{σ(x)} √(h¹¹(t)) √(G₁₁(y)) with
//! G₁₁(y) = Σ_{i<j} yⁱyʲ.  Two independent routes compute its geometry:
//!
//! * [`jcm`] — the closed forms: fundamental metric and inverse, canonical
//!   nonlinear connection, Cartan linear connection, the effective curvature
//!   and torsion d-tensors, Ricci, scalar curvature, and the congruence
//!   transform diagonalizing G₁₁ to the Minkowski signature.
//! * [`engine`] — a generic derivation pipeline that produces the same
//!   objects from the raw Lagrangian L = F² by exact forward-mode
//!   differentiation, plus extremal-curve integration and the harness that
//!   cross-validates the two routes point by point.
//!
//! [`field`] builds the gravitational layer on top (Einstein blocks,
//! stress-energy identities, conservation diagnostics, and the vanishing
//! electromagnetic 2-form); [`inputs`] holds the user-specifiable σ and h₁₁
//! families with exact derivatives and the configuration grammar.

pub mod ad;
pub mod engine;
pub mod error;
pub mod fd;
pub mod field;
pub mod inputs;
pub mod jcm;
pub mod tensor;

pub use error::{Error, Result};
