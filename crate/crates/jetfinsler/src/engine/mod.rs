//! Generic derivation engine: geometric objects from a raw jet Lagrangian
//! L(t, x, y) by exact forward-mode differentiation, extremal-curve
//! integration, and the closed-form-vs-engine cross-validation harness.

pub mod extremal;
pub mod fields;
pub mod lagrangian;
pub mod validate;

pub use extremal::{
    action_integral, el_residual_max, integrate_extremal, perturb_trajectory, Trajectory,
};
pub use fields::{
    cartan_from_metric, curvature_suite, em_2form, em_auxiliaries, f_from_lagrangian,
    metric_from_lagrangian, nonlinear_from_semispray, semispray, torsion_generic, AdaptedFrame,
    CartanConnection, CurvatureSuite, EmAuxiliaries, Slot,
};
pub use lagrangian::{ElectrodynamicsLagrangian, JcmLagrangian, JetLagrangian};
pub use validate::{cross_validate, ObjectReport, ValidationReport};
