//! Jet Lagrangians the generic engine differentiates.
//!
//! A Lagrangian is a scalar function L(t, x, y) on the 1-jet space that
//! evaluates in any [`AdScalar`] arithmetic, which is the whole contract the
//! engine needs: seeding dual components of the arguments produces exact
//! directional derivatives of L to any order by nesting.

use crate::ad::AdScalar;
use crate::error::{Error, Result};
use crate::inputs::{ScalarField, TemporalMetric};
use crate::jcm::EPS_DOM;

/// Scalar Lagrangian on J¹(ℝ, Mⁿ) with a domain guard.
pub trait JetLagrangian {
    /// Base dimension n.
    fn dim(&self) -> usize;
    /// L(t, x, y) in differentiable arithmetic; `x` and `y` have length n.
    fn eval<T: AdScalar>(&self, t: T, x: &[T], y: &[T]) -> T;
    /// True when (t, x, y) lies in the guarded domain of the metric F
    /// (extremal trajectories must stay inside it).
    fn domain_ok(&self, t: f64, x: &[f64], y: &[f64]) -> bool;
    /// True where L is smooth and its fundamental tensor is invertible —
    /// the weaker precondition of the derivative pipeline.  Connection and
    /// curvature objects are defined there even when F itself is not.
    fn derivative_domain_ok(&self, t: f64, x: &[f64], y: &[f64]) -> bool {
        self.domain_ok(t, x, y)
    }
}

/// G₁₁(y) = Σ_{i<j} yⁱyʲ in differentiable arithmetic.
pub fn g11_generic<T: AdScalar>(y: &[T]) -> T {
    let n = y.len();
    let mut s = T::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            s = s + y[i] * y[j];
        }
    }
    s
}

/// The energy Lagrangian of the jet conformal Minkowski metric,
/// L = F² = e^{2σ(x)} · h¹¹(t) · G₁₁(y).
///
/// σ is evaluated through its generic polynomial form, not through the
/// analytic derivative tables the closed-form route uses; the two paths
/// share no differentiation code.
#[derive(Debug, Clone)]
pub struct JcmLagrangian {
    pub sigma: ScalarField,
    pub h: TemporalMetric,
}

impl JcmLagrangian {
    pub fn new(sigma: ScalarField, h: TemporalMetric) -> Result<Self> {
        sigma.validate()?;
        Ok(JcmLagrangian { sigma, h })
    }
}

impl JetLagrangian for JcmLagrangian {
    fn dim(&self) -> usize {
        4
    }

    fn eval<T: AdScalar>(&self, t: T, x: &[T], y: &[T]) -> T {
        let sig = self.sigma.value_generic(x);
        sig.scale(2.0).exp() * self.h.h11_inv_generic(t) * g11_generic(y)
    }

    fn domain_ok(&self, t: f64, x: &[f64], y: &[f64]) -> bool {
        debug_assert_eq!(x.len(), 4);
        let mut g11 = 0.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                g11 += y[i] * y[j];
            }
        }
        g11 > EPS_DOM && self.h.domain_ok(t)
    }

    // L = F² is polynomial in y and smooth in (t, x) on the h-domain, and
    // its fundamental tensor is y-independent and invertible everywhere, so
    // the derivative pipeline accepts any y.
    fn derivative_domain_ok(&self, t: f64, _x: &[f64], _y: &[f64]) -> bool {
        self.h.domain_ok(t)
    }
}

/// Electrodynamics Lagrangian
/// L = mc · h¹¹(t) · φ_ij(x) yⁱyʲ + (2e/m) A_i(x) yⁱ + ℱ(x),
/// the movement law of a charged massive particle in a gravitational plus
/// electromagnetic environment.  φ is a constant symmetric matrix here; the
/// potentials A_i and ℱ are scalar fields of x.
#[derive(Debug, Clone)]
pub struct ElectrodynamicsLagrangian {
    pub mc: f64,
    pub e_over_m: f64,
    pub phi: [[f64; 4]; 4],
    pub a_pot: [ScalarField; 4],
    pub f_pot: ScalarField,
    pub h: TemporalMetric,
}

impl ElectrodynamicsLagrangian {
    pub fn new(
        mc: f64,
        e_over_m: f64,
        phi: [[f64; 4]; 4],
        a_pot: [ScalarField; 4],
        f_pot: ScalarField,
        h: TemporalMetric,
    ) -> Result<Self> {
        for i in 0..4 {
            for j in (i + 1)..4 {
                if phi[i][j] != phi[j][i] {
                    return Err(Error::MalformedField(format!(
                        "phi not symmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for a in &a_pot {
            a.validate()?;
        }
        f_pot.validate()?;
        Ok(ElectrodynamicsLagrangian {
            mc,
            e_over_m,
            phi,
            a_pot,
            f_pot,
            h,
        })
    }

    /// Free particle on flat Euclidean space: φ = δ, A = 0, ℱ = 0.
    pub fn free_particle(h: TemporalMetric) -> Self {
        let mut phi = [[0.0; 4]; 4];
        for i in 0..4 {
            phi[i][i] = 1.0;
        }
        ElectrodynamicsLagrangian {
            mc: 1.0,
            e_over_m: 0.0,
            phi,
            a_pot: [
                ScalarField::Constant(0.0),
                ScalarField::Constant(0.0),
                ScalarField::Constant(0.0),
                ScalarField::Constant(0.0),
            ],
            f_pot: ScalarField::Constant(0.0),
            h,
        }
    }
}

impl JetLagrangian for ElectrodynamicsLagrangian {
    fn dim(&self) -> usize {
        4
    }

    fn eval<T: AdScalar>(&self, t: T, x: &[T], y: &[T]) -> T {
        let mut quad = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                if self.phi[i][j] != 0.0 {
                    quad = quad + (y[i] * y[j]).scale(self.phi[i][j]);
                }
            }
        }
        let mut linear = T::zero();
        for i in 0..4 {
            linear = linear + self.a_pot[i].value_generic(x) * y[i];
        }
        quad.scale(self.mc) * self.h.h11_inv_generic(t)
            + linear.scale(2.0 * self.e_over_m)
            + self.f_pot.value_generic(x)
    }

    fn domain_ok(&self, t: f64, _x: &[f64], _y: &[f64]) -> bool {
        self.h.domain_ok(t)
    }
}
