//! Extremal curves of the energy action functional and the action integral.
//!
//! The Euler-Lagrange system d²xⁱ/dt² + 2H^(i)_(1)1 + 2G^(i)_(1)1 = 0 is
//! integrated with classical fixed-step RK4 (deterministic regression
//! outputs; domain exits are detected per step).

use crate::error::{Error, Result};
use crate::inputs::TemporalMetric;
use crate::jcm::JetPoint;

use super::fields::semispray_components;
use super::lagrangian::JetLagrangian;

/// A sampled extremal: ordered (t, x, y) rows with the fixed step.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<(f64, Vec<f64>, Vec<f64>)>,
    pub step: f64,
}

fn accel<L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    t: f64,
    x: &[f64],
    y: &[f64],
) -> Result<Vec<f64>> {
    if !lag.domain_ok(t, x, y) {
        return Err(Error::Domain("stage point outside domain".into()));
    }
    let (hh, gg) = semispray_components(lag, h, t, x, y)?;
    Ok((0..x.len()).map(|i| -2.0 * (hh[i] + gg[i])).collect())
}

/// Integrates the Euler-Lagrange extremal from `start` to `t_end` in `steps`
/// fixed RK4 steps.  Fails with [`Error::DomainExit`] carrying the last valid
/// time when the trajectory leaves the guarded domain.
pub fn integrate_extremal<L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    start: &JetPoint,
    t_end: f64,
    steps: usize,
) -> Result<Trajectory> {
    assert!(steps >= 2, "integrate_extremal requires steps >= 2");
    let n = lag.dim();
    if !lag.domain_ok(start.t, &start.x, &start.y) {
        return Err(Error::Domain(format!(
            "start point (t={}, x={:?}, y={:?}) outside domain",
            start.t, start.x, start.y
        )));
    }
    let dt = (t_end - start.t) / steps as f64;
    let mut t = start.t;
    let mut x: Vec<f64> = start.x.to_vec();
    let mut y: Vec<f64> = start.y.to_vec();
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push((t, x.clone(), y.clone()));

    let add = |a: &[f64], b: &[f64], c: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(u, v)| u + c * v).collect()
    };

    for _ in 0..steps {
        let exit = |e: crate::error::Error| match e {
            Error::Domain(_) => Error::DomainExit { last_t: t },
            other => other,
        };
        // k = (dx/dt, dy/dt) evaluated at the four RK4 stages
        let a1 = accel(lag, h, t, &x, &y).map_err(exit)?;
        let x2 = add(&x, &y, dt / 2.0);
        let y2 = add(&y, &a1, dt / 2.0);
        let a2 = accel(lag, h, t + dt / 2.0, &x2, &y2).map_err(exit)?;
        let x3 = add(&x, &y2, dt / 2.0);
        let y3 = add(&y, &a2, dt / 2.0);
        let a3 = accel(lag, h, t + dt / 2.0, &x3, &y3).map_err(exit)?;
        let x4 = add(&x, &y3, dt);
        let y4 = add(&y, &a3, dt);
        let a4 = accel(lag, h, t + dt, &x4, &y4).map_err(exit)?;

        for i in 0..n {
            x[i] += dt / 6.0 * (y[i] + 2.0 * y2[i] + 2.0 * y3[i] + y4[i]);
            y[i] += dt / 6.0 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i]);
        }
        t += dt;
        if !lag.domain_ok(t, &x, &y) {
            return Err(Error::DomainExit { last_t: t - dt });
        }
        samples.push((t, x.clone(), y.clone()));
    }
    Ok(Trajectory { samples, step: dt })
}

/// Maximum Euler-Lagrange residual |ẍ + 2H + 2G| over interior nodes, with
/// ẍ estimated by the fourth-order central stencil so the residual scales
/// with the integrator's own order under step refinement.
pub fn el_residual_max<L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    traj: &Trajectory,
) -> Result<f64> {
    let n = lag.dim();
    let m = traj.samples.len();
    let dt = traj.step;
    let mut worst = 0.0f64;
    for k in 2..m.saturating_sub(2) {
        let (t, ref x, ref y) = traj.samples[k];
        let (hh, gg) = semispray_components(lag, h, t, &x[..], &y[..])?;
        for i in 0..n {
            let xdd = (-traj.samples[k - 2].1[i] + 16.0 * traj.samples[k - 1].1[i]
                - 30.0 * x[i]
                + 16.0 * traj.samples[k + 1].1[i]
                - traj.samples[k + 2].1[i])
                / (12.0 * dt * dt);
            worst = worst.max((xdd + 2.0 * hh[i] + 2.0 * gg[i]).abs());
        }
    }
    Ok(worst)
}

/// Composite Simpson quadrature of the energy action
/// 𝔼 = ∫ L(t, x(t), y(t)) √h₁₁(t) dt along a sampled trajectory.
/// An odd interval count is closed with Simpson's 3/8 rule on the last three
/// intervals.
pub fn action_integral<L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    traj: &Trajectory,
) -> Result<f64> {
    let m = traj.samples.len();
    if m < 2 {
        return Ok(0.0);
    }
    let dt = traj.step;
    let integrand = |idx: usize| -> Result<f64> {
        let (t, ref x, ref y) = traj.samples[idx];
        if !lag.domain_ok(t, x, y) {
            return Err(Error::Domain(format!("sample {idx} outside domain")));
        }
        let l = lag.eval(t, &x[..], &y[..]);
        let he = crate::inputs::eval_h(h, t)?;
        Ok(l * he.h11.sqrt())
    };
    let intervals = m - 1;
    if intervals == 1 {
        return Ok(0.5 * dt * (integrand(0)? + integrand(1)?));
    }
    let (simpson_end, tail38) = if intervals % 2 == 0 {
        (intervals, false)
    } else if intervals >= 3 {
        (intervals - 3, true)
    } else {
        (0, false)
    };
    let mut total = 0.0;
    if simpson_end >= 2 {
        let mut s = integrand(0)? + integrand(simpson_end)?;
        for k in 1..simpson_end {
            s += integrand(k)? * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        total += dt / 3.0 * s;
    }
    if tail38 {
        let b = simpson_end;
        total += 3.0 * dt / 8.0
            * (integrand(b)?
                + 3.0 * integrand(b + 1)?
                + 3.0 * integrand(b + 2)?
                + integrand(b + 3)?);
    }
    Ok(total)
}

/// Adds ε·φ(t) to a trajectory, with φ given analytically together with its
/// time derivative so the fiber samples stay consistent with the base curve.
pub fn perturb_trajectory(
    traj: &Trajectory,
    phi: impl Fn(f64) -> Vec<f64>,
    phi_dot: impl Fn(f64) -> Vec<f64>,
    eps: f64,
) -> Trajectory {
    let samples = traj
        .samples
        .iter()
        .map(|(t, x, y)| {
            let p = phi(*t);
            let pd = phi_dot(*t);
            (
                *t,
                x.iter().zip(&p).map(|(a, b)| a + eps * b).collect(),
                y.iter().zip(&pd).map(|(a, b)| a + eps * b).collect(),
            )
        })
        .collect();
    Trajectory {
        samples,
        step: traj.step,
    }
}
