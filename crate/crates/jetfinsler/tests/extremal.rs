//! Extremal-curve integration: straight-line regression, fourth-order
//! residual convergence, action quadrature and stationarity, domain exits.

use jetfinsler::engine::{self, ElectrodynamicsLagrangian, JcmLagrangian};
use jetfinsler::error::Error;
use jetfinsler::inputs::{ScalarField, TemporalMetric};
use jetfinsler::jcm::JetPoint;

fn unit_h() -> TemporalMetric {
    TemporalMetric::Constant(1.0)
}

#[test]
fn flat_sigma_gives_straight_lines() {
    let h = unit_h();
    let lag = JcmLagrangian::new(ScalarField::Constant(0.0), h).unwrap();
    let start = JetPoint::new(0.0, [0.0; 4], [1.0; 4]);
    let traj = engine::integrate_extremal(&lag, &h, &start, 1.0, 100).unwrap();
    let mut worst = 0.0f64;
    for (t, x, y) in &traj.samples {
        for i in 0..4 {
            worst = worst.max((x[i] - t).abs());
            worst = worst.max((y[i] - 1.0).abs());
        }
    }
    assert!(worst < 1e-10, "straight-line error {worst}");
    let res = engine::el_residual_max(&lag, &h, &traj).unwrap();
    assert!(res < 1e-10, "straight-line residual {res}");
}

#[test]
fn free_particle_electrodynamics_is_straight() {
    let h = unit_h();
    let lag = ElectrodynamicsLagrangian::free_particle(h);
    let start = JetPoint::new(0.0, [0.1, 0.2, 0.3, 0.4], [1.0, -0.5, 0.25, 2.0]);
    let traj = engine::integrate_extremal(&lag, &h, &start, 1.0, 50).unwrap();
    let (t_last, x_last, _) = traj.samples.last().unwrap();
    for i in 0..4 {
        let expect = start.x[i] + start.y[i] * (t_last - start.t);
        assert!((x_last[i] - expect).abs() < 1e-11);
    }
}

#[test]
fn el_residual_converges_at_order_four() {
    let h = unit_h();
    let lag = JcmLagrangian::new(ScalarField::Linear([1.0, 0.0, 0.0, 0.0]), h).unwrap();
    let start = JetPoint::new(0.0, [0.0; 4], [1.0; 4]);
    let run = |steps: usize| {
        let traj = engine::integrate_extremal(&lag, &h, &start, 0.3, steps).unwrap();
        engine::el_residual_max(&lag, &h, &traj).unwrap()
    };
    let r200 = run(200);
    let r400 = run(400);
    assert!(r200 < 1e-6, "residual at 200 steps: {r200}");
    let ratio = r200 / r400;
    assert!(
        (8.0..=32.0).contains(&ratio),
        "halving the step gave ratio {ratio} (r200 {r200}, r400 {r400})"
    );
}

#[test]
fn trajectory_fiber_matches_discrete_base_derivative() {
    let h = unit_h();
    let lag = JcmLagrangian::new(ScalarField::Linear([1.0, 0.0, 0.0, 0.0]), h).unwrap();
    let start = JetPoint::new(0.0, [0.0; 4], [1.0; 4]);
    let traj = engine::integrate_extremal(&lag, &h, &start, 0.3, 300).unwrap();
    let dt = traj.step;
    let mut worst = 0.0f64;
    for k in 2..traj.samples.len() - 2 {
        for i in 0..4 {
            let xdot = (traj.samples[k - 2].1[i] - 8.0 * traj.samples[k - 1].1[i]
                + 8.0 * traj.samples[k + 1].1[i]
                - traj.samples[k + 2].1[i])
                / (12.0 * dt);
            worst = worst.max((xdot - traj.samples[k].2[i]).abs());
        }
    }
    // fourth-order stencil truncation times the solution's fifth derivative
    assert!(worst < 1e-8, "fiber vs stencil derivative: {worst}");
}

#[test]
fn action_of_straight_line_is_exact() {
    let h = unit_h();
    let lag = JcmLagrangian::new(ScalarField::Constant(0.0), h).unwrap();
    let start = JetPoint::new(0.0, [0.0; 4], [1.0; 4]);
    let traj = engine::integrate_extremal(&lag, &h, &start, 1.0, 100).unwrap();
    // G11 = 6 along the whole line; the integrand is constant.
    let action = engine::action_integral(&lag, &h, &traj).unwrap();
    assert!((action - 6.0).abs() < 1e-12, "action {action}");

    // zero-length trajectory
    let empty = engine::Trajectory {
        samples: vec![(0.0, vec![0.0; 4], vec![1.0; 4])],
        step: 0.0,
    };
    assert_eq!(engine::action_integral(&lag, &h, &empty).unwrap(), 0.0);

    // odd interval count goes through the 3/8 tail and stays exact here
    let traj = engine::integrate_extremal(&lag, &h, &start, 1.0, 101).unwrap();
    let action = engine::action_integral(&lag, &h, &traj).unwrap();
    assert!((action - 6.0).abs() < 1e-12);
}

#[test]
fn action_is_stationary_on_extremals() {
    let h = unit_h();
    let lag = JcmLagrangian::new(ScalarField::Linear([1.0, 0.0, 0.0, 0.0]), h).unwrap();
    let start = JetPoint::new(0.0, [0.0; 4], [0.5; 4]);
    let traj = engine::integrate_extremal(&lag, &h, &start, 0.5, 200).unwrap();
    let phi = |t: f64| {
        vec![
            t * (0.5 - t),
            2.0 * t * (0.5 - t),
            -t * (0.5 - t),
            0.5 * t * (0.5 - t),
        ]
    };
    let phi_dot = |t: f64| vec![0.5 - 2.0 * t, 1.0 - 4.0 * t, -(0.5 - 2.0 * t), 0.25 - t];
    let eps = 1e-4;
    let up = engine::perturb_trajectory(&traj, phi, phi_dot, eps);
    let dn = engine::perturb_trajectory(&traj, phi, phi_dot, -eps);
    let slope = (engine::action_integral(&lag, &h, &up).unwrap()
        - engine::action_integral(&lag, &h, &dn).unwrap())
        / (2.0 * eps);
    assert!(slope.abs() < 1e-6, "first variation {slope}");

    // and the perturbation genuinely moves the action at second order
    let second = engine::action_integral(&lag, &h, &up).unwrap()
        + engine::action_integral(&lag, &h, &dn).unwrap()
        - 2.0 * engine::action_integral(&lag, &h, &traj).unwrap();
    assert!(second.abs() > 0.0);
}

#[test]
fn invalid_start_point_is_rejected() {
    let h = unit_h();
    let lag = JcmLagrangian::new(ScalarField::Constant(0.0), h).unwrap();
    let start = JetPoint::new(0.0, [0.0; 4], [1.0, -1.0, 0.0, 0.0]);
    assert!(matches!(
        engine::integrate_extremal(&lag, &h, &start, 1.0, 10),
        Err(Error::Domain(_))
    ));
}

#[test]
fn crossing_the_h_domain_boundary_exits() {
    // power-kind h lives on t > 0; integrating backward through 0 leaves the
    // metric domain mid-flight.
    let h = TemporalMetric::Power(2.0);
    let lag = JcmLagrangian::new(ScalarField::Constant(0.0), h).unwrap();
    let start = JetPoint::new(1.0, [0.0; 4], [1.0; 4]);
    match engine::integrate_extremal(&lag, &h, &start, -1.0, 50) {
        Err(Error::DomainExit { last_t }) => {
            assert!(last_t > 0.0 && last_t < 1.0, "last valid t {last_t}");
        }
        other => panic!("expected DomainExit, got {other:?}"),
    }
}

#[test]
fn conformal_collapse_reports_noninvertible_metric() {
    // A strong opposing gradient drives e^{2 sigma} below the pivot floor in
    // finite time; the integrator surfaces the inversion failure.
    let h = unit_h();
    let lag = JcmLagrangian::new(ScalarField::Linear([-2.0, 1.0, 1.0, 1.0]), h).unwrap();
    let start = JetPoint::new(0.0, [0.0; 4], [2.0, 0.05, 0.05, 0.05]);
    match engine::integrate_extremal(&lag, &h, &start, 2.0, 400) {
        Err(Error::NonInvertibleMetric(_)) => {}
        other => panic!("expected NonInvertibleMetric, got {other:?}"),
    }
}
