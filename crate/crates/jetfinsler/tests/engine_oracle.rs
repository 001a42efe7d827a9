//! Oracle equivalence between the closed forms and the generic engine, plus
//! the engine's own derivative contract against finite differences.

use approx::assert_relative_eq;
use jetfinsler::ad::AdScalar;
use jetfinsler::engine::{
    self, ElectrodynamicsLagrangian, JcmLagrangian, JetLagrangian,
};
use jetfinsler::inputs::{PolyTerm, ScalarField, TemporalMetric};
use jetfinsler::jcm::{self, JetPoint};
use jetfinsler::{fd, tensor};

fn sigma_x1() -> ScalarField {
    ScalarField::Linear([1.0, 0.0, 0.0, 0.0])
}

fn sigma_quadratic() -> ScalarField {
    let mut q = [[0.0; 4]; 4];
    for i in 0..4 {
        q[i][i] = 1.0;
    }
    q[0][1] = 0.4;
    q[1][0] = 0.4;
    ScalarField::Quadratic {
        q,
        a: [0.2, 0.0, -0.3, 0.1],
    }
}

fn sigma_cubic() -> ScalarField {
    ScalarField::Polynomial(vec![
        PolyTerm {
            exps: [1, 0, 0, 0],
            coeff: 0.8,
        },
        PolyTerm {
            exps: [1, 1, 1, 0],
            coeff: -0.5,
        },
        PolyTerm {
            exps: [0, 0, 2, 1],
            coeff: 0.3,
        },
        PolyTerm {
            exps: [0, 2, 0, 0],
            coeff: 0.6,
        },
    ])
}

fn jcm(sigma: ScalarField, h: TemporalMetric) -> JcmLagrangian {
    JcmLagrangian::new(sigma, h).unwrap()
}

#[test]
fn metric_from_lagrangian_matches_closed_form() {
    // unit factors
    let lag = jcm(ScalarField::Constant(0.0), TemporalMetric::Constant(1.0));
    let p = JetPoint::new(1.0, [0.0; 4], [1.0; 4]);
    let g = engine::metric_from_lagrangian(&lag, &p, &TemporalMetric::Constant(1.0)).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let expect = if i == j { 0.0 } else { 0.5 };
            assert_relative_eq!(g.get(i, j), expect, epsilon = 1e-14);
        }
    }

    // h factors cancel: same x-only matrix for h11 = t^2 at t = 3
    let h = TemporalMetric::Power(2.0);
    let lag = jcm(sigma_cubic(), h);
    let p = JetPoint::new(3.0, [0.3, -0.2, 0.5, 0.1], [1.2, 0.4, 0.9, 0.7]);
    let g = engine::metric_from_lagrangian(&lag, &p, &h).unwrap();
    let (g_closed, _) = jcm::fundamental_metric(&p.x, &sigma_cubic()).unwrap();
    assert!(g.as_matrix().max_abs_diff(g_closed.as_matrix()) <= 1e-12 * (1.0 + g.max_abs()));
}

#[test]
fn metric_is_t_independent_for_every_h_kind() {
    for h in [
        TemporalMetric::Constant(2.5),
        TemporalMetric::Power(2.0),
        TemporalMetric::Exponential(0.7),
    ] {
        let lag = jcm(sigma_quadratic(), h);
        let x = [0.2, -0.4, 0.6, 0.1];
        let y = [0.8, 1.3, 0.5, 1.9];
        let reference =
            engine::metric_from_lagrangian(&lag, &JetPoint::new(0.5, x, y), &h).unwrap();
        for t in [1.0, 2.0, 5.0] {
            let g = engine::metric_from_lagrangian(&lag, &JetPoint::new(t, x, y), &h).unwrap();
            assert!(
                g.as_matrix().max_abs_diff(reference.as_matrix()) < 1e-9,
                "variation at t={t} for {h:?}"
            );
        }
    }
}

#[test]
fn electrodynamics_metric_is_phi() {
    let h = TemporalMetric::Constant(1.0);
    let lag = ElectrodynamicsLagrangian::new(
        1.0,
        1.0,
        {
            let mut phi = [[0.0; 4]; 4];
            for i in 0..4 {
                phi[i][i] = 1.0;
            }
            phi
        },
        [
            ScalarField::Linear([0.0, 1.0, 0.0, 0.0]), // A_1 = x^2
            ScalarField::Constant(0.0),
            ScalarField::Constant(0.0),
            ScalarField::Constant(0.0),
        ],
        ScalarField::Constant(0.0),
        h,
    )
    .unwrap();
    let p = JetPoint::new(1.0, [0.4, 0.7, -0.3, 0.2], [0.5, 1.1, 0.6, 0.9]);
    let g = engine::metric_from_lagrangian(&lag, &p, &h).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let expect = if i == j { 1.0 } else { 0.0 };
            assert_relative_eq!(g.get(i, j), expect, epsilon = 1e-13);
        }
    }
}

#[test]
fn semispray_hand_values() {
    let h = TemporalMetric::Constant(1.0);
    let lag = jcm(sigma_x1(), h);
    let p = JetPoint::new(1.0, [0.0; 4], [1.0; 4]);
    let (_, g) = engine::semispray(&lag, &p, &h).unwrap();
    let expect = [5.0, -1.0, -1.0, -1.0];
    for i in 0..4 {
        assert_relative_eq!(g[i], expect[i], epsilon = 1e-12);
    }

    // flat case
    let lag = jcm(ScalarField::Constant(0.4), h);
    let (hh, gg) = engine::semispray(&lag, &p, &h).unwrap();
    assert!(hh.iter().chain(&gg).all(|v| v.abs() < 1e-13));

    // H = -kappa/2 * y with kappa = 1/t for h = t^2
    let h = TemporalMetric::Power(2.0);
    let lag = jcm(ScalarField::Constant(0.0), h);
    let p = JetPoint::new(2.0, [0.0; 4], [1.0, 0.0, 0.0, 0.0]);
    let (hh, _) = engine::semispray(&lag, &p, &h).unwrap();
    assert_relative_eq!(hh[0], -0.25, epsilon = 1e-13);
    assert!(hh[1].abs() < 1e-15);
}

#[test]
fn nonlinear_connection_matches_closed_form() {
    let h = TemporalMetric::Constant(1.0);
    let lag = jcm(sigma_x1(), h);
    let p = JetPoint::new(1.0, [0.0; 4], [1.0; 4]);
    let frame = engine::nonlinear_from_semispray(&lag, &p, &h).unwrap();
    assert_relative_eq!(frame.n.get(0, 0), 4.0, epsilon = 1e-12);

    let (_, n_closed) = jcm::nonlinear_connection(&p, &sigma_x1(), &h).unwrap();
    assert!(frame.n.max_abs_diff(&n_closed) <= 1e-11);

    // degree-1 homogeneity of N via its exact y-derivatives: the engine's N
    // at scaled y equals scaled N.
    let h = TemporalMetric::Power(2.0);
    let lag = jcm(sigma_quadratic(), h);
    let p = JetPoint::new(1.3, [0.2, -0.5, 0.7, 0.4], [0.9, 1.2, 0.3, 1.6]);
    let frame1 = engine::nonlinear_from_semispray(&lag, &p, &h).unwrap();
    let mut y2 = p.y;
    for v in &mut y2 {
        *v *= 2.0;
    }
    let frame2 =
        engine::nonlinear_from_semispray(&lag, &JetPoint::new(p.t, p.x, y2), &h).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            assert_relative_eq!(
                frame2.n.get(i, j),
                2.0 * frame1.n.get(i, j),
                epsilon = 1e-10,
                max_relative = 1e-10
            );
        }
    }
}

#[test]
fn cartan_matches_closed_form_and_vanishing_parts() {
    let h = TemporalMetric::Power(2.0);
    let lag = jcm(sigma_x1(), h);
    let p = JetPoint::new(1.7, [0.0; 4], [0.8, 1.1, 0.4, 1.3]);
    let cartan = engine::cartan_from_metric(&lag, &p, &h).unwrap();
    assert_relative_eq!(cartan.l.get(0, 0, 0), 2.0, epsilon = 1e-11);
    // G^k_j1 = 0 even for non-constant h (g is t-independent); C = 0.
    assert!(cartan.g_t.max_abs() < 1e-11);
    assert!(cartan.c.max_abs() < 1e-11);

    let l_closed = jcm::cartan_l(&p.x, &sigma_x1()).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                assert_relative_eq!(
                    cartan.l.get(i, j, k),
                    l_closed.get(i, j, k),
                    epsilon = 1e-11
                );
            }
        }
    }
}

#[test]
fn electrodynamics_cartan_is_flat() {
    let h = TemporalMetric::Constant(1.0);
    let lag = ElectrodynamicsLagrangian::free_particle(h);
    let p = JetPoint::new(1.0, [0.3, 0.1, -0.4, 0.2], [0.7, 0.2, 1.1, 0.5]);
    let cartan = engine::cartan_from_metric(&lag, &p, &h).unwrap();
    assert!(cartan.l.max_abs() < 1e-12);
    assert!(cartan.g_t.max_abs() < 1e-12);
    assert!(cartan.c.max_abs() < 1e-12);
}

#[test]
fn torsion_matches_closed_form() {
    let h = TemporalMetric::Constant(1.0);
    let lag = jcm(sigma_x1(), h);
    let p = JetPoint::new(1.0, [0.0; 4], [1.0, 0.0, 0.0, 0.0]);
    let tor = engine::torsion_generic(&lag, &p, &h).unwrap();
    assert_relative_eq!(tor.get(1, 0, 1), 2.0 / 3.0, epsilon = 1e-10);

    let lag = jcm(sigma_quadratic(), h);
    let p = JetPoint::new(1.0, [0.4, -0.1, 0.3, 0.6], [0.5, 1.7, 0.8, 1.1]);
    let tor = engine::torsion_generic(&lag, &p, &h).unwrap();
    let tor_closed = jcm::torsion(&p, &sigma_quadratic()).unwrap();
    for l in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let c = tor_closed.get(l, j, k);
                let e = tor.get(l, j, k);
                assert!(
                    (c - e).abs() / c.abs().max(e.abs()).max(1.0) <= 1e-9,
                    "torsion[{l}][{j}][{k}]: closed {c} vs engine {e}"
                );
                // antisymmetry in (j, k)
                assert!((e + tor.get(l, k, j)).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn curvature_suite_matches_closed_form() {
    let h = TemporalMetric::Constant(1.0);
    let lag = jcm(sigma_x1(), h);
    let p = JetPoint::new(1.0, [0.0; 4], [1.0; 4]);
    let suite = engine::curvature_suite(&lag, &p, &h).unwrap();
    assert_relative_eq!(suite.ricci.get(0, 0), 2.0, epsilon = 1e-10);
    assert_relative_eq!(suite.scalar_r, 8.0, epsilon = 1e-9);
    assert_relative_eq!(suite.r4.get(1, 0, 0, 1), 2.0 / 3.0, epsilon = 1e-10);

    let lag = jcm(sigma_cubic(), TemporalMetric::Power(2.0));
    let p = JetPoint::new(1.4, [0.2, 0.5, -0.3, 0.4], [1.1, 0.6, 1.8, 0.4]);
    let suite = engine::curvature_suite(&lag, &p, &TemporalMetric::Power(2.0)).unwrap();
    let frak = jcm::curvature_frak(&p.x, &sigma_cubic()).unwrap();
    for l in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let c = frak.get(l, i, j, k);
                    let e = suite.r4.get(l, i, j, k);
                    assert!(
                        (c - e).abs() / c.abs().max(e.abs()).max(1.0) <= 1e-8,
                        "R[{l}][{i}][{j}][{k}]: closed {c} vs engine {e}"
                    );
                }
            }
        }
    }
    let sc_closed = jcm::scalar_curvature(&p.x, &sigma_cubic()).unwrap();
    assert_relative_eq!(suite.scalar_r, sc_closed, max_relative = 1e-9);
}

#[test]
fn flat_case_everything_vanishes() {
    let h = TemporalMetric::Constant(1.0);
    let lag = jcm(ScalarField::Constant(1.3), h);
    let p = JetPoint::new(1.0, [0.5; 4], [0.9, 0.4, 1.2, 0.7]);
    let frame = engine::nonlinear_from_semispray(&lag, &p, &h).unwrap();
    assert!(frame.n.max_abs() < 1e-13);
    let tor = engine::torsion_generic(&lag, &p, &h).unwrap();
    assert!(tor.max_abs() < 1e-12);
    let suite = engine::curvature_suite(&lag, &p, &h).unwrap();
    assert!(suite.r4.max_abs() < 1e-12);
    assert!(suite.scalar_r.abs() < 1e-12);
}

#[test]
fn em_2form_vanishes_for_jcm() {
    for (sigma, h) in [
        (sigma_x1(), TemporalMetric::Constant(1.0)),
        (sigma_quadratic(), TemporalMetric::Power(2.0)),
        (sigma_cubic(), TemporalMetric::Exponential(0.5)),
    ] {
        let lag = jcm(sigma.clone(), h);
        let p = JetPoint::new(1.2, [0.3, -0.6, 0.2, 0.5], [0.7, 1.5, 0.4, 1.0]);
        let f = engine::em_2form(&lag, &p, &h).unwrap();
        assert!(f.max_abs() <= 1e-9, "JCM em 2-form {} for {sigma:?}", f.max_abs());
        // antisymmetry is structural
        for i in 0..4 {
            for j in 0..4 {
                assert!((f.get(i, j) + f.get(j, i)).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn em_2form_electrodynamics_curl() {
    let h = TemporalMetric::Constant(1.0);
    let mut phi = [[0.0; 4]; 4];
    for i in 0..4 {
        phi[i][i] = 1.0;
    }
    // A_1 = x^2 (second coordinate), all other components zero; e/m = 1.
    let a_pot = [
        ScalarField::Linear([0.0, 1.0, 0.0, 0.0]),
        ScalarField::Constant(0.0),
        ScalarField::Constant(0.0),
        ScalarField::Constant(0.0),
    ];
    let lag = ElectrodynamicsLagrangian::new(
        1.0,
        1.0,
        phi,
        a_pot.clone(),
        ScalarField::Constant(0.0),
        h,
    )
    .unwrap();
    let p = JetPoint::new(1.0, [0.2, 0.4, -0.1, 0.3], [0.6, 1.2, 0.8, 0.5]);
    let f = engine::em_2form(&lag, &p, &h).unwrap();
    assert_relative_eq!(f.get(0, 1), -0.5, epsilon = 1e-10);

    // general curl oracle by finite differences of the potentials
    let e_over_2m = 0.5;
    for i in 0..4 {
        for j in 0..4 {
            let da_i = fd::grad4(
                |x| {
                    jetfinsler::inputs::eval_sigma(&a_pot[i], x)
                        .map(|e| e.value)
                        .unwrap()
                },
                &p.x,
                1e-5,
            );
            let da_j = fd::grad4(
                |x| {
                    jetfinsler::inputs::eval_sigma(&a_pot[j], x)
                        .map(|e| e.value)
                        .unwrap()
                },
                &p.x,
                1e-5,
            );
            let expect = -e_over_2m * (da_i[j] - da_j[i]);
            assert!(
                (f.get(i, j) - expect).abs() <= 1e-6,
                "curl mismatch at ({i},{j}): {} vs {expect}",
                f.get(i, j)
            );
        }
    }

    // A = grad(scalar) has zero curl
    let grad_field = [
        ScalarField::Linear([2.0, 1.0, 0.0, 0.0]),
        ScalarField::Linear([1.0, 0.0, 3.0, 0.0]),
        ScalarField::Linear([0.0, 3.0, 0.0, -1.0]),
        ScalarField::Linear([0.0, 0.0, -1.0, 4.0]),
    ];
    let lag = ElectrodynamicsLagrangian::new(
        1.0,
        1.0,
        phi,
        grad_field,
        ScalarField::Constant(0.0),
        h,
    )
    .unwrap();
    let f = engine::em_2form(&lag, &p, &h).unwrap();
    assert!(f.max_abs() <= 1e-10);
}

#[test]
fn em_auxiliaries_vanish_for_jcm() {
    let h = TemporalMetric::Power(2.0);
    let lag = jcm(sigma_quadratic(), h);
    let p = JetPoint::new(1.6, [0.3, -0.2, 0.5, 0.1], [0.9, 1.3, 0.4, 1.7]);
    let aux = engine::em_auxiliaries(&lag, &p, &h).unwrap();
    // D-bar and D vanish (t-independent g; the contraction identity),
    // d reduces to h^{11} g, and the time-sector torsion cancels.
    assert!(aux.d_bar.iter().all(|v| v.abs() < 1e-10));
    assert!(aux.big_d.max_abs() < 1e-10);
    assert!(aux.torsion_t.max_abs() < 1e-9);
    let he = jetfinsler::inputs::eval_h(&h, p.t).unwrap();
    let (g, _) = jcm::fundamental_metric(&p.x, &sigma_quadratic()).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            assert_relative_eq!(
                aux.small_d.get(i, j),
                he.h11_inv * g.get(i, j),
                epsilon = 1e-11
            );
        }
    }
}

#[test]
fn cross_validate_oracle_equivalence() {
    // This run IS the oracle equivalence test.
    let report =
        engine::cross_validate(&sigma_x1(), &TemporalMetric::Constant(1.0), 100, 7).unwrap();
    assert!(
        report.pass(1e-6),
        "linear sigma validation failed: {:?}",
        report.objects
    );

    // degenerate case: both routes identically zero on the curvature side
    let report =
        engine::cross_validate(&ScalarField::Constant(1.0), &TemporalMetric::Constant(1.0), 10, 3)
            .unwrap();
    for o in &report.objects {
        if ["N", "L", "torsion", "curvature", "ricci", "scalarR"].contains(&o.name) {
            assert!(o.max_abs <= 1e-12, "{} = {}", o.name, o.max_abs);
        }
    }

    // quadratic sigma with a t-dependent h
    let report =
        engine::cross_validate(&sigma_quadratic(), &TemporalMetric::Power(2.0), 100, 11).unwrap();
    assert!(
        report.pass(1e-6),
        "quadratic sigma validation failed: {:?}",
        report.objects
    );
}

// --- derivative contract of the differentiation facility --------------------

/// Polynomial Lagrangian on J¹(ℝ, M³) exercising arbitrary n and every slot.
struct PolyLag;

impl JetLagrangian for PolyLag {
    fn dim(&self) -> usize {
        3
    }

    fn eval<T: AdScalar>(&self, t: T, x: &[T], y: &[T]) -> T {
        let mut s = t * t * x[0] * y[1];
        s = s + x[1].powu(3) * y[0];
        s = s + y[2] * y[2] * x[2] + t.scale(0.5) * y[0] * y[0];
        s = s + x[0] * x[1] * y[2].powu(2);
        s
    }

    fn domain_ok(&self, _t: f64, _x: &[f64], _y: &[f64]) -> bool {
        true
    }
}

#[test]
fn dual_derivatives_match_finite_differences() {
    use jetfinsler::ad::{Dual, HyperDual};
    let lag = PolyLag;
    let t = 0.8;
    let x = [0.4, -0.7, 1.2];
    let y = [0.9, 0.3, -0.5];

    // first derivatives over every coordinate
    let coords: Vec<(usize, f64)> = (0..7)
        .map(|i| {
            (
                i,
                match i {
                    0 => t,
                    1..=3 => x[i - 1],
                    _ => y[i - 4],
                },
            )
        })
        .collect();
    let eval_at = |vals: &[f64]| {
        lag.eval(
            vals[0],
            &[vals[1], vals[2], vals[3]],
            &[vals[4], vals[5], vals[6]],
        )
    };
    let flat: Vec<f64> = coords.iter().map(|c| c.1).collect();
    for (idx, _) in &coords {
        let mut seeded: Vec<Dual<f64>> = flat.iter().map(|&v| Dual::constant(v)).collect();
        seeded[*idx] = Dual::var(flat[*idx]);
        let d = lag
            .eval(
                seeded[0],
                &[seeded[1], seeded[2], seeded[3]],
                &[seeded[4], seeded[5], seeded[6]],
            )
            .du;
        let h = fd::step(flat[*idx], 1e-5);
        let mut up = flat.clone();
        let mut dn = flat.clone();
        up[*idx] += h;
        dn[*idx] -= h;
        let fdv = (eval_at(&up) - eval_at(&dn)) / (2.0 * h);
        assert!(
            (d - fdv).abs() / d.abs().max(fdv.abs()).max(1.0) <= 1e-6,
            "first derivative slot {idx}: {d} vs {fdv}"
        );
    }

    // second derivatives over every coordinate pair
    for (a, _) in &coords {
        for (b, _) in &coords {
            let mut seeded: Vec<HyperDual<f64>> =
                flat.iter().map(|&v| HyperDual::constant(v)).collect();
            seeded[*a].e1 = 1.0;
            seeded[*b].e2 = 1.0;
            let d2 = lag
                .eval(
                    seeded[0],
                    &[seeded[1], seeded[2], seeded[3]],
                    &[seeded[4], seeded[5], seeded[6]],
                )
                .e12;
            // 4-point (or 3-point) stencil with the coarser second-order step
            let ha = fd::step(flat[*a], 1e-4);
            let hb = fd::step(flat[*b], 1e-4);
            let fdv = if a == b {
                let mut up = flat.clone();
                let mut dn = flat.clone();
                up[*a] += ha;
                dn[*a] -= ha;
                (eval_at(&up) - 2.0 * eval_at(&flat) + eval_at(&dn)) / (ha * ha)
            } else {
                let mut pp = flat.clone();
                let mut pm = flat.clone();
                let mut mp = flat.clone();
                let mut mm = flat.clone();
                pp[*a] += ha;
                pp[*b] += hb;
                pm[*a] += ha;
                pm[*b] -= hb;
                mp[*a] -= ha;
                mp[*b] += hb;
                mm[*a] -= ha;
                mm[*b] -= hb;
                (eval_at(&pp) - eval_at(&pm) - eval_at(&mp) + eval_at(&mm)) / (4.0 * ha * hb)
            };
            assert!(
                (d2 - fdv).abs() / d2.abs().max(fdv.abs()).max(1.0) <= 1e-6,
                "second derivative slots ({a},{b}): {d2} vs {fdv}"
            );
        }
    }
}

#[test]
fn generic_dimension_three_pipeline_runs() {
    // The slice-level engine accepts any n; for this y-quadratic Lagrangian
    // the fundamental tensor is y-independent and C vanishes.
    struct Quad3;
    impl JetLagrangian for Quad3 {
        fn dim(&self) -> usize {
            3
        }
        fn eval<T: AdScalar>(&self, _t: T, x: &[T], y: &[T]) -> T {
            let w = (x[0] * x[0]).scale(0.5).exp();
            w * (y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[0] * y[1])
        }
        fn domain_ok(&self, _t: f64, _x: &[f64], _y: &[f64]) -> bool {
            true
        }
    }
    use jetfinsler::engine::fields;
    let h = TemporalMetric::Constant(1.0);
    let t = 1.0;
    let x = [0.4, 0.1, -0.3];
    let y = [0.7, 0.2, 0.5];
    let cart = fields::cartan_components::<f64, _>(&Quad3, &h, t, &x, &y).unwrap();
    assert!(cart.c3.iter().all(|v| v.abs() < 1e-12));
    let curv = fields::curvature_components::<f64, _>(&Quad3, &h, t, &x, &y).unwrap();
    assert!(curv.scalar_r.is_finite());
    let tors = fields::torsion_components::<f64, _>(&Quad3, &h, t, &x, &y).unwrap();
    for l in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let v = tors[(l * 3 + j) * 3 + k];
                let w = tors[(l * 3 + k) * 3 + j];
                assert!((v + w).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn domain_guard_splits_metric_from_connection_objects() {
    // G11(y) < 0 puts the point outside the metric domain, so F-level
    // operations reject it; the connection and curvature objects depend only
    // on x (plus linear y-contractions) and accept any y.
    let h = TemporalMetric::Constant(1.0);
    let lag = jcm(sigma_x1(), h);
    let p = JetPoint::new(1.0, [0.0; 4], [1.0, -1.0, 0.0, 0.0]);
    assert!(engine::metric_from_lagrangian(&lag, &p, &h).is_err());
    assert!(engine::f_from_lagrangian(&lag, &p, &h).is_err());
    let suite = engine::curvature_suite(&lag, &p, &h).unwrap();
    let frak = jcm::curvature_frak(&p.x, &sigma_x1()).unwrap();
    assert!((suite.r4.get(1, 0, 0, 1) - frak.get(1, 0, 0, 1)).abs() <= 1e-10);
    // power-kind h outside t > 0 is rejected even for derivatives
    let hp = TemporalMetric::Power(2.0);
    let lagp = jcm(sigma_x1(), hp);
    let bad_t = JetPoint::new(-1.0, [0.0; 4], [1.0; 4]);
    assert!(engine::curvature_suite(&lagp, &bad_t, &hp).is_err());
}

#[test]
fn closed_inverse_matches_engine_inverse() {
    let tol = tensor::Tolerances::default();
    let h = TemporalMetric::Constant(1.0);
    let lag = jcm(sigma_cubic(), h);
    let p = JetPoint::new(1.0, [0.5, -0.2, 0.3, 0.7], [1.4, 0.6, 0.9, 1.1]);
    let g = engine::metric_from_lagrangian(&lag, &p, &h).unwrap();
    let ginv = tensor::invert_symmetric(&g, &tol).unwrap();
    let (_, ginv_closed) = jcm::fundamental_metric(&p.x, &sigma_cubic()).unwrap();
    assert!(
        ginv.as_matrix().max_abs_diff(ginv_closed.as_matrix())
            <= 1e-9 * (1.0 + ginv.max_abs())
    );
}
