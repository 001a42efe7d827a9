//! Cross-validation harness: every closed-form object of the conformal
//! Minkowski model compared against its generic-engine counterpart over a
//! seeded random point sample.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::Result;
use crate::inputs::{ScalarField, TemporalMetric};
use crate::jcm::{self, JetPoint};
use crate::tensor::Tolerances;

use super::fields;
use super::lagrangian::JcmLagrangian;

/// Discrepancy record for one geometric object over the whole sample.
#[derive(Debug, Clone)]
pub struct ObjectReport {
    pub name: &'static str,
    /// max |closed − generic| over all components and points.
    pub max_abs: f64,
    /// max |closed − generic| / max(|closed|, |generic|, 1) — relative with
    /// an absolute fallback for near-zero components.
    pub max_rel: f64,
}

/// Per-object maximum discrepancies between the closed forms and the
/// generic engine.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub seed: u64,
    pub samples: usize,
    pub objects: Vec<ObjectReport>,
}

impl ValidationReport {
    /// Largest relative score across objects.
    pub fn max_score(&self) -> f64 {
        self.objects.iter().fold(0.0, |a, o| a.max(o.max_rel))
    }

    /// True when every object's score is within `tol`.
    pub fn pass(&self, tol: f64) -> bool {
        self.objects.iter().all(|o| o.max_rel <= tol)
    }
}

struct Acc {
    name: &'static str,
    max_abs: f64,
    max_rel: f64,
}

impl Acc {
    fn new(name: &'static str) -> Self {
        Acc {
            name,
            max_abs: 0.0,
            max_rel: 0.0,
        }
    }

    fn feed(&mut self, closed: f64, generic: f64) {
        let d = (closed - generic).abs();
        self.max_abs = self.max_abs.max(d);
        self.max_rel = self.max_rel.max(d / closed.abs().max(generic.abs()).max(1.0));
    }

    fn feed_iter(
        &mut self,
        closed: impl IntoIterator<Item = f64>,
        generic: impl IntoIterator<Item = f64>,
    ) {
        for (c, g) in closed.into_iter().zip(generic) {
            self.feed(c, g);
        }
    }

    fn done(self) -> ObjectReport {
        ObjectReport {
            name: self.name,
            max_abs: self.max_abs,
            max_rel: self.max_rel,
        }
    }
}

/// Draws `sample` seeded points (t ∈ [0.5, 2], x ∈ [−1, 1]⁴, y ∈ [0.1, 2]⁴ —
/// the positive orthant guarantees G₁₁ > 0) and reports, for each object in
/// {F, g, ginv, N, L, torsion, curvature, ricci, scalarR}, the maximum
/// discrepancy between the closed form and the generic engine.
pub fn cross_validate(
    sigma: &ScalarField,
    h: &TemporalMetric,
    sample: usize,
    seed: u64,
) -> Result<ValidationReport> {
    assert!(sample >= 1, "cross_validate requires sample >= 1");
    let lag = JcmLagrangian::new(sigma.clone(), *h)?;
    let tol = Tolerances::default();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);

    let mut acc_f = Acc::new("F");
    let mut acc_g = Acc::new("g");
    let mut acc_ginv = Acc::new("ginv");
    let mut acc_n = Acc::new("N");
    let mut acc_l = Acc::new("L");
    let mut acc_tor = Acc::new("torsion");
    let mut acc_curv = Acc::new("curvature");
    let mut acc_ric = Acc::new("ricci");
    let mut acc_sc = Acc::new("scalarR");

    for _ in 0..sample {
        let t = rng.random_range(0.5..2.0);
        let mut x = [0.0; 4];
        let mut y = [0.0; 4];
        for v in &mut x {
            *v = rng.random_range(-1.0..1.0);
        }
        for v in &mut y {
            *v = rng.random_range(0.1..2.0);
        }
        let p = JetPoint::new(t, x, y);

        acc_f.feed(
            jcm::jcm_f(&p, sigma, h)?,
            fields::f_from_lagrangian(&lag, &p, h)?,
        );

        let (g_c, ginv_c) = jcm::fundamental_metric(&x, sigma)?;
        let g_e = fields::metric_from_lagrangian(&lag, &p, h)?;
        let ginv_e = crate::tensor::invert_symmetric(&g_e, &tol)?;
        acc_g.feed_iter(
            g_c.rows().into_iter().flatten(),
            g_e.rows().into_iter().flatten(),
        );
        acc_ginv.feed_iter(
            ginv_c.rows().into_iter().flatten(),
            ginv_e.rows().into_iter().flatten(),
        );

        let (_, n_c) = jcm::nonlinear_connection(&p, sigma, h)?;
        let frame = fields::nonlinear_from_semispray(&lag, &p, h)?;
        acc_n.feed_iter(
            n_c.rows().into_iter().flatten(),
            frame.n.rows().into_iter().flatten(),
        );

        let l_c = jcm::cartan_l(&x, sigma)?;
        let cartan = fields::cartan_from_metric(&lag, &p, h)?;
        acc_l.feed_iter(
            l_c.entries().into_iter().flatten().flatten(),
            cartan.l.entries().into_iter().flatten().flatten(),
        );

        let tor_c = jcm::torsion(&p, sigma)?;
        let tor_e = fields::torsion_generic(&lag, &p, h)?;
        acc_tor.feed_iter(
            tor_c.entries().into_iter().flatten().flatten(),
            tor_e.entries().into_iter().flatten().flatten(),
        );

        let frak_c = jcm::curvature_frak(&x, sigma)?;
        let suite = fields::curvature_suite(&lag, &p, h)?;
        acc_curv.feed_iter(
            frak_c.entries().into_iter().flatten().flatten().flatten(),
            suite.r4.entries().into_iter().flatten().flatten().flatten(),
        );

        let ric_c = jcm::ricci(&x, sigma)?;
        acc_ric.feed_iter(
            ric_c.rows().into_iter().flatten(),
            suite.ricci.rows().into_iter().flatten(),
        );

        acc_sc.feed(jcm::scalar_curvature(&x, sigma)?, suite.scalar_r);
    }

    Ok(ValidationReport {
        seed,
        samples: sample,
        objects: vec![
            acc_f.done(),
            acc_g.done(),
            acc_ginv.done(),
            acc_n.done(),
            acc_l.done(),
            acc_tor.done(),
            acc_curv.done(),
            acc_ric.done(),
            acc_sc.done(),
        ],
    })
}
