//! Closed-form geometry of the jet conformal Minkowski metric
//! F(t,x,y) = e^{σ(x)} · √(h¹¹(t)) · √(G₁₁(y)), with
//! G₁₁(y) = Σ_{i<j} yⁱyʲ on the 1-jet space J¹(ℝ, M⁴).
//!
//! Every object here is the published closed form evaluated literally:
//! fundamental metric and its inverse, canonical nonlinear connection,
//! Cartan linear connection, the effective curvature d-tensor 𝔕R, its
//! y-contraction (the effective torsion), Ricci, scalar curvature, and the
//! congruence transform that diagonalizes G₁₁ to the Minkowski signature.
//! The generic engine re-derives each of them from the raw Lagrangian
//! L = F²; the two routes are cross-validated, never shared.
//!
//! Index conventions follow [`crate::tensor`]: 0-based storage, the
//! connection coefficients N[i][j] carry the upper index on the row.

use crate::error::{Error, Result};
use crate::inputs::{eval_h, eval_sigma, ScalarField, TemporalMetric};
use crate::tensor::{contract_trace, Matrix, Rank3, Rank4, SymMatrix, Tolerances};

/// Domain guard: metric-dependent operations reject points with
/// G₁₁(y) ≤ EPS_DOM.  Connection and curvature objects depend only on x and
/// accept any y.
pub const EPS_DOM: f64 = 1e-12;

/// A point (t; x¹..x⁴; y¹₁..y⁴₁) of the 1-jet space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetPoint {
    pub t: f64,
    pub x: [f64; 4],
    pub y: [f64; 4],
}

impl JetPoint {
    pub fn new(t: f64, x: [f64; 4], y: [f64; 4]) -> Self {
        JetPoint { t, x, y }
    }
}

/// G₁₁ and its exact y-derivatives: S = Σᵢ yⁱ, G_i1 = ∂G₁₁/∂yⁱ = S − yⁱ,
/// G_ij = ∂²G₁₁/∂yⁱ∂yʲ = 1 − δ_ij.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticFormEval {
    pub g11: f64,
    pub s: f64,
    pub g_i1: [f64; 4],
    pub g_ij: [[f64; 4]; 4],
}

/// Evaluates the quadratic form; no domain guard (G₁₁ may be ≤ 0, callers
/// that need the metric reject such points).
pub fn quad_form(y: &[f64; 4]) -> QuadraticFormEval {
    let mut g11 = 0.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            g11 += y[i] * y[j];
        }
    }
    let s: f64 = y.iter().sum();
    let mut g_i1 = [0.0; 4];
    let mut g_ij = [[0.0; 4]; 4];
    for i in 0..4 {
        g_i1[i] = s - y[i];
        for j in 0..4 {
            g_ij[i][j] = if i == j { 0.0 } else { 1.0 };
        }
    }
    QuadraticFormEval { g11, s, g_i1, g_ij }
}

/// The metric F itself.  Requires G₁₁(y) > [`EPS_DOM`] and h¹¹(t) > 0.
pub fn jcm_f(p: &JetPoint, sigma: &ScalarField, h: &TemporalMetric) -> Result<f64> {
    let q = quad_form(&p.y);
    if q.g11 <= EPS_DOM {
        return Err(Error::Domain(format!(
            "G11(y) = {} <= {EPS_DOM:e} at y = {:?}",
            q.g11, p.y
        )));
    }
    let he = eval_h(h, p.t)?;
    let se = eval_sigma(sigma, &p.x)?;
    Ok(se.value.exp() * he.h11_inv.sqrt() * q.g11.sqrt())
}

/// Fundamental metrical d-tensor g_ij = (e^{2σ}/2)(1 − δ_ij) and its
/// closed-form inverse gʲᵏ = (2e^{−2σ}/3)(1 − 3δʲᵏ).
pub fn fundamental_metric(
    x: &[f64; 4],
    sigma: &ScalarField,
) -> Result<(SymMatrix, SymMatrix)> {
    let se = eval_sigma(sigma, x)?;
    let e2s = (2.0 * se.value).exp();
    let g = SymMatrix::from_fn_upper(4, |i, j| {
        if i == j {
            0.0
        } else {
            0.5 * e2s
        }
    });
    let ginv = SymMatrix::from_fn_upper(4, |i, j| {
        let d = if i == j { 1.0 } else { 0.0 };
        2.0 / (3.0 * e2s) * (1.0 - 3.0 * d)
    });
    Ok((g, ginv))
}

/// Canonical nonlinear connection: M^(i)_(1)1 = −ϰ¹₁₁ yⁱ and
/// N^(i)_(1)j = σ_j yⁱ + (σ_m y^m) δⁱ_j + [σ_i − ⅓ div D_σ](S − yʲ),
/// implemented literally as printed.
pub fn nonlinear_connection(
    p: &JetPoint,
    sigma: &ScalarField,
    h: &TemporalMetric,
) -> Result<([f64; 4], Matrix)> {
    let he = eval_h(h, p.t)?;
    let se = eval_sigma(sigma, &p.x)?;
    let q = quad_form(&p.y);
    let sig_dot_y: f64 = (0..4).map(|m| se.grad[m] * p.y[m]).sum();
    let mut m_coeff = [0.0; 4];
    for i in 0..4 {
        m_coeff[i] = -he.kappa * p.y[i];
    }
    let n = Matrix::from_fn(4, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        se.grad[j] * p.y[i]
            + sig_dot_y * delta
            + (se.grad[i] - se.div_d / 3.0) * (q.s - p.y[j])
    });
    Ok((m_coeff, n))
}

/// Cartan canonical linear connection, spatial part:
/// L^i_jk = δⁱ_j σ_k + δⁱ_k σ_j + (1 − δ_jk) σ_i − ((1 − δ_jk)/3) div D_σ.
/// The G^k_j1 and C components of the connection vanish identically for this
/// metric and are reported as such by the bundle assembly.
pub fn cartan_l(x: &[f64; 4], sigma: &ScalarField) -> Result<Rank3> {
    let se = eval_sigma(sigma, x)?;
    Ok(Rank3::from_fn(4, |i, j, k| {
        let dij = if i == j { 1.0 } else { 0.0 };
        let dik = if i == k { 1.0 } else { 0.0 };
        let djk = if j == k { 1.0 } else { 0.0 };
        dij * se.grad[k] + dik * se.grad[j] + (1.0 - djk) * se.grad[i]
            - (1.0 - djk) / 3.0 * se.div_d
    }))
}

/// The single effective curvature d-tensor 𝔕R^l_ijk.  Each line of the
/// published expression is a (j,k)-swap difference; evaluating the common
/// half U and forming U(j,k) − U(k,j) keeps the value identical and makes
/// the antisymmetry in (j,k) bit-exact.
pub fn curvature_frak(x: &[f64; 4], sigma: &ScalarField) -> Result<Rank4> {
    let se = eval_sigma(sigma, x)?;
    let s = se.grad;
    let ss = se.hess;
    let div = se.div_d;
    let divg = se.div_d_grad;
    let weight = se.grad_norm2 - div * div / 3.0;
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    // δ^l_j (σ_ik − σ_i σ_k) + (1 − δ_ij)(σ_lk − σ_l σ_k)
    //   + ⅓ div·σ_k (1 − δ_ij) + [‖grad σ‖² − ⅓div²] δ^l_k (1 − δ_ij)
    //   + ⅓ (div D_σ)_j (1 − δ_ik)
    let half = |l: usize, i: usize, j: usize, k: usize| {
        d(l, j) * (ss[i][k] - s[i] * s[k])
            + (1.0 - d(i, j)) * (ss[l][k] - s[l] * s[k])
            + div / 3.0 * s[k] * (1.0 - d(i, j))
            + weight * d(l, k) * (1.0 - d(i, j))
            + divg[j] / 3.0 * (1.0 - d(i, k))
    };
    Ok(Rank4::from_fn(4, |l, i, j, k| {
        half(l, i, j, k) - half(l, i, k, j)
    }))
}

/// Single effective torsion d-tensor R^(l)_(1)jk = 𝔕R^l_pjk · y^p
/// (contraction of the curvature with y over the first lower slot).
pub fn torsion(p: &JetPoint, sigma: &ScalarField) -> Result<Rank3> {
    let frak = curvature_frak(&p.x, sigma)?;
    Ok(Rank3::from_fn(4, |l, j, k| {
        (0..4).map(|q| frak.get(l, q, j, k) * p.y[q]).sum()
    }))
}

/// Effective Ricci d-tensor,
/// R_ij = −2(σ_ij − σ_i σ_j)
///        + ((1 − δ_ij)/3)[3Δσ + 6‖grad σ‖² − 2(div D_σ)² − 𝔖].
pub fn ricci(x: &[f64; 4], sigma: &ScalarField) -> Result<SymMatrix> {
    let se = eval_sigma(sigma, x)?;
    let bracket = 3.0 * se.laplacian + 6.0 * se.grad_norm2
        - 2.0 * se.div_d * se.div_d
        - se.frak_s;
    Ok(SymMatrix::from_fn_upper(4, |i, j| {
        let dij = if i == j { 1.0 } else { 0.0 };
        -2.0 * (se.hess[i][j] - se.grad[i] * se.grad[j]) + (1.0 - dij) / 3.0 * bracket
    }))
}

/// Scalar curvature R = 4e^{−2σ}[3Δσ + 3‖grad σ‖² − (div D_σ)² − 𝔖].
pub fn scalar_curvature(x: &[f64; 4], sigma: &ScalarField) -> Result<f64> {
    let se = eval_sigma(sigma, x)?;
    Ok(4.0 * (-2.0 * se.value).exp()
        * (3.0 * se.laplacian + 3.0 * se.grad_norm2 - se.div_d * se.div_d - se.frak_s))
}

/// Result of the Minkowski diagonalization check.
#[derive(Debug, Clone)]
pub struct MinkowskiDiag {
    /// The constant congruence matrix A.
    pub a: Matrix,
    /// AᵀQA where Q_ij = ½(1 − δ_ij) is the coefficient matrix of G₁₁.
    pub a_t_q_a: Matrix,
    /// The canonical signature (+1, −1, −1, −1).
    pub signature: [f64; 4],
    /// max |AᵀQA − diag(signature)|.
    pub max_dev: f64,
}

/// The constant linear transform x = A·x̃ under which G₁₁ takes its
/// canonical Minkowski form (ỹ¹)² − (ỹ²)² − (ỹ³)² − (ỹ⁴)².  Verifies
/// AᵀQA = diag(1,−1,−1,−1) to 1e−12 and fails with
/// [`Error::SignatureMismatch`] otherwise (which would signal a
/// transcription error in A).
pub fn minkowski_transform() -> Result<MinkowskiDiag> {
    let s6 = 6.0f64.sqrt();
    let s3 = 3.0f64.sqrt();
    let rows = [
        [1.0 / s6, -1.0 / s3, 1.0, -1.0 / s6],
        [1.0 / s6, 2.0 / s3, 0.0, -1.0 / s6],
        [1.0 / s6, 0.0, 0.0, 3.0 / s6],
        [1.0 / s6, -1.0 / s3, -1.0, -1.0 / s6],
    ];
    let a = Matrix::from_fn(4, |i, j| rows[i][j]);
    let q = Matrix::from_fn(4, |i, j| if i == j { 0.0 } else { 0.5 });
    let at = Matrix::from_fn(4, |i, j| a.get(j, i));
    let prod = at.matmul(&q.matmul(&a));
    let signature = [1.0, -1.0, -1.0, -1.0];
    let mut max_dev = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let expect = if i == j { signature[i] } else { 0.0 };
            max_dev = max_dev.max((prod.get(i, j) - expect).abs());
        }
    }
    if max_dev > Tolerances::default().det {
        return Err(Error::SignatureMismatch { max_dev });
    }
    Ok(MinkowskiDiag {
        a,
        a_t_q_a: prod,
        signature,
        max_dev,
    })
}

/// Per-point record of every closed-form geometric object.
#[derive(Debug, Clone)]
pub struct GeometryBundle {
    pub g: SymMatrix,
    pub ginv: SymMatrix,
    /// M^(i)_(1)1 = −ϰ¹₁₁ yⁱ.
    pub m: [f64; 4],
    /// N^(i)_(1)j, row = upper index i.
    pub n: Matrix,
    /// L^i_jk.
    pub l: Rank3,
    /// 𝔕R^l_ijk.
    pub frak_r: Rank4,
    /// R^(l)_(1)jk.
    pub torsion: Rank3,
    pub ricci: SymMatrix,
    pub scalar_r: f64,
}

/// Assembles the full closed-form bundle at one jet point.
pub fn geometry_bundle(
    p: &JetPoint,
    sigma: &ScalarField,
    h: &TemporalMetric,
) -> Result<GeometryBundle> {
    let (g, ginv) = fundamental_metric(&p.x, sigma)?;
    let (m, n) = nonlinear_connection(p, sigma, h)?;
    let l = cartan_l(&p.x, sigma)?;
    let frak_r = curvature_frak(&p.x, sigma)?;
    let tor = torsion(p, sigma)?;
    let ric = ricci(&p.x, sigma)?;
    let scalar_r = scalar_curvature(&p.x, sigma)?;
    debug_assert!({
        let trace = contract_trace(&frak_r);
        trace.max_abs_diff(ric.as_matrix()) <= 1e-12 * (1.0 + trace.max_abs())
    });
    Ok(GeometryBundle {
        g,
        ginv,
        m,
        n,
        l,
        frak_r,
        torsion: tor,
        ricci: ric,
        scalar_r,
    })
}
