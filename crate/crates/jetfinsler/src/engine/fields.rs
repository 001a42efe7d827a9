//! The generic derivation pipeline: every geometric object computed from a
//! raw jet Lagrangian by differentiation alone.
//!
//! Each field below (fundamental tensor, semispray, nonlinear connection,
//! Cartan connection, torsion, curvature) is written generically over
//! [`AdScalar`].  Differentiating a field means re-running its whole
//! pipeline — including the matrix inversion — in [`Dual`] arithmetic with
//! the wanted coordinate seeded, so δ-derivatives of connection coefficients
//! come out exact rather than finite-differenced.  The deepest instantiation
//! (curvature) evaluates the Lagrangian in `HyperDual<Dual<Dual<f64>>>`.

use crate::ad::{AdScalar, Dual, HyperDual};
use crate::error::{Error, Result};
use crate::inputs::TemporalMetric;
use crate::jcm::JetPoint;
use crate::tensor::{contract_trace, Matrix, Rank3, Rank4, SymMatrix, Tolerances};

use super::lagrangian::JetLagrangian;

/// Coordinate slot of the jet space for derivative seeding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Time,
    X(usize),
    Y(usize),
}

fn seed<T: AdScalar>(this: Slot, wanted: Option<Slot>) -> T {
    if wanted == Some(this) {
        T::one()
    } else {
        T::zero()
    }
}

/// L evaluated in hyper-dual arithmetic with up to two seeded directions;
/// `.e1`/`.e2` carry first derivatives, `.e12` the mixed second.
fn eval_l_hd<T: AdScalar, L: JetLagrangian>(
    lag: &L,
    t: T,
    x: &[T],
    y: &[T],
    s1: Option<Slot>,
    s2: Option<Slot>,
) -> HyperDual<T> {
    let th = HyperDual {
        re: t,
        e1: seed(Slot::Time, s1),
        e2: seed(Slot::Time, s2),
        e12: T::zero(),
    };
    let xs: Vec<HyperDual<T>> = (0..x.len())
        .map(|i| HyperDual {
            re: x[i],
            e1: seed(Slot::X(i), s1),
            e2: seed(Slot::X(i), s2),
            e12: T::zero(),
        })
        .collect();
    let ys: Vec<HyperDual<T>> = (0..y.len())
        .map(|i| HyperDual {
            re: y[i],
            e1: seed(Slot::Y(i), s1),
            e2: seed(Slot::Y(i), s2),
            e12: T::zero(),
        })
        .collect();
    lag.eval(th, &xs, &ys)
}

fn l_d1<T: AdScalar, L: JetLagrangian>(lag: &L, t: T, x: &[T], y: &[T], s: Slot) -> T {
    eval_l_hd(lag, t, x, y, Some(s), None).e1
}

fn l_d2<T: AdScalar, L: JetLagrangian>(lag: &L, t: T, x: &[T], y: &[T], a: Slot, b: Slot) -> T {
    eval_l_hd(lag, t, x, y, Some(a), Some(b)).e12
}

/// Symmetric positive-pivot Gauss-Jordan inversion in generic scalar
/// arithmetic (pivoting decided on real parts).  `a` is row-major n×n.
fn invert_sym_generic<T: AdScalar>(a: &[T], n: usize) -> Result<Vec<T>> {
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.re().abs()));
    let floor = 1e-12 * scale.max(1e-300);
    let mut m: Vec<T> = a.to_vec();
    let mut inv: Vec<T> = (0..n * n)
        .map(|k| {
            if k / n == k % n {
                T::one()
            } else {
                T::zero()
            }
        })
        .collect();
    for col in 0..n {
        let mut prow = col;
        let mut pval = m[col * n + col].re().abs();
        for r in (col + 1)..n {
            let v = m[r * n + col].re().abs();
            if v > pval {
                pval = v;
                prow = r;
            }
        }
        if pval < floor {
            return Err(Error::NonInvertibleMetric(format!(
                "pivot {pval:e} below {floor:e} at column {}",
                col + 1
            )));
        }
        if prow != col {
            for j in 0..n {
                m.swap(col * n + j, prow * n + j);
                inv.swap(col * n + j, prow * n + j);
            }
        }
        let p = m[col * n + col];
        for j in 0..n {
            m[col * n + j] = m[col * n + j] / p;
            inv[col * n + j] = inv[col * n + j] / p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r * n + col];
            if f.re() == 0.0 {
                continue;
            }
            for j in 0..n {
                let mv = m[col * n + j];
                let iv = inv[col * n + j];
                m[r * n + j] = m[r * n + j] - f * mv;
                inv[r * n + j] = inv[r * n + j] - f * iv;
            }
        }
    }
    Ok(inv)
}

/// Fundamental tensor g_ij = (h₁₁/2) ∂²L/∂yⁱ∂yʲ, row-major, symmetrized.
pub fn metric_components<T: AdScalar, L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    t: T,
    x: &[T],
    y: &[T],
) -> Vec<T> {
    let n = lag.dim();
    let half_h11 = h.h11_generic(t).scale(0.5);
    let mut g = vec![T::zero(); n * n];
    for i in 0..n {
        for j in i..n {
            let v = half_h11 * l_d2(lag, t, x, y, Slot::Y(i), Slot::Y(j));
            g[i * n + j] = v;
            g[j * n + i] = v;
        }
    }
    g
}

/// Semispray components: H^(i)_(1)1 = −½ϰ¹₁₁ yⁱ and
/// G^(i)_(1)1 = (h₁₁ g^{ik}/4)[∂²L/∂x^m∂y^k y^m − ∂L/∂x^k + ∂²L/∂t∂y^k
///              + ϰ¹₁₁ ∂L/∂y^k + 2h¹¹ϰ¹₁₁ g_km y^m].
pub fn semispray_components<T: AdScalar, L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    t: T,
    x: &[T],
    y: &[T],
) -> Result<(Vec<T>, Vec<T>)> {
    let n = lag.dim();
    let kappa = h.kappa_generic(t);
    let h11 = h.h11_generic(t);
    let h11_inv = T::one() / h11;
    let g = metric_components(lag, h, t, x, y);
    let ginv = invert_sym_generic(&g, n)?;

    let mut bracket = vec![T::zero(); n];
    for k in 0..n {
        let mut b = T::zero();
        for m in 0..n {
            b = b + l_d2(lag, t, x, y, Slot::X(m), Slot::Y(k)) * y[m];
        }
        b = b - l_d1(lag, t, x, y, Slot::X(k));
        b = b + l_d2(lag, t, x, y, Slot::Time, Slot::Y(k));
        b = b + kappa * l_d1(lag, t, x, y, Slot::Y(k));
        let mut gy = T::zero();
        for m in 0..n {
            gy = gy + g[k * n + m] * y[m];
        }
        b = b + h11_inv.scale(2.0) * kappa * gy;
        bracket[k] = b;
    }

    let quarter_h11 = h11.scale(0.25);
    let mut gg = vec![T::zero(); n];
    for i in 0..n {
        let mut s = T::zero();
        for k in 0..n {
            s = s + ginv[i * n + k] * bracket[k];
        }
        gg[i] = quarter_h11 * s;
    }
    let mut hh = vec![T::zero(); n];
    for i in 0..n {
        hh[i] = -(kappa.scale(0.5)) * y[i];
    }
    Ok((hh, gg))
}

fn lift_seeded<T: AdScalar>(v: &[T], seeded: Option<usize>) -> Vec<Dual<T>> {
    v.iter()
        .enumerate()
        .map(|(i, &a)| {
            if Some(i) == seeded {
                Dual::var(a)
            } else {
                Dual::constant(a)
            }
        })
        .collect()
}

/// Derivative of the G-field along one jet coordinate, by re-running the
/// semispray pipeline in `Dual<T>` with that coordinate seeded.
fn semispray_g_derivative<T: AdScalar, L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    t: T,
    x: &[T],
    y: &[T],
    along: Slot,
) -> Result<Vec<Dual<T>>> {
    let td = match along {
        Slot::Time => Dual::var(t),
        _ => Dual::constant(t),
    };
    let xd = lift_seeded(
        x,
        match along {
            Slot::X(k) => Some(k),
            _ => None,
        },
    );
    let yd = lift_seeded(
        y,
        match along {
            Slot::Y(k) => Some(k),
            _ => None,
        },
    );
    let (_, g) = semispray_components(lag, h, td, &xd, &yd)?;
    Ok(g)
}

/// Nonlinear connection N^(i)_(1)j = ∂G^(i)_(1)1/∂yʲ (exact derivative of
/// the semispray field), row-major with the upper index on the row.
pub fn nonlinear_components<T: AdScalar, L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    t: T,
    x: &[T],
    y: &[T],
) -> Result<Vec<T>> {
    let n = lag.dim();
    let mut out = vec![T::zero(); n * n];
    for j in 0..n {
        let g = semispray_g_derivative(lag, h, t, x, y, Slot::Y(j))?;
        for i in 0..n {
            out[i * n + j] = g[i].du;
        }
    }
    Ok(out)
}

/// Cartan connection components in generic arithmetic.
pub struct CartanComponents<T> {
    /// G^k_j1 = (g^{km}/2) δg_mj/δt, row-major (k row).
    pub g_t: Vec<T>,
    /// L^i_jk, flattened n³ as [i][j][k].
    pub l3: Vec<T>,
    /// C_{j(k)}^{i(1)}, flattened n³ as [i][j][k].
    pub c3: Vec<T>,
}

fn metric_derivative<T: AdScalar, L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    t: T,
    x: &[T],
    y: &[T],
    along: Slot,
) -> Vec<T> {
    let td = match along {
        Slot::Time => Dual::var(t),
        _ => Dual::constant(t),
    };
    let xd = lift_seeded(
        x,
        match along {
            Slot::X(k) => Some(k),
            _ => None,
        },
    );
    let yd = lift_seeded(
        y,
        match along {
            Slot::Y(k) => Some(k),
            _ => None,
        },
    );
    metric_components(lag, h, td, &xd, &yd)
        .into_iter()
        .map(|d| d.du)
        .collect()
}

/// Cartan canonical connection from the metric field:
///   G^k_j1 = (g^{km}/2) δg_mj/δt,
///   L^i_jk = (g^{im}/2)(δg_jm/δx^k + δg_km/δx^j − δg_jk/δx^m),
///   C_{j(k)}^{i(1)} = (g^{im}/2)(∂g_jm/∂y^k + ∂g_km/∂y^j − ∂g_jk/∂y^m),
/// with δ/δt = ∂/∂t + ϰ y^p ∂/∂y^p and δ/δxⁱ = ∂/∂xⁱ − N^(p)_(1)i ∂/∂y^p.
pub fn cartan_components<T: AdScalar, L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    t: T,
    x: &[T],
    y: &[T],
) -> Result<CartanComponents<T>> {
    let n = lag.dim();
    let g = metric_components(lag, h, t, x, y);
    let ginv = invert_sym_generic(&g, n)?;
    let n_mat = nonlinear_components(lag, h, t, x, y)?;
    let kappa = h.kappa_generic(t);

    let dg_dt = metric_derivative(lag, h, t, x, y, Slot::Time);
    let dg_dx: Vec<Vec<T>> = (0..n)
        .map(|k| metric_derivative(lag, h, t, x, y, Slot::X(k)))
        .collect();
    let dg_dy: Vec<Vec<T>> = (0..n)
        .map(|p| metric_derivative(lag, h, t, x, y, Slot::Y(p)))
        .collect();

    // adapted derivatives of the metric field
    let mut delta_g_dt = vec![T::zero(); n * n];
    for a in 0..n * n {
        let mut v = dg_dt[a];
        for p in 0..n {
            v = v + kappa * y[p] * dg_dy[p][a];
        }
        delta_g_dt[a] = v;
    }
    let mut delta_g_dx: Vec<Vec<T>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut m = vec![T::zero(); n * n];
        for a in 0..n * n {
            let mut v = dg_dx[k][a];
            for p in 0..n {
                v = v - n_mat[p * n + k] * dg_dy[p][a];
            }
            m[a] = v;
        }
        delta_g_dx.push(m);
    }

    let mut g_t = vec![T::zero(); n * n];
    for k in 0..n {
        for j in 0..n {
            let mut s = T::zero();
            for m in 0..n {
                s = s + ginv[k * n + m] * delta_g_dt[m * n + j];
            }
            g_t[k * n + j] = s.scale(0.5);
        }
    }

    let mut l3 = vec![T::zero(); n * n * n];
    let mut c3 = vec![T::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut sl = T::zero();
                let mut sc = T::zero();
                for m in 0..n {
                    sl = sl
                        + ginv[i * n + m]
                            * (delta_g_dx[k][j * n + m] + delta_g_dx[j][k * n + m]
                                - delta_g_dx[m][j * n + k]);
                    sc = sc
                        + ginv[i * n + m]
                            * (dg_dy[k][j * n + m] + dg_dy[j][k * n + m]
                                - dg_dy[m][j * n + k]);
                }
                l3[(i * n + j) * n + k] = sl.scale(0.5);
                c3[(i * n + j) * n + k] = sc.scale(0.5);
            }
        }
    }
    Ok(CartanComponents { g_t, l3, c3 })
}

fn nonlinear_derivative<T: AdScalar, L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    t: T,
    x: &[T],
    y: &[T],
    along: Slot,
) -> Result<Vec<T>> {
    let td = match along {
        Slot::Time => Dual::var(t),
        _ => Dual::constant(t),
    };
    let xd = lift_seeded(
        x,
        match along {
            Slot::X(k) => Some(k),
            _ => None,
        },
    );
    let yd = lift_seeded(
        y,
        match along {
            Slot::Y(k) => Some(k),
            _ => None,
        },
    );
    Ok(nonlinear_components(lag, h, td, &xd, &yd)?
        .into_iter()
        .map(|d| d.du)
        .collect())
}

/// Effective torsion R^(l)_(1)jk = δN^(l)_(1)j/δx^k − δN^(l)_(1)k/δx^j,
/// flattened n³ as [l][j][k].  The δ-derivatives are exact differentiations
/// of the N-field composed with the adapted-frame correction.
pub fn torsion_components<T: AdScalar, L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    t: T,
    x: &[T],
    y: &[T],
) -> Result<Vec<T>> {
    let n = lag.dim();
    let n_mat = nonlinear_components(lag, h, t, x, y)?;
    let dn_dx: Vec<Vec<T>> = (0..n)
        .map(|k| nonlinear_derivative(lag, h, t, x, y, Slot::X(k)))
        .collect::<Result<_>>()?;
    let dn_dy: Vec<Vec<T>> = (0..n)
        .map(|p| nonlinear_derivative(lag, h, t, x, y, Slot::Y(p)))
        .collect::<Result<_>>()?;

    // delta N^l_j / delta x^k
    let delta_n = |l: usize, j: usize, k: usize| -> T {
        let mut v = dn_dx[k][l * n + j];
        for p in 0..n {
            v = v - n_mat[p * n + k] * dn_dy[p][l * n + j];
        }
        v
    };
    let mut out = vec![T::zero(); n * n * n];
    for l in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[(l * n + j) * n + k] = delta_n(l, j, k) - delta_n(l, k, j);
            }
        }
    }
    Ok(out)
}

fn cartan_l3_derivative<T: AdScalar, L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    t: T,
    x: &[T],
    y: &[T],
    along: Slot,
) -> Result<Vec<T>> {
    let td = match along {
        Slot::Time => Dual::var(t),
        _ => Dual::constant(t),
    };
    let xd = lift_seeded(
        x,
        match along {
            Slot::X(k) => Some(k),
            _ => None,
        },
    );
    let yd = lift_seeded(
        y,
        match along {
            Slot::Y(k) => Some(k),
            _ => None,
        },
    );
    Ok(cartan_components(lag, h, td, &xd, &yd)?
        .l3
        .into_iter()
        .map(|d| d.du)
        .collect())
}

/// Curvature, Ricci and scalar in generic arithmetic:
///   R^l_ijk = δL^l_ij/δx^k − δL^l_ik/δx^j + L^r_ij L^l_rk − L^r_ik L^l_rj
///             + C_{i(r)}^{l(1)} R^(r)_(1)jk,
/// Ricci by the trace R_ij = R^m_ijm, scalar by g^{pq} R_pq.
pub struct CurvatureComponents<T> {
    pub r4: Vec<T>,
    pub ricci: Vec<T>,
    pub scalar_r: T,
}

pub fn curvature_components<T: AdScalar, L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    t: T,
    x: &[T],
    y: &[T],
) -> Result<CurvatureComponents<T>> {
    let n = lag.dim();
    let g = metric_components(lag, h, t, x, y);
    let ginv = invert_sym_generic(&g, n)?;
    let n_mat = nonlinear_components(lag, h, t, x, y)?;
    let cart = cartan_components(lag, h, t, x, y)?;
    let tors = torsion_components(lag, h, t, x, y)?;

    let dl_dx: Vec<Vec<T>> = (0..n)
        .map(|k| cartan_l3_derivative(lag, h, t, x, y, Slot::X(k)))
        .collect::<Result<_>>()?;
    let dl_dy: Vec<Vec<T>> = (0..n)
        .map(|p| cartan_l3_derivative(lag, h, t, x, y, Slot::Y(p)))
        .collect::<Result<_>>()?;

    let at3 = |v: &[T], a: usize, b: usize, c: usize| v[(a * n + b) * n + c];
    // delta L^l_ij / delta x^k
    let delta_l = |l: usize, i: usize, j: usize, k: usize| -> T {
        let mut v = at3(&dl_dx[k], l, i, j);
        for p in 0..n {
            v = v - n_mat[p * n + k] * at3(&dl_dy[p], l, i, j);
        }
        v
    };

    let mut r4 = vec![T::zero(); n * n * n * n];
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut v = delta_l(l, i, j, k) - delta_l(l, i, k, j);
                    for r in 0..n {
                        v = v + at3(&cart.l3, r, i, j) * at3(&cart.l3, l, r, k)
                            - at3(&cart.l3, r, i, k) * at3(&cart.l3, l, r, j);
                    }
                    for r in 0..n {
                        v = v + at3(&cart.c3, l, i, r) * at3(&tors, r, j, k);
                    }
                    r4[((l * n + i) * n + j) * n + k] = v;
                }
            }
        }
    }

    let mut ricci = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = T::zero();
            for m in 0..n {
                s = s + r4[((m * n + i) * n + j) * n + m];
            }
            ricci[i * n + j] = s;
        }
    }
    let mut scalar_r = T::zero();
    for p in 0..n {
        for q in 0..n {
            scalar_r = scalar_r + ginv[p * n + q] * ricci[p * n + q];
        }
    }
    Ok(CurvatureComponents {
        r4,
        ricci,
        scalar_r,
    })
}

/// Electromagnetic distinguished 2-form components
/// F^(1)_(i)j = (h¹¹/2)[g_jr N^r_i − g_ir N^r_j + (g_ir L^r_jm − g_jr L^r_im) y^m].
pub fn em_components<T: AdScalar, L: JetLagrangian>(
    lag: &L,
    h: &TemporalMetric,
    t: T,
    x: &[T],
    y: &[T],
) -> Result<Vec<T>> {
    let n = lag.dim();
    let g = metric_components(lag, h, t, x, y);
    let n_mat = nonlinear_components(lag, h, t, x, y)?;
    let cart = cartan_components(lag, h, t, x, y)?;
    let half_h11_inv = h.h11_inv_generic(t).scale(0.5);
    let at3 = |v: &[T], a: usize, b: usize, c: usize| v[(a * n + b) * n + c];

    let mut f = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut v = T::zero();
            for r in 0..n {
                v = v + g[j * n + r] * n_mat[r * n + i] - g[i * n + r] * n_mat[r * n + j];
            }
            for r in 0..n {
                for m in 0..n {
                    v = v
                        + (g[i * n + r] * at3(&cart.l3, r, j, m)
                            - g[j * n + r] * at3(&cart.l3, r, i, m))
                            * y[m];
                }
            }
            f[i * n + j] = half_h11_inv * v;
        }
    }
    Ok(f)
}

/// Auxiliary d-tensors of the electromagnetic model, implemented as the
/// published definitions (they enter the first Maxwell equation set; here
/// they serve as vanishing diagnostics for the conformal Minkowski metric):
///   D̄^(1)_(i)1 = (h¹¹/2) δg_im/δt · y^m,
///   D^(1)_(i)j = h¹¹ g_ip(−N^(p)_(1)j + L^p_jm y^m),
///   d^(1)(1)_(i)(j) = h¹¹(g_ij + g_ip C_{m(j)}^{p(1)} y^m),
///   R^(m)_(1)1j = δM^(m)_(1)1/δx^j − δN^(m)_(1)j/δt.
pub struct EmAuxiliaries {
    pub d_bar: Vec<f64>,
    pub big_d: Matrix,
    pub small_d: Matrix,
    /// Time-sector torsion R^(m)_(1)1j, rows = upper index m.
    pub torsion_t: Matrix,
}

pub fn em_auxiliaries<L: JetLagrangian>(
    lag: &L,
    p: &JetPoint,
    h: &TemporalMetric,
) -> Result<EmAuxiliaries> {
    require_derivative_domain(lag, p)?;
    let n = lag.dim();
    let (t, x, y) = (p.t, &p.x[..], &p.y[..]);
    let g = metric_components(lag, h, t, x, y);
    let n_mat = nonlinear_components(lag, h, t, x, y)?;
    let cart = cartan_components(lag, h, t, x, y)?;
    let kappa = h.kappa_generic(t);
    let h11_inv = h.h11_inv_generic(t);
    let at3 = |v: &[f64], a: usize, b: usize, c: usize| v[(a * n + b) * n + c];

    let dg_dt = metric_derivative(lag, h, t, x, y, Slot::Time);
    let dg_dy: Vec<Vec<f64>> = (0..n)
        .map(|q| metric_derivative(lag, h, t, x, y, Slot::Y(q)))
        .collect();
    let delta_g_dt = |a: usize, b: usize| -> f64 {
        dg_dt[a * n + b] + kappa * (0..n).map(|q| y[q] * dg_dy[q][a * n + b]).sum::<f64>()
    };

    let mut d_bar = vec![0.0; n];
    for i in 0..n {
        d_bar[i] =
            0.5 * h11_inv * (0..n).map(|m| delta_g_dt(i, m) * y[m]).sum::<f64>();
    }

    let big_d = Matrix::from_fn(n, |i, j| {
        h11_inv
            * (0..n)
                .map(|p_| {
                    g[i * n + p_]
                        * (-n_mat[p_ * n + j]
                            + (0..n).map(|m| at3(&cart.l3, p_, j, m) * y[m]).sum::<f64>())
                })
                .sum::<f64>()
    });

    let small_d = Matrix::from_fn(n, |i, j| {
        h11_inv
            * (g[i * n + j]
                + (0..n)
                    .flat_map(|p_| (0..n).map(move |m| (p_, m)))
                    .map(|(p_, m)| g[i * n + p_] * at3(&cart.c3, p_, m, j) * y[m])
                    .sum::<f64>())
    });

    // R^(m)_(1)1j: delta of the M-field over x minus delta of N over t,
    // both by exact differentiation of the respective semispray fields.
    let dn_dt = nonlinear_derivative(lag, h, t, x, y, Slot::Time)?;
    let dn_dy: Vec<Vec<f64>> = (0..n)
        .map(|q| nonlinear_derivative(lag, h, t, x, y, Slot::Y(q)))
        .collect::<Result<_>>()?;
    let m_derivative = |along: Slot| -> Result<Vec<f64>> {
        let td = match along {
            Slot::Time => Dual::var(t),
            _ => Dual::constant(t),
        };
        let xd = lift_seeded(
            x,
            match along {
                Slot::X(k) => Some(k),
                _ => None,
            },
        );
        let yd = lift_seeded(
            y,
            match along {
                Slot::Y(k) => Some(k),
                _ => None,
            },
        );
        let (hh, _) = semispray_components(lag, h, td, &xd, &yd)?;
        Ok(hh.into_iter().map(|d| 2.0 * d.du).collect())
    };
    let dm_dx: Vec<Vec<f64>> = (0..n)
        .map(|j| m_derivative(Slot::X(j)))
        .collect::<Result<_>>()?;
    let dm_dy: Vec<Vec<f64>> = (0..n)
        .map(|q| m_derivative(Slot::Y(q)))
        .collect::<Result<_>>()?;
    let torsion_t = Matrix::from_fn(n, |m, j| {
        let delta_m_dx =
            dm_dx[j][m] - (0..n).map(|q| n_mat[q * n + j] * dm_dy[q][m]).sum::<f64>();
        let delta_n_dt = dn_dt[m * n + j]
            + kappa * (0..n).map(|q| y[q] * dn_dy[q][m * n + j]).sum::<f64>();
        delta_m_dx - delta_n_dt
    });

    Ok(EmAuxiliaries {
        d_bar,
        big_d,
        small_d,
        torsion_t,
    })
}

// --- f64 wrappers over jet points -------------------------------------------

fn require_domain<L: JetLagrangian>(lag: &L, p: &JetPoint) -> Result<()> {
    if !lag.domain_ok(p.t, &p.x, &p.y) {
        return Err(Error::Domain(format!(
            "point (t={}, x={:?}, y={:?}) outside the Lagrangian domain",
            p.t, p.x, p.y
        )));
    }
    Ok(())
}

fn require_derivative_domain<L: JetLagrangian>(lag: &L, p: &JetPoint) -> Result<()> {
    if !lag.derivative_domain_ok(p.t, &p.x, &p.y) {
        return Err(Error::Domain(format!(
            "point (t={}, x={:?}, y={:?}) outside the differentiable domain",
            p.t, p.x, p.y
        )));
    }
    Ok(())
}

/// Fundamental tensor at a jet point, wrapped symmetric.
pub fn metric_from_lagrangian<L: JetLagrangian>(
    lag: &L,
    p: &JetPoint,
    h: &TemporalMetric,
) -> Result<SymMatrix> {
    require_domain(lag, p)?;
    let n = lag.dim();
    let g = metric_components(lag, h, p.t, &p.x[..], &p.y[..]);
    let m = Matrix::from_fn(n, |i, j| g[i * n + j]);
    SymMatrix::from_matrix(&m, Tolerances::default().sym * (1.0 + m.max_abs()))
}

/// Semispray (H, G) at a jet point.
pub fn semispray<L: JetLagrangian>(
    lag: &L,
    p: &JetPoint,
    h: &TemporalMetric,
) -> Result<(Vec<f64>, Vec<f64>)> {
    require_derivative_domain(lag, p)?;
    semispray_components(lag, h, p.t, &p.x[..], &p.y[..])
}

/// Adapted frame coefficients: the nonlinear connection N (exact y-derivative
/// of the semispray G-field), ϰ¹₁₁, and M = 2H.
pub struct AdaptedFrame {
    pub n: Matrix,
    pub kappa: f64,
    pub m: Vec<f64>,
}

pub fn nonlinear_from_semispray<L: JetLagrangian>(
    lag: &L,
    p: &JetPoint,
    h: &TemporalMetric,
) -> Result<AdaptedFrame> {
    require_derivative_domain(lag, p)?;
    let n_dim = lag.dim();
    let flat = nonlinear_components(lag, h, p.t, &p.x[..], &p.y[..])?;
    let (hh, _) = semispray_components(lag, h, p.t, &p.x[..], &p.y[..])?;
    Ok(AdaptedFrame {
        n: Matrix::from_fn(n_dim, |i, j| flat[i * n_dim + j]),
        kappa: h.kappa_generic(p.t),
        m: hh.into_iter().map(|v| 2.0 * v).collect(),
    })
}

/// Cartan connection at a jet point.
pub struct CartanConnection {
    pub g_t: Matrix,
    pub l: Rank3,
    pub c: Rank3,
}

pub fn cartan_from_metric<L: JetLagrangian>(
    lag: &L,
    p: &JetPoint,
    h: &TemporalMetric,
) -> Result<CartanConnection> {
    require_derivative_domain(lag, p)?;
    let n = lag.dim();
    let c = cartan_components(lag, h, p.t, &p.x[..], &p.y[..])?;
    Ok(CartanConnection {
        g_t: Matrix::from_fn(n, |k, j| c.g_t[k * n + j]),
        l: Rank3::from_fn(n, |i, j, k| c.l3[(i * n + j) * n + k]),
        c: Rank3::from_fn(n, |i, j, k| c.c3[(i * n + j) * n + k]),
    })
}

/// Effective torsion at a jet point.
pub fn torsion_generic<L: JetLagrangian>(
    lag: &L,
    p: &JetPoint,
    h: &TemporalMetric,
) -> Result<Rank3> {
    require_derivative_domain(lag, p)?;
    let n = lag.dim();
    let t = torsion_components(lag, h, p.t, &p.x[..], &p.y[..])?;
    Ok(Rank3::from_fn(n, |l, j, k| t[(l * n + j) * n + k]))
}

/// Curvature, Ricci (trace, symmetry-checked) and scalar at a jet point.
pub struct CurvatureSuite {
    pub r4: Rank4,
    pub ricci: SymMatrix,
    pub scalar_r: f64,
}

pub fn curvature_suite<L: JetLagrangian>(
    lag: &L,
    p: &JetPoint,
    h: &TemporalMetric,
) -> Result<CurvatureSuite> {
    require_derivative_domain(lag, p)?;
    let n = lag.dim();
    let c = curvature_components(lag, h, p.t, &p.x[..], &p.y[..])?;
    let r4 = Rank4::from_fn(n, |l, i, j, k| c.r4[((l * n + i) * n + j) * n + k]);
    let trace = contract_trace(&r4);
    let ricci =
        SymMatrix::from_matrix(&trace, Tolerances::default().sym * (1.0 + trace.max_abs()))?;
    Ok(CurvatureSuite {
        r4,
        ricci,
        scalar_r: c.scalar_r,
    })
}

/// Electromagnetic 2-form at a jet point (antisymmetric by construction).
pub fn em_2form<L: JetLagrangian>(
    lag: &L,
    p: &JetPoint,
    h: &TemporalMetric,
) -> Result<Matrix> {
    require_derivative_domain(lag, p)?;
    let n = lag.dim();
    let f = em_components(lag, h, p.t, &p.x[..], &p.y[..])?;
    Ok(Matrix::from_fn(n, |i, j| f[i * n + j]))
}

/// F = √L, the metric value recovered from the Lagrangian.
pub fn f_from_lagrangian<L: JetLagrangian>(
    lag: &L,
    p: &JetPoint,
    h: &TemporalMetric,
) -> Result<f64> {
    require_domain(lag, p)?;
    let _ = h;
    let v = lag.eval(p.t, &p.x[..], &p.y[..]);
    if v < 0.0 {
        return Err(Error::Domain(format!("L = {v} < 0, F undefined")));
    }
    Ok(v.sqrt())
}
