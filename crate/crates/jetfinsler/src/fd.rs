//! Central finite-difference stencils.
//!
//! These back the verification oracles (analytic derivatives vs differences)
//! and the dual-stencil conservation diagnostics.  The geometric pipeline
//! itself never differentiates by differences; see [`crate::ad`].

/// Coordinate-scaled step `scale · (1 + |x|)`.
pub fn step(x: f64, scale: f64) -> f64 {
    scale * (1.0 + x.abs())
}

/// First derivative by the 2-point central stencil.
pub fn central1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// First derivative by the 4-point central stencil (fourth-order accurate).
pub fn central1_4th(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// Gradient of `f` over 4 coordinates, step scaled per coordinate.
pub fn grad4(f: impl Fn(&[f64; 4]) -> f64, x: &[f64; 4], scale: f64) -> [f64; 4] {
    let mut g = [0.0; 4];
    for i in 0..4 {
        let h = step(x[i], scale);
        let mut xp = *x;
        let mut xm = *x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (f(&xp) - f(&xm)) / (2.0 * h);
    }
    g
}

/// Mixed second derivative ∂²f/∂xᵢ∂xⱼ by the 4-point (i ≠ j) or 3-point
/// (i = j) central stencil.
pub fn second4(f: impl Fn(&[f64; 4]) -> f64, x: &[f64; 4], i: usize, j: usize, scale: f64) -> f64 {
    let hi = step(x[i], scale);
    if i == j {
        let mut xp = *x;
        let mut xm = *x;
        xp[i] += hi;
        xm[i] -= hi;
        return (f(&xp) - 2.0 * f(x) + f(&xm)) / (hi * hi);
    }
    let hj = step(x[j], scale);
    let mut xpp = *x;
    let mut xpm = *x;
    let mut xmp = *x;
    let mut xmm = *x;
    xpp[i] += hi;
    xpp[j] += hj;
    xpm[i] += hi;
    xpm[j] -= hj;
    xmp[i] -= hi;
    xmp[j] += hj;
    xmm[i] -= hi;
    xmm[j] -= hj;
    (f(&xpp) - f(&xpm) - f(&xmp) + f(&xmm)) / (4.0 * hi * hj)
}
